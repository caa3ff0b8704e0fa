use num_bigint::BigInt;

use super::{roundoff, target_log2, working_bits, OracleValue};
use crate::error::{Error, Result};
use crate::exactmath::Real;

/// Riemann zeta for real `s > 1`.
///
/// Uses Borwein's Chebyshev-weighted acceleration of the alternating eta
/// series `eta(s) = sum (-1)^(n-1) n^-s`, whose remainder after `n` terms is
/// at most `3 / (3 + sqrt 8)^n`, then `zeta = eta / (1 - 2^(1-s))`. Integer
/// arguments large enough for a short direct sum take that route instead.
pub fn zeta_ref(s: &Real, target_error: &Real) -> Result<OracleValue> {
    if *s <= Real::one(s.bits()) {
        return Err(Error::domain(format!("zeta_ref needs s > 1, got {}", s.to_decimal_string(12))));
    }
    if let Some(m) = s.to_small_int() {
        return Ok(zeta_int(m as u64, target_error));
    }
    Ok(borwein(s, target_error))
}

/// `zeta(m)` for an integer `m >= 2`.
pub fn zeta_int(m: u64, target_error: &Real) -> OracleValue {
    assert!(m >= 2, "zeta_int needs m >= 2");
    let tl = target_log2(target_error) + 1.0;
    let j = ((tl - ((m - 1) as f64).log2()) / (m - 1) as f64).exp2().ceil().max(2.0);
    if j <= 64.0 {
        return direct_sum(m, j as u64, working_bits(target_error));
    }
    let wp = working_bits(target_error);
    borwein(&Real::from_u64(m, wp), target_error)
}

/// `sum_{j<=terms} j^-m` plus the integral bound `terms^(1-m)/(m-1)` on the
/// remainder as the claimed error.
pub fn direct_sum(m: u64, terms: u64, bits: usize) -> OracleValue {
    let mut acc = Real::zero(bits);
    for j in 1..=terms {
        acc += Real::from_bigint(&BigInt::from(j).pow(m as u32), bits).recip();
    }
    let tail = Real::from_u64(terms, bits).powi(1 - m as i64) / Real::from_u64(m - 1, bits);
    OracleValue {
        value: acc,
        method: "direct-sum+integral-tail",
        claimed_error: tail + roundoff(bits),
    }
}

/// Integer weights `d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)`.
fn borwein_weights(n: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut t = BigInt::from(1);
    let mut d = BigInt::from(0);
    for i in 0..=n {
        d += &t;
        out.push(d.clone());
        if i < n {
            t = t * BigInt::from(2 * (n + i) * (n - i)) / BigInt::from((2 * i + 1) * (i + 1));
        }
    }
    out
}

fn borwein(s: &Real, target_error: &Real) -> OracleValue {
    let sf = s.to_f64();
    let denom_f = 1.0 - (1.0 - sf).exp2();
    let rate = (3.0 + 8f64.sqrt()).log2();
    let n = ((target_log2(target_error) + 2.0 + 3f64.log2() - denom_f.log2()) / rate).ceil().max(1.0) as u64;
    let wp = working_bits(target_error) + (n as f64).log2().ceil() as usize;
    let s = s.with_bits(wp);
    let d = borwein_weights(n);
    let dn = &d[n as usize];
    let int_s = s.to_small_int();

    let mut acc = Real::zero(wp);
    for k in 0..n {
        let num = Real::from_bigint(&(dn - &d[k as usize]), wp);
        let den = match int_s {
            Some(m) => Real::from_bigint(&BigInt::from(k + 1).pow(m as u32), wp),
            None => Real::from_u64(k + 1, wp).powf(&s),
        };
        let t = num / den;
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= &t;
        }
    }
    let eta = acc / Real::from_bigint(dn, wp);
    let one = Real::one(wp);
    let denom = &one - Real::from_u64(2, wp).powf(&(&one - &s));
    let bound = Real::from_u64(3, wp) * (Real::from_u64(3, wp) + Real::from_u64(8, wp).sqrt()).powi(-(n as i64));
    OracleValue {
        value: &eta / &denom,
        method: "borwein-eta",
        claimed_error: bound / denom.abs() + roundoff(wp),
    }
}
