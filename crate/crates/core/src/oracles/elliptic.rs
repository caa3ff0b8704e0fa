use super::{roundoff, working_bits, OracleValue};
use crate::error::{Error, Result};
use crate::exactmath::Real;

/// Arithmetic-geometric mean of positive `a`, `b`, iterated to a fixed point
/// at the inputs' precision.
pub fn agm(a: &Real, b: &Real) -> Real {
    let bits = a.bits().max(b.bits());
    let eps = Real::pow2(-(bits as i64) + 4, 64);
    let two = Real::from_u64(2, bits);
    let (mut a, mut b) = (a.with_bits(bits), b.with_bits(bits));
    while (&a - &b).abs() > &eps * &a {
        let next = (&a + &b) / &two;
        b = (&a * &b).sqrt();
        a = next;
    }
    (&a + &b) / &two
}

fn check(x: &Real) -> Result<()> {
    if x.abs() >= Real::one(x.bits()) {
        return Err(Error::domain("complete elliptic integrals need |x| < 1"));
    }
    Ok(())
}

/// `K(x) = pi / (2 AGM(1, sqrt(1 - x^2)))`, modulus convention.
pub fn elliptic_k_agm(x: &Real, target_error: &Real) -> Result<OracleValue> {
    check(x)?;
    let wp = working_bits(target_error);
    let (k, _) = k_and_e(&x.with_bits(wp), wp);
    Ok(OracleValue {
        value: k,
        method: "agm",
        claimed_error: roundoff(wp),
    })
}

/// `E(x) = K(x) (1 - sum_{n>=0} 2^(n-1) c_n^2)` from the same AGM run,
/// with `c_0 = x`.
pub fn elliptic_e_agm(x: &Real, target_error: &Real) -> Result<OracleValue> {
    check(x)?;
    let wp = working_bits(target_error);
    let (_, e) = k_and_e(&x.with_bits(wp), wp);
    Ok(OracleValue {
        value: e,
        method: "agm",
        claimed_error: roundoff(wp),
    })
}

fn k_and_e(x: &Real, wp: usize) -> (Real, Real) {
    let one = Real::one(wp);
    let two = Real::from_u64(2, wp);
    // once c_n is below 2^-(wp-4), later terms are of order c_n^4
    let eps = Real::pow2(-(wp as i64) + 4, 64);
    let mut a = one.clone();
    let mut b = (&one - x * x).sqrt();
    let mut sum = x * x / &two;
    let mut weight = Real::one(wp);
    loop {
        let c = (&a - &b) / &two;
        sum += &weight * &c * &c;
        weight = weight * &two;
        let next = (&a + &b) / &two;
        b = (&a * &b).sqrt();
        a = next;
        if c.abs() <= &eps * &a {
            break;
        }
    }
    let k = Real::pi(wp) / (&two * &a);
    let e = &k * (one - sum);
    (k, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tgt() -> Real {
        Real::pow2(-120, 64)
    }

    #[test]
    fn at_zero() {
        let half_pi = Real::pi(200) / Real::from_u64(2, 200);
        let z = Real::zero(200);
        assert!((elliptic_k_agm(&z, &tgt()).unwrap().value - &half_pi).abs() < Real::pow2(-150, 64));
        assert!((elliptic_e_agm(&z, &tgt()).unwrap().value - &half_pi).abs() < Real::pow2(-150, 64));
    }

    #[test]
    fn known_values() {
        let x = Real::parse("0.5", 200).unwrap();
        let k = elliptic_k_agm(&x, &tgt()).unwrap().value;
        let e = elliptic_e_agm(&x, &tgt()).unwrap().value;
        assert!(k.to_decimal_string(16).starts_with("1.68575035481259"));
        assert!(e.to_decimal_string(16).starts_with("1.46746220933942"));
    }

    #[test]
    fn legendre_relation() {
        let x = Real::parse("0.6", 200).unwrap();
        let xp = Real::parse("0.8", 200).unwrap();
        let k = elliptic_k_agm(&x, &tgt()).unwrap().value;
        let e = elliptic_e_agm(&x, &tgt()).unwrap().value;
        let kp = elliptic_k_agm(&xp, &tgt()).unwrap().value;
        let ep = elliptic_e_agm(&xp, &tgt()).unwrap().value;
        let lhs = &e * &kp + &ep * &k - &k * &kp;
        let half_pi = Real::pi(200) / Real::from_u64(2, 200);
        assert!((lhs - half_pi).abs() < Real::parse("1e-20", 200).unwrap());
    }

    #[test]
    fn domain() {
        assert!(elliptic_k_agm(&Real::one(64), &tgt()).is_err());
    }
}
