use super::{bernoulli_2j, roundoff, target_log2, working_bits, zeta_ref, OracleValue, BERNOULLI_EVEN};
use crate::error::{Error, Result};
use crate::exactmath::Real;

fn factorial_f64(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Hurwitz zeta `sum_{n>=0} (n+a)^-s` for `s > 1`, `a > 0`, by
/// Euler-Maclaurin with corrections through `B_14`.
pub fn hurwitz_zeta_ref(s: &Real, a: &Real, target_error: &Real) -> Result<OracleValue> {
    let one = Real::one(s.bits());
    if *s <= one || !a.is_positive() {
        return Err(Error::domain("hurwitz zeta needs s > 1 and a > 0"));
    }
    const J: usize = 7;
    let wp = working_bits(target_error);
    let (s, a) = (s.with_bits(wp), a.with_bits(wp));
    let sf = s.to_f64();

    // first omitted correction: |B_16| / 16! * s(s+1)...(s+14) * (N+a)^-(s+15)
    let rising: f64 = (0..(2 * J + 1)).map(|i| sf + i as f64).product();
    let (bn, bd) = BERNOULLI_EVEN[J];
    let c = (bn.abs() as f64 / bd as f64) / factorial_f64(2 * J as u64 + 2) * rising;
    let need = target_log2(target_error) + 2.0 + c.log2();
    let base = (need / (sf + 2.0 * J as f64 + 1.0)).exp2();
    let n_terms = (base - a.to_f64()).ceil().max(1.0) as u64;

    let mut acc = Real::zero(wp);
    for n in 0..n_terms {
        acc += (Real::from_u64(n, wp) + &a).powf(&-&s);
    }
    let na = Real::from_u64(n_terms, wp) + &a;
    let one = Real::one(wp);
    acc += na.powf(&(&one - &s)) / (&s - &one);
    let mut p = na.powf(&-&s);
    acc += &p / Real::from_u64(2, wp);

    // p runs through (N+a)^(-s-2j+1); rising through s(s+1)...(s+2j-2)
    p = p / &na;
    let na2 = &na * &na;
    let mut rising = s.clone();
    let mut fact = Real::from_u64(2, wp);
    for j in 1..=J {
        acc += bernoulli_2j(j, wp) / &fact * &rising * &p;
        let k = 2 * j as u64;
        rising = rising * (&s + Real::from_u64(k - 1, wp)) * (&s + Real::from_u64(k, wp));
        fact = fact * Real::from_u64((k + 1) * (k + 2), wp);
        p = p / &na2;
    }
    let dropped = bernoulli_2j(J + 1, wp).abs() / fact * rising * p;
    Ok(OracleValue {
        value: acc,
        method: "hurwitz-euler-maclaurin",
        claimed_error: Real::from_u64(2, wp) * dropped + roundoff(wp),
    })
}

/// Digamma for `x > 0`: shift by the recurrence to `t >= 20` (or further if
/// the target demands), then the asymptotic series through `B_14`.
pub fn digamma_ref(x: &Real, target_error: &Real) -> Result<OracleValue> {
    if !x.is_positive() {
        return Err(Error::domain("digamma_ref needs x > 0"));
    }
    let wp = working_bits(target_error);
    let x = x.with_bits(wp);
    let (bn, bd) = BERNOULLI_EVEN[7];
    let c = (bn.abs() as f64 / bd as f64 / 16.0).log2();
    let t_min = ((target_log2(target_error) + 1.0 + c) / 16.0).exp2().max(20.0);
    let m = (t_min - x.to_f64()).ceil().max(0.0) as u64;

    let mut shift = Real::zero(wp);
    for j in (0..m).rev() {
        shift += (&x + Real::from_u64(j, wp)).recip();
    }
    let t = &x + Real::from_u64(m, wp);
    let mut v = t.ln() - (Real::from_u64(2, wp) * &t).recip();
    let t2 = &t * &t;
    let mut tp = t2.clone();
    for j in 1..=7 {
        v -= bernoulli_2j(j, wp) / (Real::from_u64(2 * j as u64, wp) * &tp);
        tp *= &t2;
    }
    let dropped = bernoulli_2j(8, wp).abs() / (Real::from_u64(16, wp) * tp);
    Ok(OracleValue {
        value: v - shift,
        method: "recurrence-shift+asymptotic",
        claimed_error: dropped + Real::from_u64(m + 1, wp) * roundoff(wp),
    })
}

/// `ln Gamma(x)` for `x > 0`: shift to `t >= 20` (or further), then
/// Stirling's series through `B_14`.
pub fn lngamma_ref(x: &Real, target_error: &Real) -> Result<OracleValue> {
    if !x.is_positive() {
        return Err(Error::domain("lngamma_ref needs x > 0"));
    }
    let wp = working_bits(target_error);
    let x = x.with_bits(wp);
    let (bn, bd) = BERNOULLI_EVEN[7];
    let c = (bn.abs() as f64 / bd as f64 / 240.0).log2();
    let t_min = ((target_log2(target_error) + 1.0 + c) / 15.0).exp2().max(20.0);
    let m = (t_min - x.to_f64()).ceil().max(0.0) as u64;

    let mut prod = Real::one(wp);
    for j in 0..m {
        prod *= &x + Real::from_u64(j, wp);
    }
    let t = &x + Real::from_u64(m, wp);
    let half = Real::from_ratio(1, 2, wp);
    let two_pi = Real::pi(wp) * Real::from_u64(2, wp);
    let mut v = (&t - &half) * t.ln() - &t + two_pi.ln() * &half;
    let t2 = &t * &t;
    let mut tp = t.clone();
    for j in 1..=7u64 {
        v += bernoulli_2j(j as usize, wp) / (Real::from_u64(2 * j * (2 * j - 1), wp) * &tp);
        tp *= &t2;
    }
    let dropped = bernoulli_2j(8, wp).abs() / (Real::from_u64(240, wp) * tp);
    Ok(OracleValue {
        value: v - prod.ln(),
        method: "recurrence-shift+stirling",
        claimed_error: dropped + roundoff(wp),
    })
}

/// `sum_{n>=0} term(n)` for a geometric-dominated series: `magnitude(n)`
/// must bound every later term by `magnitude(n) * q^(k-n)`.
fn direct_geometric(
    q: &Real,
    target_error: &Real,
    wp: usize,
    mut term: impl FnMut(u64) -> Real,
) -> (Real, Real) {
    let half = target_error.with_bits(wp) / Real::from_u64(2, wp);
    let scale = (Real::one(wp) - q).recip();
    let mut acc = Real::zero(wp);
    let mut n = 0u64;
    loop {
        let t = term(n);
        let tail = t.abs() * &scale;
        if tail <= half {
            return (acc, tail);
        }
        acc += t;
        n += 1;
    }
}

fn is_unit(x: &Real) -> Option<i32> {
    let one = Real::one(x.bits());
    if *x == one {
        Some(1)
    } else if *x == -one {
        Some(-1)
    } else {
        None
    }
}

/// Polylogarithm `Li_s(x) = sum_{k>=1} x^k / k^s` for `|x| <= 0.95` or
/// `x = +-1`.
pub fn polylog_ref(x: &Real, s: &Real, target_error: &Real) -> Result<OracleValue> {
    if *s <= Real::one(s.bits()) {
        return Err(Error::domain("polylog_ref needs s > 1"));
    }
    let wp = working_bits(target_error);
    match is_unit(x) {
        Some(1) => return zeta_ref(s, target_error),
        Some(_) => {
            let z = zeta_ref(s, target_error)?;
            let s = s.with_bits(wp);
            let f = Real::one(wp) - Real::from_u64(2, wp).powf(&(Real::one(wp) - &s));
            return Ok(OracleValue {
                value: -(z.value * &f),
                method: "eta-from-zeta",
                claimed_error: z.claimed_error * f.abs() + roundoff(wp),
            });
        }
        None => {}
    }
    let limit = Real::parse("0.95", wp).expect("literal");
    if x.abs() > limit {
        return Err(Error::domain("polylog_ref covers |x| <= 0.95 and x = +-1"));
    }
    let x = x.with_bits(wp);
    let s = s.with_bits(wp);
    let neg_s = -&s;
    let mut xp = x.clone();
    let (value, tail) = direct_geometric(&x.abs(), target_error, wp, |k| {
        let t = &xp * Real::from_u64(k + 1, wp).powf(&neg_s);
        xp *= &x;
        t
    });
    Ok(OracleValue {
        value,
        method: "direct-sum",
        claimed_error: tail + roundoff(wp),
    })
}

/// Lerch transcendent `sum_{n>=0} x^n / (n+a)^s` for `a > 0`, `s > 1` and
/// `|x| <= 0.95` or `x = +-1`.
pub fn lerch_ref(x: &Real, a: &Real, s: &Real, target_error: &Real) -> Result<OracleValue> {
    if *s <= Real::one(s.bits()) || !a.is_positive() {
        return Err(Error::domain("lerch_ref needs s > 1 and a > 0"));
    }
    let wp = working_bits(target_error);
    let (a, s) = (a.with_bits(wp), s.with_bits(wp));
    match is_unit(x) {
        Some(1) => return hurwitz_zeta_ref(&s, &a, target_error),
        Some(_) => {
            // 2^-s [zeta(s, a/2) - zeta(s, (a+1)/2)]
            let two = Real::from_u64(2, wp);
            let quarter = target_error.with_bits(wp) / Real::from_u64(4, wp);
            let h0 = hurwitz_zeta_ref(&s, &(&a / &two), &quarter)?;
            let h1 = hurwitz_zeta_ref(&s, &((&a + Real::one(wp)) / &two), &quarter)?;
            let f = two.powf(&-&s);
            return Ok(OracleValue {
                value: (h0.value - h1.value) * &f,
                method: "hurwitz-even-odd-split",
                claimed_error: (h0.claimed_error + h1.claimed_error) * f + roundoff(wp),
            });
        }
        None => {}
    }
    if x.is_zero() {
        return Ok(OracleValue {
            value: a.powf(&-&s),
            method: "direct-sum",
            claimed_error: roundoff(wp),
        });
    }
    let limit = Real::parse("0.95", wp).expect("literal");
    if x.abs() > limit {
        return Err(Error::domain("lerch_ref covers |x| <= 0.95 and x = +-1"));
    }
    let x = x.with_bits(wp);
    let neg_s = -&s;
    let mut xp = Real::one(wp);
    let (value, tail) = direct_geometric(&x.abs(), target_error, wp, |n| {
        let t = &xp * (Real::from_u64(n, wp) + &a).powf(&neg_s);
        xp *= &x;
        t
    });
    Ok(OracleValue {
        value,
        method: "direct-sum",
        claimed_error: tail + roundoff(wp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{gamma_ref, pi_ref};

    fn tgt() -> Real {
        Real::pow2(-120, 64)
    }

    fn r(s: &str) -> Real {
        Real::parse(s, 192).unwrap()
    }

    fn close(a: &OracleValue, b: &Real, extra: &Real) -> bool {
        (&a.value - b).abs() <= &a.claimed_error + extra
    }

    #[test]
    fn hurwitz_at_one_is_zeta() {
        let h = hurwitz_zeta_ref(&r("3"), &r("1"), &tgt()).unwrap();
        let z = zeta_ref(&r("3"), &tgt()).unwrap();
        assert!(close(&h, &z.value, &z.claimed_error));
    }

    #[test]
    fn lerch_shift_and_eta() {
        let l = lerch_ref(&r("1"), &r("2"), &r("3"), &tgt()).unwrap();
        let z = zeta_ref(&r("3"), &tgt()).unwrap();
        assert!(close(&l, &(&z.value - Real::one(192)), &z.claimed_error));

        let l = lerch_ref(&r("-1"), &r("1"), &r("2"), &tgt()).unwrap();
        let p = pi_ref(&tgt());
        let want = p.value.powi(2) / Real::from_u64(12, 192);
        assert!(close(&l, &want, &Real::pow2(-110, 64)));

        let l = lerch_ref(&r("0"), &r("2"), &r("3"), &tgt()).unwrap();
        assert_eq!(l.value, r("1/8"));
    }

    #[test]
    fn polylog_values() {
        let p = pi_ref(&tgt()).value;
        let ln2 = Real::from_u64(2, 192).ln();
        let want = p.powi(2) / Real::from_u64(12, 192) - ln2.powi(2) / Real::from_u64(2, 192);
        let l = polylog_ref(&r("0.5"), &r("2"), &tgt()).unwrap();
        assert!(close(&l, &want, &Real::pow2(-110, 64)));

        let l = polylog_ref(&r("-1"), &r("2"), &tgt()).unwrap();
        assert!(close(&l, &-(p.powi(2) / Real::from_u64(12, 192)), &Real::pow2(-110, 64)));

        assert!(polylog_ref(&r("0"), &r("2"), &tgt()).unwrap().value.is_zero());
        assert!(polylog_ref(&r("0.97"), &r("2"), &tgt()).is_err());
    }

    #[test]
    fn lngamma_values() {
        let one = lngamma_ref(&r("2"), &tgt()).unwrap();
        assert!(one.value.abs() <= one.claimed_error);
        // ln Gamma(1/2) = ln(pi)/2
        let h = lngamma_ref(&r("0.5"), &tgt()).unwrap();
        let want = pi_ref(&tgt()).value.ln() / Real::from_u64(2, 192);
        assert!(close(&h, &want, &Real::pow2(-110, 64)));
    }

    #[test]
    fn digamma_identities() {
        let g = gamma_ref(&tgt());
        let d1 = digamma_ref(&r("1"), &tgt()).unwrap();
        assert!(close(&d1, &-&g.value, &g.claimed_error));
        let d2 = digamma_ref(&r("2"), &tgt()).unwrap();
        assert!(close(&d2, &(Real::one(192) - &g.value), &(&g.claimed_error + &d1.claimed_error)));

        let a = digamma_ref(&r("3/4"), &tgt()).unwrap();
        let b = digamma_ref(&r("1/4"), &tgt()).unwrap();
        let p = pi_ref(&tgt());
        let slack = &b.claimed_error + &p.claimed_error;
        assert!(close(&a, &(&b.value + &p.value), &slack));
    }
}
