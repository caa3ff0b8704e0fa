use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{ExactRational, PascalRows};

use super::source::CoefficientSource;
use super::Form;

/// Outer terms `T_0..=T_{n_max}` in exact rational arithmetic.
pub fn exact_terms(
    source: &dyn CoefficientSource,
    x: &ExactRational,
    mu: &ExactRational,
    form: Form,
    n_max: usize,
) -> Result<Vec<ExactRational>> {
    let one = ExactRational::one();
    let mu1 = mu + &one;
    if mu1.is_zero() {
        return Err(Error::DivisionByZero("mu = -1 in exact evaluation"));
    }
    let inv = mu1.recip();
    let ratio = match form {
        Form::ParamAtArgument => mu * &inv,
        Form::ParamFree => inv.clone(),
    };

    let mut scaled: Vec<ExactRational> = Vec::with_capacity(n_max + 1);
    let mut mu_pows = vec![one.clone()];
    let mut x_pow = one.clone();
    let mut w = inv;
    let mut rows = PascalRows::new();
    let mut out = Vec::with_capacity(n_max + 1);

    for n in 0..=n_max {
        let a = source
            .coeff(n, 64)
            .as_exact()
            .cloned()
            .ok_or_else(|| Error::InexactCoefficient(source.name()))?;
        scaled.push(&x_pow * a);
        x_pow *= x;
        if n > 0 {
            let next = mu_pows[n - 1].clone() * mu;
            mu_pows.push(next);
        }
        let row = rows.advance();
        let mut inner = ExactRational::zero();
        for (k, c) in row.iter().enumerate() {
            let mut t = &scaled[k] * ExactRational::from_integer(c.clone());
            if form == Form::ParamFree {
                t *= &mu_pows[n - k];
            }
            inner += t;
        }
        out.push(&w * inner);
        w *= &ratio;
    }
    Ok(out)
}

/// Partial sums `S_0..=S_{n_max}` of the outer series, exactly.
pub fn exact_partial_sums(
    source: &dyn CoefficientSource,
    x: &ExactRational,
    mu: &ExactRational,
    form: Form,
    n_max: usize,
) -> Result<Vec<ExactRational>> {
    let mut acc = ExactRational::zero();
    Ok(exact_terms(source, x, mu, form, n_max)?
        .into_iter()
        .map(|t| {
            acc += t;
            acc.clone()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rational_from_ratio, Real};
    use crate::transform::Coefficient;
    use num_bigint::BigInt;

    struct Ones;
    impl CoefficientSource for Ones {
        fn name(&self) -> String {
            "ones".into()
        }
        fn coeff(&self, _k: usize, _bits: usize) -> Coefficient {
            Coefficient::Exact(ExactRational::one())
        }
    }

    struct Inexact;
    impl CoefficientSource for Inexact {
        fn name(&self) -> String {
            "inexact".into()
        }
        fn coeff(&self, _k: usize, bits: usize) -> Coefficient {
            Coefficient::Approx(Real::one(bits))
        }
    }

    #[test]
    fn geometric_partial_sums() {
        // mu = 1, x = 1/2: T_n = (3/2)^n / 2^(n+1)
        let s = exact_partial_sums(
            &Ones,
            &rational_from_ratio(1, 2),
            &rational_from_ratio(1, 1),
            Form::ParamAtArgument,
            3,
        )
        .unwrap();
        assert_eq!(s[0], rational_from_ratio(1, 2));
        assert_eq!(s[1], rational_from_ratio(7, 8));
        let t3 = ExactRational::new(BigInt::from(27), BigInt::from(128));
        assert_eq!(&s[3] - &s[2], t3);
    }

    #[test]
    fn inexact_is_rejected() {
        let r = exact_terms(&Inexact, &ExactRational::one(), &ExactRational::one(), Form::ParamFree, 2);
        assert!(matches!(r, Err(Error::InexactCoefficient(_))));
    }
}
