use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub fn rational_from_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Parses `p/q`, a plain integer, or a decimal literal with an optional
/// exponent (`-0.125`, `1e-30`, `2.5E3`) into an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let bad = || Error::Parse(format!("not a number: `{input}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{input}`")));
        }
        return Ok(p / q);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_rational("1/3").unwrap(), rational_from_ratio(1, 3));
        assert_eq!(parse_rational("-0.4").unwrap(), rational_from_ratio(-2, 5));
        assert_eq!(parse_rational("2.5e2").unwrap(), rational_from_ratio(250, 1));
        assert_eq!(parse_rational("+7").unwrap(), rational_from_ratio(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), rational_from_ratio(1, 2));
        let tiny = parse_rational("1e-30").unwrap();
        assert_eq!(tiny.denom(), &num_traits::pow(BigInt::from(10), 30));
        assert!(*tiny.numer() == BigInt::from(1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "e5", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }
}
