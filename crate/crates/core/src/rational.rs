//! Arbitrary-precision rationals and their text form (`"p/q"`, `"p"`, or a
//! finite decimal such as `"-0.25"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((w, f)) = t.split_once('.') {
        let neg = w.starts_with('-');
        let w = w.trim_start_matches(['-', '+']);
        if !w.chars().all(|c| c.is_ascii_digit())
            || f.is_empty()
            || !f.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits: BigInt = format!("{w}{f}").parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), f.len());
        let r = Rational::new(digits, den);
        return Ok(if neg { -r } else { r });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Canonical text: `"p"` for integers, `"p/q"` otherwise.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(format).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert_eq!(parse("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse("1.5").unwrap(), frac(3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("pi").is_err());
        assert!(parse("1e3").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format(&frac(-2, 4)), "-1/2");
        assert_eq!(format(&int(5)), "5");
        assert_eq!(parse(&format(&frac(22, 7))).unwrap(), frac(22, 7));
    }
}
