//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"a/b"`, `"a"` or a finite decimal such as `"0.125"`.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((int_part, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::InvalidInput(format!("not a rational: {s:?}")));
        }
        let neg = int_part.starts_with('-');
        let whole: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| Error::InvalidInput(format!("not a rational: {s:?}")))?
        };
        let digits: BigInt = frac.parse().expect("digits");
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_r = BigRational::new(digits, scale);
        let whole_r = BigRational::from_integer(whole);
        return Ok(if neg { whole_r - frac_r } else { whole_r + frac_r });
    }
    t.parse::<Rational>()
        .map_err(|_| Error::InvalidInput(format!("not a rational: {s:?}")))
}

/// Compares `a/b` with `c/d` for positive denominators without allocating.
pub fn cmp_frac(a: u64, b: u64, c: u64, d: u64) -> std::cmp::Ordering {
    (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
}

/// Serde adapter writing rationals as strings (`"1/7"`, `"2"`).
pub mod as_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`as_str`] for optional values; `None` is written as `null`.
pub mod opt_as_str {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }
}

pub mod vec_as_str {
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse("1/7").unwrap(), ratio(1, 7));
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse("x").is_err());
        assert!(parse("1.").is_err());
    }

    #[test]
    fn displays_reduced() {
        assert_eq!(ratio(2, 14).to_string(), "1/7");
        assert_eq!(ratio(4, 2).to_string(), "2");
    }

    #[test]
    fn frac_compare() {
        use std::cmp::Ordering::*;
        assert_eq!(cmp_frac(1, 3, 2, 6), Equal);
        assert_eq!(cmp_frac(1, 3, 1, 2), Less);
    }
}
