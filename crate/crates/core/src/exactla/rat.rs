//! Rational scalars and their textual form.
//!
//! Every rational that leaves the library is written as `"p/q"`, or `"p"`
//! when the denominator is one. The same grammar is accepted on input, with
//! an optional leading sign on the numerator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rat = BigRational;

/// `n / d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Canonical string form: `"p/q"`, or `"p"` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"`, `"-p"`, `"+p"` or `"p/q"` (decimal integers, `q > 0` after
/// sign normalization). Whitespace around the whole token is ignored.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let s = text.trim();
    let bad = || Error::Parse {
        line: 0,
        msg: format!("invalid rational {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = parse_int(num).ok_or_else(bad)?;
    let denom = match den {
        Some(d) if d.bytes().all(|b| b.is_ascii_digit()) => parse_int(d).ok_or_else(bad)?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse {
            line: 0,
            msg: format!("zero denominator in {s:?}"),
        });
    }
    Ok(Rat::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<BigInt>().ok()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// The simplest rational within `tol` of `x` (continued-fraction
/// convergents and semiconvergents). Returns `None` for non-finite input.
pub fn rationalize(x: f64, tol: f64) -> Option<Rat> {
    if !x.is_finite() || tol.is_nan() || tol <= 0.0 {
        return None;
    }
    let target = Rat::from_float(x)?;
    let tol = Rat::from_float(tol)?;
    let lo = &target - &tol;
    let hi = &target + &tol;
    Some(simplest_between(&lo, &hi))
}

/// Simplest rational in the closed interval `[lo, hi]` (Stern-Brocot).
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo.is_positive() || lo.is_zero() {
        if lo.is_zero() {
            return zero();
        }
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        zero()
    }
}

fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    // 0 < lo <= hi
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + one();
    }
    // both in (fl, fl+1): recurse on reciprocals of fractional parts
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

/// Serde adapter for a single rational as a string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of rationals as strings.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serialize-only adapter for an optional rational (`null` when absent).
pub mod serde_rat_opt {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rat(r)),
            None => s.serialize_none(),
        }
    }
}
