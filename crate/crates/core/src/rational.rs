//! Exact rational arithmetic for densities and thresholds.
//!
//! Every density in the crate is a [`Rational`]. Thresholds that involve
//! roots of a parameter (`√α`, `α^{1/3}`, `α^{1/4}`) are compared by raising
//! the other side to the matching power, so no comparison ever goes through
//! floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational number")]
pub struct RationalParseError {
    pub input: String,
}

/// `num / den` as a reduced rational. `den` must be non-zero.
pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(num as i64, den as i64)
}

pub fn from_int(v: u64) -> Rational {
    Rational::from_integer(v as i64)
}

/// Parses `"3/10"`, `"0.05"`, `"1"` or `"-2.5"` exactly.
pub fn parse_rational(input: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError {
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    if frac_part.len() > 12 || int_part.len() > 12 {
        return Err(err());
    }
    let int_val: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| err())?
    };
    let scale = 10i64.pow(frac_part.len() as u32);
    let frac_val: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| err())?
    };
    let num = int_val * scale + frac_val;
    let r = Rational::new(num, scale);
    Ok(if neg { -r } else { r })
}

/// Wrapper used for CLI flags and config: parses like [`parse_rational`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Param(pub Rational);

impl FromStr for Param {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Param)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn big_pow(x: &Rational, k: u32) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let xn = BigInt::from(*x.numer());
    let xd = BigInt::from(*x.denom());
    for _ in 0..k {
        num *= &xn;
        den *= &xd;
    }
    (num, den)
}

/// Compares `x^k` with `y` exactly.
pub fn pow_cmp(x: Rational, k: u32, y: Rational) -> Ordering {
    let (xn, xd) = big_pow(&x, k);
    // Ratio keeps denominators positive.
    let lhs = xn * BigInt::from(*y.denom());
    let rhs = BigInt::from(*y.numer()) * xd;
    lhs.cmp(&rhs)
}

/// `x ≥ param^(1/k)` for non-negative `x` and `param`.
pub fn ge_root(x: Rational, param: Rational, k: u32) -> bool {
    debug_assert!(!x.is_negative() && !param.is_negative());
    pow_cmp(x, k, param) != Ordering::Less
}

/// `x < param^(1/k)` for non-negative `x` and `param`.
pub fn lt_root(x: Rational, param: Rational, k: u32) -> bool {
    !ge_root(x, param, k)
}

/// `x < 1 − param^(1/k)`, i.e. the complement test used by the
/// exceptional-vertex definitions.
pub fn lt_one_minus_root(x: Rational, param: Rational, k: u32) -> bool {
    let rest = Rational::one() - x;
    if rest <= Rational::zero() {
        return false;
    }
    // 1 - x > param^(1/k)  <=>  (1 - x)^k > param
    pow_cmp(rest, k, param) == Ordering::Greater
}

/// Rational approximation of `x^(p/q)` with denominator `10^6`, rounded
/// down. Used only to derive default parameters such as `η = α^{3/2}`.
pub fn approx_pow(x: Rational, p: i32, q: i32) -> Rational {
    let v = (*x.numer() as f64 / *x.denom() as f64).powf(p as f64 / q as f64);
    let scaled = (v * 1_000_000.0).floor() as i64;
    Rational::new(scaled.max(1), 1_000_000)
}

/// Lossy conversion for logging and CSV output only.
pub fn to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// `floor(x)` for non-negative `x`.
pub fn floor_usize(x: Rational) -> usize {
    if x.is_negative() {
        0
    } else {
        x.floor().to_integer() as usize
    }
}

/// `ceil(x)` for non-negative `x`.
pub fn ceil_usize(x: Rational) -> usize {
    if x.is_negative() {
        0
    } else {
        x.ceil().to_integer() as usize
    }
}

/// `max(1, floor(x))`, used for the small structure sizes.
pub fn size_rule(x: Rational) -> usize {
    floor_usize(x).max(1)
}

/// `log2(t)` as a rational lower bound with denominator 1024.
pub fn log2_floor(t: usize) -> Rational {
    if t <= 1 {
        return Rational::zero();
    }
    let v = (t as f64).log2();
    Rational::new((v * 1024.0).floor() as i64, 1024)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.05").unwrap(), Rational::new(1, 20));
        assert_eq!(parse_rational("3/10").unwrap(), Rational::new(3, 10));
        assert_eq!(parse_rational("1").unwrap(), Rational::from_integer(1));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-2.5").unwrap(), Rational::new(-5, 2));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("1e5").is_err());
    }

    #[test]
    fn root_comparisons_are_exact() {
        let alpha = Rational::new(1, 64);
        // alpha^(1/2) = 1/8, alpha^(1/3) = 1/4
        assert!(ge_root(Rational::new(1, 8), alpha, 2));
        assert!(lt_root(Rational::new(124, 1000), alpha, 2));
        assert!(ge_root(Rational::new(1, 4), alpha, 3));
        assert!(lt_root(Rational::new(249, 1000), alpha, 3));
        // x < 1 - 1/8
        assert!(lt_one_minus_root(Rational::new(6, 8), alpha, 2));
        assert!(!lt_one_minus_root(Rational::new(7, 8), alpha, 2));
        assert!(!lt_one_minus_root(Rational::from_integer(1), alpha, 2));
    }

    #[test]
    fn approx_pow_rounds_down() {
        let eta = approx_pow(Rational::new(3, 10), 3, 2);
        assert_eq!(eta, Rational::new(164_316, 1_000_000));
        assert!(pow_cmp(eta, 2, Rational::new(27, 1000)) == Ordering::Less);
    }
}
