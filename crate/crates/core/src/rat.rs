//! Rational scalars and small helpers shared across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Canonical `p/q` rendering (`"3"`, `"-1/2"`).
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let digits = 30u32;
    let scale = BigInt::from(10u8).pow(digits);
    let scaled = (r.numer() * &scale).div_floor(r.denom());
    let mut x = 0f64;
    // horner over the decimal string keeps precision for large numerators
    let s = scaled.to_string();
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1.0, b),
        None => (1.0, s.as_str()),
    };
    for c in body.chars() {
        x = x * 10.0 + (c as u8 - b'0') as f64;
    }
    sign * x / 10f64.powi(digits as i32)
}

/// Floor of the square root of a nonnegative integer.
pub fn bigint_isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let sn = bigint_isqrt(r.numer());
    let sd = bigint_isqrt(r.denom());
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Largest integer `m >= 0` with `m^2 <= r` (for `r >= 0`).
pub fn rat_isqrt_floor(r: &Rat) -> BigInt {
    assert!(!r.is_negative());
    // floor(sqrt(p/q)) = floor(sqrt(p*q)/q)
    let pq = r.numer() * r.denom();
    bigint_isqrt(&pq).div_floor(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat_str(&parse_rat("5/10").unwrap()), "1/2");
        assert_eq!(rat_str(&parse_rat("-3").unwrap()), "-3");
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(rat_sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(rat_isqrt_floor(&rat(85, 1)), BigInt::from(9));
        assert_eq!(rat_isqrt_floor(&rat(1, 2)), BigInt::from(0));
    }

    #[test]
    fn f64_rendering() {
        assert!((rat_to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((rat_to_f64(&rat(-85, 2)) + 42.5).abs() < 1e-12);
    }
}
