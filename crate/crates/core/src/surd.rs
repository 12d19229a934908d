//! Exact scalars in a real quadratic field: `q + r sqrt(d)` with `q, r`
//! rational and `d` squarefree. Comparisons, field arithmetic and certified
//! rational bounds are all exact; values from different fields do not mix.

use crate::rat::{parse_rat, rat_int, rat_str, rat_to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SurdError {
    #[error("scalars live in different quadratic fields (sqrt {0} vs sqrt {1})")]
    MixedFields(u64, u64),
    #[error("surd radicand must be squarefree and at least 2, got {0}")]
    BadRadicand(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse surd scalar from {0:?}")]
    Parse(String),
}

/// `rat + coef * sqrt(d)`. Pure rationals carry `d = 0, coef = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Surd {
    rat: Rat,
    coef: Rat,
    d: u64,
}

fn is_squarefree(d: u64) -> bool {
    let mut k = 2u64;
    let mut n = d;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        if n % k == 0 {
            n /= k;
        }
        k += 1;
    }
    true
}

impl Surd {
    pub fn from_rat(q: Rat) -> Surd {
        Surd { rat: q, coef: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Surd {
        Surd::from_rat(rat_int(n))
    }

    pub fn new(q: Rat, r: Rat, d: u64) -> Result<Surd, SurdError> {
        if r.is_zero() {
            return Ok(Surd::from_rat(q));
        }
        if d < 2 || !is_squarefree(d) {
            return Err(SurdError::BadRadicand(d));
        }
        Ok(Surd { rat: q, coef: r, d })
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rat
    }

    pub fn surd_part(&self) -> Option<(&Rat, u64)> {
        if self.coef.is_zero() {
            None
        } else {
            Some((&self.coef, self.d))
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.rat)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    fn join_field(&self, other: &Surd) -> Result<u64, SurdError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(SurdError::MixedFields(a, b)),
        }
    }

    pub fn add(&self, other: &Surd) -> Result<Surd, SurdError> {
        let d = self.join_field(other)?;
        Surd::new(&self.rat + &other.rat, &self.coef + &other.coef, d)
    }

    pub fn sub(&self, other: &Surd) -> Result<Surd, SurdError> {
        let d = self.join_field(other)?;
        Surd::new(&self.rat - &other.rat, &self.coef - &other.coef, d)
    }

    pub fn neg(&self) -> Surd {
        Surd { rat: -self.rat.clone(), coef: -self.coef.clone(), d: self.d }
    }

    pub fn mul(&self, other: &Surd) -> Result<Surd, SurdError> {
        let d = self.join_field(other)?;
        let dd = rat_int(d as i64);
        let q = &self.rat * &other.rat + &self.coef * &other.coef * &dd;
        let r = &self.rat * &other.coef + &self.coef * &other.rat;
        Surd::new(q, r, d)
    }

    pub fn mul_rat(&self, c: &Rat) -> Surd {
        let coef = &self.coef * c;
        let d = if coef.is_zero() { 0 } else { self.d };
        Surd { rat: &self.rat * c, coef, d }
    }

    pub fn div(&self, other: &Surd) -> Result<Surd, SurdError> {
        if other.is_zero() {
            return Err(SurdError::DivisionByZero);
        }
        let d = self.join_field(other)?;
        let dd = rat_int(d.max(2) as i64);
        if other.coef.is_zero() {
            let inv = other.rat.recip();
            return Ok(self.mul_rat(&inv));
        }
        // conjugate division; the norm q^2 - r^2 d is nonzero for d squarefree
        let denom = &other.rat * &other.rat - &other.coef * &other.coef * &dd;
        assert!(!denom.is_zero(), "field norm vanished for squarefree radicand");
        let conj = Surd { rat: other.rat.clone(), coef: -other.coef.clone(), d: other.d };
        let num = self.mul(&conj)?;
        Ok(Surd {
            rat: &num.rat / &denom,
            coef: &num.coef / &denom,
            d: if (&num.coef / &denom).is_zero() { 0 } else { d },
        })
    }

    pub fn sign(&self) -> Ordering {
        if self.coef.is_zero() {
            return self.rat.cmp(&Rat::zero());
        }
        if self.rat.is_zero() {
            return self.coef.cmp(&Rat::zero());
        }
        let rs = self.rat.is_positive();
        let cs = self.coef.is_positive();
        if rs == cs {
            return if rs { Ordering::Greater } else { Ordering::Less };
        }
        // opposite signs: compare q^2 against r^2 d; equality is impossible
        // for squarefree d >= 2
        let q2 = &self.rat * &self.rat;
        let r2d = &self.coef * &self.coef * rat_int(self.d as i64);
        match q2.cmp(&r2d) {
            Ordering::Equal => unreachable!("sqrt(d) rational"),
            Ordering::Greater => {
                if rs {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Ordering::Less => {
                if cs {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn cmp_exact(&self, other: &Surd) -> Result<Ordering, SurdError> {
        Ok(self.sub(other)?.sign())
    }

    /// Exact square root if this is the square of a rational.
    pub fn sqrt_rational(&self) -> Option<Rat> {
        self.as_rat().and_then(crate::rat::rat_sqrt_exact)
    }

    /// Rational bounds `(lo, hi)` with width about `10^-digits`.
    pub fn bounds(&self, digits: u32) -> (Rat, Rat) {
        if self.coef.is_zero() {
            return (self.rat.clone(), self.rat.clone());
        }
        let (slo, shi) = sqrt_bounds(self.d, digits + 6);
        let (a, b) = if self.coef.is_positive() {
            (&self.coef * &slo, &self.coef * &shi)
        } else {
            (&self.coef * &shi, &self.coef * &slo)
        };
        (&self.rat + a, &self.rat + b)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.rat) + rat_to_f64(&self.coef) * (self.d as f64).sqrt()
    }

    /// Parses `"p/q"`, `"p/q:surd d"` (meaning `(p/q) sqrt(d)`) or
    /// `"a/b+c/d:surd e"`.
    pub fn parse(s: &str) -> Result<Surd, SurdError> {
        let s = s.trim();
        match s.split_once(":surd") {
            None => Ok(Surd::from_rat(parse_rat(s).map_err(|_| SurdError::Parse(s.into()))?)),
            Some((left, dpart)) => {
                let d: u64 = dpart.trim().parse().map_err(|_| SurdError::Parse(s.into()))?;
                let (q, r) = match left.rsplit_once('+') {
                    Some((qs, rs)) => (
                        parse_rat(qs).map_err(|_| SurdError::Parse(s.into()))?,
                        parse_rat(rs).map_err(|_| SurdError::Parse(s.into()))?,
                    ),
                    None => {
                        (Rat::zero(), parse_rat(left).map_err(|_| SurdError::Parse(s.into()))?)
                    }
                };
                Surd::new(q, r, d)
            }
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some(Ord::cmp(self, other))
    }
}

impl Ord for Surd {
    /// Total order within one quadratic field; panics on mixed fields.
    fn cmp(&self, other: &Surd) -> Ordering {
        self.cmp_exact(other).expect("ordering requires a common quadratic field")
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            write!(f, "{}", rat_str(&self.rat))
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt({})", rat_str(&self.coef), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", rat_str(&self.rat), rat_str(&self.coef), self.d)
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rational bounds on `sqrt(d)` accurate to `10^-digits`.
pub fn sqrt_bounds(d: u64, digits: u32) -> (Rat, Rat) {
    let scale = BigInt::from(10u8).pow(digits);
    let target = BigInt::from(d) * &scale * &scale;
    let lo = crate::rat::bigint_isqrt(&target);
    let lo_r = Rat::new(lo.clone(), scale.clone());
    let hi_r = Rat::new(lo + BigInt::one(), scale);
    (lo_r, hi_r)
}

/// Rational bounds on pi accurate to `10^-digits` (up to 40 digits).
pub fn pi_bounds(digits: u32) -> (Rat, Rat) {
    const PI_DIGITS: &str = "31415926535897932384626433832795028841971";
    let digits = digits.min(40);
    let num: BigInt = PI_DIGITS[..=(digits as usize)].parse().unwrap();
    let den = BigInt::from(10u8).pow(digits);
    let lo = Rat::new(num.clone(), den.clone());
    let hi = Rat::new(num + BigInt::one(), den);
    (lo, hi)
}

/// Certified comparison of the algebraic scalar `x` against `c * pi`.
/// Equality is impossible for `c != 0`, so refinement terminates.
pub fn cmp_with_pi(x: &Surd, c: &Surd) -> Ordering {
    if c.is_zero() {
        return x.sign();
    }
    for digits in [20u32, 30, 40] {
        let (xlo, xhi) = x.bounds(digits);
        let (clo, chi) = c.bounds(digits);
        let (plo, phi) = pi_bounds(digits);
        let candidates = [&clo * &plo, &clo * &phi, &chi * &plo, &chi * &phi];
        let cp_lo = candidates.iter().min().unwrap().clone();
        let cp_hi = candidates.iter().max().unwrap().clone();
        if xhi < cp_lo {
            return Ordering::Less;
        }
        if xlo > cp_hi {
            return Ordering::Greater;
        }
    }
    panic!("cmp_with_pi: could not separate {x} from {c} * pi at 40 digits");
}

/// Largest integer `m >= 0` with `m^2 <= x`, for a nonnegative surd.
pub fn surd_isqrt_floor(x: &Surd) -> u64 {
    assert!(x.sign() != Ordering::Less, "isqrt of negative surd");
    let mut m = x.to_f64().max(0.0).sqrt().floor() as i64;
    if m < 0 {
        m = 0;
    }
    let check = |k: i64| -> bool {
        let k2 = Surd::from_rat(rat_int(k) * rat_int(k));
        x.sub(&k2).unwrap().sign() != Ordering::Less
    };
    while m > 0 && !check(m) {
        m -= 1;
    }
    while check(m + 1) {
        m += 1;
    }
    m as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn s(q: i64, p: i64) -> Surd {
        Surd::from_rat(rat(q, p))
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let a = Surd::new(rat(1, 1), rat(1, 1), 2).unwrap(); // 1 + sqrt2
        let b = Surd::new(rat(0, 1), rat(1, 1), 2).unwrap(); // sqrt2
        let prod = a.mul(&b).unwrap(); // 2 + sqrt2
        assert_eq!(prod, Surd::new(rat(2, 1), rat(1, 1), 2).unwrap());
        let quot = prod.div(&b).unwrap();
        assert_eq!(quot, a);
        // (1+sqrt2)(1-sqrt2) = -1
        let conj = Surd::new(rat(1, 1), rat(-1, 1), 2).unwrap();
        assert_eq!(a.mul(&conj).unwrap(), s(-1, 1));
    }

    #[test]
    fn signs_are_exact() {
        // 3 - 2 sqrt2 > 0 (9 > 8); 7 - 5 sqrt2 < 0 (49 < 50)
        let x = Surd::new(rat(3, 1), rat(-2, 1), 2).unwrap();
        assert!(x.is_positive());
        assert_eq!(x.neg().sign(), Ordering::Less);
        let y = Surd::new(rat(7, 1), rat(-5, 1), 2).unwrap();
        assert_eq!(y.sign(), Ordering::Less);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Surd::new(rat(0, 1), rat(1, 1), 2).unwrap();
        let b = Surd::new(rat(0, 1), rat(1, 1), 3).unwrap();
        assert_eq!(a.add(&b), Err(SurdError::MixedFields(2, 3)));
        assert!(Surd::new(rat(0, 1), rat(1, 1), 4).is_err());
        assert!(Surd::new(rat(0, 1), rat(1, 1), 12).is_err());
    }

    #[test]
    fn bounds_and_pi() {
        let x = Surd::new(rat(0, 1), rat(1, 1), 2).unwrap();
        let (lo, hi) = x.bounds(20);
        // exact sandwich: lo^2 <= 2 <= hi^2 and width below 10^-20
        assert!(&lo * &lo <= rat(2, 1) && rat(2, 1) <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1) / rat(10, 1).pow(20));
        let (plo, phi) = pi_bounds(30);
        assert!(plo < phi);
        assert!(plo > rat(314159265, 100000000) && phi < rat(314159266, 100000000));
        // 3 < pi < sqrt(10)
        assert_eq!(cmp_with_pi(&s(3, 1), &s(1, 1)), Ordering::Less);
        let sqrt10 = Surd::new(rat(0, 1), rat(1, 1), 10).unwrap();
        assert_eq!(cmp_with_pi(&sqrt10, &s(1, 1)), Ordering::Greater);
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(Surd::parse("3/2").unwrap(), s(3, 2));
        assert_eq!(Surd::parse("1:surd 2").unwrap(), Surd::new(rat(0, 1), rat(1, 1), 2).unwrap());
        assert_eq!(
            Surd::parse("1/2+3/4:surd 5").unwrap(),
            Surd::new(rat(1, 2), rat(3, 4), 5).unwrap()
        );
        assert!(Surd::parse("nope").is_err());
    }

    #[test]
    fn isqrt_floor() {
        assert_eq!(surd_isqrt_floor(&s(85, 1)), 9);
        assert_eq!(surd_isqrt_floor(&s(1, 2)), 0);
        let x = Surd::new(rat(10, 1), rat(1, 1), 2).unwrap(); // about 11.41
        assert_eq!(surd_isqrt_floor(&x), 3);
    }

    #[test]
    fn division_edge_cases() {
        let half = s(1, 2);
        let sqrt2 = Surd::new(rat(0, 1), rat(1, 1), 2).unwrap();
        // (1/2) / sqrt2 = sqrt2/4
        let q = half.div(&sqrt2).unwrap();
        assert_eq!(q, Surd::new(rat(0, 1), rat(1, 4), 2).unwrap());
        assert_eq!(half.div(&s(0, 1)), Err(SurdError::DivisionByZero));
        // division collapsing to a rational resets the field tag
        let r = sqrt2.div(&sqrt2).unwrap();
        assert!(r.is_rational());
        assert!(r.add(&Surd::new(rat(0, 1), rat(1, 1), 3).unwrap()).is_ok());
    }
}
