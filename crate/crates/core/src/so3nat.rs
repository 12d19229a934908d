//! Closed geodesics, cleanliness, fixed-point components, DG volumes and
//! leading wave terms of the left-invariant naturally reductive metrics
//! `g(alpha, alpha, A)` on SO(3).
//!
//! All period arithmetic happens on the coefficient `r` with
//! `tau^2 = r * l0^2`, `l0^2 = 8 pi^2` kept symbolic. Scalars live in Q or a
//! single real quadratic field chosen at metric construction.
//!
//! ```
//! use weylspec::rat::rat;
//! use weylspec::so3nat::{classify_cleanliness, epsilon_set, type3_morse_index,
//!     Cleanliness, SO3Metric};
//! use weylspec::surd::Surd;
//!
//! let metric = SO3Metric::new(Surd::from_int(1), Surd::from_rat(rat(1, 2))).unwrap();
//! // A = alpha/2 = 2 alpha / 4 is unclean with (j, k) = (1, 4)
//! assert_eq!(classify_cleanliness(&metric), Cleanliness::Unclean { j: 1, k: 4 });
//! // the only Type III geodesic of squared-length coefficient 5 is (p, q) = (1, 2)
//! assert_eq!(epsilon_set(&metric, &Surd::from_int(5)).unwrap(), vec![(1, 2)]);
//! assert_eq!(type3_morse_index(&metric, 1, 2).unwrap(), 3);
//! ```

use crate::rat::{rat, rat_int, rat_str, Rat};
use crate::surd::{surd_isqrt_floor, Surd, SurdError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum So3Error {
    #[error(transparent)]
    Surd(#[from] SurdError),
    #[error("metric parameters must be positive")]
    NonPositiveMetric,
    #[error("operation requires alpha != A")]
    BiInvariant,
    #[error("period coefficient must be positive")]
    NonPositiveR,
    #[error("{0} is not a period coefficient of this metric")]
    NotAPeriod(String),
    #[error("(p, q) = ({0}, {1}) is not a valid Type III pair for this metric")]
    InvalidPair(u64, u64),
}

/// Left-invariant naturally reductive metric `alpha g0 on m + A g0 on K`.
#[derive(Debug, Clone)]
pub struct SO3Metric {
    pub alpha: Surd,
    pub a_k: Surd,
}

impl SO3Metric {
    pub fn new(alpha: Surd, a_k: Surd) -> Result<SO3Metric, So3Error> {
        if !alpha.is_positive() || !a_k.is_positive() {
            return Err(So3Error::NonPositiveMetric);
        }
        // force a common field now so later arithmetic cannot mix
        alpha.add(&a_k)?;
        Ok(SO3Metric { alpha, a_k })
    }

    pub fn is_bi_invariant(&self) -> bool {
        self.alpha == self.a_k
    }

    /// `t = A / (alpha - A)`; negative when `A > alpha`.
    fn t_param(&self) -> Result<Surd, So3Error> {
        let diff = self.alpha.sub(&self.a_k)?;
        if diff.is_zero() {
            return Err(So3Error::BiInvariant);
        }
        Ok(self.a_k.div(&diff)?)
    }

    /// `sigma(p, q) = alpha^2 (q^2/p^2 - A^2/(alpha - A)^2)`, positive for
    /// every valid Type III pair.
    pub fn sigma(&self, p: u64, q: u64) -> Result<Surd, So3Error> {
        let t = self.t_param()?;
        let a2 = self.alpha.mul(&self.alpha)?;
        let q2p2 = Surd::from_rat(rat((q * q) as i64, (p * p) as i64));
        let t2 = t.mul(&t)?;
        let s = a2.mul(&q2p2.sub(&t2)?)?;
        if !s.is_positive() {
            return Err(So3Error::InvalidPair(p, q));
        }
        Ok(s)
    }

    /// vol(g) = alpha sqrt(A) V0 enters the volumes through sqrt(2 alpha^2 A).
    fn vol_radicand(&self) -> Surd {
        self.alpha
            .mul(&self.alpha)
            .and_then(|a2| a2.mul(&self.a_k))
            .map(|x| x.mul_rat(&rat_int(2)))
            .expect("single field")
    }
}

/// The finite set of relatively prime `(p, q)` with `q/p > |A/(A-alpha)|`
/// and `q^2 + p^2 A/(alpha - A) = r/alpha`, by exact traversal of the
/// ellipse (`A < alpha`) or hyperbola (`A > alpha`) lattice constraint.
pub fn epsilon_set(metric: &SO3Metric, r: &Surd) -> Result<Vec<(u64, u64)>, So3Error> {
    if !r.is_positive() {
        return Err(So3Error::NonPositiveR);
    }
    let t = metric.t_param()?;
    let x = r.div(&metric.alpha)?;
    // p range: ellipse t p^2 < X, or hyperbola gap p^2 < X / (|t|(|t|-1))
    let p_max = if t.is_positive() {
        surd_isqrt_floor(&x.div(&t)?)
    } else {
        let gap = t.mul(&t)?.add(&t)?; // = |t|(|t| - 1) for t < -1
        assert!(gap.is_positive(), "hyperbola asymptote gap must be positive");
        surd_isqrt_floor(&x.div(&gap)?)
    };
    let mut out = Vec::new();
    for p in 1..=p_max.max(1) {
        let p2 = Surd::from_rat(rat_int((p * p) as i64));
        let q2 = x.sub(&t.mul(&p2)?)?;
        if !q2.is_positive() {
            continue;
        }
        let Some(qr) = q2.sqrt_rational() else { continue };
        if !qr.denom().is_one() {
            continue;
        }
        let Ok(q) = qr.numer().to_string().parse::<u64>() else { continue };
        if q == 0 || q.gcd(&p) != 1 {
            continue;
        }
        // strict slope constraint q |A - alpha| > p A
        let diff = metric.alpha.sub(&metric.a_k)?;
        let abs_diff = if diff.is_positive() { diff } else { diff.neg() };
        let lhs = abs_diff.mul_rat(&rat_int(q as i64));
        let rhs = metric.a_k.mul_rat(&rat_int(p as i64));
        if lhs.cmp_exact(&rhs)? == Ordering::Greater {
            out.push((p, q));
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentType {
    BiInvariant,
    TypeI,
    TypeII,
    TypeIII,
}

/// Symbolic DG volume:
/// `rational * sqrt(radicand) * pi^(pi_halves/2) * tau^(tau_halves/2)`.
#[derive(Debug, Clone)]
pub struct DgVolume {
    pub rational: Rat,
    pub radicand: Surd,
    pub pi_halves: i32,
    pub tau_halves: i32,
}

impl DgVolume {
    /// Float rendering at `tau = l0 sqrt(r)`.
    pub fn to_f64(&self, r: &Surd) -> f64 {
        let tau = 2.0 * 2.0f64.sqrt() * PI * r.to_f64().sqrt();
        crate::rat::rat_to_f64(&self.rational)
            * self.radicand.to_f64().sqrt()
            * PI.powf(self.pi_halves as f64 / 2.0)
            * tau.powf(self.tau_halves as f64 / 2.0)
    }

    pub fn descriptor(&self) -> String {
        format!(
            "{} * sqrt({}) * pi^({}/2) * tau^({}/2)",
            rat_str(&self.rational),
            self.radicand,
            self.pi_halves,
            self.tau_halves
        )
    }
}

/// One family of fixed-point components at a period.
#[derive(Debug, Clone)]
pub struct SO3Component {
    pub ctype: ComponentType,
    /// Dimension of each component in the unit tangent bundle.
    pub dim: u32,
    /// Number of isometric copies (Types II and III come in +- pairs).
    pub count: u32,
    /// Primitive pair for Type III.
    pub pq: Option<(u64, u64)>,
    /// Which iterate of the primitive geodesic closes at this period.
    pub iterate: u64,
    /// Exact Morse index (Type III only; Types I/II take theirs from the
    /// numeric conjugate-point oracle and are marked as such in reports).
    pub morse: Option<u64>,
    pub dg_volume: DgVolume,
}

#[derive(Debug, Clone)]
pub struct SO3Period {
    /// `tau^2 = r * l0^2`.
    pub r: Surd,
    pub components: Vec<SO3Component>,
    pub clean: bool,
}

impl SO3Period {
    pub fn types_present(&self) -> BTreeSet<ComponentType> {
        self.components.iter().map(|c| c.ctype).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cleanliness {
    Clean,
    /// `A = 2 alpha j / k` with `gcd(j, k) = 1`; unclean periods are exactly
    /// `r = (mk)^2 A`.
    Unclean { j: u64, k: u64 },
}

/// Exact cleanliness verdict: unclean iff `A/alpha` is rational and not 1.
pub fn classify_cleanliness(metric: &SO3Metric) -> Cleanliness {
    let ratio = metric.a_k.div(&metric.alpha).expect("single field");
    let Some(rho) = ratio.as_rat() else {
        return Cleanliness::Clean;
    };
    if rho.is_one() {
        return Cleanliness::Clean;
    }
    // A/alpha = p/q in lowest terms; write as 2j/k with gcd(j, k) = 1
    let p = rho.numer().clone();
    let q = rho.denom().clone();
    let (j, k) = if p.is_even() { (p / BigInt::from(2), q) } else { (p, q * BigInt::from(2)) };
    Cleanliness::Unclean {
        j: j.to_string().parse().expect("j fits u64"),
        k: k.to_string().parse().expect("k fits u64"),
    }
}

/// Whether the period coefficient `r` is unclean: `r = (mk)^2 A`, `m >= 1`.
pub fn is_unclean_period(metric: &SO3Metric, r: &Surd) -> bool {
    let Cleanliness::Unclean { k, .. } = classify_cleanliness(metric) else {
        return false;
    };
    let s = r.div(&metric.a_k).expect("single field");
    let Some(root) = s.sqrt_rational() else { return false };
    if !root.denom().is_one() {
        return false;
    }
    let Ok(m) = root.numer().to_string().parse::<u64>() else { return false };
    m >= k && m % k == 0
}

fn dg_volume_for(metric: &SO3Metric, ctype: ComponentType, pq: Option<(u64, u64)>) -> DgVolume {
    let v2aa = metric.vol_radicand();
    match ctype {
        ComponentType::BiInvariant => {
            DgVolume { rational: rat_int(64), radicand: v2aa, pi_halves: 6, tau_halves: 0 }
        }
        ComponentType::TypeI => {
            DgVolume { rational: rat_int(32), radicand: v2aa, pi_halves: 6, tau_halves: -1 }
        }
        ComponentType::TypeII => {
            DgVolume { rational: rat_int(16), radicand: v2aa, pi_halves: 4, tau_halves: -2 }
        }
        ComponentType::TypeIII => {
            let (p, q) = pq.expect("Type III carries its pair");
            let sigma = metric.sigma(p, q).expect("valid pair");
            let ratio =
                sigma.div(&sigma.add(&Surd::from_int(1)).unwrap()).expect("sigma + 1 > 0");
            DgVolume {
                rational: rat_int(32),
                radicand: v2aa.mul(&ratio).expect("single field"),
                pi_halves: 6,
                tau_halves: -1,
            }
        }
    }
}

/// Returns `m` if `r = m^2 * base` for a positive integer `m`.
fn square_multiple(r: &Surd, base: &Surd) -> Option<u64> {
    let s = r.div(base).ok()?;
    let root = s.sqrt_rational()?;
    if !root.denom().is_one() {
        return None;
    }
    let m: u64 = root.numer().to_string().parse().ok()?;
    if m >= 1 {
        Some(m)
    } else {
        None
    }
}

/// All fixed-point components at period coefficient `r`, which must belong
/// to the length spectrum.
pub fn fix_components(metric: &SO3Metric, r: &Surd) -> Result<Vec<SO3Component>, So3Error> {
    if !r.is_positive() {
        return Err(So3Error::NonPositiveR);
    }
    if metric.is_bi_invariant() {
        return match square_multiple(r, &metric.alpha) {
            Some(m) => Ok(vec![SO3Component {
                ctype: ComponentType::BiInvariant,
                dim: 5,
                count: 1,
                pq: None,
                iterate: m,
                morse: None,
                dg_volume: dg_volume_for(metric, ComponentType::BiInvariant, None),
            }]),
            None => Err(So3Error::NotAPeriod(format!("{r}"))),
        };
    }
    let mut out = Vec::new();
    if let Some(m) = square_multiple(r, &metric.alpha) {
        out.push(SO3Component {
            ctype: ComponentType::TypeI,
            dim: 4,
            count: 1,
            pq: None,
            iterate: m,
            morse: None,
            dg_volume: dg_volume_for(metric, ComponentType::TypeI, None),
        });
    }
    if let Some(m) = square_multiple(r, &metric.a_k) {
        out.push(SO3Component {
            ctype: ComponentType::TypeII,
            dim: 3,
            count: 2,
            pq: None,
            iterate: m,
            morse: None,
            dg_volume: dg_volume_for(metric, ComponentType::TypeII, None),
        });
    }
    // Type III: primitives whose m-th iterate lands on r
    let m_cap = surd_isqrt_floor(&r.div(&metric.alpha)?).max(1);
    for m in 1..=m_cap {
        let base = r.div(&Surd::from_int((m * m) as i64))?;
        for (p, q) in epsilon_set(metric, &base)? {
            let morse = Some(type3_morse_index_iterate(metric, p, q, m)?);
            out.push(SO3Component {
                ctype: ComponentType::TypeIII,
                dim: 4,
                count: 2,
                pq: Some((p, q)),
                iterate: m,
                morse,
                dg_volume: dg_volume_for(metric, ComponentType::TypeIII, Some((p, q))),
            });
        }
    }
    if out.is_empty() {
        return Err(So3Error::NotAPeriod(format!("{r}")));
    }
    Ok(out)
}

/// All periods with coefficient at most `bound`, annotated with components
/// and cleanliness, sorted by `r`.
pub fn length_spectrum(metric: &SO3Metric, bound: &Surd) -> Result<Vec<SO3Period>, So3Error> {
    let mut coeffs: BTreeSet<Surd> = BTreeSet::new();
    let within =
        |v: &Surd| v.cmp_exact(bound).map(|o| o != Ordering::Greater).unwrap_or(false);
    for m in 1..=surd_isqrt_floor(&bound.div(&metric.alpha)?) {
        coeffs.insert(metric.alpha.mul_rat(&rat_int((m * m) as i64)));
    }
    if !metric.is_bi_invariant() {
        for m in 1..=surd_isqrt_floor(&bound.div(&metric.a_k)?) {
            coeffs.insert(metric.a_k.mul_rat(&rat_int((m * m) as i64)));
        }
        // Type III primitives and their iterates
        let t = metric.t_param()?;
        let x_bound = bound.div(&metric.alpha)?;
        let p_max = if t.is_positive() {
            surd_isqrt_floor(&x_bound.div(&t)?)
        } else {
            let gap = t.mul(&t)?.add(&t)?;
            surd_isqrt_floor(&x_bound.div(&gap)?)
        };
        for p in 1..=p_max.max(1) {
            let p2 = Surd::from_rat(rat_int((p * p) as i64));
            let tp2 = t.mul(&p2)?;
            let q2max = x_bound.sub(&tp2)?;
            if !q2max.is_positive() {
                continue;
            }
            for q in 1..=surd_isqrt_floor(&q2max) {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let diff = metric.alpha.sub(&metric.a_k)?;
                let abs_diff = if diff.is_positive() { diff } else { diff.neg() };
                if abs_diff
                    .mul_rat(&rat_int(q as i64))
                    .cmp_exact(&metric.a_k.mul_rat(&rat_int(p as i64)))?
                    != Ordering::Greater
                {
                    continue;
                }
                let q2 = Surd::from_rat(rat_int((q * q) as i64));
                let r_prim = metric.alpha.mul(&q2.add(&tp2)?)?;
                if !r_prim.is_positive() {
                    continue;
                }
                let mut m = 1u64;
                loop {
                    let r = r_prim.mul_rat(&rat_int((m * m) as i64));
                    if !within(&r) {
                        break;
                    }
                    coeffs.insert(r);
                    m += 1;
                }
            }
        }
    }
    let mut periods = Vec::new();
    for r in coeffs {
        let components = fix_components(metric, &r)?;
        let clean = !is_unclean_period(metric, &r);
        periods.push(SO3Period { r, components, clean });
    }
    Ok(periods)
}

/// Frequency of the periodic conjugate family along the primitive Type III
/// geodesic: conjugate times include `(2 pi / a) N` with
/// `a^2 = q^2 / (2 alpha (q^2 + p^2 A/(alpha - A)))`, i.e. spacing exactly
/// `L/q`. Derived from the co-rotating-frame Jacobi determinant
/// `det N(t) = (2t/a^2) sin(at/2) [2(1+mu) sin(at/2) - mu a t cos(at/2)]`
/// and cross-checked against the numeric flow linearization.
pub fn type3_a_sq(metric: &SO3Metric, p: u64, q: u64) -> Result<Surd, So3Error> {
    metric.sigma(p, q)?; // validates the pair
    let t = metric.t_param()?;
    let q2 = Surd::from_rat(rat_int((q * q) as i64));
    let p2 = Surd::from_rat(rat_int((p * p) as i64));
    let denom = metric.alpha.mul(&q2.add(&t.mul(&p2)?)?)?.mul_rat(&rat_int(2));
    let a_sq = q2.div(&denom)?;
    assert!(a_sq.is_positive(), "conjugate frequency must be positive");
    Ok(a_sq)
}

/// The coupling constant of the Jacobi determinant:
/// `mu = -(alpha - A) sigma p^2 / (alpha^3 q^2)`; always above -1, positive
/// exactly when `A > alpha`.
pub fn type3_mu(metric: &SO3Metric, p: u64, q: u64) -> Result<Surd, So3Error> {
    let sigma = metric.sigma(p, q)?;
    let diff = metric.a_k.sub(&metric.alpha)?; // A - alpha
    let a3 = metric.alpha.mul(&metric.alpha)?.mul(&metric.alpha)?;
    let num = diff.mul(&sigma)?.mul_rat(&rat((p * p) as i64, (q * q) as i64));
    Ok(num.div(&a3)?)
}

/// `L^2 / pi^2` of the primitive Type III geodesic: `8 alpha (q^2 + p^2 t)`.
pub fn type3_primitive_len_sq_over_pi_sq(
    metric: &SO3Metric,
    p: u64,
    q: u64,
) -> Result<Surd, So3Error> {
    metric.sigma(p, q)?; // validates the pair
    let t = metric.t_param()?;
    let q2 = Surd::from_rat(rat_int((q * q) as i64));
    let p2 = Surd::from_rat(rat_int((p * p) as i64));
    Ok(metric.alpha.mul(&q2.add(&t.mul(&p2)?)?)?.mul_rat(&rat_int(8)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConjTimeKind {
    /// `t = 2 pi m / a`: the evenly spaced family at multiples of `L/q`.
    Periodic { m: u64, a_sq: Surd },
    /// Root of `tan(theta/2) = slope * theta` (theta = a t) in its k-th
    /// branch interval; interlaces the periodic family, one per period.
    Transcendental { k: u64, theta: f64 },
}

#[derive(Debug, Clone)]
pub struct ConjTime {
    pub kind: ConjTimeKind,
    pub multiplicity: u32,
    pub t_f64: f64,
}

/// Conjugate times along the primitive Type III geodesic, sorted, up to the
/// length whose square is `pi^2 * up_to_len_sq_over_pi_sq`. Two interlacing
/// families, each with simple zeros of the Jacobi determinant (multiplicity
/// one): the periodic family `2 pi m / a` and the transcendental family
/// `tan(a t / 2) = slope * a t` with `slope = mu / (2 (1 + mu))`. The two
/// families can never coincide (the transcendental roots avoid the tangent
/// zeros exactly), so multiplicities never add.
pub fn type3_conjugate_times(
    metric: &SO3Metric,
    p: u64,
    q: u64,
    up_to_len_sq_over_pi_sq: &Surd,
) -> Result<Vec<ConjTime>, So3Error> {
    let a_sq = type3_a_sq(metric, p, q)?;
    let a = a_sq.to_f64().sqrt();
    let mu = type3_mu(metric, p, q)?;
    let mut out: Vec<ConjTime> = Vec::new();
    // periodic family: (2 pi m / a)^2 <= pi^2 B  <=>  4 m^2 <= a^2 B
    let cap = a_sq.mul(up_to_len_sq_over_pi_sq)?.div(&Surd::from_int(4))?;
    if cap.is_positive() {
        for m in 1..=surd_isqrt_floor(&cap) {
            out.push(ConjTime {
                kind: ConjTimeKind::Periodic { m, a_sq: a_sq.clone() },
                multiplicity: 1,
                t_f64: 2.0 * PI * m as f64 / a,
            });
        }
    }
    // transcendental family: one root per branch interval;
    // theta window (0, theta_max) with theta_max = a * pi * sqrt(B):
    // theta_max^2 = pi^2 (a^2 B)
    let theta_max_sq_over_pi_sq = a_sq.mul(up_to_len_sq_over_pi_sq)?;
    let theta_max = PI * theta_max_sq_over_pi_sq.to_f64().max(0.0).sqrt();
    let slope = mu.div(&mu.add(&Surd::from_int(1))?.mul_rat(&rat_int(2)))?;
    let slope_f = slope.to_f64();
    let positive_mu = mu.is_positive();
    // h(theta) = sin(theta/2) - slope * theta * cos(theta/2): continuous
    // surrogate with the same transcendental roots
    let h = |theta: f64| (theta / 2.0).sin() - slope_f * theta * (theta / 2.0).cos();
    let mut k = 0u64;
    loop {
        // branch k: interval ((2k+1) pi, (2k+2) pi) for mu < 0,
        //           (2 pi k, (2k+1) pi) for mu > 0 with k >= 1
        let (lo_halves, hi_halves) = if positive_mu {
            if k == 0 {
                // no root in (0, pi): the slope stays below 1/2 exactly
                k = 1;
                continue;
            }
            (2 * k, 2 * k + 1)
        } else {
            (2 * k + 1, 2 * k + 2)
        };
        let lo = lo_halves as f64 * PI;
        if lo >= theta_max {
            // interval start beyond the window: exact check on the window
            // edge, (lo/pi)^2 >= a^2 B
            let lo_sq = Surd::from_int((lo_halves * lo_halves) as i64);
            if lo_sq.cmp_exact(&theta_max_sq_over_pi_sq)? != Ordering::Less {
                break;
            }
        }
        let hi = (hi_halves as f64 * PI).min(theta_max);
        let mut a_br = lo + 1e-12;
        let mut b_br = hi - 1e-12;
        if h(a_br).signum() == h(b_br).signum() {
            // root (if any) lies beyond the truncated window edge
            k += 1;
            if lo > theta_max {
                break;
            }
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a_br + b_br);
            if h(mid).signum() == h(a_br).signum() {
                a_br = mid;
            } else {
                b_br = mid;
            }
        }
        let theta = 0.5 * (a_br + b_br);
        out.push(ConjTime {
            kind: ConjTimeKind::Transcendental { k, theta },
            multiplicity: 1,
            t_f64: theta / a,
        });
        k += 1;
        if (hi_halves as f64) * PI > theta_max {
            break;
        }
    }
    out.retain(|c| c.t_f64 <= theta_max / a + 1e-12);
    out.sort_by(|x, y| x.t_f64.partial_cmp(&y.t_f64).unwrap());
    Ok(out)
}

/// Morse index of the m-th iterate of the primitive Type III geodesic:
/// conjugate times counted with multiplicity strictly inside `(0, m L)`.
/// The theta-window is exactly `(0, 2 pi q m)`, so the count is closed-form:
/// `q m - 1` periodic times plus `q m` transcendental times for
/// `alpha > A` (one in each ((2k+1)pi, (2k+2)pi)), or `q m - 1` for
/// `alpha < A` (one in each (2 pi k, (2k+1)pi), k >= 1; the k = 0 branch is
/// empty because the slope is exactly below 1/2).
pub fn type3_morse_index_iterate(
    metric: &SO3Metric,
    p: u64,
    q: u64,
    m: u64,
) -> Result<u64, So3Error> {
    metric.sigma(p, q)?; // validates the pair
    let qm = q * m;
    let periodic = qm - 1;
    let transcendental = if metric.alpha.cmp_exact(&metric.a_k)? == Ordering::Greater {
        qm
    } else {
        qm - 1
    };
    Ok(periodic + transcendental)
}

/// Morse index of the primitive Type III geodesic.
pub fn type3_morse_index(metric: &SO3Metric, p: u64, q: u64) -> Result<u64, So3Error> {
    type3_morse_index_iterate(metric, p, q, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wave0Case {
    BiInvariant,
    TypeIIMinimum,
    TypeIMinimum,
}

/// Leading wave term at the shortest nontrivial closed geodesic.
#[derive(Debug, Clone)]
pub struct Wave0Report {
    pub case_: Wave0Case,
    /// `tau_min^2 = r * l0^2`.
    pub taumin_r: Surd,
    /// Parity carrying the nonzero term; the other parity vanishes at all
    /// orders.
    pub parity_odd: bool,
    pub magnitude: DgVolume,
    /// Explicit sign for the bi-invariant case (where sigma = 0).
    pub sign: i8,
    /// Phase `i^{-(sigma + offset)}` with sigma supplied numerically for
    /// Types I/II.
    pub phase_sigma_offset: Option<i64>,
    pub note: String,
}

/// `Wave_0(tau_min)`; `tau_min` is always clean.
pub fn wave0_taumin(metric: &SO3Metric) -> Wave0Report {
    let v2aa = metric.vol_radicand();
    if metric.is_bi_invariant() {
        // -vol/pi = -16 sqrt(2 alpha^2 A) pi
        return Wave0Report {
            case_: Wave0Case::BiInvariant,
            taumin_r: metric.alpha.clone(),
            parity_odd: true,
            magnitude: DgVolume {
                rational: rat_int(16),
                radicand: v2aa,
                pi_halves: 2,
                tau_halves: 0,
            },
            sign: -1,
            phase_sigma_offset: None,
            note: "all closed geodesics at tau_min have Morse index 0; even-parity wave \
                   coefficients vanish identically"
                .into(),
        };
    }
    if metric.a_k.cmp_exact(&metric.alpha).expect("single field") == Ordering::Less {
        // tau_min = sqrt(A) l0, Type II pair: |Wave_0| = vol / (pi tau)
        Wave0Report {
            case_: Wave0Case::TypeIIMinimum,
            taumin_r: metric.a_k.clone(),
            parity_odd: true,
            magnitude: DgVolume {
                rational: rat_int(16),
                radicand: v2aa,
                pi_halves: 2,
                tau_halves: -2,
            },
            sign: 1,
            phase_sigma_offset: Some(1),
            note: "phase i^-(sigma+1) with sigma the common numeric Morse index of the \
                   Type II pair; even-parity wave coefficients vanish identically"
                .into(),
        }
    } else {
        // tau_min = sqrt(alpha) l0, one Type I component:
        // |Wave_0| = (2 pi)^{-1/2} vol / sqrt(tau)
        //          = 16 pi^{3/2} sqrt(alpha^2 A) / sqrt(tau)
        let radicand = metric
            .alpha
            .mul(&metric.alpha)
            .and_then(|x| x.mul(&metric.a_k))
            .expect("single field");
        Wave0Report {
            case_: Wave0Case::TypeIMinimum,
            taumin_r: metric.alpha.clone(),
            parity_odd: false,
            magnitude: DgVolume { rational: rat_int(16), radicand, pi_halves: 3, tau_halves: -1 },
            sign: 1,
            phase_sigma_offset: Some(0),
            note: "phase i^-sigma with sigma the numeric Morse index; the branch of \
                   (1/(2 pi i))^{3/2} is reported separately from the magnitude; \
                   odd-parity wave coefficients vanish identically"
                .into(),
        }
    }
}

/// Singular-support certificates up to `bound`.
#[derive(Debug, Clone)]
pub struct SupportReport {
    /// Clean periods carried by Type I components or Type II pairs (equal
    /// indices), plus everything in the bi-invariant case.
    pub certified: Vec<Surd>,
    /// Clean periods realizable only through Type III components, whose
    /// residues may mix.
    pub undetermined: Vec<Surd>,
    /// Unclean periods: outside the method entirely.
    pub unclean: Vec<Surd>,
}

pub fn certified_singular_support(
    metric: &SO3Metric,
    bound: &Surd,
) -> Result<SupportReport, So3Error> {
    let mut report =
        SupportReport { certified: Vec::new(), undetermined: Vec::new(), unclean: Vec::new() };
    for period in length_spectrum(metric, bound)? {
        if !period.clean {
            report.unclean.push(period.r.clone());
            continue;
        }
        let types = period.types_present();
        let anchored = types.contains(&ComponentType::BiInvariant)
            || types.contains(&ComponentType::TypeI)
            || types.contains(&ComponentType::TypeII);
        if anchored {
            report.certified.push(period.r.clone());
        } else {
            report.undetermined.push(period.r.clone());
        }
    }
    Ok(report)
}

/// Predicted kernel dimension of `(monodromy - identity)` on the full 6-dim
/// linearized flow at a point of the component: equals the component
/// dimension at a clean period (the flow direction is tangent to the
/// component; the radial direction is sheared, never fixed). At an unclean
/// Type II period the rotation block joins the kernel and adds 2. The 4-dim
/// Poincare-reduced kernel is this value minus 1.
pub fn predicted_monodromy_fixed_dim(component: &SO3Component, clean_at_r: bool) -> u32 {
    if component.ctype == ComponentType::TypeII && !clean_at_r {
        component.dim + 2
    } else {
        component.dim
    }
}
