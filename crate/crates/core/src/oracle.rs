//! Floating-point verifiers for the exact SO(3) engine: Rodrigues
//! exponentials for geodesic closure, the rigid-body realization of the
//! left-invariant geodesic flow, linearized-flow monodromy for cleanliness,
//! numeric conjugate-point counting, and an exhaustive box enumerator that
//! cross-checks the exact lattice enumeration.
//!
//! Conventions: algebra elements are coefficient vectors in the
//! `g0`-orthonormal basis `Theta_1..Theta_3`, whose matrix realization is
//! `M(u) = hat(u)/sqrt(2)`; the bi-invariant unit-speed period is
//! `l0 = 2 sqrt(2) pi`. Tolerance ladder: integration 1e-10 per unit time,
//! closure certification 1e-9, eigenvalue-1 clustering 1e-5.

use crate::linalg::RatMat;
use crate::rat::{rat_int, rat_isqrt_floor, Rat};
use nalgebra::{Matrix3, Matrix6, SMatrix, Vector3};
use num_traits::{Signed, ToPrimitive};

pub const L0: f64 = std::f64::consts::TAU * std::f64::consts::SQRT_2; // 2 sqrt2 pi

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("integrator failed at t = {at}: step size underflow")]
    StepFailure { at: f64 },
    #[error("monodromy eigenvalue-1 cluster straddles the tolerance: singular values {below:?} | {above:?}")]
    ToleranceStraddle { below: Vec<f64>, above: Vec<f64> },
    #[error("near-zero tangency of the Jacobi determinant at t = {at} (|det| = {value:.3e})")]
    Tangency { at: f64, value: f64 },
    #[error("brute enumeration guard: dimension {dim} > 6 or bound {bound} > 30")]
    GuardRail { dim: usize, bound: String },
    #[error("form must be positive definite for box enumeration")]
    NotPositiveDefinite,
}

/// Inertia-like metric data `diag(alpha, alpha, A)` in the Theta frame.
#[derive(Debug, Clone, Copy)]
pub struct NatMetric {
    pub alpha: f64,
    pub a: f64,
}

/// hat map: `hat(u) v = u x v`.
pub fn hat(u: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -u.z, u.y, u.z, 0.0, -u.x, -u.y, u.x, 0.0)
}

/// Matrix realization of the algebra element with Theta-frame coefficients
/// `u`: rotation generator with angular speed `|u|/sqrt(2)`.
pub fn body_matrix(u: &Vector3<f64>) -> Matrix3<f64> {
    hat(u) / 2f64.sqrt()
}

/// Rodrigues exponential of a skew matrix.
pub fn so3_exp(x: &Matrix3<f64>) -> Matrix3<f64> {
    let w = Vector3::new(x[(2, 1)], x[(0, 2)], x[(1, 0)]);
    let theta = w.norm();
    if theta < 1e-12 {
        return Matrix3::identity() + x + x * x / 2.0;
    }
    let k = x / theta;
    Matrix3::identity() + k * theta.sin() + k * k * (1.0 - theta.cos())
}

/// Frobenius distance from orthogonality (det +1 branch).
pub fn orthogonality_residual(r: &Matrix3<f64>) -> f64 {
    ((r.transpose() * r) - Matrix3::identity()).norm() + (r.determinant() - 1.0).abs()
}

/// `|| exp(L V) exp(-L W) - I ||_F`: zero exactly at the closure parameters
/// of the naturally reductive geodesic through the identity.
pub fn closure_residual(v: &Vector3<f64>, w: &Vector3<f64>, l: f64) -> f64 {
    let a = so3_exp(&(body_matrix(v) * l));
    let b = so3_exp(&(body_matrix(w) * (-l)));
    (a * b - Matrix3::identity()).norm()
}

/// Initial data `(V, W)` of a g-unit Type I geodesic.
pub fn type_i_data(m: &NatMetric) -> (Vector3<f64>, Vector3<f64>) {
    (Vector3::new(1.0 / m.alpha.sqrt(), 0.0, 0.0), Vector3::zeros())
}

/// Initial data `(V, W) = (Abar Z, -alpha Z)` of a g-unit Type II geodesic.
pub fn type_ii_data(m: &NatMetric) -> (Vector3<f64>, Vector3<f64>) {
    let abar = m.a * m.alpha / (m.alpha - m.a);
    let z = 1.0 / (m.a.sqrt() * (abar + m.alpha).abs());
    (Vector3::new(0.0, 0.0, abar * z), Vector3::new(0.0, 0.0, -m.alpha * z))
}

/// Initial data of a g-unit Type III geodesic for the coprime pair `(p, q)`:
/// `(X + Abar Z, -alpha Z)` with `|X|^2 = sigma |Z|^2`.
pub fn type_iii_data(m: &NatMetric, p: u64, q: u64) -> (Vector3<f64>, Vector3<f64>) {
    let abar = m.a * m.alpha / (m.alpha - m.a);
    let sigma = m.alpha * m.alpha * ((q * q) as f64 / (p * p) as f64)
        - m.a * m.a * m.alpha * m.alpha / ((m.alpha - m.a) * (m.alpha - m.a));
    assert!(sigma > 0.0, "invalid Type III pair");
    // g-unit speed: alpha x^2 + A (Abar + alpha)^2 z^2 = 1
    let z2 = 1.0 / (m.alpha * sigma + m.a * (abar + m.alpha) * (abar + m.alpha));
    let z = z2.sqrt();
    let x = (sigma * z2).sqrt();
    (Vector3::new(x, 0.0, abar * z), Vector3::new(0.0, 0.0, -m.alpha * z))
}

/// Euler-Arnold right-hand side for the body velocity:
/// `xi' = I^{-1} ((1/sqrt2) (I xi) x xi)`.
fn euler_rhs(m: &NatMetric, xi: &Vector3<f64>) -> Vector3<f64> {
    let c = (m.alpha - m.a) / (2f64.sqrt() * m.alpha);
    Vector3::new(c * xi.y * xi.z, -c * xi.x * xi.z, 0.0)
}

/// Jacobian of the Euler right-hand side.
fn euler_jac(m: &NatMetric, xi: &Vector3<f64>) -> Matrix3<f64> {
    let c = (m.alpha - m.a) / (2f64.sqrt() * m.alpha);
    Matrix3::new(0.0, c * xi.z, c * xi.y, -c * xi.z, 0.0, -c * xi.x, 0.0, 0.0, 0.0)
}

#[derive(Debug, Clone)]
pub struct FlowState {
    pub attitude: Matrix3<f64>,
    pub body_velocity: Vector3<f64>,
}

impl FlowState {
    pub fn identity_with_velocity(xi: Vector3<f64>) -> FlowState {
        FlowState { attitude: Matrix3::identity(), body_velocity: xi }
    }

    pub fn energy(&self, m: &NatMetric) -> f64 {
        let xi = &self.body_velocity;
        m.alpha * (xi.x * xi.x + xi.y * xi.y) + m.a * xi.z * xi.z
    }

    pub fn casimir(&self, m: &NatMetric) -> f64 {
        let xi = &self.body_velocity;
        let mm = Vector3::new(m.alpha * xi.x, m.alpha * xi.y, m.a * xi.z);
        mm.norm_squared()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl { tol: 1e-12, max_steps: 2_000_000 }
    }
}

/// Dormand-Prince 5(4) adaptive step over a generic state vector.
fn dp45<F: Fn(&[f64], &mut [f64])>(
    rhs: F,
    y: &mut Vec<f64>,
    t_end: f64,
    ctrl: &StepControl,
) -> Result<(), OracleError> {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const B5: [f64; 7] =
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let n = y.len();
    let dir = if t_end >= 0.0 { 1.0 } else { -1.0 };
    let t_end = t_end.abs();
    let mut t = 0.0f64;
    let mut h = (t_end / 16.0).min(0.1).max(1e-8);
    let mut k = vec![vec![0.0f64; n]; 7];
    let mut ytmp = vec![0.0f64; n];
    let mut steps = 0usize;
    while t < t_end {
        if steps > ctrl.max_steps || h < 1e-14 {
            return Err(OracleError::StepFailure { at: dir * t });
        }
        steps += 1;
        if t + h > t_end {
            h = t_end - t;
        }
        rhs(y, &mut k[0]);
        for s in 1..7 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = if s < 7 && j < 6 { A[s - 1][j] } else { 0.0 };
                    acc += a * kj[i];
                }
                ytmp[i] = y[i] + dir * h * acc;
            }
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            rhs(&ytmp, &mut tail[0]);
        }
        let mut err: f64 = 0.0;
        for i in 0..n {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            err = err.max((h * (d5 - d4)).abs());
        }
        if err <= ctrl.tol || h <= 1e-12 {
            for i in 0..n {
                let mut d5 = 0.0;
                for s in 0..7 {
                    d5 += B5[s] * k[s][i];
                }
                y[i] += dir * h * d5;
            }
            t += h;
            let grow = if err > 0.0 { 0.9 * (ctrl.tol / err).powf(0.2) } else { 2.0 };
            h *= grow.clamp(0.2, 4.0);
        } else {
            h *= 0.9 * (ctrl.tol / err).powf(0.2).clamp(0.1, 0.9);
        }
    }
    Ok(())
}

/// Integrates the left-invariant geodesic flow (attitude plus body
/// velocity) for time `t`.
pub fn euler_flow(
    m: &NatMetric,
    state: &FlowState,
    t: f64,
    ctrl: &StepControl,
) -> Result<FlowState, OracleError> {
    let mut y = vec![0.0f64; 12];
    for i in 0..3 {
        for j in 0..3 {
            y[3 * i + j] = state.attitude[(i, j)];
        }
    }
    for i in 0..3 {
        y[9 + i] = state.body_velocity[i];
    }
    let metric = *m;
    dp45(
        |y, dy| {
            let r = Matrix3::from_fn(|i, j| y[3 * i + j]);
            let xi = Vector3::new(y[9], y[10], y[11]);
            let rdot = r * body_matrix(&xi);
            for i in 0..3 {
                for j in 0..3 {
                    dy[3 * i + j] = rdot[(i, j)];
                }
            }
            let xidot = euler_rhs(&metric, &xi);
            dy[9] = xidot.x;
            dy[10] = xidot.y;
            dy[11] = xidot.z;
        },
        &mut y,
        t,
        ctrl,
    )?;
    Ok(FlowState {
        attitude: Matrix3::from_fn(|i, j| y[3 * i + j]),
        body_velocity: Vector3::new(y[9], y[10], y[11]),
    })
}

/// Report from the monodromy computation.
#[derive(Debug, Clone)]
pub struct MonodromyReport {
    pub fixed_dim: usize,
    pub singular_values: Vec<f64>,
    pub tol: f64,
}

/// Kernel dimension of `(D Phi_tau - Id)` on the full 6-dim linearization
/// (left-trivialized attitude variation plus body-velocity variation),
/// counted as singular values below `tol`. Rejects when a singular value
/// lands inside the audit window `[tol/10, tol*10]`.
pub fn monodromy_fixed_dim(
    m: &NatMetric,
    v: &Vector3<f64>,
    tau: f64,
    tol: f64,
    ctrl: &StepControl,
) -> Result<MonodromyReport, OracleError> {
    // state: xi (3) + Phi (36, row major 6x6)
    let mut y = vec![0.0f64; 39];
    y[0] = v.x;
    y[1] = v.y;
    y[2] = v.z;
    for i in 0..6 {
        y[3 + 7 * i] = 1.0;
    }
    let metric = *m;
    dp45(
        |y, dy| {
            let xi = Vector3::new(y[0], y[1], y[2]);
            let xidot = euler_rhs(&metric, &xi);
            dy[0] = xidot.x;
            dy[1] = xidot.y;
            dy[2] = xidot.z;
            // J = [[-hat(xi)/sqrt2, I], [0, DF]]
            let top = -hat(&xi) / 2f64.sqrt();
            let df = euler_jac(&metric, &xi);
            let mut jac = Matrix6::<f64>::zeros();
            for i in 0..3 {
                for j in 0..3 {
                    jac[(i, j)] = top[(i, j)];
                    jac[(i + 3, j + 3)] = df[(i, j)];
                }
                jac[(i, i + 3)] = 1.0;
            }
            let phi = Matrix6::from_fn(|i, j| y[3 + 6 * i + j]);
            let dphi = jac * phi;
            for i in 0..6 {
                for j in 0..6 {
                    dy[3 + 6 * i + j] = dphi[(i, j)];
                }
            }
        },
        &mut y,
        tau,
        ctrl,
    )?;
    let p = Matrix6::from_fn(|i, j| y[3 + 6 * i + j]);
    let diff = p - Matrix6::identity();
    let mut svs: Vec<f64> = diff.svd(false, false).singular_values.iter().cloned().collect();
    svs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let below: Vec<f64> = svs.iter().cloned().filter(|&s| s < tol).collect();
    let straddle: Vec<f64> =
        svs.iter().cloned().filter(|&s| s >= tol / 10.0 && s <= tol * 10.0).collect();
    if !straddle.is_empty() {
        return Err(OracleError::ToleranceStraddle {
            below,
            above: svs.iter().cloned().filter(|&s| s > tol * 10.0).collect(),
        });
    }
    Ok(MonodromyReport { fixed_dim: below.len(), singular_values: svs, tol })
}

/// One detected conjugate instant.
#[derive(Debug, Clone)]
pub struct ConjugateInstant {
    pub t: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct ConjugateCount {
    pub count: usize,
    pub instants: Vec<ConjugateInstant>,
    /// Smallest |det| observed away from detected zeros, for the audit.
    pub noise_floor: f64,
}

/// Counts conjugate instants in `(0, l)` along the geodesic with initial
/// body velocity `v`, with multiplicity read off the rank drop of the
/// Jacobi matrix. Near-zero non-crossings (tangencies) are detected through
/// the same rank test and flagged if ambiguous.
pub fn numeric_conjugate_count(
    m: &NatMetric,
    v: &Vector3<f64>,
    l: f64,
    ctrl: &StepControl,
) -> Result<ConjugateCount, OracleError> {
    // state: xi (3) + N (9, eta columns) + Ndot (9, delta-xi columns)
    let metric = *m;
    let rhs = |y: &[f64], dy: &mut [f64]| {
        let xi = Vector3::new(y[0], y[1], y[2]);
        let xidot = euler_rhs(&metric, &xi);
        dy[0] = xidot.x;
        dy[1] = xidot.y;
        dy[2] = xidot.z;
        let top = -hat(&xi) / 2f64.sqrt();
        let df = euler_jac(&metric, &xi);
        let n = Matrix3::from_fn(|i, j| y[3 + 3 * i + j]);
        let nd = Matrix3::from_fn(|i, j| y[12 + 3 * i + j]);
        let n_dot = top * n + nd;
        let nd_dot = df * nd;
        for i in 0..3 {
            for j in 0..3 {
                dy[3 + 3 * i + j] = n_dot[(i, j)];
                dy[12 + 3 * i + j] = nd_dot[(i, j)];
            }
        }
    };
    let mut y = vec![0.0f64; 21];
    y[0] = v.x;
    y[1] = v.y;
    y[2] = v.z;
    for i in 0..3 {
        y[12 + 4 * i] = 1.0;
    }
    let steps = 4096usize;
    let h = l / steps as f64;
    let mut dets = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    states.push(y.clone());
    dets.push(0.0f64); // det N(0) = 0 by construction
    let step_ctrl = StepControl { tol: ctrl.tol, max_steps: ctrl.max_steps };
    for _ in 0..steps {
        dp45(rhs, &mut y, h, &step_ctrl)?;
        states.push(y.clone());
        let n = Matrix3::from_fn(|i, j| y[3 + 3 * i + j]);
        dets.push(n.determinant());
    }
    let scale = dets.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs())).max(1e-300);
    let mult_at = |state: &Vec<f64>| -> usize {
        let n = Matrix3::from_fn(|i, j| state[3 + 3 * i + j]);
        let svd = n.svd(false, false);
        let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max).max(1e-300);
        svd.singular_values.iter().filter(|&&s| s / smax < 1e-5).count()
    };
    // candidate marks: sign change in [k, k+1] or a small |det| dip; the
    // initial zero at t = 0 is skipped via a short dead zone
    let dead = ((0.02 * steps as f64) as usize).max(2);
    let mut marked = vec![false; steps + 1];
    for k in dead..steps {
        if dets[k] != 0.0 && dets[k].signum() != dets[k + 1].signum() {
            marked[k] = true;
        }
        if dets[k].abs() / scale < 1e-6 {
            marked[k] = true;
        }
    }
    let mut instants: Vec<ConjugateInstant> = Vec::new();
    let mut noise_floor = f64::INFINITY;
    let det_from = |base: &Vec<f64>, delta: f64| -> Result<(f64, Vec<f64>), OracleError> {
        let mut ym = base.clone();
        dp45(rhs, &mut ym, delta, &step_ctrl)?;
        let nm = Matrix3::from_fn(|i, j| ym[3 + 3 * i + j]);
        Ok((nm.determinant(), ym))
    };
    let mut k = dead;
    while k < steps {
        if !marked[k] {
            noise_floor = noise_floor.min(dets[k].abs() / scale);
            k += 1;
            continue;
        }
        // cluster of adjacent marks
        let a = k;
        let mut b = k;
        while b + 1 < steps && (marked[b + 1] || marked[(b + 2).min(steps)]) {
            b += 1;
        }
        k = b + 2;
        let lo_idx = a.saturating_sub(1);
        let hi_idx = (b + 1).min(steps);
        let base = states[lo_idx].clone();
        let span = (hi_idx - lo_idx) as f64 * h;
        let net_sign_change = dets[lo_idx].signum() != dets[hi_idx].signum();
        let (t_star, state_star, refined) = if net_sign_change {
            // odd-multiplicity crossing: bisection on the outer bracket
            let mut lo = 0.0f64;
            let mut hi = span;
            let mut flo = dets[lo_idx];
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let (dm, _) = det_from(&base, mid)?;
                if dm.signum() == flo.signum() {
                    lo = mid;
                    flo = dm;
                } else {
                    hi = mid;
                }
            }
            let delta = 0.5 * (lo + hi);
            let (dm, ym) = det_from(&base, delta)?;
            (lo_idx as f64 * h + delta, ym, dm.abs())
        } else {
            // even multiplicity (touch): ternary search on |det|
            let mut lo = 0.0f64;
            let mut hi = span;
            for _ in 0..90 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                let (d1, _) = det_from(&base, m1)?;
                let (d2, _) = det_from(&base, m2)?;
                if d1.abs() < d2.abs() {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let delta = 0.5 * (lo + hi);
            let (dm, ym) = det_from(&base, delta)?;
            (lo_idx as f64 * h + delta, ym, dm.abs())
        };
        if !net_sign_change && refined / scale > 1e-8 {
            // benign dip, not a zero
            noise_floor = noise_floor.min(refined / scale);
            continue;
        }
        let mult = mult_at(&state_star);
        if mult == 0 {
            return Err(OracleError::Tangency { at: t_star, value: refined });
        }
        let mult = if net_sign_change { mult } else { mult.max(2) };
        if t_star > 1e-9 && t_star < l - 1e-9 {
            instants.push(ConjugateInstant { t: t_star, multiplicity: mult });
        }
    }
    let count = instants.iter().map(|i| i.multiplicity).sum();
    Ok(ConjugateCount { count, instants, noise_floor })
}

/// Exhaustive integer box scan: all nonzero `z` with `z^T G z <= bound`,
/// exact arithmetic, guarded to dimension <= 6 and bound <= 30.
pub fn brute_enumerate(gram: &RatMat, bound: &Rat) -> Result<Vec<Vec<i64>>, OracleError> {
    let n = gram.nrows;
    if n > 6 || bound > &rat_int(30) {
        return Err(OracleError::GuardRail { dim: n, bound: crate::rat::rat_str(bound) });
    }
    if bound.is_negative() {
        return Ok(Vec::new());
    }
    let inv = gram.inverse().ok_or(OracleError::NotPositiveDefinite)?;
    let mut lims = Vec::with_capacity(n);
    for i in 0..n {
        let r = bound * &inv[(i, i)];
        if r.is_negative() {
            return Err(OracleError::NotPositiveDefinite);
        }
        lims.push(rat_isqrt_floor(&r).to_i64().expect("box limit fits i64"));
    }
    let mut out = Vec::new();
    let mut z = vec![0i64; n];
    fn rec(
        i: usize,
        lims: &[i64],
        z: &mut Vec<i64>,
        gram: &RatMat,
        bound: &Rat,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == lims.len() {
            if z.iter().any(|&x| x != 0) {
                let mut acc = Rat::from_integer(0.into());
                for a in 0..z.len() {
                    for b in 0..z.len() {
                        if z[a] != 0 && z[b] != 0 {
                            acc += &gram[(a, b)] * rat_int(z[a]) * rat_int(z[b]);
                        }
                    }
                }
                if &acc <= bound {
                    out.push(z.clone());
                }
            }
            return;
        }
        for v in -lims[i]..=lims[i] {
            z[i] = v;
            rec(i + 1, lims, z, gram, bound, out);
        }
        z[i] = 0;
    }
    rec(0, &lims, &mut z, gram, bound, &mut out);
    out.sort();
    Ok(out)
}

// silence an unused import when SMatrix-based paths are compiled out
#[allow(unused)]
type _M6 = SMatrix<f64, 6, 6>;
