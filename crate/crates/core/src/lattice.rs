//! Integer-lattice machinery: canonical bases via integer normal forms,
//! membership, quotients, and exact short-vector enumeration under a
//! rational positive-definite form.
//!
//! A lattice is stored as a row Hermite normal form over a minimal scalar
//! denominator, which makes the basis canonical: two generating sets of the
//! same lattice always produce identical `IntegerLattice` values.

use crate::linalg::{RatMat, RatVec};
use crate::rat::{rat_int, Rat};
use crate::rootsys::FiniteAbelianGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generators have mixed ambient dimensions")]
    MixedDims,
    #[error("quadratic form is not symmetric")]
    NotSymmetric,
    #[error("quadratic form is not positive definite: leading minor {order} is {value}")]
    NotPositiveDefinite { order: usize, value: String },
    #[error("form dimension {form} does not match lattice rank {rank}")]
    FormRankMismatch { form: usize, rank: usize },
    #[error("negative enumeration bound")]
    NegativeBound,
    #[error("exact enumeration scalar overflow")]
    Overflow,
}

/// Row Hermite normal form of an integer matrix: pivots positive, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf_rows(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let nrows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !m[i][c].is_zero()
                    && best.map_or(true, |b| m[i][c].abs() < m[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut dirty = false;
            for i in (r + 1)..nrows {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for j in 0..ncols {
                        let sub = &q * &m[r][j];
                        m[i][j] -= sub;
                    }
                    if !m[i][c].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if r < nrows && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for j in 0..ncols {
                    m[r][j] = -m[r][j].clone();
                }
            }
            for i in 0..r {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for j in 0..ncols {
                        let sub = &q * &m[r][j];
                        m[i][j] -= sub;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Smith normal form with transforms: returns `(s, u, v)` with `u*m*v = s`,
/// `u`, `v` unimodular and `s` diagonal with a divisibility chain.
pub fn smith_normal_form(
    m: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let nrows = m.len();
    let ncols = if nrows > 0 { m[0].len() } else { 0 };
    let mut s: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(nrows);
    let mut v = identity(ncols);

    let mut t = 0;
    while t < nrows.min(ncols) {
        // find a nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !s[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut clean = true;
            for i in (t + 1)..nrows {
                if !s[i][t].is_zero() {
                    let q = s[i][t].div_floor(&s[t][t]);
                    row_sub(&mut s, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    if !s[i][t].is_zero() {
                        // remainder smaller than pivot: swap up and retry
                        s.swap(t, i);
                        u.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..ncols {
                if !s[t][j].is_zero() {
                    let q = s[t][j].div_floor(&s[t][t]);
                    col_sub(&mut s, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    if !s[t][j].is_zero() {
                        for row in s.iter_mut() {
                            row.swap(t, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // enforce divisibility of the remaining block by the pivot
        let mut retry = false;
        'scan: for i in (t + 1)..nrows {
            for j in (t + 1)..ncols {
                if !(&s[i][j] % &s[t][t]).is_zero() {
                    // add row i to row t, which breaks the cleared column/row,
                    // then redo the elimination at this pivot
                    for k in 0..ncols {
                        let add = s[i][k].clone();
                        s[t][k] += add;
                    }
                    for k in 0..nrows {
                        let add = u[i][k].clone();
                        u[t][k] += add;
                    }
                    retry = true;
                    break 'scan;
                }
            }
        }
        if retry {
            continue;
        }
        if s[t][t].is_negative() {
            for j in 0..ncols {
                s[t][j] = -s[t][j].clone();
            }
            for j in 0..nrows {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    (s, u, v)
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn row_sub(m: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let cols = m[t].len();
    for j in 0..cols {
        let sub = q * &m[t][j];
        m[i][j] -= sub;
    }
}

fn col_sub(m: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let sub = q * &row[t];
        row[j] -= sub;
    }
}

fn invert_unimodular(u: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = u.len();
    let rows: Vec<RatVec> = u
        .iter()
        .map(|r| RatVec(r.iter().map(|x| Rat::from_integer(x.clone())).collect()))
        .collect();
    let inv = RatMat::from_rows(&rows).inverse().expect("unimodular matrix invertible");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = &inv[(i, j)];
                    assert!(x.denom().is_one(), "unimodular inverse must be integral");
                    x.numer().clone()
                })
                .collect()
        })
        .collect()
}

/// A lattice of full rank inside its rational span, with canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    pub ambient_dim: usize,
    denom: BigInt,
    rows: Vec<Vec<BigInt>>, // HNF rows; basis vector i = rows[i] / denom
}

/// Canonical lattice generated by `gens` (zero generators are dropped).
pub fn lattice_from_generators(gens: &[RatVec]) -> Result<IntegerLattice, LatticeError> {
    if gens.is_empty() {
        return Err(LatticeError::EmptyGenerators);
    }
    let dim = gens[0].dim();
    if gens.iter().any(|g| g.dim() != dim) {
        return Err(LatticeError::MixedDims);
    }
    let mut denom = BigInt::one();
    for g in gens {
        for x in &g.0 {
            denom = denom.lcm(x.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.0.iter().map(|x| x.numer() * (&denom / x.denom())).collect())
        .collect();
    let rows = hnf_rows(scaled);
    // reduce to the minimal denominator
    let mut content = denom.clone();
    for r in &rows {
        for x in r {
            content = content.gcd(x);
        }
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x / &content).collect())
        .collect();
    Ok(IntegerLattice { ambient_dim: dim, denom: denom / content, rows })
}

impl IntegerLattice {
    pub fn standard(dim: usize) -> IntegerLattice {
        let gens: Vec<RatVec> = (0..dim)
            .map(|i| {
                let mut v = vec![0i64; dim];
                v[i] = 1;
                RatVec::from_i64(&v)
            })
            .collect();
        lattice_from_generators(&gens).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<RatVec> {
        self.rows
            .iter()
            .map(|r| {
                RatVec(r.iter().map(|x| Rat::new(x.clone(), self.denom.clone())).collect())
            })
            .collect()
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn membership(&self, v: &RatVec) -> Option<Vec<BigInt>> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        // v in L  <=>  denom * v integral and expressible in the HNF rows
        let mut target: Vec<Rat> = v.0.iter().map(|x| x * Rat::from_integer(self.denom.clone())).collect();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("nonzero HNF row");
            let c = &target[pivot_col] / Rat::from_integer(row[pivot_col].clone());
            if !c.denom().is_one() {
                return None;
            }
            let ci = c.numer().clone();
            for (j, x) in row.iter().enumerate() {
                let sub = Rat::from_integer(&ci * x);
                target[j] = &target[j] - &sub;
            }
            coeffs.push(ci);
        }
        if target.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &RatVec) -> bool {
        self.membership(v).is_some()
    }

    /// Canonical representative of `v` modulo the lattice (staircase
    /// coefficients floored into `[0,1)`); `None` if `v` is outside the
    /// rational span.
    pub fn reduce_mod(&self, v: &RatVec) -> Option<RatVec> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        let mut target: Vec<Rat> = v.0.clone();
        for row in &self.rows {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("nonzero HNF row");
            let pivot = Rat::new(row[pivot_col].clone(), self.denom.clone());
            let c = (&target[pivot_col] / &pivot).floor();
            if c.is_zero() {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                let sub = &c * Rat::new(x.clone(), self.denom.clone());
                target[j] = &target[j] - &sub;
            }
        }
        // remainder must still lie in the rational span
        let rem = RatVec(target);
        let basis = self.basis();
        if basis.is_empty() {
            return if rem.is_zero() { Some(rem) } else { None };
        }
        let m = RatMat::from_rows(&basis).transpose();
        m.solve(&rem).map(|_| rem)
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// Index `[self : sub]` for a finite-index sublattice.
    pub fn index_of_sublattice(&self, sub: &IntegerLattice) -> Option<BigInt> {
        if sub.rank() != self.rank() || !self.contains_lattice(sub) {
            return None;
        }
        let coords: Vec<RatVec> = sub
            .basis()
            .iter()
            .map(|b| {
                RatVec(
                    self.membership(b)
                        .expect("containment checked")
                        .into_iter()
                        .map(Rat::from_integer)
                        .collect(),
                )
            })
            .collect();
        let det = RatMat::from_rows(&coords).det();
        Some(det.numer().abs())
    }

    /// Linear combination of the basis with integer coefficients.
    pub fn vector_from_coeffs(&self, z: &[i64]) -> RatVec {
        assert_eq!(z.len(), self.rank());
        let mut acc = vec![BigInt::zero(); self.ambient_dim];
        for (zi, row) in z.iter().zip(&self.rows) {
            for (a, x) in acc.iter_mut().zip(row) {
                *a += x * BigInt::from(*zi);
            }
        }
        RatVec(acc.into_iter().map(|x| Rat::new(x, self.denom.clone())).collect())
    }

    /// Gram matrix of the basis under a block-scaled Euclidean form; `weight`
    /// gives the multiplier applied coordinatewise.
    pub fn basis_gram_weighted(&self, weight: &[Rat]) -> RatMat {
        assert_eq!(weight.len(), self.ambient_dim);
        let b = self.basis();
        let mut g = RatMat::zeros(b.len(), b.len());
        for i in 0..b.len() {
            for j in i..b.len() {
                let mut acc = Rat::zero();
                for k in 0..self.ambient_dim {
                    acc += &b[i].0[k] * &b[j].0[k] * &weight[k];
                }
                g[(i, j)] = acc.clone();
                g[(j, i)] = acc;
            }
        }
        g
    }
}

/// Quotient `top / sub` of two lattices of equal rank with `sub <= top`:
/// invariant factors (> 1) plus lifted generators in `top`.
pub fn quotient_structure(
    top: &IntegerLattice,
    sub: &IntegerLattice,
) -> (FiniteAbelianGroup, Vec<RatVec>) {
    assert!(top.contains_lattice(sub), "quotient requires sub <= top");
    assert_eq!(top.rank(), sub.rank(), "quotient requires equal ranks");
    let r = top.rank();
    // rows of m = coordinates of sub basis in top basis; quotient = Z^r / (m^T Z^r)
    let m: Vec<Vec<BigInt>> = sub
        .basis()
        .iter()
        .map(|b| top.membership(b).expect("containment checked"))
        .collect();
    let mt: Vec<Vec<BigInt>> = (0..r).map(|i| (0..r).map(|j| m[j][i].clone()).collect()).collect();
    let (s, u, _v) = smith_normal_form(&mt);
    let uinv = invert_unimodular(&u);
    let top_basis = top.basis();
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    for i in 0..r {
        let d = s[i][i].to_u64().expect("invariant factor fits u64");
        assert!(d >= 1, "sub must have full rank in top");
        if d > 1 {
            factors.push(d);
            let mut g = RatVec::zeros(top.ambient_dim);
            for k in 0..r {
                g = &g + &top_basis[k].scale(&Rat::from_integer(uinv[k][i].clone()));
            }
            gens.push(g);
        }
    }
    (FiniteAbelianGroup { invariant_factors: factors }, gens)
}

/// Order of the class of `v` in `top / sub` (smallest `m >= 1` with `m v` in `sub`).
pub fn class_order(sub: &IntegerLattice, v: &RatVec, max: u64) -> Option<u64> {
    let mut acc = RatVec::zeros(v.dim());
    for m in 1..=max {
        acc = &acc + v;
        if sub.contains(&acc) {
            return Some(m);
        }
    }
    None
}

/// Positive-definite rational quadratic form over a chosen lattice basis.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    pub gram: RatMat,
}

impl QuadraticForm {
    pub fn new(gram: RatMat) -> Result<QuadraticForm, LatticeError> {
        if gram.nrows != gram.ncols {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..gram.nrows {
            for j in (i + 1)..gram.ncols {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        for k in 1..=gram.nrows {
            let minor = gram.leading_minor(k);
            if !minor.is_positive() {
                return Err(LatticeError::NotPositiveDefinite {
                    order: k,
                    value: crate::rat::rat_str(&minor),
                });
            }
        }
        Ok(QuadraticForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows
    }

    pub fn eval_coeffs(&self, z: &[i64]) -> Rat {
        let n = self.dim();
        let mut acc = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                if z[i] != 0 && z[j] != 0 {
                    acc += &self.gram[(i, j)] * rat_int(z[i]) * rat_int(z[j]);
                }
            }
        }
        acc
    }
}

/// One enumerated lattice vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVector {
    pub vector: RatVec,
    pub coeffs: Vec<i64>,
    pub norm: Rat,
}

mod frac {
    //! Small reduced fractions over checked i128 arithmetic. Used as the fast
    //! scalar inside the exact enumeration; any overflow aborts the fast path
    //! and the caller retries with arbitrary-precision rationals.

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub struct Frac {
        pub n: i128,
        pub d: i128, // > 0
    }

    fn gcd(mut a: i128, mut b: i128) -> i128 {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.max(1)
    }

    impl Frac {
        pub fn new(n: i128, d: i128) -> Option<Frac> {
            if d == 0 {
                return None;
            }
            let (n, d) = if d < 0 { (n.checked_neg()?, d.checked_neg()?) } else { (n, d) };
            let g = gcd(n, d);
            Some(Frac { n: n / g, d: d / g })
        }

        pub fn from_i64(x: i64) -> Frac {
            Frac { n: x as i128, d: 1 }
        }

        pub fn zero() -> Frac {
            Frac { n: 0, d: 1 }
        }

        pub fn add(&self, o: &Frac) -> Option<Frac> {
            let g = gcd(self.d, o.d);
            let l = self.d.checked_mul(o.d / g)?;
            let a = self.n.checked_mul(o.d / g)?;
            let b = o.n.checked_mul(self.d / g)?;
            Frac::new(a.checked_add(b)?, l)
        }

        pub fn sub(&self, o: &Frac) -> Option<Frac> {
            self.add(&Frac { n: o.n.checked_neg()?, d: o.d })
        }

        pub fn mul(&self, o: &Frac) -> Option<Frac> {
            let g1 = gcd(self.n, o.d);
            let g2 = gcd(o.n, self.d);
            let n = (self.n / g1).checked_mul(o.n / g2)?;
            let d = (self.d / g2).checked_mul(o.d / g1)?;
            Frac::new(n, d)
        }

        pub fn is_nonneg(&self) -> bool {
            self.n >= 0
        }

        /// self <= other, exactly.
        pub fn le(&self, o: &Frac) -> Option<bool> {
            let a = self.n.checked_mul(o.d)?;
            let b = o.n.checked_mul(self.d)?;
            Some(a <= b)
        }

        pub fn to_f64(&self) -> f64 {
            self.n as f64 / self.d as f64
        }
    }
}

trait EnumScalar: Clone {
    fn sc_from_rat(r: &Rat) -> Option<Self>;
    fn sc_from_i64(x: i64) -> Self;
    fn sc_zero() -> Self;
    fn sc_add(&self, o: &Self) -> Option<Self>;
    fn sc_sub(&self, o: &Self) -> Option<Self>;
    fn sc_mul(&self, o: &Self) -> Option<Self>;
    fn sc_is_nonneg(&self) -> bool;
    fn sc_le(&self, o: &Self) -> Option<bool>;
    fn sc_to_f64(&self) -> f64;
}

impl EnumScalar for frac::Frac {
    fn sc_from_rat(r: &Rat) -> Option<Self> {
        let n = r.numer().to_i128()?;
        let d = r.denom().to_i128()?;
        frac::Frac::new(n, d)
    }
    fn sc_from_i64(x: i64) -> Self {
        frac::Frac::from_i64(x)
    }
    fn sc_zero() -> Self {
        frac::Frac::zero()
    }
    fn sc_add(&self, o: &Self) -> Option<Self> {
        frac::Frac::add(self, o)
    }
    fn sc_sub(&self, o: &Self) -> Option<Self> {
        frac::Frac::sub(self, o)
    }
    fn sc_mul(&self, o: &Self) -> Option<Self> {
        frac::Frac::mul(self, o)
    }
    fn sc_is_nonneg(&self) -> bool {
        frac::Frac::is_nonneg(self)
    }
    fn sc_le(&self, o: &Self) -> Option<bool> {
        frac::Frac::le(self, o)
    }
    fn sc_to_f64(&self) -> f64 {
        frac::Frac::to_f64(self)
    }
}

impl EnumScalar for Rat {
    fn sc_from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn sc_from_i64(x: i64) -> Self {
        rat_int(x)
    }
    fn sc_zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn sc_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sc_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn sc_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sc_is_nonneg(&self) -> bool {
        !self.is_negative()
    }
    fn sc_le(&self, o: &Self) -> Option<bool> {
        Some(self <= o)
    }
    fn sc_to_f64(&self) -> f64 {
        crate::rat::rat_to_f64(self)
    }
}

/// Layered-bound enumeration (Fincke-Pohst): all integer coefficient vectors
/// `z != 0` with `z^T G z <= bound`, exact comparisons throughout.
fn enumerate_coeffs_generic<S: EnumScalar>(
    gram: &RatMat,
    bound: &Rat,
    dedup_pm: bool,
) -> Option<Vec<Vec<i64>>> {
    let n = gram.nrows;
    if n == 0 {
        return Some(Vec::new());
    }
    // rational LDL^T via quadratic completion: Q(z) = sum_i d_i (z_i + sum_{j>i} u_ij z_j)^2
    let mut w: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| gram[(i, j)].clone()).collect()).collect();
    let mut d = vec![Rat::zero(); n];
    let mut u: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        d[i] = w[i][i].clone();
        assert!(d[i].is_positive(), "form not positive definite");
        for j in (i + 1)..n {
            u[i][j] = &w[i][j] / &d[i];
        }
        for j in (i + 1)..n {
            for k in j..n {
                let sub = &d[i] * &u[i][j] * &u[i][k];
                w[j][k] = &w[j][k] - &sub;
            }
        }
    }
    let ds: Vec<S> = d.iter().map(|x| S::sc_from_rat(x)).collect::<Option<_>>()?;
    let us: Vec<Vec<S>> = u
        .iter()
        .map(|row| row.iter().map(|x| S::sc_from_rat(x)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let cap = S::sc_from_rat(bound)?;

    struct Ctx<'a, S> {
        n: usize,
        ds: &'a [S],
        us: &'a [Vec<S>],
        dedup_pm: bool,
        z: Vec<i64>,
        out: Vec<Vec<i64>>,
    }

    impl<S: EnumScalar> Ctx<'_, S> {
        // integer range [lo, hi] for z_i with d_i (z_i + c)^2 <= budget
        fn range(&self, i: usize, c: &S, budget: &S) -> Option<(i64, i64)> {
            if !budget.sc_is_nonneg() {
                return Some((1, 0));
            }
            let di = &self.ds[i];
            let s = (budget.sc_to_f64() / di.sc_to_f64()).max(0.0).sqrt();
            let cf = c.sc_to_f64();
            let ok = |m: i64| -> Option<bool> {
                let t = S::sc_from_i64(m).sc_add(c)?;
                di.sc_mul(&t.sc_mul(&t)?)?.sc_le(budget)
            };
            // float estimates with exact adjustment on both edges
            let mut hi = (s - cf).floor() as i64;
            let mut guard = 0usize;
            while ok(hi + 1)? {
                hi += 1;
                guard += 1;
                if guard > 1 << 12 {
                    return None;
                }
            }
            let mut lo = (-s - cf).ceil() as i64;
            while ok(lo - 1)? {
                lo -= 1;
                guard += 1;
                if guard > 1 << 12 {
                    return None;
                }
            }
            while lo <= hi && !ok(lo)? {
                lo += 1;
            }
            while lo <= hi && !ok(hi)? {
                hi -= 1;
            }
            Some((lo, hi))
        }

        fn descend(&mut self, i: usize, budget: &S) -> Option<()> {
            let mut c = S::sc_zero();
            for j in (i + 1)..self.n {
                if self.z[j] != 0 {
                    c = c.sc_add(&self.us[i][j].sc_mul(&S::sc_from_i64(self.z[j]))?)?;
                }
            }
            let (lo, hi) = self.range(i, &c, budget)?;
            for zi in lo..=hi {
                self.z[i] = zi;
                let t = S::sc_from_i64(zi).sc_add(&c)?;
                let used = self.ds[i].sc_mul(&t.sc_mul(&t)?)?;
                let rem = budget.sc_sub(&used)?;
                if i == 0 {
                    if self.z.iter().any(|&x| x != 0) {
                        let keep = if self.dedup_pm {
                            // canonical sign: first nonzero coefficient positive
                            self.z.iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap_or(false)
                        } else {
                            true
                        };
                        if keep {
                            self.out.push(self.z.clone());
                        }
                    }
                } else {
                    self.descend(i - 1, &rem)?;
                }
            }
            self.z[i] = 0;
            Some(())
        }
    }

    let mut ctx =
        Ctx { n, ds: &ds, us: &us, dedup_pm, z: vec![0i64; n], out: Vec::new() };
    ctx.descend(n - 1, &cap)?;
    Some(ctx.out)
}

/// All nonzero lattice vectors `v` with `q(v) <= bound`, where `q` is given
/// over the lattice's canonical basis. Results come back in deterministic
/// order (by form value, then lexicographically by ambient coordinates).
/// `dedup_pm` keeps one representative of each `{v, -v}` pair.
pub fn enumerate_up_to(
    lat: &IntegerLattice,
    q: &QuadraticForm,
    bound: &Rat,
    dedup_pm: bool,
) -> Result<Vec<ShortVector>, LatticeError> {
    if bound.is_negative() {
        return Err(LatticeError::NegativeBound);
    }
    if q.dim() != lat.rank() {
        return Err(LatticeError::FormRankMismatch { form: q.dim(), rank: lat.rank() });
    }
    let coeffs = enumerate_coeffs(&q.gram, bound, dedup_pm)?;
    let mut out: Vec<ShortVector> = coeffs
        .into_iter()
        .map(|z| {
            let vector = lat.vector_from_coeffs(&z);
            let norm = q.eval_coeffs(&z);
            ShortVector { vector, coeffs: z, norm }
        })
        .collect();
    out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.vector.cmp(&b.vector)));
    Ok(out)
}

/// Coefficient-space variant of [`enumerate_up_to`].
pub fn enumerate_coeffs(
    gram: &RatMat,
    bound: &Rat,
    dedup_pm: bool,
) -> Result<Vec<Vec<i64>>, LatticeError> {
    if bound.is_negative() {
        return Err(LatticeError::NegativeBound);
    }
    match enumerate_coeffs_generic::<frac::Frac>(gram, bound, dedup_pm) {
        Some(v) => Ok(v),
        // fast path overflowed: redo with arbitrary precision
        None => enumerate_coeffs_generic::<Rat>(gram, bound, dedup_pm)
            .ok_or(LatticeError::Overflow),
    }
}
