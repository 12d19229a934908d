//! Spectral engine for compact symmetric spaces built from weighted
//! restricted-root-system factors and a flat torus: closed-geodesic classes,
//! Morse indices, fixed-set dimensions, the per-type mod-4 length functions,
//! leading wave-term cancellation certificates, rank recovery and the
//! component-length-unique check.

use crate::lattice::{
    self, enumerate_up_to, lattice_from_generators, IntegerLattice, LatticeError, QuadraticForm,
};
use crate::linalg::{RatMat, RatVec};
use crate::rat::{rat_int, rat_str, Rat};
use crate::rootsys::{
    build_root_system, MultProfile, RootSysError, TypeLabel, WeightedRootSystem,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum SymSpecError {
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("gamma generator {0} is not in the central lattice of its factor")]
    GammaNotCentral(String),
    #[error("product gamma tuple has {got} components, expected {expected}")]
    GammaArity { expected: usize, got: usize },
    #[error("Type I factors must have all multiplicities even")]
    OddTypeIMult,
    #[error("metric has {got} scales for {expected} factors")]
    ScaleArity { expected: usize, got: usize },
    #[error("metric scales must be positive")]
    NonPositiveScale,
    #[error("vector dimension {got} does not match the space ambient dimension {expected}")]
    DimMismatch { expected: usize, got: usize },
    #[error("vector is not in the integral lattice of the space")]
    NotIntegral,
    #[error("the zero vector has no fixed-point component")]
    ZeroVector,
    #[error("the mod-4 length function is undefined for maximal-rank factors")]
    FUndefined,
    #[error("squared norm {0} is not achieved by any central-lattice vector of this factor")]
    NormNotAchieved(String),
    #[error("space has a maximal-rank factor; the split-rank classification does not apply")]
    NotSplitRank,
    #[error("no regular vector within bound; smallest regular candidate has squared length {0}")]
    NoRegularVector(String),
}

/// How a weighted-root-system factor sits inside the symmetric space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// Compact simple Lie group: every restricted root has multiplicity 2.
    Group,
    /// Irreducible split-rank space of Type I: all multiplicities even.
    TypeISplitRank,
    /// Space of symmetric elements: all multiplicities 1.
    MaximalRank,
}

#[derive(Debug, Clone)]
pub struct Factor {
    pub rs: WeightedRootSystem,
    pub kind: FactorKind,
    /// Lifts in the central lattice generating this factor's own part of gamma.
    pub gamma_gens: Vec<RatVec>,
    pub lambda_r: IntegerLattice,
    pub lambda_z: IntegerLattice,
}

impl Factor {
    pub fn group(
        label: TypeLabel,
        rank: usize,
        gamma_gens: Vec<RatVec>,
    ) -> Result<Factor, SymSpecError> {
        Factor::build(label, rank, FactorKind::Group, MultProfile::Uniform(2), gamma_gens)
    }

    pub fn type_i(
        label: TypeLabel,
        rank: usize,
        mult: MultProfile,
        gamma_gens: Vec<RatVec>,
    ) -> Result<Factor, SymSpecError> {
        Factor::build(label, rank, FactorKind::TypeISplitRank, mult, gamma_gens)
    }

    pub fn maximal_rank(
        label: TypeLabel,
        rank: usize,
        gamma_gens: Vec<RatVec>,
    ) -> Result<Factor, SymSpecError> {
        Factor::build(label, rank, FactorKind::MaximalRank, MultProfile::Uniform(1), gamma_gens)
    }

    fn build(
        label: TypeLabel,
        rank: usize,
        kind: FactorKind,
        mult: MultProfile,
        gamma_gens: Vec<RatVec>,
    ) -> Result<Factor, SymSpecError> {
        let rs = build_root_system(label, rank, mult)?;
        if kind == FactorKind::TypeISplitRank && rs.mult.iter().any(|&m| m % 2 != 0) {
            return Err(SymSpecError::OddTypeIMult);
        }
        let lambda_r = rs.coroot_lattice();
        let lambda_z = rs.central_lattice();
        for g in &gamma_gens {
            if !lambda_z.contains(g) {
                return Err(SymSpecError::GammaNotCentral(g.coords_str()));
            }
        }
        Ok(Factor { rs, kind, gamma_gens, lambda_r, lambda_z })
    }

    /// Integral lattice of the factor alone: the co-root lattice extended by
    /// the lifts of this factor's gamma generators.
    pub fn integral_lattice(&self) -> IntegerLattice {
        let mut gens: Vec<RatVec> = self.rs.roots.iter().map(|r| r.coroot.clone()).collect();
        gens.extend(self.gamma_gens.iter().cloned());
        lattice_from_generators(&gens).expect("factor integral lattice")
    }

    /// dim of the compact symmetric space carried by this factor.
    pub fn space_dim(&self) -> u64 {
        self.rs.space_dim()
    }

    /// rank + 2 * (total positive multiplicity): the dimension of the orbit
    /// of a regular vector in the unit tangent bundle.
    pub fn regular_orbit_dim(&self) -> u64 {
        let total: u64 = self.rs.positives.iter().map(|&i| self.rs.mult[i] as u64).sum();
        self.rs.rank as u64 + 2 * total
    }
}

/// Product symmetric space: flat torus times weighted-root-system factors,
/// quotiented by a subgroup of the product center. Torus components of gamma
/// generators are identically zero (the torus part of gamma is assumed
/// trivial), so product generators carry one central class per factor.
#[derive(Debug, Clone)]
pub struct SymmetricSpaceSpec {
    pub torus_dim: usize,
    pub factors: Vec<Factor>,
    /// Diagonal-type generators: one central class lift per factor.
    pub product_gamma: Vec<Vec<RatVec>>,
    offsets: Vec<usize>,
    ambient: usize,
    lambda_i: IntegerLattice,
}

impl SymmetricSpaceSpec {
    pub fn new(
        torus_dim: usize,
        factors: Vec<Factor>,
        product_gamma: Vec<Vec<RatVec>>,
    ) -> Result<SymmetricSpaceSpec, SymSpecError> {
        let mut offsets = Vec::with_capacity(factors.len());
        let mut ambient = torus_dim;
        for f in &factors {
            offsets.push(ambient);
            ambient += f.rs.ambient_dim;
        }
        for tuple in &product_gamma {
            if tuple.len() != factors.len() {
                return Err(SymSpecError::GammaArity {
                    expected: factors.len(),
                    got: tuple.len(),
                });
            }
            for (f, g) in factors.iter().zip(tuple) {
                if !f.lambda_z.contains(g) {
                    return Err(SymSpecError::GammaNotCentral(g.coords_str()));
                }
            }
        }

        // Lambda_I = pi^{-1}(Gamma):
        // Z^d + sum of co-root lattices + lifts of all gamma generators
        let mut gens: Vec<RatVec> = Vec::new();
        for i in 0..torus_dim {
            let mut w = RatVec::zeros(ambient);
            w.0[i] = Rat::one();
            gens.push(w);
        }
        let embed = |offset: usize, v: &RatVec, ambient: usize| -> RatVec {
            let mut w = RatVec::zeros(ambient);
            for (k, x) in v.0.iter().enumerate() {
                w.0[offset + k] = x.clone();
            }
            w
        };
        for (f, &off) in factors.iter().zip(&offsets) {
            for r in &f.rs.roots {
                gens.push(embed(off, &r.coroot, ambient));
            }
            for g in &f.gamma_gens {
                gens.push(embed(off, g, ambient));
            }
        }
        for tuple in &product_gamma {
            let mut w = RatVec::zeros(ambient);
            for (&off, g) in offsets.iter().zip(tuple) {
                for (k, x) in g.0.iter().enumerate() {
                    w.0[off + k] = &w.0[off + k] + x;
                }
            }
            gens.push(w);
        }
        let lambda_i = lattice_from_generators(&gens)?;
        Ok(SymmetricSpaceSpec { torus_dim, factors, product_gamma, offsets, ambient, lambda_i })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn integral_lattice(&self) -> &IntegerLattice {
        &self.lambda_i
    }

    /// Direct sum of the factor co-root lattices and the torus `Z^d`.
    pub fn coroot_lattice(&self) -> IntegerLattice {
        let mut gens: Vec<RatVec> = Vec::new();
        for i in 0..self.torus_dim {
            let mut w = RatVec::zeros(self.ambient);
            w.0[i] = Rat::one();
            gens.push(w);
        }
        for (f, &off) in self.factors.iter().zip(&self.offsets) {
            for r in &f.rs.roots {
                let mut w = RatVec::zeros(self.ambient);
                for (k, x) in r.coroot.0.iter().enumerate() {
                    w.0[off + k] = x.clone();
                }
                gens.push(w);
            }
        }
        lattice_from_generators(&gens).expect("product co-root lattice")
    }

    pub fn dim(&self) -> u64 {
        self.torus_dim as u64 + self.factors.iter().map(|f| f.space_dim()).sum::<u64>()
    }

    pub fn rank(&self) -> u64 {
        self.torus_dim as u64 + self.factors.iter().map(|f| f.rs.rank as u64).sum::<u64>()
    }

    pub fn torus_part(&self, v: &RatVec) -> RatVec {
        RatVec(v.0[0..self.torus_dim].to_vec())
    }

    pub fn factor_part(&self, v: &RatVec, j: usize) -> RatVec {
        let off = self.offsets[j];
        RatVec(v.0[off..off + self.factors[j].rs.ambient_dim].to_vec())
    }

    pub fn assemble(&self, torus: &RatVec, parts: &[RatVec]) -> RatVec {
        assert_eq!(torus.dim(), self.torus_dim);
        assert_eq!(parts.len(), self.factors.len());
        let mut w = RatVec::zeros(self.ambient);
        for (i, x) in torus.0.iter().enumerate() {
            w.0[i] = x.clone();
        }
        for (j, p) in parts.iter().enumerate() {
            for (k, x) in p.0.iter().enumerate() {
                w.0[self.offsets[j] + k] = x.clone();
            }
        }
        w
    }

    fn check_ambient(&self, v: &RatVec) -> Result<(), SymSpecError> {
        if v.dim() != self.ambient {
            return Err(SymSpecError::DimMismatch { expected: self.ambient, got: v.dim() });
        }
        Ok(())
    }

    fn check_integral(&self, v: &RatVec) -> Result<(), SymSpecError> {
        self.check_ambient(v)?;
        if !self.lambda_i.contains(v) {
            return Err(SymSpecError::NotIntegral);
        }
        Ok(())
    }

    /// Generators of the projection `pi_j(Gamma)`: the factor's own gamma
    /// generators plus the `j`-components of product tuples.
    pub fn gamma_projection(&self, j: usize) -> Vec<RatVec> {
        let mut gens = self.factors[j].gamma_gens.clone();
        for tuple in &self.product_gamma {
            gens.push(tuple[j].clone());
        }
        gens
    }

    /// Order of the projected subgroup `pi_j(Gamma)` in the factor's center.
    pub fn gamma_projection_order(&self, j: usize) -> u64 {
        let f = &self.factors[j];
        let mut gens: Vec<RatVec> = f.rs.roots.iter().map(|r| r.coroot.clone()).collect();
        gens.extend(self.gamma_projection(j));
        let li = lattice_from_generators(&gens).expect("projection lattice");
        li.index_of_sublattice(&f.lambda_r)
            .expect("co-root lattice inside projection preimage")
            .to_u64()
            .expect("projection order fits u64")
    }
}

/// Whether the projection of gamma onto factor `j` makes the nontrivial
/// parity case of the factor's mod-4 length function reachable on the
/// factor's integral lattice. Only group factors ever activate it.
fn f_parity_active(space: &SymmetricSpaceSpec, j: usize) -> bool {
    let f = &space.factors[j];
    if f.kind != FactorKind::Group {
        return false;
    }
    let mut gens: Vec<RatVec> = f.rs.roots.iter().map(|r| r.coroot.clone()).collect();
    gens.extend(space.gamma_projection(j));
    let li = lattice_from_generators(&gens).expect("projection integral lattice");
    let order = li
        .index_of_sublattice(&f.lambda_r)
        .expect("co-root sublattice")
        .to_u64()
        .expect("projection order fits u64");
    let non_integral =
        || li.basis().iter().any(|b| b.0.iter().any(|x| !x.denom().is_one()));
    match f.rs.label {
        // odd coefficients on L1 appear iff the smallest generator
        // (n+1)/|Gamma| of the cyclic subgroup is odd
        TypeLabel::A => f.rs.rank % 2 == 1 && ((f.rs.rank as u64 + 1) / order) % 2 == 1,
        TypeLabel::B => order == 2,
        TypeLabel::C => (f.rs.rank % 4 == 1 || f.rs.rank % 4 == 2) && order == 2,
        TypeLabel::D => match f.rs.rank % 4 {
            3 => order == 4,
            2 => non_integral(),
            _ => false,
        },
        TypeLabel::E7 => order == 2,
        _ => false,
    }
}

/// Flat metric on the torus plus one positive rational scale per factor,
/// applied as a plain multiplier on ambient Euclidean squared norms.
#[derive(Debug, Clone)]
pub struct MetricSpec {
    pub torus_gram: RatMat,
    pub scales: Vec<Rat>,
}

impl MetricSpec {
    pub fn new(
        space: &SymmetricSpaceSpec,
        torus_gram: RatMat,
        scales: Vec<Rat>,
    ) -> Result<MetricSpec, SymSpecError> {
        if scales.len() != space.factors.len() {
            return Err(SymSpecError::ScaleArity {
                expected: space.factors.len(),
                got: scales.len(),
            });
        }
        if scales.iter().any(|c| !c.is_positive()) {
            return Err(SymSpecError::NonPositiveScale);
        }
        if space.torus_dim > 0 {
            QuadraticForm::new(torus_gram.clone())?;
        }
        Ok(MetricSpec { torus_gram, scales })
    }

    pub fn standard(space: &SymmetricSpaceSpec) -> MetricSpec {
        MetricSpec {
            torus_gram: RatMat::identity(space.torus_dim),
            scales: vec![Rat::one(); space.factors.len()],
        }
    }
}

/// `v0^T A v0 + sum_j c_j ||v_j||^2`, exact.
pub fn squared_length(
    space: &SymmetricSpaceSpec,
    metric: &MetricSpec,
    v: &RatVec,
) -> Result<Rat, SymSpecError> {
    space.check_ambient(v)?;
    let mut acc = if space.torus_dim > 0 {
        let t = space.torus_part(v);
        metric.torus_gram.mul_vec(&t).dot(&t)
    } else {
        Rat::zero()
    };
    for j in 0..space.factors.len() {
        let p = space.factor_part(v, j);
        acc += &metric.scales[j] * p.norm_sq();
    }
    Ok(acc)
}

/// Gram matrix of the integral-lattice basis under the metric.
fn metric_gram(space: &SymmetricSpaceSpec, metric: &MetricSpec) -> RatMat {
    let basis = space.lambda_i.basis();
    let n = basis.len();
    let mut g = RatMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Rat::zero();
            if space.torus_dim > 0 {
                let ti = space.torus_part(&basis[i]);
                let tj = space.torus_part(&basis[j]);
                acc += metric.torus_gram.mul_vec(&ti).dot(&tj);
            }
            for (k, c) in metric.scales.iter().enumerate() {
                let pi = space.factor_part(&basis[i], k);
                let pj = space.factor_part(&basis[j], k);
                acc += c * pi.dot(&pj);
            }
            g[(i, j)] = acc.clone();
            g[(j, i)] = acc;
        }
    }
    g
}

/// Ziller's root formula: `sum n_beta |beta(v)| - sum_{beta(v) != 0} n_beta`,
/// summed over factors; 0 for `v = 0`. Metric-independent.
pub fn morse_index(space: &SymmetricSpaceSpec, v: &RatVec) -> Result<u64, SymSpecError> {
    space.check_integral(v)?;
    let mut acc = Rat::zero();
    for (j, f) in space.factors.iter().enumerate() {
        let part = space.factor_part(v, j);
        acc += f.rs.weighted_pos_sum(&part, true)?;
        for &i in &f.rs.positives {
            if !f.rs.roots[i].functional.dot(&part).is_zero() {
                acc -= rat_int(f.rs.mult[i] as i64);
            }
        }
    }
    assert!(
        acc.denom().is_one() && !acc.is_negative(),
        "Morse index must be a nonnegative integer"
    );
    Ok(acc.numer().to_u64().expect("Morse index fits u64"))
}

/// Total degree of singularity over the factors.
pub fn degree_of_singularity(
    space: &SymmetricSpaceSpec,
    v: &RatVec,
) -> Result<u64, SymSpecError> {
    space.check_ambient(v)?;
    let mut acc = 0u64;
    for (j, f) in space.factors.iter().enumerate() {
        acc += f.rs.degree_of_singularity(&space.factor_part(v, j))?;
    }
    Ok(acc)
}

/// Dimension of the fixed-point component of the time-tau geodesic flow
/// containing the geodesic with initial velocity `v != 0`: the torus
/// contributes `d`; a factor with nonzero component contributes its
/// regular-orbit dimension minus the degree of singularity; a factor with
/// zero component contributes the factor's own dimension (the orbit of the
/// zero vector is the base factor).
pub fn dim_fix(space: &SymmetricSpaceSpec, v: &RatVec) -> Result<u64, SymSpecError> {
    space.check_integral(v)?;
    if v.is_zero() {
        return Err(SymSpecError::ZeroVector);
    }
    let mut acc = space.torus_dim as u64;
    for (j, f) in space.factors.iter().enumerate() {
        let part = space.factor_part(v, j);
        if part.is_zero() {
            acc += f.space_dim();
        } else {
            acc += f.regular_orbit_dim() - f.rs.degree_of_singularity(&part)?;
        }
    }
    Ok(acc)
}

/// The per-type mod-4 length function `f` of a split-rank factor, evaluated
/// at `x = s/c` where `s` is the squared component norm in metric units and
/// `c` the factor's scale (so `x` is the ambient Euclidean squared norm).
///
/// The value depends only on the factor type and a parity condition on `x`;
/// quotients whose integral lattice never realizes the nontrivial parity
/// case simply never query it.
pub fn f_mod4(
    space: &SymmetricSpaceSpec,
    factor_idx: usize,
    c: &Rat,
    s: &Rat,
) -> Result<u8, SymSpecError> {
    let f = &space.factors[factor_idx];
    match f.kind {
        FactorKind::MaximalRank => return Err(SymSpecError::FUndefined),
        FactorKind::TypeISplitRank => return Ok(0),
        FactorKind::Group => {}
    }
    if !f_parity_active(space, factor_idx) {
        return Ok(0);
    }
    let x = s / c;
    let two_if = |odd: bool| if odd { 2 } else { 0 };
    let val = match f.rs.label {
        TypeLabel::A => {
            let t = &x * rat_int(f.rs.rank as i64 + 1);
            if !t.denom().is_one() {
                return Err(SymSpecError::NormNotAchieved(rat_str(&x)));
            }
            two_if(t.numer().is_odd())
        }
        TypeLabel::B => {
            if !x.denom().is_one() {
                return Err(SymSpecError::NormNotAchieved(rat_str(&x)));
            }
            two_if(x.numer().is_odd())
        }
        TypeLabel::C | TypeLabel::D | TypeLabel::E7 => two_if(!x.denom().is_one()),
        // unreachable: the parity case never activates for these
        TypeLabel::E6 | TypeLabel::E8 | TypeLabel::F4 | TypeLabel::G2 | TypeLabel::BC => 0,
    };
    Ok(val)
}

/// Morse index mod 4 predicted from component lengths and the fixed-set
/// dimension: `sum_j f_j(||v_j||) - dim Fix + dim M (mod 4)`; 0 for a purely
/// Euclidean (torus-only) vector.
pub fn predicted_morse_mod4(
    space: &SymmetricSpaceSpec,
    metric: &MetricSpec,
    v: &RatVec,
) -> Result<u8, SymSpecError> {
    space.check_integral(v)?;
    let euclidean = (0..space.factors.len()).all(|j| space.factor_part(v, j).is_zero());
    if euclidean {
        return Ok(0);
    }
    let mut acc: i64 = 0;
    for j in 0..space.factors.len() {
        let s = &metric.scales[j] * space.factor_part(v, j).norm_sq();
        acc += f_mod4(space, j, &metric.scales[j], &s)? as i64;
    }
    acc -= dim_fix(space, v)? as i64;
    acc += space.dim() as i64;
    Ok(acc.rem_euclid(4) as u8)
}

/// One closed-geodesic class: a Weyl-canonical lattice vector with its exact
/// invariants.
#[derive(Debug, Clone)]
pub struct GeodesicClass {
    pub torus: RatVec,
    pub parts: Vec<RatVec>,
    pub len2: Rat,
    pub degsing: u64,
    pub dim_fix: u64,
    pub morse: u64,
    pub morse_mod4: u8,
}

impl GeodesicClass {
    pub fn canonical_vector(&self, space: &SymmetricSpaceSpec) -> RatVec {
        space.assemble(&self.torus, &self.parts)
    }

    /// Metric squared norms per component: torus first, then factors.
    pub fn component_norms(&self, metric: &MetricSpec) -> Vec<Rat> {
        let mut out = Vec::with_capacity(1 + self.parts.len());
        let t = if self.torus.dim() > 0 {
            metric.torus_gram.mul_vec(&self.torus).dot(&self.torus)
        } else {
            Rat::zero()
        };
        out.push(t);
        for (p, c) in self.parts.iter().zip(&metric.scales) {
            out.push(c * p.norm_sq());
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub bound: Rat,
    pub classes: BTreeMap<Rat, Vec<GeodesicClass>>,
}

impl SpectrumReport {
    pub fn total_classes(&self) -> usize {
        self.classes.values().map(|v| v.len()).sum()
    }
}

/// Canonical representative of the geodesic class of `v`: per-factor
/// dominant representatives, lexicographically minimized over time reversal.
fn canonicalize(space: &SymmetricSpaceSpec, v: &RatVec) -> Result<RatVec, SymSpecError> {
    let reduce = |w: &RatVec| -> Result<RatVec, SymSpecError> {
        let torus = space.torus_part(w);
        let parts: Result<Vec<RatVec>, RootSysError> = space
            .factors
            .iter()
            .enumerate()
            .map(|(j, f)| f.rs.dominant_representative(&space.factor_part(w, j)))
            .collect();
        Ok(space.assemble(&torus, &parts?))
    };
    let a = reduce(v)?;
    let b = reduce(&-v)?;
    Ok(if a <= b { a } else { b })
}

/// All geodesic classes with `len2` at most `bound`, grouped by squared
/// length, duplicate-free up to Weyl equivalence and time reversal.
pub fn enumerate_spectrum(
    space: &SymmetricSpaceSpec,
    metric: &MetricSpec,
    bound: &Rat,
) -> Result<SpectrumReport, SymSpecError> {
    let gram = metric_gram(space, metric);
    let q = QuadraticForm::new(gram)?;
    let shorts = enumerate_up_to(&space.lambda_i, &q, bound, true)?;
    let mut classes: BTreeMap<Rat, BTreeMap<RatVec, GeodesicClass>> = BTreeMap::new();
    for s in shorts {
        let canon = canonicalize(space, &s.vector)?;
        let bucket = classes.entry(s.norm.clone()).or_default();
        if bucket.contains_key(&canon) {
            continue;
        }
        let degsing = degree_of_singularity(space, &canon)?;
        let dimfix = dim_fix(space, &canon)?;
        let morse = morse_index(space, &canon)?;
        let torus = space.torus_part(&canon);
        let parts: Vec<RatVec> =
            (0..space.factors.len()).map(|j| space.factor_part(&canon, j)).collect();
        bucket.insert(
            canon,
            GeodesicClass {
                torus,
                parts,
                len2: s.norm.clone(),
                degsing,
                dim_fix: dimfix,
                morse,
                morse_mod4: (morse % 4) as u8,
            },
        );
    }
    Ok(SpectrumReport {
        bound: bound.clone(),
        classes: classes.into_iter().map(|(k, v)| (k, v.into_values().collect())).collect(),
    })
}

/// Leading-term certificate for one parity at one squared length.
#[derive(Debug, Clone)]
pub struct ParityReport {
    /// Max component dimension of this parity, if any.
    pub max_dim: Option<u64>,
    /// Morse residues mod 4 over the components attaining `max_dim`.
    pub residues: Vec<u8>,
    /// True iff `residues` is nonempty and constant.
    pub certified_nonzero: bool,
}

#[derive(Debug, Clone)]
pub struct WaveTermReport {
    pub len2: Rat,
    pub even: ParityReport,
    pub odd: ParityReport,
    /// Parity of the overall maximal component dimension.
    pub leading_parity_even: bool,
    pub leading_certified_nonzero: bool,
}

fn parity_report(classes: &[GeodesicClass], even: bool) -> ParityReport {
    let dims: Vec<u64> =
        classes.iter().filter(|c| (c.dim_fix % 2 == 0) == even).map(|c| c.dim_fix).collect();
    let Some(&max_dim) = dims.iter().max() else {
        return ParityReport { max_dim: None, residues: Vec::new(), certified_nonzero: false };
    };
    let mut residues: Vec<u8> =
        classes.iter().filter(|c| c.dim_fix == max_dim).map(|c| c.morse_mod4).collect();
    residues.sort_unstable();
    let certified = !residues.is_empty() && residues.iter().all(|&r| r == residues[0]);
    ParityReport { max_dim: Some(max_dim), residues, certified_nonzero: certified }
}

/// Per squared length: max component dimension per parity, the residue
/// multiset of Morse indices mod 4 on the leading components, and whether
/// the leading wave term is certified nonzero. Cancellation is only ever
/// flagged as possible (`certified_nonzero = false`); volumes of distinct
/// components are not computed here.
pub fn wave_analysis(report: &SpectrumReport) -> Vec<WaveTermReport> {
    report
        .classes
        .iter()
        .map(|(len2, classes)| {
            let even = parity_report(classes, true);
            let odd = parity_report(classes, false);
            let overall = classes.iter().map(|c| c.dim_fix).max().unwrap_or(0);
            let leading_even = overall % 2 == 0;
            let leading = if leading_even { &even } else { &odd };
            WaveTermReport {
                len2: len2.clone(),
                leading_certified_nonzero: leading.certified_nonzero,
                leading_parity_even: leading_even,
                even,
                odd,
            }
        })
        .collect()
}

/// `rank = 2 dim_U - max_tau dim Fix(Phi_tau)`. Requires a regular vector
/// within the report's bound; flat spaces (no factors) report their torus
/// dimension directly.
pub fn recover_rank(
    space: &SymmetricSpaceSpec,
    metric: &MetricSpec,
    report: &SpectrumReport,
    dim_u: u64,
) -> Result<u64, SymSpecError> {
    if space.factors.is_empty() {
        return Ok(space.torus_dim as u64);
    }
    let is_regular = |c: &GeodesicClass| c.degsing == 0 && !c.parts.iter().any(|p| p.is_zero());
    if !report.classes.values().flatten().any(is_regular) {
        // search outward for the smallest regular candidate to report
        let mut bound = if report.bound.is_zero() { Rat::one() } else { report.bound.clone() };
        for _ in 0..24 {
            bound = &bound * rat_int(2);
            let bigger = enumerate_spectrum(space, metric, &bound)?;
            if let Some(c) = bigger.classes.values().flatten().find(|c| is_regular(c)) {
                return Err(SymSpecError::NoRegularVector(rat_str(&c.len2)));
            }
        }
        return Err(SymSpecError::NoRegularVector("unknown".into()));
    }
    let max_dim = report.classes.values().flatten().map(|c| c.dim_fix).max().unwrap();
    Ok(2 * dim_u - max_dim)
}

#[derive(Debug, Clone)]
pub enum CluVerdict {
    CluUpToBound,
    Witness(Box<(GeodesicClass, GeodesicClass)>),
}

/// Component-length-uniqueness check: within each squared-length bucket all
/// classes must have identical per-component metric norms. Returns the first
/// violating pair in canonical order.
pub fn clu_check(report: &SpectrumReport, metric: &MetricSpec) -> CluVerdict {
    for classes in report.classes.values() {
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                if classes[i].component_norms(metric) != classes[j].component_norms(metric) {
                    return CluVerdict::Witness(Box::new((
                        classes[i].clone(),
                        classes[j].clone(),
                    )));
                }
            }
        }
    }
    CluVerdict::CluUpToBound
}

/// Justification of the class-H membership verdict, per factor.
#[derive(Debug, Clone)]
pub struct ClassHReport {
    pub in_h: bool,
    pub reasons: Vec<String>,
}

/// Membership in the collection of homogeneity types whose Morse residue is
/// constant on equal-dimension components at every length, for any symmetric
/// metric: irreducible spaces, trivial gamma, or per-factor constraints on
/// the gamma projections.
pub fn in_class_h(space: &SymmetricSpaceSpec) -> Result<ClassHReport, SymSpecError> {
    if space.factors.iter().any(|f| f.kind == FactorKind::MaximalRank) {
        return Err(SymSpecError::NotSplitRank);
    }
    if space.torus_dim == 0 && space.factors.len() == 1 {
        return Ok(ClassHReport { in_h: true, reasons: vec!["irreducible".into()] });
    }
    let orders: Vec<u64> =
        (0..space.factors.len()).map(|j| space.gamma_projection_order(j)).collect();
    if orders.iter().all(|&o| o == 1) {
        return Ok(ClassHReport { in_h: true, reasons: vec!["gamma trivial".into()] });
    }
    let mut in_h = true;
    let mut reasons = Vec::new();
    for (j, f) in space.factors.iter().enumerate() {
        let order = orders[j];
        let (ok, why) = match f.kind {
            FactorKind::TypeISplitRank => (true, "Type I split-rank factor: unrestricted".into()),
            FactorKind::MaximalRank => unreachable!(),
            FactorKind::Group => match f.rs.label {
                TypeLabel::A => {
                    if f.rs.rank % 2 == 1 {
                        let full = f.rs.rank as u64 + 1;
                        (
                            order < full,
                            format!("A_n with n odd: projection order {order} must be below {full}"),
                        )
                    } else {
                        (true, "A_n with n even: unrestricted".into())
                    }
                }
                TypeLabel::B => (order == 1, format!("B_n: projection order {order} must be 1")),
                TypeLabel::C => {
                    if f.rs.rank % 4 == 1 || f.rs.rank % 4 == 2 {
                        (
                            order == 1,
                            format!("C_n with n = 1,2 mod 4: projection order {order} must be 1"),
                        )
                    } else {
                        (true, "C_n with n = 0,3 mod 4: unrestricted".into())
                    }
                }
                TypeLabel::D => match f.rs.rank % 4 {
                    2 => {
                        // allowed: trivial, or the Z2 whose lifts are integral
                        let integral = space
                            .gamma_projection(j)
                            .iter()
                            .all(|g| g.0.iter().all(|x| x.denom().is_one()));
                        (
                            order == 1 || (order == 2 && integral),
                            format!(
                                "D_n with n = 2 mod 4: projection (order {order}, integral lifts {integral}) must be trivial or the integral Z2"
                            ),
                        )
                    }
                    3 => (
                        order <= 2,
                        format!("D_n with n = 3 mod 4: projection order {order} must be at most 2"),
                    ),
                    _ => (true, "D_n with n = 0,1 mod 4: unrestricted".into()),
                },
                TypeLabel::E7 => (order == 1, format!("E7: projection order {order} must be 1")),
                _ => (true, format!("{}: unrestricted", f.rs.label)),
            },
        };
        if !ok {
            in_h = false;
        }
        reasons.push(format!("factor {j} ({}_{}): {}", f.rs.label, f.rs.rank, why));
    }
    Ok(ClassHReport { in_h, reasons })
}

/// A violation of the mod-4 component-length congruence, if one exists.
#[derive(Debug, Clone)]
pub struct FLemmaViolation {
    pub coeffs: Vec<i64>,
    pub norm: Rat,
    pub sum_mod4: u8,
    pub f_value: u8,
}

/// Brute-force scan of the congruence
/// `sum_beta n_beta beta(v) = f(||v||^2) mod 4` over every integral-lattice
/// vector of one split-rank factor with Euclidean squared norm at most
/// `bound`. The inner loop is scaled-integer arithmetic.
pub fn flemma_scan(
    space: &SymmetricSpaceSpec,
    factor_idx: usize,
    bound: &Rat,
) -> Result<Option<FLemmaViolation>, SymSpecError> {
    let f = &space.factors[factor_idx];
    if f.kind == FactorKind::MaximalRank {
        return Err(SymSpecError::FUndefined);
    }
    let parity_active = f_parity_active(space, factor_idx);
    let li = f.integral_lattice();
    let basis = li.basis();
    let gram_rat = li.basis_gram_weighted(&vec![Rat::one(); f.rs.ambient_dim]);
    let coeff_vectors = lattice::enumerate_coeffs(&gram_rat, bound, true)?;

    // scaled integer data: ||v||^2 = (z^T G z) / dg, 2rho(v) = (T . z) / dt
    let n = basis.len();
    let mut dg = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            dg = dg.lcm(gram_rat[(i, j)].denom());
        }
    }
    let gi: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = &gram_rat[(i, j)] * Rat::from_integer(dg.clone());
                    x.numer().to_i128().expect("scaled gram fits i128")
                })
                .collect()
        })
        .collect();
    let dg: i128 = dg.to_i128().expect("gram denominator fits i128");

    let two_rho = f.rs.two_rho_vector();
    let trow: Vec<Rat> = basis.iter().map(|b| two_rho.dot(b)).collect();
    let mut dt = BigInt::one();
    for t in &trow {
        dt = dt.lcm(t.denom());
    }
    let ti: Vec<i128> = trow
        .iter()
        .map(|t| (t * Rat::from_integer(dt.clone())).numer().to_i128().unwrap())
        .collect();
    let dt: i128 = dt.to_i128().unwrap();
    let group_mult = f.kind == FactorKind::Group;

    let rank_a = f.rs.rank as i128;
    for z in coeff_vectors {
        let mut q: i128 = 0;
        for i in 0..n {
            if z[i] == 0 {
                continue;
            }
            for j in 0..n {
                if z[j] != 0 {
                    q += gi[i][j] * z[i] as i128 * z[j] as i128;
                }
            }
        }
        let fval: u8 = if !parity_active {
            0
        } else {
            match f.rs.label {
                TypeLabel::A => {
                    let t = (rank_a + 1) * q;
                    assert!(t % dg == 0, "(n+1)||v||^2 integral on the central lattice");
                    if (t / dg) % 2 != 0 {
                        2
                    } else {
                        0
                    }
                }
                TypeLabel::B => {
                    assert!(q % dg == 0, "||v||^2 integral for B_n");
                    if (q / dg) % 2 != 0 {
                        2
                    } else {
                        0
                    }
                }
                TypeLabel::C | TypeLabel::D | TypeLabel::E7 => {
                    if q % dg != 0 {
                        2
                    } else {
                        0
                    }
                }
                _ => 0,
            }
        };
        let sum_mod4: u8 = if group_mult {
            let mut s: i128 = 0;
            for i in 0..n {
                s += ti[i] * z[i] as i128;
            }
            // sum n_beta beta(v) = 2 * 2rho(v); 2rho(v) = s/dt is an integer
            assert!(s % dt == 0, "2rho integral on the central lattice");
            (2 * (s / dt)).rem_euclid(4) as u8
        } else {
            // Type I profiles: generic exact path
            let v = li.vector_from_coeffs(&z);
            let s = f.rs.weighted_pos_sum(&v, false)?;
            assert!(s.denom().is_one());
            (s.numer() % BigInt::from(4)).to_i64().unwrap().rem_euclid(4) as u8
        };
        if sum_mod4 != fval {
            return Ok(Some(FLemmaViolation {
                coeffs: z.clone(),
                norm: Rat::new(BigInt::from(q), BigInt::from(dg)),
                sum_mod4,
                f_value: fval,
            }));
        }
    }
    Ok(None)
}
