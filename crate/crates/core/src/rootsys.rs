//! The ten indecomposable (restricted) root systems in explicit ambient
//! rational coordinates, with co-roots, Weyl-chamber data, multiplicities,
//! dominant reduction and center computation.
//!
//! Coordinates follow the classical conventions: `A_n` lives in the
//! sum-zero hyperplane of R^{n+1}, `B_n/C_n/D_n/BC_n/F_4` fill R^n, `G_2`
//! lives in the sum-zero hyperplane of R^3 and `E_6/E_7` sit inside the
//! `E_8` ambient R^8. A root is stored as the vector in the subspace `V`
//! that represents the functional under the standard inner product, so
//! `beta(v) = <beta*, v>` exactly.

use crate::lattice::{self, IntegerLattice};
use crate::linalg::{RatMat, RatVec};
use crate::rat::{rat, rat_int, rat_str, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    BC,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl TypeLabel {
    pub fn parse(s: &str) -> Option<TypeLabel> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(TypeLabel::A),
            "B" => Some(TypeLabel::B),
            "C" => Some(TypeLabel::C),
            "D" => Some(TypeLabel::D),
            "BC" => Some(TypeLabel::BC),
            "E6" => Some(TypeLabel::E6),
            "E7" => Some(TypeLabel::E7),
            "E8" => Some(TypeLabel::E8),
            "F4" => Some(TypeLabel::F4),
            "G2" => Some(TypeLabel::G2),
            _ => None,
        }
    }

    /// Valid rank range for the label.
    pub fn rank_ok(&self, rank: usize) -> bool {
        match self {
            TypeLabel::A | TypeLabel::BC => rank >= 1,
            TypeLabel::B => rank >= 2,
            TypeLabel::C => rank >= 3,
            TypeLabel::D => rank >= 4,
            TypeLabel::E6 => rank == 6,
            TypeLabel::E7 => rank == 7,
            TypeLabel::E8 => rank == 8,
            TypeLabel::F4 => rank == 4,
            TypeLabel::G2 => rank == 2,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::BC => "BC",
            TypeLabel::E6 => "E6",
            TypeLabel::E7 => "E7",
            TypeLabel::E8 => "E8",
            TypeLabel::F4 => "F4",
            TypeLabel::G2 => "G2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RootSysError {
    #[error("invalid rank {rank} for type {label}")]
    InvalidRank { label: TypeLabel, rank: usize },
    #[error("multiplicity profile needs {expected} orbit entries, got {got}")]
    MultArity { expected: usize, got: usize },
    #[error("multiplicities must be positive")]
    NonPositiveMult,
    #[error("vector has dimension {got}, ambient dimension is {expected}")]
    DimMismatch { expected: usize, got: usize },
    #[error("vector {0} lies outside the root-system subspace")]
    OutsideSubspace(String),
}

/// One root: the vector `functional` in `V` representing beta (so that
/// `beta(v) = <functional, v>`) together with its co-root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub functional: RatVec,
    pub coroot: RatVec,
}

/// Finite abelian group in invariant-factor form (each factor divides the next).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Multiplicity assignment per Weyl orbit of root lengths (orbits sorted by
/// increasing squared functional length).
#[derive(Debug, Clone)]
pub enum MultProfile {
    Uniform(u32),
    PerOrbit(Vec<u32>),
}

impl Default for MultProfile {
    fn default() -> Self {
        MultProfile::Uniform(1)
    }
}

#[derive(Clone)]
pub struct WeightedRootSystem {
    pub label: TypeLabel,
    pub rank: usize,
    pub ambient_dim: usize,
    /// Basis of the subspace `V` (the simple co-roots).
    pub subspace_basis: Vec<RatVec>,
    /// All roots, sorted lexicographically by functional coordinates.
    pub roots: Vec<Root>,
    /// Indices into `roots`.
    pub positives: Vec<usize>,
    /// Indices into `roots`; simple = indecomposable positive.
    pub simples: Vec<usize>,
    /// Multiplicity per root index; constant on Weyl orbits.
    pub mult: Vec<u32>,
    /// Orbit id per root (orbits sorted by squared length, ascending).
    pub orbit: Vec<usize>,
    pub num_orbits: usize,
}

impl fmt::Debug for WeightedRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} ({} roots)", self.label, self.rank, self.roots.len())
    }
}

fn basis_vec(dim: usize, entries: &[(usize, Rat)]) -> RatVec {
    let mut v = RatVec::zeros(dim);
    for (i, x) in entries {
        v.0[*i] = x.clone();
    }
    v
}

/// Raw functional vectors plus a regular chamber vector, per type.
fn raw_roots(label: TypeLabel, rank: usize) -> (Vec<RatVec>, RatVec, usize) {
    let one = Rat::one;
    match label {
        TypeLabel::A => {
            let dim = rank + 1;
            let mut roots = Vec::new();
            for mu in 0..dim {
                for nu in 0..dim {
                    if mu != nu {
                        roots.push(basis_vec(dim, &[(mu, one()), (nu, -one())]));
                    }
                }
            }
            let chamber = RatVec((0..dim).map(|j| rat_int((dim - j) as i64)).collect());
            (roots, chamber, dim)
        }
        TypeLabel::B | TypeLabel::C | TypeLabel::D | TypeLabel::BC => {
            let dim = rank;
            let mut roots = Vec::new();
            let singles = matches!(label, TypeLabel::B | TypeLabel::BC);
            let doubles = matches!(label, TypeLabel::C | TypeLabel::BC);
            for mu in 0..dim {
                if singles {
                    roots.push(basis_vec(dim, &[(mu, one())]));
                    roots.push(basis_vec(dim, &[(mu, -one())]));
                }
                if doubles {
                    roots.push(basis_vec(dim, &[(mu, rat_int(2))]));
                    roots.push(basis_vec(dim, &[(mu, rat_int(-2))]));
                }
            }
            if label != TypeLabel::B || dim >= 2 {
                for mu in 0..dim {
                    for nu in (mu + 1)..dim {
                        for (s, t) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                            roots.push(basis_vec(dim, &[(mu, rat_int(s)), (nu, rat_int(t))]));
                        }
                    }
                }
            }
            let chamber = RatVec((0..dim).map(|j| rat_int((dim - j) as i64)).collect());
            (roots, chamber, dim)
        }
        TypeLabel::F4 => {
            let dim = 4;
            let mut roots = Vec::new();
            for mu in 0..4 {
                roots.push(basis_vec(dim, &[(mu, one())]));
                roots.push(basis_vec(dim, &[(mu, -one())]));
            }
            for mu in 0..4 {
                for nu in (mu + 1)..4 {
                    for (s, t) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(basis_vec(dim, &[(mu, rat_int(s)), (nu, rat_int(t))]));
                    }
                }
            }
            for mask in 0..16u32 {
                let v = RatVec(
                    (0..4)
                        .map(|j| if mask >> j & 1 == 1 { rat(-1, 2) } else { rat(1, 2) })
                        .collect(),
                );
                roots.push(v);
            }
            (roots, RatVec::from_i64(&[8, 3, 2, 1]), dim)
        }
        TypeLabel::G2 => {
            let dim = 3;
            let mut roots = Vec::new();
            for mu in 0..3 {
                for nu in 0..3 {
                    if mu != nu {
                        roots.push(basis_vec(dim, &[(mu, one()), (nu, -one())]));
                    }
                }
            }
            // short roots: projections of +-e_mu onto the sum-zero plane
            for mu in 0..3 {
                for sgn in [1i64, -1] {
                    let v = RatVec(
                        (0..3)
                            .map(|j| {
                                let base = if j == mu { rat(2, 3) } else { rat(-1, 3) };
                                base * rat_int(sgn)
                            })
                            .collect(),
                    );
                    roots.push(v);
                }
            }
            (roots, RatVec::from_i64(&[3, 2, -5]), dim)
        }
        TypeLabel::E8 => {
            let dim = 8;
            let mut roots = Vec::new();
            for mu in 0..8 {
                for nu in (mu + 1)..8 {
                    for (s, t) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(basis_vec(dim, &[(mu, rat_int(s)), (nu, rat_int(t))]));
                    }
                }
            }
            for mask in 0..256u32 {
                if mask.count_ones() % 2 == 0 {
                    let v = RatVec(
                        (0..8)
                            .map(|j| if mask >> j & 1 == 1 { rat(-1, 2) } else { rat(1, 2) })
                            .collect(),
                    );
                    roots.push(v);
                }
            }
            (roots, RatVec::from_i64(&[0, 1, 2, 3, 4, 5, 6, 23]), dim)
        }
        TypeLabel::E7 => {
            let dim = 8;
            let mut roots = Vec::new();
            for mu in 0..6 {
                for nu in (mu + 1)..6 {
                    for (s, t) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(basis_vec(dim, &[(mu, rat_int(s)), (nu, rat_int(t))]));
                    }
                }
            }
            roots.push(basis_vec(dim, &[(6, one()), (7, -one())]));
            roots.push(basis_vec(dim, &[(6, -one()), (7, one())]));
            for mask in 0..64u32 {
                if mask.count_ones() % 2 == 1 {
                    for sgn in [1i64, -1] {
                        let mut coords: Vec<Rat> = (0..6)
                            .map(|j| if mask >> j & 1 == 1 { rat(-1, 2) } else { rat(1, 2) })
                            .collect();
                        coords.push(rat(1, 2));
                        coords.push(rat(-1, 2));
                        let v = RatVec(coords).scale(&rat_int(sgn));
                        roots.push(v);
                    }
                }
            }
            (roots, RatVec::from_i64(&[6, 5, 4, 3, 2, 1, 11, -11]), dim)
        }
        TypeLabel::E6 => {
            let dim = 8;
            let mut roots = Vec::new();
            for mu in 0..5 {
                for nu in (mu + 1)..5 {
                    for (s, t) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(basis_vec(dim, &[(mu, rat_int(s)), (nu, rat_int(t))]));
                    }
                }
            }
            for mask in 0..32u32 {
                if mask.count_ones() % 2 == 1 {
                    for sgn in [1i64, -1] {
                        let mut coords: Vec<Rat> = (0..5)
                            .map(|j| if mask >> j & 1 == 1 { rat(-1, 2) } else { rat(1, 2) })
                            .collect();
                        coords.push(rat(1, 2));
                        coords.push(rat(1, 2));
                        coords.push(rat(-1, 2));
                        let v = RatVec(coords).scale(&rat_int(sgn));
                        roots.push(v);
                    }
                }
            }
            (roots, RatVec::from_i64(&[5, 4, 3, 2, 1, 6, 6, -6]), dim)
        }
    }
}

/// Builds the exact root datum for `label` at `rank` with the given
/// per-orbit multiplicity profile (default: all ones).
pub fn build_root_system(
    label: TypeLabel,
    rank: usize,
    mult_profile: MultProfile,
) -> Result<WeightedRootSystem, RootSysError> {
    if !label.rank_ok(rank) {
        return Err(RootSysError::InvalidRank { label, rank });
    }
    let (mut functionals, chamber, ambient_dim) = raw_roots(label, rank);
    functionals.sort();
    functionals.dedup();

    let roots: Vec<Root> = functionals
        .into_iter()
        .map(|f| {
            let n2 = f.norm_sq();
            let coroot = f.scale(&(rat_int(2) / n2));
            Root { functional: f, coroot }
        })
        .collect();

    let mut positives = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let p = r.functional.dot(&chamber);
        assert!(!p.is_zero(), "chamber vector is not regular for {label}_{rank}");
        if p.is_positive() {
            positives.push(i);
        }
    }
    assert_eq!(2 * positives.len(), roots.len(), "roots not closed under negation");

    // simple = indecomposable positive
    let pos_set: BTreeSet<&RatVec> = positives.iter().map(|&i| &roots[i].functional).collect();
    let mut simples = Vec::new();
    for &i in &positives {
        let a = &roots[i].functional;
        let decomposable = positives.iter().any(|&j| {
            let b = &roots[j].functional;
            let diff = a - b;
            !diff.is_zero() && *b != *a && pos_set.contains(&diff)
        });
        if !decomposable {
            simples.push(i);
        }
    }
    assert_eq!(simples.len(), rank, "simple count mismatch for {label}_{rank}");

    // Weyl orbits: grouped by squared functional length
    let mut lengths: Vec<Rat> = roots.iter().map(|r| r.functional.norm_sq()).collect();
    let mut distinct: Vec<Rat> = lengths.clone();
    distinct.sort();
    distinct.dedup();
    let orbit: Vec<usize> = lengths
        .drain(..)
        .map(|l| distinct.iter().position(|d| *d == l).unwrap())
        .collect();
    let num_orbits = distinct.len();

    let per_orbit = match mult_profile {
        MultProfile::Uniform(k) => {
            if k == 0 {
                return Err(RootSysError::NonPositiveMult);
            }
            vec![k; num_orbits]
        }
        MultProfile::PerOrbit(v) => {
            if v.len() != num_orbits {
                return Err(RootSysError::MultArity { expected: num_orbits, got: v.len() });
            }
            if v.iter().any(|&k| k == 0) {
                return Err(RootSysError::NonPositiveMult);
            }
            v
        }
    };
    let mult: Vec<u32> = orbit.iter().map(|&o| per_orbit[o]).collect();

    let subspace_basis: Vec<RatVec> = simples.iter().map(|&i| roots[i].coroot.clone()).collect();

    Ok(WeightedRootSystem {
        label,
        rank,
        ambient_dim,
        subspace_basis,
        roots,
        positives,
        simples,
        mult,
        orbit,
        num_orbits,
    })
}

impl WeightedRootSystem {
    /// Exact membership of `v` in the subspace `V`.
    pub fn check_in_subspace(&self, v: &RatVec) -> Result<(), RootSysError> {
        if v.dim() != self.ambient_dim {
            return Err(RootSysError::DimMismatch { expected: self.ambient_dim, got: v.dim() });
        }
        if self.rank == self.ambient_dim {
            return Ok(());
        }
        let basis = RatMat::from_rows(&self.subspace_basis).transpose();
        if basis.solve(v).is_none() {
            return Err(RootSysError::OutsideSubspace(v.coords_str()));
        }
        Ok(())
    }

    /// `beta(v)` for the root with index `root_index`.
    pub fn pairing(&self, root_index: usize, v: &RatVec) -> Result<Rat, RootSysError> {
        self.check_in_subspace(v)?;
        Ok(self.roots[root_index].functional.dot(v))
    }

    /// Deterministic dominant representative: descend by simple reflections,
    /// always reflecting at the lowest-index negative simple pairing.
    pub fn dominant_representative(&self, v: &RatVec) -> Result<RatVec, RootSysError> {
        self.check_in_subspace(v)?;
        let mut w = v.clone();
        'outer: loop {
            for &s in &self.simples {
                let p = self.roots[s].functional.dot(&w);
                if p.is_negative() {
                    let shift = self.roots[s].coroot.scale(&p);
                    w = &w - &shift;
                    continue 'outer;
                }
            }
            return Ok(w);
        }
    }

    pub fn is_dominant(&self, v: &RatVec) -> bool {
        self.simples.iter().all(|&s| !self.roots[s].functional.dot(v).is_negative())
    }

    /// `sum_{beta in R+} n_beta |beta(v)|` (abs) or `sum n_beta beta(v)` (plain).
    pub fn weighted_pos_sum(&self, v: &RatVec, use_abs: bool) -> Result<Rat, RootSysError> {
        self.check_in_subspace(v)?;
        let mut acc = Rat::zero();
        for &i in &self.positives {
            let mut p = self.roots[i].functional.dot(v);
            if use_abs && p.is_negative() {
                p = -p;
            }
            acc += p * rat_int(self.mult[i] as i64);
        }
        Ok(acc)
    }

    /// `rho(v)` with all multiplicities 1 (half the sum of positive roots).
    pub fn rho_pairing(&self, v: &RatVec) -> Result<Rat, RootSysError> {
        self.check_in_subspace(v)?;
        let mut acc = Rat::zero();
        for &i in &self.positives {
            acc += self.roots[i].functional.dot(v);
        }
        Ok(acc / rat_int(2))
    }

    /// Sum of the positive roots as a vector in `V` (the `2 rho` vector).
    pub fn two_rho_vector(&self) -> RatVec {
        let mut acc = RatVec::zeros(self.ambient_dim);
        for &i in &self.positives {
            acc = &acc + &self.roots[i].functional;
        }
        acc
    }

    /// Total multiplicity of positive roots vanishing on `v`.
    pub fn degree_of_singularity(&self, v: &RatVec) -> Result<u64, RootSysError> {
        self.check_in_subspace(v)?;
        Ok(self
            .positives
            .iter()
            .filter(|&&i| self.roots[i].functional.dot(v).is_zero())
            .map(|&i| self.mult[i] as u64)
            .sum())
    }

    pub fn is_regular(&self, v: &RatVec) -> Result<bool, RootSysError> {
        Ok(self.degree_of_singularity(v)? == 0)
    }

    /// Co-root lattice.
    pub fn coroot_lattice(&self) -> IntegerLattice {
        let gens: Vec<RatVec> = self.roots.iter().map(|r| r.coroot.clone()).collect();
        lattice::lattice_from_generators(&gens).expect("co-root lattice")
    }

    /// Central lattice: all `v` in `V` on which every root is an integer.
    /// Spanned by the fundamental co-weights (duals of the simple functionals
    /// inside `V`).
    pub fn central_lattice(&self) -> IntegerLattice {
        // Solve <alpha_i*, omega_j> = delta_ij with omega_j in span(subspace_basis).
        let b = RatMat::from_rows(&self.subspace_basis); // rank x ambient
        let a = RatMat::from_rows(
            &self.simples.iter().map(|&s| self.roots[s].functional.clone()).collect::<Vec<_>>(),
        );
        // pairing matrix P[i][k] = <alpha_i*, basis_k>
        let p = a.mul(&b.transpose());
        let pinv = p.inverse().expect("simple pairing matrix invertible");
        let mut gens = Vec::new();
        for j in 0..self.rank {
            // omega_j = sum_k c_k basis_k with P c = e_j  => c = column j of P^{-1}
            let mut w = RatVec::zeros(self.ambient_dim);
            for k in 0..self.rank {
                w = &w + &self.subspace_basis[k].scale(&pinv[(k, j)]);
            }
            gens.push(w);
        }
        lattice::lattice_from_generators(&gens).expect("central lattice")
    }

    /// Center `Lambda_Z / Lambda_coroot` as invariant factors plus, for each
    /// factor, a vector in `Lambda_Z` whose class generates it.
    pub fn center_structure(&self) -> (FiniteAbelianGroup, Vec<RatVec>) {
        let lz = self.central_lattice();
        let lr = self.coroot_lattice();
        lattice::quotient_structure(&lz, &lr)
    }

    /// Dimension of the compact symmetric space with these restricted roots
    /// and multiplicities: rank + sum of positive-root multiplicities.
    pub fn space_dim(&self) -> u64 {
        self.rank as u64 + self.positives.iter().map(|&i| self.mult[i] as u64).sum::<u64>()
    }

    /// Canonical JSON for the full root datum (roots in lexicographic order).
    pub fn datum_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{");
        s.push_str(&format!("\"label\":\"{}\",\"rank\":{},", self.label, self.rank));
        s.push_str(&format!("\"ambient_dim\":{},", self.ambient_dim));
        s.push_str(&format!("\"root_count\":{},", self.roots.len()));
        let vec_json = |v: &RatVec| -> String {
            let body: Vec<String> = v.0.iter().map(|x| format!("\"{}\"", rat_str(x))).collect();
            format!("[{}]", body.join(","))
        };
        s.push_str("\"roots\":[");
        let items: Vec<String> = self
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                format!(
                    "{{\"functional\":{},\"coroot\":{},\"mult\":{},\"positive\":{},\"simple\":{}}}",
                    vec_json(&r.functional),
                    vec_json(&r.coroot),
                    self.mult[i],
                    self.positives.contains(&i),
                    self.simples.contains(&i)
                )
            })
            .collect();
        s.push_str(&items.join(","));
        s.push_str("],");
        s.push_str(&format!("\"two_rho\":{},", vec_json(&self.two_rho_vector())));
        let (z, gens) = self.center_structure();
        let fac: Vec<String> = z.invariant_factors.iter().map(|d| d.to_string()).collect();
        s.push_str(&format!("\"center_invariant_factors\":[{}],", fac.join(",")));
        let g: Vec<String> = gens.iter().map(vec_json).collect();
        s.push_str(&format!("\"center_generators\":[{}]", g.join(",")));
        s.push_str("}");
        s
    }

    /// Compact canonical JSON of the golden facts (counts, simples, 2rho, center).
    pub fn summary_json(&self) -> String {
        let vec_json = |v: &RatVec| -> String {
            let body: Vec<String> = v.0.iter().map(|x| format!("\"{}\"", rat_str(x))).collect();
            format!("[{}]", body.join(","))
        };
        let simples: Vec<String> =
            self.simples.iter().map(|&i| vec_json(&self.roots[i].functional)).collect();
        let (z, _) = self.center_structure();
        let fac: Vec<String> = z.invariant_factors.iter().map(|d| d.to_string()).collect();
        format!(
            "{{\"label\":\"{}\",\"rank\":{},\"root_count\":{},\"simples\":[{}],\"two_rho\":{},\"center\":[{}]}}",
            self.label,
            self.rank,
            self.roots.len(),
            simples.join(","),
            vec_json(&self.two_rho_vector()),
            fac.join(",")
        )
    }
}
