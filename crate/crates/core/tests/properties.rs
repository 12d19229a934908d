//! Property tests for the spec-level invariants that cut across modules.

use proptest::prelude::*;
use weylspec::lattice::{class_order, lattice_from_generators, IntegerLattice, QuadraticForm};
use weylspec::linalg::{RatMat, RatVec};
use weylspec::rat::{rat, rat_int};
use weylspec::rootsys::{build_root_system, MultProfile, TypeLabel};
use weylspec::symspec::{
    enumerate_spectrum, predicted_morse_mod4, Factor, MetricSpec, SymmetricSpaceSpec,
};

fn l1(n: usize) -> RatVec {
    let mut v = vec![rat(-1, n as i64 + 1); n + 1];
    v[0] = rat(n as i64, n as i64 + 1);
    RatVec(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // dominant reduction is idempotent and constant on Weyl orbits
    #[test]
    fn dominant_reduction_is_orbit_invariant(
        coords in prop::collection::vec(-6i64..=6, 3),
        word in prop::collection::vec(0usize..3, 0..8),
    ) {
        let rs = build_root_system(TypeLabel::B, 3, MultProfile::default()).unwrap();
        let v = RatVec::from_i64(&coords);
        let mut w = v.clone();
        for step in word {
            let s = rs.simples[step];
            let p = rs.roots[s].functional.dot(&w);
            w = &w - &rs.roots[s].coroot.scale(&p);
        }
        let dv = rs.dominant_representative(&v).unwrap();
        let dw = rs.dominant_representative(&w).unwrap();
        prop_assert_eq!(&dv, &dw);
        prop_assert_eq!(rs.dominant_representative(&dv).unwrap(), dv.clone());
        // abs-weighted sum and degree of singularity are Weyl invariants
        prop_assert_eq!(
            rs.weighted_pos_sum(&v, true).unwrap(),
            rs.weighted_pos_sum(&w, true).unwrap()
        );
        prop_assert_eq!(
            rs.degree_of_singularity(&v).unwrap(),
            rs.degree_of_singularity(&w).unwrap()
        );
    }

    // canonical bases are stable under regeneration, and scaling-closed
    #[test]
    fn lattice_canonical_basis_stable(
        gens in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..5),
    ) {
        let gens: Vec<RatVec> = gens.iter().map(|g| RatVec::from_i64(g)).collect();
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let lat = lattice_from_generators(&gens).unwrap();
        let again = lattice_from_generators(&lat.basis()).unwrap();
        prop_assert_eq!(&lat, &again);
        for g in &gens {
            prop_assert!(lat.contains(g));
            prop_assert!(lat.contains(&g.scale(&rat_int(-3))));
        }
    }

    // exact enumeration is symmetric under negation when not deduplicated
    #[test]
    fn enumeration_negation_symmetry(bound in 1i64..20) {
        let lat = IntegerLattice::standard(3);
        let gram = RatMat::from_rows(&[
            RatVec::from_i64(&[2, 1, 0]),
            RatVec::from_i64(&[1, 3, 1]),
            RatVec::from_i64(&[0, 1, 4]),
        ]);
        let q = QuadraticForm::new(gram).unwrap();
        let all = weylspec::lattice::enumerate_up_to(&lat, &q, &rat_int(bound), false).unwrap();
        let mut set: std::collections::BTreeSet<Vec<i64>> =
            all.iter().map(|s| s.coeffs.clone()).collect();
        prop_assert_eq!(set.len(), all.len());
        for s in &all {
            let neg: Vec<i64> = s.coeffs.iter().map(|&x| -x).collect();
            prop_assert!(set.remove(&neg) || s.coeffs.iter().all(|&x| x == 0));
        }
    }
}

/// |Gamma| computed independently by closing the generator classes in the
/// quotient group must equal the lattice index [Lambda_I : Lambda_R].
#[test]
fn gamma_order_equals_lattice_index() {
    let cases: Vec<(TypeLabel, usize, Vec<RatVec>, u64)> = vec![
        (TypeLabel::A, 1, vec![l1(1)], 2),
        (TypeLabel::A, 3, vec![l1(3).scale(&rat_int(2))], 2),
        (TypeLabel::A, 5, vec![l1(5).scale(&rat_int(2))], 3),
        (TypeLabel::B, 3, vec![RatVec::from_i64(&[1, 0, 0])], 2),
        (TypeLabel::D, 4, vec![RatVec::from_i64(&[1, 0, 0, 0]), RatVec(vec![rat(1, 2); 4])], 4),
        (TypeLabel::D, 5, vec![RatVec(vec![rat(1, 2); 5])], 4),
    ];
    for (label, rank, gamma, expected_order) in cases {
        let factor = Factor::group(label, rank, gamma.clone()).unwrap();
        let li = factor.integral_lattice();
        assert!(li.contains_lattice(&factor.lambda_r), "{label}_{rank}: chain bottom");
        assert!(factor.lambda_z.contains_lattice(&li), "{label}_{rank}: chain top");
        let index = li
            .index_of_sublattice(&factor.lambda_r)
            .unwrap()
            .to_string()
            .parse::<u64>()
            .unwrap();
        // independent order: close the generator classes under addition
        let mut classes = std::collections::BTreeSet::new();
        let zero = factor.lambda_r.reduce_mod(&RatVec::zeros(li.ambient_dim)).unwrap();
        classes.insert(zero);
        let mut frontier = vec![RatVec::zeros(li.ambient_dim)];
        while let Some(x) = frontier.pop() {
            for g in &gamma {
                let y = &x + g;
                let rep = factor.lambda_r.reduce_mod(&y).unwrap();
                if classes.insert(rep) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(classes.len() as u64, expected_order, "{label}_{rank}: closure order");
        assert_eq!(index, expected_order, "{label}_{rank}: index");
        // each generator's class order divides the group order
        for g in &gamma {
            let ord = class_order(&factor.lambda_r, g, 16).unwrap();
            assert_eq!(expected_order % ord, 0);
        }
    }
}

/// predicted residue == Morse index mod 4 on every enumerated class of a
/// matrix of split-rank spaces.
#[test]
fn predicted_residue_matches_morse_everywhere() {
    let spaces: Vec<SymmetricSpaceSpec> = vec![
        SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::A, 2, vec![]).unwrap()], vec![])
            .unwrap(),
        SymmetricSpaceSpec::new(
            0,
            vec![Factor::group(TypeLabel::A, 1, vec![l1(1)]).unwrap()],
            vec![],
        )
        .unwrap(),
        SymmetricSpaceSpec::new(
            0,
            vec![Factor::group(TypeLabel::C, 3, vec![RatVec(vec![rat(1, 2); 3])]).unwrap()],
            vec![],
        )
        .unwrap(),
        SymmetricSpaceSpec::new(
            0,
            vec![Factor::group(TypeLabel::D, 4, vec![RatVec(vec![rat(1, 2); 4])]).unwrap()],
            vec![],
        )
        .unwrap(),
        SymmetricSpaceSpec::new(
            1,
            vec![
                Factor::group(TypeLabel::A, 1, vec![]).unwrap(),
                Factor::group(TypeLabel::A, 1, vec![l1(1)]).unwrap(),
            ],
            vec![],
        )
        .unwrap(),
        // Type I split-rank factor with multiplicity 4
        SymmetricSpaceSpec::new(
            0,
            vec![Factor::type_i(TypeLabel::A, 2, MultProfile::Uniform(4), vec![]).unwrap()],
            vec![],
        )
        .unwrap(),
    ];
    for space in spaces {
        let metric = MetricSpec::standard(&space);
        let report = enumerate_spectrum(&space, &metric, &rat_int(10)).unwrap();
        assert!(report.total_classes() > 0);
        for classes in report.classes.values() {
            for c in classes {
                let v = c.canonical_vector(&space);
                let p = predicted_morse_mod4(&space, &metric, &v).unwrap();
                assert_eq!(p, c.morse_mod4, "space dim {}, v = {:?}", space.dim(), v);
            }
        }
    }
}
