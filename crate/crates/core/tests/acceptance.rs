//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).

use nalgebra::Vector3;
use num_traits::Zero;
use std::time::Instant;
use weylspec::lattice::{enumerate_up_to, IntegerLattice, QuadraticForm};
use weylspec::linalg::{RatMat, RatVec};
use weylspec::oracle::{
    self, brute_enumerate, closure_residual, monodromy_fixed_dim, numeric_conjugate_count,
    NatMetric, StepControl, L0,
};
use weylspec::rat::{rat, rat_int, rat_str, Rat};
use weylspec::rootsys::{build_root_system, MultProfile, TypeLabel};
use weylspec::so3nat::{
    self, classify_cleanliness, is_unclean_period, length_spectrum,
    type3_morse_index, wave0_taumin, Cleanliness, ComponentType, SO3Metric, Wave0Case,
};
use weylspec::surd::Surd;
use weylspec::symspec::{
    self, dim_fix, enumerate_spectrum, f_mod4, flemma_scan, in_class_h, morse_index,
    predicted_morse_mod4, recover_rank, squared_length, wave_analysis, Factor, MetricSpec,
    SymmetricSpaceSpec,
};

fn v64(c: &[i64]) -> RatVec {
    RatVec::from_i64(c)
}

fn vr(c: &[(i64, i64)]) -> RatVec {
    RatVec(c.iter().map(|&(p, q)| rat(p, q)).collect())
}

/// L1 generator of the A_n central lattice.
fn l1(n: usize) -> RatVec {
    let mut v = vec![rat(-1, n as i64 + 1); n + 1];
    v[0] = rat(n as i64, n as i64 + 1);
    RatVec(v)
}

/// Half-sum vector of C_n / D_n central lattices.
fn half_sum(n: usize) -> RatVec {
    RatVec(vec![rat(1, 2); n])
}

fn e1(n: usize) -> RatVec {
    let mut v = vec![0i64; n];
    v[0] = 1;
    v64(&v)
}

/// F generator of the E7 central lattice: e1+e2+e3+(e7-e8)/2.
fn e7_f() -> RatVec {
    vr(&[(1, 1), (1, 1), (1, 1), (0, 1), (0, 1), (0, 1), (1, 2), (-1, 2)])
}

// ---------------------------------------------------------------------------
// criterion 1: root-system golden data
// ---------------------------------------------------------------------------

struct Golden {
    label: TypeLabel,
    rank: usize,
    root_count: usize,
    simples: Vec<RatVec>,
    two_rho: RatVec,
    center: Vec<u64>,
}

fn vec_json(v: &RatVec) -> String {
    let body: Vec<String> = v.0.iter().map(|x| format!("\"{}\"", rat_str(x))).collect();
    format!("[{}]", body.join(","))
}

impl Golden {
    fn expected_json(&self) -> String {
        let mut simples = self.simples.clone();
        simples.sort();
        let s: Vec<String> = simples.iter().map(vec_json).collect();
        let c: Vec<String> = self.center.iter().map(|d| d.to_string()).collect();
        format!(
            "{{\"label\":\"{}\",\"rank\":{},\"root_count\":{},\"simples\":[{}],\"two_rho\":{},\"center\":[{}]}}",
            self.label,
            self.rank,
            self.root_count,
            s.join(","),
            vec_json(&self.two_rho),
            c.join(",")
        )
    }
}

fn chain_simples(n: usize, dim: usize) -> Vec<RatVec> {
    // e_k - e_{k+1} for k = 1..n
    (0..n)
        .map(|k| {
            let mut v = vec![0i64; dim];
            v[k] = 1;
            v[k + 1] = -1;
            v64(&v)
        })
        .collect()
}

fn golden_table() -> Vec<Golden> {
    let mut out = Vec::new();
    // A_1..A_7
    for n in 1..=7usize {
        let dim = n + 1;
        let two_rho = RatVec((1..=dim).map(|j| rat_int(n as i64 - 2 * j as i64 + 2)).collect());
        out.push(Golden {
            label: TypeLabel::A,
            rank: n,
            root_count: n * (n + 1),
            simples: chain_simples(n, dim),
            two_rho,
            center: vec![n as u64 + 1],
        });
    }
    // B_2..B_4
    for n in 2..=4usize {
        let mut simples = chain_simples(n - 1, n);
        let mut en = vec![0i64; n];
        en[n - 1] = 1;
        simples.push(v64(&en));
        let two_rho = RatVec((1..=n).map(|j| rat_int(2 * n as i64 - 2 * j as i64 + 1)).collect());
        out.push(Golden {
            label: TypeLabel::B,
            rank: n,
            root_count: 2 * n * n,
            simples,
            two_rho,
            center: vec![2],
        });
    }
    // C_3..C_4
    for n in 3..=4usize {
        let mut simples = chain_simples(n - 1, n);
        let mut en = vec![0i64; n];
        en[n - 1] = 2;
        simples.push(v64(&en));
        let two_rho = RatVec((1..=n).map(|j| rat_int(2 * (n as i64 - j as i64 + 1))).collect());
        out.push(Golden {
            label: TypeLabel::C,
            rank: n,
            root_count: 2 * n * n,
            simples,
            two_rho,
            center: vec![2],
        });
    }
    // D_4..D_6
    for n in 4..=6usize {
        let mut simples = chain_simples(n - 1, n);
        let mut dn = vec![0i64; n];
        dn[n - 2] = 1;
        dn[n - 1] = 1;
        simples.push(v64(&dn));
        let two_rho = RatVec((1..=n).map(|j| rat_int(2 * (n as i64 - j as i64))).collect());
        out.push(Golden {
            label: TypeLabel::D,
            rank: n,
            root_count: 2 * n * (n - 1),
            simples,
            two_rho,
            center: if n % 2 == 0 { vec![2, 2] } else { vec![4] },
        });
    }
    // BC_2: indecomposables are the chain plus eps_n itself
    {
        let n = 2;
        let mut simples = chain_simples(n - 1, n);
        simples.push(v64(&[0, 1]));
        let two_rho = RatVec((1..=n).map(|j| rat_int(2 * (n as i64 - j as i64) + 3)).collect());
        out.push(Golden {
            label: TypeLabel::BC,
            rank: n,
            root_count: 2 * n * n + 2 * n,
            simples,
            two_rho,
            center: vec![],
        });
    }
    // F4 (2rho = 11,5,3,1; the printed 15 fails rho(coroot)=1)
    out.push(Golden {
        label: TypeLabel::F4,
        rank: 4,
        root_count: 48,
        simples: vec![
            vr(&[(1, 2), (-1, 2), (-1, 2), (-1, 2)]),
            v64(&[0, 0, 0, 1]),
            v64(&[0, 0, 1, -1]),
            v64(&[0, 1, -1, 0]),
        ],
        two_rho: v64(&[11, 5, 3, 1]),
        center: vec![],
    });
    // G2
    out.push(Golden {
        label: TypeLabel::G2,
        rank: 2,
        root_count: 12,
        simples: vec![v64(&[1, -1, 0]), vr(&[(-1, 3), (2, 3), (-1, 3)])],
        two_rho: vr(&[(8, 3), (2, 3), (-10, 3)]),
        center: vec![],
    });
    // E6
    out.push(Golden {
        label: TypeLabel::E6,
        rank: 6,
        root_count: 72,
        simples: vec![
            v64(&[1, -1, 0, 0, 0, 0, 0, 0]),
            v64(&[0, 1, -1, 0, 0, 0, 0, 0]),
            v64(&[0, 0, 1, -1, 0, 0, 0, 0]),
            v64(&[0, 0, 0, 1, -1, 0, 0, 0]),
            v64(&[0, 0, 0, 1, 1, 0, 0, 0]),
            vr(&[
                (-1, 2),
                (-1, 2),
                (-1, 2),
                (-1, 2),
                (-1, 2),
                (1, 2),
                (1, 2),
                (-1, 2),
            ]),
        ],
        two_rho: v64(&[8, 6, 4, 2, 0, 8, 8, -8]),
        center: vec![3],
    });
    // E7
    out.push(Golden {
        label: TypeLabel::E7,
        rank: 7,
        root_count: 126,
        simples: vec![
            v64(&[1, -1, 0, 0, 0, 0, 0, 0]),
            v64(&[0, 1, -1, 0, 0, 0, 0, 0]),
            v64(&[0, 0, 1, -1, 0, 0, 0, 0]),
            v64(&[0, 0, 0, 1, -1, 0, 0, 0]),
            v64(&[0, 0, 0, 0, 1, -1, 0, 0]),
            v64(&[0, 0, 0, 0, 1, 1, 0, 0]),
            vr(&[
                (-1, 2),
                (-1, 2),
                (-1, 2),
                (-1, 2),
                (-1, 2),
                (1, 2),
                (1, 2),
                (-1, 2),
            ]),
        ],
        two_rho: v64(&[10, 8, 6, 4, 2, 0, 17, -17]),
        center: vec![2],
    });
    // E8 (2rho = 2 * chamber vector; the printed row belongs to another chamber)
    out.push(Golden {
        label: TypeLabel::E8,
        rank: 8,
        root_count: 240,
        simples: vec![
            v64(&[-1, 1, 0, 0, 0, 0, 0, 0]),
            v64(&[0, -1, 1, 0, 0, 0, 0, 0]),
            v64(&[0, 0, -1, 1, 0, 0, 0, 0]),
            v64(&[0, 0, 0, -1, 1, 0, 0, 0]),
            v64(&[0, 0, 0, 0, -1, 1, 0, 0]),
            v64(&[0, 0, 0, 0, 0, -1, 1, 0]),
            v64(&[1, 1, 0, 0, 0, 0, 0, 0]),
            vr(&[(1, 2), (-1, 2), (-1, 2), (-1, 2), (-1, 2), (-1, 2), (-1, 2), (1, 2)]),
        ],
        two_rho: v64(&[0, 2, 4, 6, 8, 10, 12, 46]),
        center: vec![],
    });
    out
}

#[test]
fn criterion_01_appendix_golden_data() {
    let start = Instant::now();
    for g in golden_table() {
        let rs = build_root_system(g.label, g.rank, MultProfile::default()).unwrap();
        assert_eq!(
            rs.summary_json(),
            g.expected_json(),
            "golden mismatch for {}_{}",
            g.label,
            g.rank
        );
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "criterion 1 exceeded 10 s: {dt:?}");
    println!("criterion 01: PASS (root-system golden data, 21 systems, {:.2?})", dt);
}

#[test]
fn criterion_02_rho_is_one_on_simple_coroots() {
    for g in golden_table() {
        let rs = build_root_system(g.label, g.rank, MultProfile::default()).unwrap();
        if g.label == TypeLabel::BC {
            // non-reduced exception: the short simple root has rho-value 3
            let mut values: Vec<Rat> = rs
                .simples
                .iter()
                .map(|&s| rs.rho_pairing(&rs.roots[s].coroot).unwrap())
                .collect();
            values.sort();
            let mut expect = vec![rat(1, 1); g.rank - 1];
            expect.push(rat(3, 1));
            assert_eq!(values, expect);
            continue;
        }
        for &s in &rs.simples {
            assert_eq!(
                rs.rho_pairing(&rs.roots[s].coroot).unwrap(),
                rat(1, 1),
                "{}_{}",
                g.label,
                g.rank
            );
        }
    }
    println!("criterion 02: PASS (rho = 1 on simple coroots; BC short root = 3 as derived)");
}

#[test]
fn criterion_03_f_lemma_brute_force() {
    let start = Instant::now();
    let mut rows = 0usize;
    let bound = rat(40, 1);
    let mut run = |factor: Factor, name: String| {
        let space = SymmetricSpaceSpec::new(0, vec![factor], vec![]).unwrap();
        let violation = flemma_scan(&space, 0, &bound).unwrap();
        assert!(violation.is_none(), "f-lemma violation in {name}: {violation:?}");
        rows += 1;
    };
    // A_n, n <= 5, all subgroups of Z_{n+1}
    for n in 1..=5usize {
        let order = n as u64 + 1;
        for d in 1..=order {
            if order % d != 0 {
                continue;
            }
            let k = (order / d) as i64;
            let gens = if d == 1 { vec![] } else { vec![l1(n).scale(&rat_int(k))] };
            run(Factor::group(TypeLabel::A, n, gens).unwrap(), format!("A_{n} |Gamma|={d}"));
        }
    }
    // B_n, n <= 4
    for n in 2..=4usize {
        run(Factor::group(TypeLabel::B, n, vec![]).unwrap(), format!("B_{n} trivial"));
        run(Factor::group(TypeLabel::B, n, vec![e1(n)]).unwrap(), format!("B_{n} Z2"));
    }
    // C_n, n = 3..6
    for n in 3..=6usize {
        run(Factor::group(TypeLabel::C, n, vec![]).unwrap(), format!("C_{n} trivial"));
        run(Factor::group(TypeLabel::C, n, vec![half_sum(n)]).unwrap(), format!("C_{n} Z2"));
    }
    // D_n, n = 4..7, all listed subgroups
    for n in 4..=7usize {
        let f = half_sum(n);
        let cases: Vec<(String, Vec<RatVec>)> = if n % 2 == 0 {
            vec![
                ("trivial".into(), vec![]),
                ("<e1>".into(), vec![e1(n)]),
                ("<F>".into(), vec![f.clone()]),
                ("<e1+F>".into(), vec![&e1(n) + &f]),
                ("full".into(), vec![e1(n), f.clone()]),
            ]
        } else {
            vec![
                ("trivial".into(), vec![]),
                ("<2F>".into(), vec![f.scale(&rat_int(2))]),
                ("<F>=Z4".into(), vec![f.clone()]),
            ]
        };
        for (name, gens) in cases {
            run(Factor::group(TypeLabel::D, n, gens).unwrap(), format!("D_{n} {name}"));
        }
    }
    // E7, both subgroups
    run(Factor::group(TypeLabel::E7, 7, vec![]).unwrap(), "E7 trivial".into());
    run(Factor::group(TypeLabel::E7, 7, vec![e7_f()]).unwrap(), "E7 Z2".into());

    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "criterion 3 exceeded 60 s: {dt:?}");
    println!(
        "criterion 03: PASS (f-lemma congruence, {rows} configurations, ||v||^2 <= 40, zero violations, {:.2?})",
        dt
    );
}

#[test]
fn criterion_04_su2_x_so3_example() {
    let su2 = Factor::group(TypeLabel::A, 1, vec![]).unwrap();
    let so3 = Factor::group(TypeLabel::A, 1, vec![l1(1)]).unwrap();
    let space = SymmetricSpaceSpec::new(0, vec![su2, so3], vec![]).unwrap();
    let metric = MetricSpec::new(&space, RatMat::identity(0), vec![rat(1, 4), rat(1, 1)]).unwrap();
    let report = enumerate_spectrum(&space, &metric, &rat(5, 2)).unwrap();
    let bucket = &report.classes[&rat(5, 2)];
    assert_eq!(bucket.len(), 2, "exactly two classes at r = 5/2");
    assert!(bucket.iter().all(|c| c.dim_fix == 10));
    let mut residues: Vec<u8> = bucket.iter().map(|c| c.morse_mod4).collect();
    residues.sort_unstable();
    assert_eq!((4 + residues[1] - residues[0]) % 4, 2, "Morse residues differ by 2 mod 4");
    let wave = wave_analysis(&report);
    let term = wave.iter().find(|t| t.len2 == rat(5, 2)).unwrap();
    assert!(!term.leading_certified_nonzero, "cancellation must be flagged possible");
    // the exact vectors of the example
    let v = space.assemble(&RatVec(vec![]), &[v64(&[1, -1]), v64(&[1, -1])]);
    let w = space.assemble(&RatVec(vec![]), &[v64(&[2, -2]), vr(&[(1, 2), (-1, 2)])]);
    assert_eq!(squared_length(&space, &metric, &v).unwrap(), rat(5, 2));
    assert_eq!(squared_length(&space, &metric, &w).unwrap(), rat(5, 2));
    assert_eq!(dim_fix(&space, &v).unwrap(), 10);
    assert_eq!(dim_fix(&space, &w).unwrap(), 10);
    let sv = morse_index(&space, &v).unwrap();
    let sw = morse_index(&space, &w).unwrap();
    assert_eq!((sv as i64 - sw as i64).rem_euclid(4), 2);
    assert_eq!(predicted_morse_mod4(&space, &metric, &v).unwrap() as u64, sv % 4);
    assert_eq!(predicted_morse_mod4(&space, &metric, &w).unwrap() as u64, sw % 4);
    println!("criterion 04: PASS (SU(2) x SO(3) at r = 5/2: two classes, dim 10, residues differ by 2, certified_nonzero = false)");
}

#[test]
fn criterion_05_maximal_rank_counterexample() {
    for n in 2..=3usize {
        let factor = Factor::maximal_rank(TypeLabel::B, n, vec![e1(n)]).unwrap();
        let space = SymmetricSpaceSpec::new(0, vec![factor], vec![]).unwrap();
        let mut vc = vec![0i64; n];
        vc[0] = 7;
        vc[1] = 6;
        let mut wc = vec![0i64; n];
        wc[0] = 9;
        wc[1] = 2;
        let v = v64(&vc);
        let w = v64(&wc);
        // plain positive sums mod 4
        let rs = &space.factors[0].rs;
        let sum_v = rs.weighted_pos_sum(&v, false).unwrap();
        let sum_w = rs.weighted_pos_sum(&w, false).unwrap();
        let (mv, mw) = (
            sum_v.numer() % num_bigint::BigInt::from(4),
            sum_w.numer() % num_bigint::BigInt::from(4),
        );
        let expect_v = if n % 2 == 0 { 3 } else { 1 };
        assert_eq!(mv, num_bigint::BigInt::from(expect_v), "n = {n}");
        assert_eq!(mw, num_bigint::BigInt::from(4 - expect_v), "n = {n}");
        // degrees of singularity
        let ds = (n as u64).saturating_sub(2).pow(2);
        assert_eq!(symspec::degree_of_singularity(&space, &v).unwrap(), ds);
        assert_eq!(symspec::degree_of_singularity(&space, &w).unwrap(), ds);
        assert_eq!(dim_fix(&space, &v).unwrap(), dim_fix(&space, &w).unwrap());
        // Morse difference 2 mod 4
        let sv = morse_index(&space, &v).unwrap();
        let sw = morse_index(&space, &w).unwrap();
        assert_eq!((sv as i64 - sw as i64).rem_euclid(4), 2, "n = {n}");
        // f rejects the maximal-rank factor
        assert!(f_mod4(&space, 0, &rat(1, 1), &rat(85, 1)).is_err());
    }
    println!("criterion 05: PASS (maximal-rank B_n, n = 2,3 at r = 85: residues 3/1 swap, degsing (n-2)^2, Morse difference 2 mod 4)");
}

#[test]
fn criterion_06_mod4_bucket_constancy() {
    let start = Instant::now();
    let spaces: Vec<(&str, SymmetricSpaceSpec)> = vec![
        (
            "SU(3)",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::A, 2, vec![]).unwrap()], vec![])
                .unwrap(),
        ),
        (
            "Spin(5)",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::B, 2, vec![]).unwrap()], vec![])
                .unwrap(),
        ),
        (
            "G2",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::G2, 2, vec![]).unwrap()], vec![])
                .unwrap(),
        ),
        (
            "Sp(3)",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::C, 3, vec![]).unwrap()], vec![])
                .unwrap(),
        ),
        (
            "SU(2) x SU(2)",
            SymmetricSpaceSpec::new(
                0,
                vec![
                    Factor::group(TypeLabel::A, 1, vec![]).unwrap(),
                    Factor::group(TypeLabel::A, 1, vec![]).unwrap(),
                ],
                vec![],
            )
            .unwrap(),
        ),
    ];
    for (name, space) in spaces {
        assert!(in_class_h(&space).unwrap().in_h, "{name} must lie in the classified family");
        let metric = MetricSpec::standard(&space);
        let mut bound = rat(20, 1);
        let report = loop {
            let r = enumerate_spectrum(&space, &metric, &bound).unwrap();
            if r.total_classes() >= 50 {
                break r;
            }
            bound = &bound * rat_int(2);
            assert!(bound < rat(100000, 1), "{name}: bound runaway");
        };
        let mut buckets: std::collections::BTreeMap<(Rat, u64), u8> =
            std::collections::BTreeMap::new();
        for (len2, classes) in &report.classes {
            for c in classes {
                let key = (len2.clone(), c.dim_fix);
                match buckets.get(&key) {
                    None => {
                        buckets.insert(key, c.morse_mod4);
                    }
                    Some(&r0) => assert_eq!(
                        r0, c.morse_mod4,
                        "{name}: mixed Morse residues in bucket {key:?}"
                    ),
                }
            }
        }
        assert!(report.total_classes() >= 50);
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 120.0, "criterion 6 exceeded 2 min: {dt:?}");
    println!(
        "criterion 06: PASS (constant Morse residue per (len2, dimFix) bucket; >= 50 classes each, {:.2?})",
        dt
    );
}

#[test]
fn criterion_07_rank_recovery() {
    let cases: Vec<(&str, SymmetricSpaceSpec, u64)> = vec![
        (
            "SU(2)",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::A, 1, vec![]).unwrap()], vec![])
                .unwrap(),
            1,
        ),
        (
            "SO(3)",
            SymmetricSpaceSpec::new(
                0,
                vec![Factor::group(TypeLabel::A, 1, vec![l1(1)]).unwrap()],
                vec![],
            )
            .unwrap(),
            1,
        ),
        (
            "SU(3)",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::A, 2, vec![]).unwrap()], vec![])
                .unwrap(),
            2,
        ),
        (
            "SU(4)/Z2",
            SymmetricSpaceSpec::new(
                0,
                vec![Factor::group(TypeLabel::A, 3, vec![l1(3).scale(&rat_int(2))]).unwrap()],
                vec![],
            )
            .unwrap(),
            3,
        ),
        (
            "SU(2) x SU(2)",
            SymmetricSpaceSpec::new(
                0,
                vec![
                    Factor::group(TypeLabel::A, 1, vec![]).unwrap(),
                    Factor::group(TypeLabel::A, 1, vec![]).unwrap(),
                ],
                vec![],
            )
            .unwrap(),
            2,
        ),
        (
            "Spin(5)",
            SymmetricSpaceSpec::new(0, vec![Factor::group(TypeLabel::B, 2, vec![]).unwrap()], vec![])
                .unwrap(),
            2,
        ),
    ];
    for (name, space, want) in cases {
        let metric = MetricSpec::standard(&space);
        let report = enumerate_spectrum(&space, &metric, &rat(16, 1)).unwrap();
        let got = recover_rank(&space, &metric, &report, space.dim()).unwrap();
        assert_eq!(got, want, "{name}");
        assert_eq!(space.rank(), want, "{name} sanity");
    }
    println!("criterion 07: PASS (rank recovered for SU(2), SO(3), SU(3), SU(4)/Z2, SU(2)xSU(2), Spin(5))");
}

#[test]
fn criterion_08_so3_cleanliness() {
    // 20 rational ratios A/alpha (as (num, den)), including 2, 1/3, 2/5
    let ratios: Vec<(i64, i64)> = vec![
        (2, 1),
        (1, 3),
        (2, 5),
        (1, 2),
        (3, 1),
        (4, 1),
        (3, 2),
        (2, 3),
        (5, 2),
        (3, 4),
        (4, 3),
        (5, 4),
        (1, 4),
        (1, 5),
        (6, 1),
        (5, 6),
        (7, 3),
        (8, 5),
        (9, 7),
        (5, 3),
    ];
    assert_eq!(ratios.len(), 20);
    for &(p, q) in &ratios {
        let m = SO3Metric::new(Surd::from_int(1), Surd::from_rat(rat(p, q))).unwrap();
        // expected (j, k): A/alpha = p/q = 2j/k in lowest terms
        let (j, k) = if p % 2 == 0 { (p / 2, q) } else { (p, 2 * q) };
        match classify_cleanliness(&m) {
            Cleanliness::Unclean { j: gj, k: gk } => {
                assert_eq!((gj, gk), (j as u64, k as u64), "A = {p}/{q}");
            }
            Cleanliness::Clean => panic!("A = {p}/{q} must be unclean"),
        }
        // unclean period coefficients are exactly (mk)^2 A
        for m_it in 1..=2u64 {
            let r = Surd::from_rat(rat(p, q) * rat_int((m_it * k as u64 * m_it * k as u64) as i64));
            assert!(is_unclean_period(&m, &r), "A = {p}/{q}, m = {m_it}");
        }
        let not_unclean = Surd::from_rat(rat(p, q)); // r = A itself, m k = 1
        if k > 1 {
            assert!(!is_unclean_period(&m, &not_unclean), "A = {p}/{q}");
        }
        // and the first few periods between: (k-1)^2 A for k > 2
        if k > 2 {
            let r = Surd::from_rat(rat(p, q) * rat_int(((k - 1) * (k - 1)) as i64));
            assert!(!is_unclean_period(&m, &r));
        }
    }
    // 5 surd ratios: clean
    let surds = vec![
        Surd::new(rat(0, 1), rat(1, 1), 2).unwrap(),
        Surd::new(rat(0, 1), rat(1, 1), 3).unwrap(),
        Surd::new(rat(0, 1), rat(3, 2), 5).unwrap(),
        Surd::new(rat(1, 1), rat(1, 1), 2).unwrap(),
        Surd::new(rat(0, 1), rat(1, 1), 7).unwrap(),
    ];
    for a in surds {
        let m = SO3Metric::new(Surd::from_int(1), a).unwrap();
        assert_eq!(classify_cleanliness(&m), Cleanliness::Clean);
    }
    println!("criterion 08: PASS (20 rational ratios unclean with exact (j,k) and (mk)^2 A periods; 5 surd ratios clean)");
}

#[test]
fn criterion_09_so3_spectrum_vs_oracle() {
    let metrics: Vec<(i64, i64, i64, i64)> =
        vec![(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 10, 1), (2, 1, 3, 1)];
    for (an, ad, bn, bd) in metrics {
        let exact = SO3Metric::new(Surd::from_rat(rat(an, ad)), Surd::from_rat(rat(bn, bd)))
            .unwrap();
        let num = NatMetric {
            alpha: an as f64 / ad as f64,
            a: bn as f64 / bd as f64,
        };
        let spectrum = length_spectrum(&exact, &Surd::from_int(20)).unwrap();
        assert!(!spectrum.is_empty());
        let mut taus: Vec<f64> = vec![0.0];
        for period in &spectrum {
            let r_f = period.r.to_f64();
            let tau = L0 * r_f.sqrt();
            taus.push(tau);
            for comp in &period.components {
                let (vv, ww) = match comp.ctype {
                    ComponentType::BiInvariant | ComponentType::TypeI => oracle::type_i_data(&num),
                    ComponentType::TypeII => oracle::type_ii_data(&num),
                    ComponentType::TypeIII => {
                        let (p, q) = comp.pq.unwrap();
                        oracle::type_iii_data(&num, p, q)
                    }
                };
                let res = closure_residual(&vv, &ww, tau);
                assert!(
                    res < 1e-9,
                    "(alpha, A) = ({an}/{ad}, {bn}/{bd}), r = {:?}, {:?}: residual {res:.2e}",
                    period.r,
                    comp.ctype
                );
            }
        }
        // no closure strictly between consecutive periods
        taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let families: Vec<(Vector3<f64>, Vector3<f64>)> = {
            let mut fams = vec![oracle::type_i_data(&num)];
            if (num.alpha - num.a).abs() > 1e-12 {
                fams.push(oracle::type_ii_data(&num));
                for period in &spectrum {
                    for comp in &period.components {
                        if comp.ctype == ComponentType::TypeIII && comp.iterate == 1 {
                            let (p, q) = comp.pq.unwrap();
                            fams.push(oracle::type_iii_data(&num, p, q));
                        }
                    }
                }
            }
            fams
        };
        for w in taus.windows(2) {
            if w[1] - w[0] < 1e-6 {
                continue;
            }
            let mid = 0.5 * (w[0] + w[1]);
            for (vv, ww) in &families {
                let res = closure_residual(vv, ww, mid);
                assert!(
                    res > 1e-3,
                    "spurious closure at non-period length {mid:.4} for ({an}/{ad}, {bn}/{bd})"
                );
            }
        }
    }
    println!("criterion 09: PASS (closure residual < 1e-9 at every period r <= 20 of 4 metrics; > 1e-3 between periods)");
}

#[test]
fn criterion_10_monodromy_cleanliness() {
    // (1, 2/3): unclean with k = 3
    let exact =
        SO3Metric::new(Surd::from_int(1), Surd::from_rat(rat(2, 3))).unwrap();
    assert_eq!(classify_cleanliness(&exact), Cleanliness::Unclean { j: 1, k: 3 });
    let num = NatMetric { alpha: 1.0, a: 2.0 / 3.0 };
    let xi = Vector3::new(0.0, 0.0, 1.0 / num.a.sqrt());
    let tau = num.a.sqrt() * L0;
    // clean prediction at r = A: the Type II component dimension
    let comps = so3nat::fix_components(&exact, &Surd::from_rat(rat(2, 3))).unwrap();
    let type2 = comps.iter().find(|c| c.ctype == ComponentType::TypeII).unwrap();
    let predicted = so3nat::predicted_monodromy_fixed_dim(type2, true);
    let rep = monodromy_fixed_dim(&num, &xi, tau, 1e-5, &StepControl::default()).unwrap();
    assert_eq!(rep.fixed_dim as u32, predicted, "clean first period");
    // r = 9A is unclean: fixed dimension exceeds the clean prediction by >= 2
    let rep9 = monodromy_fixed_dim(&num, &xi, 3.0 * tau, 1e-5, &StepControl::default()).unwrap();
    assert!(
        rep9.fixed_dim as u32 >= predicted + 2,
        "unclean period must gain >= 2: {} vs {}",
        rep9.fixed_dim,
        predicted
    );
    println!(
        "criterion 10: PASS (monodromy fixed dim {} at r = A; {} >= {} + 2 at r = 9A; tol 1e-5)",
        rep.fixed_dim, rep9.fixed_dim, predicted
    );
}

#[test]
fn criterion_11_type3_morse_index_cross_check() {
    // the exact count combines the periodic family spaced L/q with the
    // interlacing transcendental family; counting the periodic family alone
    // would undercount (see the so3nat module documentation)
    let cases: Vec<(i64, i64, i64, i64, u64, u64)> = vec![
        // alpha num/den, A num/den, p, q
        (1, 1, 1, 2, 1, 2),
        (1, 1, 1, 2, 2, 3),
        (1, 1, 2, 1, 3, 7),
        (1, 1, 10, 1, 1, 2),
    ];
    let mut lines = Vec::new();
    for (an, ad, bn, bd, p, q) in cases {
        let exact_metric =
            SO3Metric::new(Surd::from_rat(rat(an, ad)), Surd::from_rat(rat(bn, bd))).unwrap();
        let exact = type3_morse_index(&exact_metric, p, q).unwrap();
        let num = NatMetric { alpha: an as f64 / ad as f64, a: bn as f64 / bd as f64 };
        let (vv, ww) = oracle::type_iii_data(&num, p, q);
        let xi0 = vv - ww;
        let len_sq =
            so3nat::type3_primitive_len_sq_over_pi_sq(&exact_metric, p, q).unwrap().to_f64();
        let l = std::f64::consts::PI * len_sq.sqrt();
        let numeric = numeric_conjugate_count(&num, &xi0, l, &StepControl::default()).unwrap();
        assert_eq!(
            exact, numeric.count as u64,
            "(alpha, A, p, q) = ({an}/{ad}, {bn}/{bd}, {p}, {q})"
        );
        lines.push(format!("({an}/{ad},{bn}/{bd},({p},{q})): {exact}"));
    }
    println!(
        "criterion 11: PASS (exact Type III Morse index == numeric conjugate count: {})",
        lines.join(", ")
    );
}

#[test]
fn criterion_12_wave_invariants_at_taumin() {
    // bi-invariant: -vol/pi = -16 sqrt2 pi, 12 significant digits
    let m = SO3Metric::new(Surd::from_int(1), Surd::from_int(1)).unwrap();
    let w = wave0_taumin(&m);
    assert_eq!(w.case_, Wave0Case::BiInvariant);
    assert_eq!(w.sign, -1);
    assert!(w.parity_odd);
    let expect = 16.0 * 2f64.sqrt() * std::f64::consts::PI;
    let got = w.magnitude.to_f64(&w.taumin_r);
    assert!(((got - expect) / expect).abs() < 1e-12, "12 digits: {got} vs {expect}");
    // symbolic form: 16 sqrt(2 a^2 A) pi, no tau factor
    assert_eq!(w.magnitude.rational, rat_int(16));
    assert_eq!(w.magnitude.pi_halves, 2);
    assert_eq!(w.magnitude.tau_halves, 0);
    assert_eq!(*w.magnitude.radicand.as_rat().unwrap(), rat(2, 1));

    // A < alpha: vol/(pi tau_min); for (1, 1/2) the magnitude is exactly 8
    let m = SO3Metric::new(Surd::from_int(1), Surd::from_rat(rat(1, 2))).unwrap();
    let w = wave0_taumin(&m);
    assert_eq!(w.case_, Wave0Case::TypeIIMinimum);
    assert!(w.parity_odd);
    assert_eq!(w.phase_sigma_offset, Some(1));
    assert_eq!(w.magnitude.pi_halves, 2);
    assert_eq!(w.magnitude.tau_halves, -2);
    let got = w.magnitude.to_f64(&w.taumin_r);
    assert!((got - 8.0).abs() < 1e-12 * 8.0);

    // A > alpha: (2 pi)^{-1/2} vol / sqrt(tau_min) carried by the even parity
    let m = SO3Metric::new(Surd::from_int(1), Surd::from_int(10)).unwrap();
    let w = wave0_taumin(&m);
    assert_eq!(w.case_, Wave0Case::TypeIMinimum);
    assert!(!w.parity_odd);
    assert_eq!(w.phase_sigma_offset, Some(0));
    let vol = 1.0 * 10f64.sqrt() * 16.0 * 2f64.sqrt() * std::f64::consts::PI.powi(2);
    let tau = L0;
    let expect = vol / ((2.0 * std::f64::consts::PI).sqrt() * tau.sqrt());
    let got = w.magnitude.to_f64(&w.taumin_r);
    assert!(((got - expect) / expect).abs() < 1e-12);
    println!("criterion 12: PASS (tau_min wave terms: -16 sqrt2 pi exact to 12 digits; A<alpha and A>alpha magnitudes match)");
}

#[test]
fn criterion_13_oracle_enumeration_equivalence() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2026);
    for trial in 0..10 {
        let n = rng.gen_range(2..=6usize);
        let mut b = RatMat::zeros(n, n);
        let (gram, bound) = loop {
            for i in 0..n {
                for j in 0..n {
                    b[(i, j)] = rat(rng.gen_range(-2..=2i64), rng.gen_range(1..=2i64));
                }
            }
            if b.det().is_zero() {
                continue;
            }
            let gram = b.transpose().mul(&b);
            let bound = rat(rng.gen_range(2..=30i64), 1);
            // keep the exhaustive box below ~10^6 points
            let inv = gram.inverse().unwrap();
            let mut log_box = 0f64;
            for i in 0..n {
                let lim = weylspec::rat::rat_isqrt_floor(&(&bound * &inv[(i, i)]));
                let lim: f64 = lim.to_string().parse().unwrap();
                log_box += (2.0 * lim + 1.0).ln();
            }
            if log_box < 14.0 {
                break (gram, bound);
            }
        };
        let lat = IntegerLattice::standard(n);
        let q = QuadraticForm::new(gram.clone()).unwrap();
        let fast = enumerate_up_to(&lat, &q, &bound, false).unwrap();
        let mut fast_coeffs: Vec<Vec<i64>> = fast.into_iter().map(|s| s.coeffs).collect();
        fast_coeffs.sort();
        let brute = brute_enumerate(&gram, &bound).unwrap();
        assert_eq!(fast_coeffs, brute, "trial {trial}, dim {n}, bound {bound:?}");
    }
    println!("criterion 13: PASS (exact enumeration == brute box scan on 10 random positive forms, dim <= 6, bound <= 30)");
}
