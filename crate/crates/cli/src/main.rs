//! Unified command-line front end: exact root data, symmetric-space spectra,
//! wave-term certificates, SO(3) naturally reductive reports and numeric
//! verification, serialized as byte-stable JSON (or CSV).

use weylspec_cli::{config, jout};

use clap::{Args, Parser, Subcommand};
use jout::{float, s, J};
use weylspec::lattice::{enumerate_up_to, IntegerLattice, QuadraticForm};
use weylspec::linalg::{RatMat, RatVec};
use weylspec::oracle::{
    self, brute_enumerate, closure_residual, monodromy_fixed_dim, numeric_conjugate_count,
    NatMetric, OracleError, StepControl, L0,
};
use weylspec::rat::{parse_rat, rat_str, rat_to_f64, Rat};
use weylspec::rootsys::{build_root_system, MultProfile, TypeLabel, WeightedRootSystem};
use weylspec::so3nat::{
    self, classify_cleanliness, length_spectrum, type3_conjugate_times, type3_morse_index,
    wave0_taumin, Cleanliness, ComponentType, ConjTimeKind, SO3Component, SO3Metric, SO3Period,
    So3Error, Wave0Case,
};
use weylspec::surd::Surd;
use weylspec::symspec::{
    clu_check, enumerate_spectrum, in_class_h, recover_rank, wave_analysis, CluVerdict,
    GeodesicClass, MetricSpec, SpectrumReport, SymmetricSpaceSpec,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "weylspec", version, about = "Exact length spectra, Morse indices and wave-trace certificates for compact Lie groups, symmetric spaces and naturally reductive SO(3)")]
struct Cli {
    /// Output format
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the full root datum of one indecomposable system
    Roots {
        /// Type label: A B C D BC E6 E7 E8 F4 G2
        label: String,
        rank: usize,
        /// Uniform multiplicity on every orbit
        #[arg(long)]
        mult: Option<u32>,
        /// Multiplicity of the longest-root orbit
        #[arg(long)]
        mult_long: Option<u32>,
        /// Multiplicity of the shortest-root orbit
        #[arg(long)]
        mult_short: Option<u32>,
        /// Multiplicity of the middle orbit (BC only)
        #[arg(long)]
        mult_med: Option<u32>,
    },
    /// Closed-geodesic classes grouped by squared length
    Spectrum(SpaceArgs),
    /// Leading wave-term cancellation certificates
    Wave(SpaceArgs),
    /// Recover the rank from the spectrum
    Rank {
        #[arg(long)]
        config: String,
        /// Initial squared-length bound (grown automatically if needed)
        #[arg(long, default_value = "4")]
        bound: String,
    },
    /// Component-length-uniqueness check
    Clu(SpaceArgs),
    /// Membership in the classified family of homogeneity types
    Classh {
        #[arg(long)]
        config: String,
    },
    /// Naturally reductive metrics on SO(3)
    So3(So3Args),
    /// Numeric verification oracles
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    config: String,
    /// Squared-length bound, "p/q"
    #[arg(long)]
    bound: String,
}

#[derive(Args)]
struct So3Args {
    /// Metric parameter on the 2-plane m: "p/q" or "p/q:surd d" or "a+b:surd d"
    #[arg(long)]
    alpha: String,
    /// Metric parameter on the fiber K
    #[arg(long = "A", visible_alias = "a-fiber")]
    a_k: String,
    /// Squared-length coefficient bound r (tau^2 = r l0^2); used by the table
    #[arg(long, default_value = "5")]
    bound: String,
    /// Skip the numeric oracle for Type I/II Morse indices
    #[arg(long)]
    no_oracle: bool,
    #[command(subcommand)]
    sub: Option<So3Sub>,
}

#[derive(Subcommand)]
enum So3Sub {
    /// Period table (default)
    Table,
    /// Cleanliness classification
    Clean,
    /// Leading wave term at tau_min
    Wave0,
    /// Conjugate times and Morse index of a primitive Type III geodesic
    Conj {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Count up to this multiple of the primitive length
        #[arg(long, default_value = "1")]
        up_to_multiple: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    sub: VerifySub,
}

#[derive(Subcommand)]
enum VerifySub {
    /// Closure residuals at every period up to --bound
    Closure {
        #[arg(long)]
        alpha: String,
        #[arg(long = "A")]
        a_k: String,
        #[arg(long, default_value = "10")]
        bound: String,
    },
    /// Fixed-space dimension of the monodromy at a period
    Monodromy {
        #[arg(long)]
        alpha: String,
        #[arg(long = "A")]
        a_k: String,
        /// Period coefficient r
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
    /// Exact vs numeric conjugate counts for a Type III pair
    Conj {
        #[arg(long)]
        alpha: String,
        #[arg(long = "A")]
        a_k: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Exact enumeration against the brute box scan on random forms
    Enum {
        /// Seed for sampling order only; results are exact either way
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

enum CliError {
    Config(String),
    Numeric(String),
}

impl From<So3Error> for CliError {
    fn from(e: So3Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let result = run(&cli);
    match result {
        Ok(report) => {
            let text = if cli.format == "csv" { report.render_csv() } else { report.render() };
            match &cli.out {
                None => print!("{text}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {path}: {e}");
                        std::process::exit(2);
                    }
                }
            }
        }
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric guard: {msg}");
            std::process::exit(3);
        }
    }
}

fn envelope(command: &str, input: J, result: J, notes: Vec<String>) -> J {
    J::Obj(vec![
        ("tool", s("weylspec")),
        ("version", s(VERSION)),
        ("command", s(command)),
        ("input", input),
        ("result", result),
        ("notes", J::Arr(notes.into_iter().map(J::Str).collect())),
    ])
}

fn rat_j(r: &Rat) -> J {
    s(rat_str(r))
}

fn ratvec_j(v: &RatVec) -> J {
    J::Arr(v.0.iter().map(|x| s(rat_str(x))).collect())
}

fn surd_j(x: &Surd) -> J {
    let (r, d) = match x.surd_part() {
        None => ("0".to_string(), 0u64),
        Some((coef, d)) => (rat_str(coef), d),
    };
    J::Obj(vec![
        ("q", s(rat_str(x.rational_part()))),
        ("r", s(r)),
        ("d", J::Int(d as i64)),
        ("float", float(x.to_f64())),
    ])
}

fn run(cli: &Cli) -> Result<J, CliError> {
    match &cli.command {
        Command::Roots { label, rank, mult, mult_long, mult_short, mult_med } => {
            roots_cmd(label, *rank, *mult, *mult_long, *mult_short, *mult_med)
        }
        Command::Spectrum(args) => {
            let (space, metric, bound, input) = load_space(args)?;
            let report = enumerate_spectrum(&space, &metric, &bound)
                .map_err(|e| CliError::Config(e.to_string()))?;
            Ok(envelope("spectrum", input, spectrum_j(&space, &report), vec![
                "squared lengths are exact rationals in ambient Euclidean units scaled by the metric"
                    .into(),
            ]))
        }
        Command::Wave(args) => {
            let (space, metric, bound, input) = load_space(args)?;
            let report = enumerate_spectrum(&space, &metric, &bound)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let wave = wave_analysis(&report);
            let terms: Vec<J> = wave
                .iter()
                .map(|t| {
                    let parity = |p: &weylspec::symspec::ParityReport| {
                        J::Obj(vec![
                            (
                                "max_dim",
                                p.max_dim.map(|d| J::Int(d as i64)).unwrap_or(J::Null),
                            ),
                            (
                                "residues_mod4",
                                J::Arr(p.residues.iter().map(|&r| J::Int(r as i64)).collect()),
                            ),
                            ("certified_nonzero", J::Bool(p.certified_nonzero)),
                        ])
                    };
                    J::Obj(vec![
                        ("len2", rat_j(&t.len2)),
                        ("len2_float", float(rat_to_f64(&t.len2))),
                        ("even", parity(&t.even)),
                        ("odd", parity(&t.odd)),
                        ("leading_parity", s(if t.leading_parity_even { "even" } else { "odd" })),
                        ("leading_certified_nonzero", J::Bool(t.leading_certified_nonzero)),
                    ])
                })
                .collect();
            Ok(envelope("wave", input, J::Obj(vec![("terms", J::Arr(terms))]), vec![
                "certified_nonzero = false flags POSSIBLE cancellation only; component volumes are not compared".into(),
            ]))
        }
        Command::Rank { config, bound } => {
            let (space, metric, cfg) = config::load(config).map_err(CliError::Config)?;
            let mut b = parse_rat(bound).map_err(CliError::Config)?;
            let mut attempt = 0;
            let (report, rank) = loop {
                let report = enumerate_spectrum(&space, &metric, &b)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                match recover_rank(&space, &metric, &report, space.dim()) {
                    Ok(rank) => break (report, rank),
                    Err(_) if attempt < 16 => {
                        attempt += 1;
                        b = &b * weylspec::rat::rat_int(2);
                    }
                    Err(e) => return Err(CliError::Config(e.to_string())),
                }
            };
            let max_dim = report.classes.values().flatten().map(|c| c.dim_fix).max().unwrap_or(0);
            let input = J::Obj(vec![
                ("config", s(config.clone())),
                ("config_echo", s(config::echo_toml(&cfg))),
                ("bound", rat_j(&b)),
            ]);
            let result = J::Obj(vec![
                ("dim", J::Int(space.dim() as i64)),
                ("max_dim_fix", J::Int(max_dim as i64)),
                ("rank", J::Int(rank as i64)),
            ]);
            Ok(envelope("rank", input, result, vec![
                "rank = 2 dim - max dim Fix over the enumerated spectrum".into(),
            ]))
        }
        Command::Clu(args) => {
            let (space, metric, bound, input) = load_space(args)?;
            let report = enumerate_spectrum(&space, &metric, &bound)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let result = match clu_check(&report, &metric) {
                CluVerdict::CluUpToBound => J::Obj(vec![("verdict", s("CLU_up_to_bound"))]),
                CluVerdict::Witness(pair) => J::Obj(vec![
                    ("verdict", s("witness")),
                    ("len2", rat_j(&pair.0.len2)),
                    ("first", class_j(&space, &pair.0, &metric)),
                    ("second", class_j(&space, &pair.1, &metric)),
                ]),
            };
            Ok(envelope("clu", input, result, vec![]))
        }
        Command::Classh { config } => {
            let (space, _metric, cfg) = config::load(config).map_err(CliError::Config)?;
            let verdict = in_class_h(&space).map_err(|e| CliError::Config(e.to_string()))?;
            let input = J::Obj(vec![
                ("config", s(config.clone())),
                ("config_echo", s(config::echo_toml(&cfg))),
            ]);
            let result = J::Obj(vec![
                ("in_class", J::Bool(verdict.in_h)),
                ("reasons", J::Arr(verdict.reasons.into_iter().map(J::Str).collect())),
            ]);
            Ok(envelope("classh", input, result, vec![]))
        }
        Command::So3(args) => so3_cmd(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

fn load_space(args: &SpaceArgs) -> Result<(SymmetricSpaceSpec, MetricSpec, Rat, J), CliError> {
    let (space, metric, cfg) = config::load(&args.config).map_err(CliError::Config)?;
    let bound = parse_rat(&args.bound).map_err(CliError::Config)?;
    let input = J::Obj(vec![
        ("config", s(args.config.clone())),
        ("config_echo", s(config::echo_toml(&cfg))),
        ("bound", rat_j(&bound)),
    ]);
    Ok((space, metric, bound, input))
}

fn class_j(_space: &SymmetricSpaceSpec, c: &GeodesicClass, metric: &MetricSpec) -> J {
    let norms: Vec<J> = c.component_norms(metric).iter().map(rat_j).collect();
    J::Obj(vec![
        ("torus", ratvec_j(&c.torus)),
        ("parts", J::Arr(c.parts.iter().map(ratvec_j).collect())),
        ("len2", rat_j(&c.len2)),
        ("component_norms", J::Arr(norms)),
        ("degsing", J::Int(c.degsing as i64)),
        ("dim_fix", J::Int(c.dim_fix as i64)),
        ("morse", J::Int(c.morse as i64)),
        ("morse_mod4", J::Int(c.morse_mod4 as i64)),
    ])
}

fn spectrum_j(_space: &SymmetricSpaceSpec, report: &SpectrumReport) -> J {
    let groups: Vec<J> = report
        .classes
        .iter()
        .map(|(len2, classes)| {
            J::Obj(vec![
                ("len2", rat_j(len2)),
                ("len2_float", float(rat_to_f64(len2))),
                (
                    "classes",
                    J::Arr(
                        classes
                            .iter()
                            .map(|c| {
                                J::Obj(vec![
                                    ("torus", ratvec_j(&c.torus)),
                                    ("parts", J::Arr(c.parts.iter().map(ratvec_j).collect())),
                                    ("degsing", J::Int(c.degsing as i64)),
                                    ("dim_fix", J::Int(c.dim_fix as i64)),
                                    ("morse", J::Int(c.morse as i64)),
                                    ("morse_mod4", J::Int(c.morse_mod4 as i64)),
                                ])
                            })
                            .collect(),
                    ),
                ),
            ])
        })
        .collect();
    J::Obj(vec![
        ("bound", rat_j(&report.bound)),
        ("total_classes", J::Int(report.total_classes() as i64)),
        ("groups", J::Arr(groups)),
    ])
}

fn roots_cmd(
    label: &str,
    rank: usize,
    mult: Option<u32>,
    mult_long: Option<u32>,
    mult_short: Option<u32>,
    mult_med: Option<u32>,
) -> Result<J, CliError> {
    let label = TypeLabel::parse(label)
        .ok_or_else(|| CliError::Config(format!("unknown type label {label:?}")))?;
    // probe orbit count with the default profile
    let probe = build_root_system(label, rank, MultProfile::default())
        .map_err(|e| CliError::Config(e.to_string()))?;
    let profile = match (mult, mult_long, mult_short, mult_med) {
        (Some(k), None, None, None) => MultProfile::Uniform(k),
        (None, None, None, None) => MultProfile::default(),
        (None, long, short, med) => {
            let mut per = vec![1u32; probe.num_orbits];
            if let Some(k) = short {
                per[0] = k;
            }
            if let Some(k) = med {
                if probe.num_orbits != 3 {
                    return Err(CliError::Config(
                        "--mult-med applies only to the three-orbit type BC".into(),
                    ));
                }
                per[1] = k;
            }
            if let Some(k) = long {
                per[probe.num_orbits - 1] = k;
            }
            MultProfile::PerOrbit(per)
        }
        _ => {
            return Err(CliError::Config(
                "--mult conflicts with --mult-long/--mult-short/--mult-med".into(),
            ))
        }
    };
    let rs = build_root_system(label, rank, profile).map_err(|e| CliError::Config(e.to_string()))?;
    let input = J::Obj(vec![
        ("label", s(label.to_string())),
        ("rank", J::Int(rank as i64)),
    ]);
    Ok(envelope("roots", input, root_datum_j(&rs), vec![
        "roots are sorted lexicographically by functional coordinates".into(),
    ]))
}

fn root_datum_j(rs: &WeightedRootSystem) -> J {
    let roots: Vec<J> = rs
        .roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            J::Obj(vec![
                ("functional", ratvec_j(&r.functional)),
                ("coroot", ratvec_j(&r.coroot)),
                ("mult", J::Int(rs.mult[i] as i64)),
                ("positive", J::Bool(rs.positives.contains(&i))),
                ("simple", J::Bool(rs.simples.contains(&i))),
            ])
        })
        .collect();
    let (center, gens) = rs.center_structure();
    J::Obj(vec![
        ("label", s(rs.label.to_string())),
        ("rank", J::Int(rs.rank as i64)),
        ("ambient_dim", J::Int(rs.ambient_dim as i64)),
        ("root_count", J::Int(rs.roots.len() as i64)),
        ("roots", J::Arr(roots)),
        ("two_rho", ratvec_j(&rs.two_rho_vector())),
        (
            "center_invariant_factors",
            J::Arr(center.invariant_factors.iter().map(|&d| J::Int(d as i64)).collect()),
        ),
        ("center_generators", J::Arr(gens.iter().map(ratvec_j).collect())),
    ])
}

fn parse_surd(text: &str) -> Result<Surd, CliError> {
    Surd::parse(text).map_err(|e| CliError::Config(e.to_string()))
}

fn so3_metric(alpha: &str, a_k: &str) -> Result<SO3Metric, CliError> {
    let alpha = parse_surd(alpha)?;
    let a_k = parse_surd(a_k)?;
    SO3Metric::new(alpha, a_k).map_err(|e| CliError::Config(e.to_string()))
}

fn component_kind(c: &ComponentType) -> &'static str {
    match c {
        ComponentType::BiInvariant => "bi-invariant",
        ComponentType::TypeI => "I",
        ComponentType::TypeII => "II",
        ComponentType::TypeIII => "III",
    }
}

fn so3_component_j(
    metric: &SO3Metric,
    period: &SO3Period,
    comp: &SO3Component,
    use_oracle: bool,
) -> Result<J, CliError> {
    let tau = L0 * period.r.to_f64().sqrt();
    let (morse, source): (J, &str) = match comp.morse {
        Some(m) => (J::Int(m as i64), "exact"),
        None if use_oracle => {
            let num = NatMetric { alpha: metric.alpha.to_f64(), a: metric.a_k.to_f64() };
            let (vv, ww) = match comp.ctype {
                ComponentType::BiInvariant | ComponentType::TypeI => oracle::type_i_data(&num),
                ComponentType::TypeII => oracle::type_ii_data(&num),
                ComponentType::TypeIII => unreachable!("Type III carries an exact index"),
            };
            let res = numeric_conjugate_count(&num, &(vv - ww), tau, &StepControl::default())?;
            (J::Int(res.count as i64), "numeric-oracle")
        }
        None => (J::Null, "skipped"),
    };
    Ok(J::Obj(vec![
        ("type", s(component_kind(&comp.ctype))),
        ("dim", J::Int(comp.dim as i64)),
        ("count", J::Int(comp.count as i64)),
        (
            "pq",
            comp.pq
                .map(|(p, q)| J::Arr(vec![J::Int(p as i64), J::Int(q as i64)]))
                .unwrap_or(J::Null),
        ),
        ("iterate", J::Int(comp.iterate as i64)),
        ("morse", morse),
        ("morse_source", s(source)),
        ("dg_volume", s(comp.dg_volume.descriptor())),
        ("dg_volume_float", float(comp.dg_volume.to_f64(&period.r))),
    ]))
}

fn so3_cmd(args: &So3Args) -> Result<J, CliError> {
    let metric = so3_metric(&args.alpha, &args.a_k)?;
    let input = J::Obj(vec![
        ("alpha", surd_j(&metric.alpha)),
        ("A", surd_j(&metric.a_k)),
        ("bound", s(args.bound.clone())),
    ]);
    match args.sub.as_ref().unwrap_or(&So3Sub::Table) {
        So3Sub::Table => {
            let bound = parse_surd(&args.bound)?;
            let spectrum =
                length_spectrum(&metric, &bound).map_err(|e| CliError::Config(e.to_string()))?;
            let mut periods = Vec::new();
            for period in &spectrum {
                let comps: Result<Vec<J>, CliError> = period
                    .components
                    .iter()
                    .map(|c| so3_component_j(&metric, period, c, !args.no_oracle))
                    .collect();
                periods.push(J::Obj(vec![
                    ("r", surd_j(&period.r)),
                    ("tau_float", float(L0 * period.r.to_f64().sqrt())),
                    ("clean", J::Bool(period.clean)),
                    ("components", J::Arr(comps?)),
                ]));
            }
            Ok(envelope("so3 table", input, J::Obj(vec![("periods", J::Arr(periods))]), vec![
                "tau^2 = r * l0^2 with l0^2 = 8 pi^2".into(),
                "Type I/II Morse indices come from the numeric conjugate-point oracle and are marked numeric-oracle".into(),
            ]))
        }
        So3Sub::Clean => {
            let result = match classify_cleanliness(&metric) {
                Cleanliness::Clean => J::Obj(vec![("verdict", s("clean"))]),
                Cleanliness::Unclean { j, k } => J::Obj(vec![
                    ("verdict", s("unclean")),
                    ("j", J::Int(j as i64)),
                    ("k", J::Int(k as i64)),
                    ("unclean_r", s(format!("(m*{k})^2 * A for m = 1, 2, ..."))),
                ]),
            };
            Ok(envelope("so3 clean", input, result, vec![]))
        }
        So3Sub::Wave0 => {
            let w = wave0_taumin(&metric);
            let case = match w.case_ {
                Wave0Case::BiInvariant => "bi-invariant",
                Wave0Case::TypeIIMinimum => "A<alpha (Type II pair)",
                Wave0Case::TypeIMinimum => "A>alpha (Type I)",
            };
            let result = J::Obj(vec![
                ("case", s(case)),
                ("taumin_r", surd_j(&w.taumin_r)),
                ("taumin_float", float(L0 * w.taumin_r.to_f64().sqrt())),
                ("parity", s(if w.parity_odd { "odd" } else { "even" })),
                ("magnitude", s(w.magnitude.descriptor())),
                ("magnitude_float", float(w.magnitude.to_f64(&w.taumin_r))),
                ("sign", J::Int(w.sign as i64)),
                (
                    "phase_sigma_offset",
                    w.phase_sigma_offset.map(J::Int).unwrap_or(J::Null),
                ),
            ]);
            Ok(envelope("so3 wave0", input, result, vec![w.note]))
        }
        So3Sub::Conj { p, q, up_to_multiple } => {
            let len_sq = so3nat::type3_primitive_len_sq_over_pi_sq(&metric, *p, *q)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let window = len_sq
                .mul_rat(&weylspec::rat::rat_int((*up_to_multiple * *up_to_multiple) as i64));
            let times = type3_conjugate_times(&metric, *p, *q, &window)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let a_sq = so3nat::type3_a_sq(&metric, *p, *q)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let times_j: Vec<J> = times
                .iter()
                .map(|t| {
                    let kind = match &t.kind {
                        ConjTimeKind::Periodic { m, .. } => J::Obj(vec![
                            ("family", s("periodic")),
                            ("m", J::Int(*m as i64)),
                        ]),
                        ConjTimeKind::Transcendental { k, theta } => J::Obj(vec![
                            ("family", s("transcendental")),
                            ("branch", J::Int(*k as i64)),
                            ("theta", float(*theta)),
                        ]),
                    };
                    J::Obj(vec![
                        ("t_float", float(t.t_f64)),
                        ("multiplicity", J::Int(t.multiplicity as i64)),
                        ("kind", kind),
                    ])
                })
                .collect();
            let morse = type3_morse_index(&metric, *p, *q)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let result = J::Obj(vec![
                ("p", J::Int(*p as i64)),
                ("q", J::Int(*q as i64)),
                ("sigma", surd_j(&metric.sigma(*p, *q).map_err(|e| CliError::Config(e.to_string()))?)),
                ("a_sq", surd_j(&a_sq)),
                ("primitive_len_sq_over_pi_sq", surd_j(&len_sq)),
                ("primitive_len_float", float(std::f64::consts::PI * len_sq.to_f64().sqrt())),
                ("morse_index_primitive", J::Int(morse as i64)),
                ("conjugate_times", J::Arr(times_j)),
            ]);
            Ok(envelope("so3 conj", input, result, vec![
                "periodic family spaced L/q; transcendental family solves tan(theta/2) = slope*theta".into(),
            ]))
        }
    }
}

fn verify_cmd(args: &VerifyArgs) -> Result<J, CliError> {
    match &args.sub {
        VerifySub::Closure { alpha, a_k, bound } => {
            let metric = so3_metric(alpha, a_k)?;
            let num = NatMetric { alpha: metric.alpha.to_f64(), a: metric.a_k.to_f64() };
            let bound = parse_surd(bound)?;
            let spectrum =
                length_spectrum(&metric, &bound).map_err(|e| CliError::Config(e.to_string()))?;
            let mut rows = Vec::new();
            let mut max_res = 0f64;
            for period in &spectrum {
                let tau = L0 * period.r.to_f64().sqrt();
                for comp in &period.components {
                    let (vv, ww) = match comp.ctype {
                        ComponentType::BiInvariant | ComponentType::TypeI => {
                            oracle::type_i_data(&num)
                        }
                        ComponentType::TypeII => oracle::type_ii_data(&num),
                        ComponentType::TypeIII => {
                            let (p, q) = comp.pq.unwrap();
                            oracle::type_iii_data(&num, p, q)
                        }
                    };
                    let res = closure_residual(&vv, &ww, tau);
                    max_res = max_res.max(res);
                    rows.push(J::Obj(vec![
                        ("r", surd_j(&period.r)),
                        ("type", s(component_kind(&comp.ctype))),
                        ("residual", float(res)),
                    ]));
                }
            }
            let pass = max_res < 1e-9;
            let result = J::Obj(vec![
                ("residuals", J::Arr(rows)),
                ("max_residual", float(max_res)),
                ("tolerance", float(1e-9)),
                ("pass", J::Bool(pass)),
            ]);
            let input = J::Obj(vec![
                ("alpha", surd_j(&metric.alpha)),
                ("A", surd_j(&metric.a_k)),
                ("bound", surd_j(&bound)),
            ]);
            let report = envelope("verify closure", input, result, vec![
                "tolerance ladder: integration 1e-10, closure certification 1e-9".into(),
            ]);
            if pass {
                Ok(report)
            } else {
                print!("{}", report.render());
                Err(CliError::Numeric(format!("closure residual {max_res:.3e} above 1e-9")))
            }
        }
        VerifySub::Monodromy { alpha, a_k, r, tol } => {
            let metric = so3_metric(alpha, a_k)?;
            let num = NatMetric { alpha: metric.alpha.to_f64(), a: metric.a_k.to_f64() };
            let r = parse_surd(r)?;
            let comps = so3nat::fix_components(&metric, &r)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let clean = !so3nat::is_unclean_period(&metric, &r);
            // follow a Type II orbit when present, otherwise Type I/bi-invariant
            let comp = comps
                .iter()
                .find(|c| c.ctype == ComponentType::TypeII)
                .unwrap_or(&comps[0]);
            let xi = match comp.ctype {
                ComponentType::TypeII => {
                    let (vv, ww) = oracle::type_ii_data(&num);
                    vv - ww
                }
                ComponentType::TypeIII => {
                    let (p, q) = comp.pq.unwrap();
                    let (vv, ww) = oracle::type_iii_data(&num, p, q);
                    vv - ww
                }
                _ => {
                    let (vv, ww) = oracle::type_i_data(&num);
                    vv - ww
                }
            };
            let tau = L0 * r.to_f64().sqrt();
            let rep = monodromy_fixed_dim(&num, &xi, tau, *tol, &StepControl::default())?;
            let predicted = so3nat::predicted_monodromy_fixed_dim(comp, clean);
            let result = J::Obj(vec![
                ("r", surd_j(&r)),
                ("clean_period", J::Bool(clean)),
                ("component_type", s(component_kind(&comp.ctype))),
                ("component_dim", J::Int(comp.dim as i64)),
                ("fixed_dim", J::Int(rep.fixed_dim as i64)),
                ("predicted_fixed_dim", J::Int(predicted as i64)),
                (
                    "singular_values",
                    J::Arr(rep.singular_values.iter().map(|&v| float(v)).collect()),
                ),
                ("tol", float(rep.tol)),
                ("agrees", J::Bool(rep.fixed_dim as u32 == predicted)),
            ]);
            let input = J::Obj(vec![
                ("alpha", surd_j(&metric.alpha)),
                ("A", surd_j(&metric.a_k)),
            ]);
            Ok(envelope("verify monodromy", input, result, vec![
                "full 6-dim linearization; the kernel equals the component dimension at clean periods (+2 on unclean Type II)".into(),
            ]))
        }
        VerifySub::Conj { alpha, a_k, p, q } => {
            let metric = so3_metric(alpha, a_k)?;
            let num = NatMetric { alpha: metric.alpha.to_f64(), a: metric.a_k.to_f64() };
            let exact = type3_morse_index(&metric, *p, *q)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let (vv, ww) = oracle::type_iii_data(&num, *p, *q);
            let len_sq = so3nat::type3_primitive_len_sq_over_pi_sq(&metric, *p, *q)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let l = std::f64::consts::PI * len_sq.to_f64().sqrt();
            let res = numeric_conjugate_count(&num, &(vv - ww), l, &StepControl::default())?;
            let agree = exact == res.count as u64;
            let instants: Vec<J> = res
                .instants
                .iter()
                .map(|i| {
                    J::Obj(vec![
                        ("t", float(i.t)),
                        ("multiplicity", J::Int(i.multiplicity as i64)),
                    ])
                })
                .collect();
            let result = J::Obj(vec![
                ("exact_morse_index", J::Int(exact as i64)),
                ("numeric_count", J::Int(res.count as i64)),
                ("agree", J::Bool(agree)),
                ("instants", J::Arr(instants)),
                ("noise_floor", float(res.noise_floor)),
            ]);
            let input = J::Obj(vec![
                ("alpha", surd_j(&metric.alpha)),
                ("A", surd_j(&metric.a_k)),
                ("p", J::Int(*p as i64)),
                ("q", J::Int(*q as i64)),
            ]);
            let report = envelope("verify conj", input, result, vec![]);
            if agree {
                Ok(report)
            } else {
                print!("{}", report.render());
                Err(CliError::Numeric(format!(
                    "exact index {exact} disagrees with numeric count {}",
                    res.count
                )))
            }
        }
        VerifySub::Enum { seed, trials } => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut rows = Vec::new();
            for trial in 0..*trials {
                let n = rng.gen_range(2..=5usize);
                let mut b = RatMat::zeros(n, n);
                let (gram, bound) = loop {
                    for i in 0..n {
                        for j in 0..n {
                            b[(i, j)] = weylspec::rat::rat(rng.gen_range(-2..=2i64), 1);
                        }
                    }
                    if num_traits::Zero::is_zero(&b.det()) {
                        continue;
                    }
                    let gram = b.transpose().mul(&b);
                    let bound = weylspec::rat::rat(rng.gen_range(2..=20i64), 1);
                    let inv = gram.inverse().unwrap();
                    let mut log_box = 0f64;
                    for i in 0..n {
                        let lim = weylspec::rat::rat_isqrt_floor(&(&bound * &inv[(i, i)]));
                        let lim: f64 = lim.to_string().parse().unwrap();
                        log_box += (2.0 * lim + 1.0).ln();
                    }
                    if log_box < 13.0 {
                        break (gram, bound);
                    }
                };
                let lat = IntegerLattice::standard(n);
                let q = QuadraticForm::new(gram.clone())
                    .map_err(|e| CliError::Config(e.to_string()))?;
                let fast = enumerate_up_to(&lat, &q, &bound, false)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                let mut fast_coeffs: Vec<Vec<i64>> =
                    fast.into_iter().map(|sv| sv.coeffs).collect();
                fast_coeffs.sort();
                let brute = brute_enumerate(&gram, &bound)?;
                let agree = fast_coeffs == brute;
                rows.push(J::Obj(vec![
                    ("trial", J::Int(trial as i64)),
                    ("dim", J::Int(n as i64)),
                    ("bound", rat_j(&bound)),
                    ("count", J::Int(brute.len() as i64)),
                    ("agree", J::Bool(agree)),
                ]));
                if !agree {
                    let report = envelope(
                        "verify enum",
                        J::Obj(vec![("seed", J::Int(*seed as i64))]),
                        J::Obj(vec![("trials", J::Arr(rows))]),
                        vec![],
                    );
                    print!("{}", report.render());
                    return Err(CliError::Numeric(format!(
                        "enumeration mismatch at trial {trial}"
                    )));
                }
            }
            let input = J::Obj(vec![
                ("seed", J::Int(*seed as i64)),
                ("trials", J::Int(*trials as i64)),
            ]);
            Ok(envelope("verify enum", input, J::Obj(vec![("trials", J::Arr(rows))]), vec![
                "the seed only affects sampling order; every comparison is exact".into(),
            ]))
        }
    }
}

