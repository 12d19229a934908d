//! TOML space/metric configuration.
//!
//! ```toml
//! [torus]
//! dim = 1
//! gram = [["1"]]
//!
//! [[factor]]
//! type = "A"          # A B C D BC E6 E7 E8 F4 G2
//! rank = 1
//! kind = "group"      # group | type1 | maximal-rank
//! gamma = ["1/2,-1/2"]  # central-lattice lifts, ambient coordinates
//! scale = "1/4"
//! # mult = [4]        # per-orbit multiplicities (type1 / maximal-rank)
//!
//! [gamma]
//! product_generators = [["1/2,-1/2", "1/2,-1/2"]]
//! ```

use serde::Deserialize;
use weylspec::linalg::{RatMat, RatVec};
use weylspec::rat::{parse_rat, Rat};
use weylspec::rootsys::{MultProfile, TypeLabel};
use weylspec::symspec::{Factor, MetricSpec, SymmetricSpaceSpec};
use num_traits::One;

#[derive(Debug, Deserialize, Clone)]
pub struct ConfigFile {
    pub torus: Option<TorusCfg>,
    #[serde(default)]
    pub factor: Vec<FactorCfg>,
    pub gamma: Option<GammaCfg>,
}

#[derive(Debug, Deserialize, Clone)]
pub struct TorusCfg {
    pub dim: usize,
    pub gram: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize, Clone)]
pub struct FactorCfg {
    #[serde(rename = "type")]
    pub type_: String,
    pub rank: usize,
    pub kind: Option<String>,
    #[serde(default)]
    pub gamma: Vec<String>,
    pub scale: Option<String>,
    pub mult: Option<Vec<u32>>,
}

#[derive(Debug, Deserialize, Clone)]
pub struct GammaCfg {
    #[serde(default)]
    pub product_generators: Vec<Vec<String>>,
}

pub fn parse_rat_vec(s: &str) -> Result<RatVec, String> {
    let coords: Result<Vec<Rat>, String> = s.split(',').map(parse_rat).collect();
    Ok(RatVec(coords?))
}

pub fn load(path: &str) -> Result<(SymmetricSpaceSpec, MetricSpec, ConfigFile), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let cfg: ConfigFile = toml::from_str(&text).map_err(|e| format!("config parse error: {e}"))?;
    build(&cfg).map(|(s, m)| (s, m, cfg))
}

pub fn build(cfg: &ConfigFile) -> Result<(SymmetricSpaceSpec, MetricSpec), String> {
    let torus_dim = cfg.torus.as_ref().map(|t| t.dim).unwrap_or(0);
    let mut factors = Vec::new();
    let mut scales = Vec::new();
    for (i, fc) in cfg.factor.iter().enumerate() {
        let label = TypeLabel::parse(&fc.type_)
            .ok_or_else(|| format!("factor {i}: unknown type {:?}", fc.type_))?;
        let gamma: Result<Vec<RatVec>, String> =
            fc.gamma.iter().map(|g| parse_rat_vec(g)).collect();
        let gamma = gamma.map_err(|e| format!("factor {i}: {e}"))?;
        let kind = fc.kind.as_deref().unwrap_or("group");
        let factor = match kind {
            "group" => {
                if fc.mult.is_some() {
                    return Err(format!("factor {i}: group factors fix multiplicity 2"));
                }
                Factor::group(label, fc.rank, gamma)
            }
            "type1" | "typeI" | "type-i" => {
                let mult = match &fc.mult {
                    None => MultProfile::Uniform(4),
                    Some(v) if v.len() == 1 => MultProfile::Uniform(v[0]),
                    Some(v) => MultProfile::PerOrbit(v.clone()),
                };
                Factor::type_i(label, fc.rank, mult, gamma)
            }
            "maximal-rank" | "maximal_rank" => Factor::maximal_rank(label, fc.rank, gamma),
            other => return Err(format!("factor {i}: unknown kind {other:?}")),
        }
        .map_err(|e| format!("factor {i}: {e}"))?;
        factors.push(factor);
        let scale = match &fc.scale {
            None => Rat::one(),
            Some(s) => parse_rat(s).map_err(|e| format!("factor {i} scale: {e}"))?,
        };
        scales.push(scale);
    }
    let product_gamma: Result<Vec<Vec<RatVec>>, String> = cfg
        .gamma
        .as_ref()
        .map(|g| {
            g.product_generators
                .iter()
                .map(|tuple| tuple.iter().map(|t| parse_rat_vec(t)).collect())
                .collect()
        })
        .unwrap_or_else(|| Ok(Vec::new()));
    let space = SymmetricSpaceSpec::new(torus_dim, factors, product_gamma?)
        .map_err(|e| format!("space: {e}"))?;

    let gram = match cfg.torus.as_ref().and_then(|t| t.gram.as_ref()) {
        None => RatMat::identity(torus_dim),
        Some(rows) => {
            if rows.len() != torus_dim || rows.iter().any(|r| r.len() != torus_dim) {
                return Err("torus gram must be dim x dim".into());
            }
            let mut m = RatMat::zeros(torus_dim, torus_dim);
            for (i, row) in rows.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    m[(i, j)] = parse_rat(x).map_err(|e| format!("torus gram: {e}"))?;
                }
            }
            m
        }
    };
    let metric = MetricSpec::new(&space, gram, scales).map_err(|e| format!("metric: {e}"))?;
    Ok((space, metric))
}

/// Canonical TOML echo of a parsed config, used for round-trip checks.
pub fn echo_toml(cfg: &ConfigFile) -> String {
    let mut out = String::new();
    if let Some(t) = &cfg.torus {
        out.push_str(&format!("[torus]\ndim = {}\n", t.dim));
        if let Some(g) = &t.gram {
            let rows: Vec<String> = g
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(|x| format!("{x:?}")).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            out.push_str(&format!("gram = [{}]\n", rows.join(", ")));
        }
        out.push('\n');
    }
    for f in &cfg.factor {
        out.push_str("[[factor]]\n");
        out.push_str(&format!("type = {:?}\nrank = {}\n", f.type_, f.rank));
        if let Some(k) = &f.kind {
            out.push_str(&format!("kind = {k:?}\n"));
        }
        if !f.gamma.is_empty() {
            let g: Vec<String> = f.gamma.iter().map(|x| format!("{x:?}")).collect();
            out.push_str(&format!("gamma = [{}]\n", g.join(", ")));
        }
        if let Some(sc) = &f.scale {
            out.push_str(&format!("scale = {sc:?}\n"));
        }
        if let Some(m) = &f.mult {
            let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("mult = [{}]\n", m.join(", ")));
        }
        out.push('\n');
    }
    if let Some(g) = &cfg.gamma {
        if !g.product_generators.is_empty() {
            out.push_str("[gamma]\n");
            let tuples: Vec<String> = g
                .product_generators
                .iter()
                .map(|t| {
                    let cells: Vec<String> = t.iter().map(|x| format!("{x:?}")).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            out.push_str(&format!("product_generators = [{}]\n", tuples.join(", ")));
        }
    }
    out
}
