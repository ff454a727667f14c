//! The JSON configuration file.
//!
//! ```json
//! {
//!   "quadruple": { "N": 2, "Q_basis": [[1, -1]], "sigma": [0, 1], "iota": [1, 1],
//!                  "m": 1, "gamma_rank": 1, "conductor": 2 },
//!   "module_T": "group_algebra_q",
//!   "epsilonC": "star",
//!   "sweep": { "mode_window": 2, "exponent_window": 1, "max_degree": 4, "samples": 100, "seed": 7 }
//! }
//! ```
//!
//! `epsilonC` is either `"star"` (ε* restricted to Q, also used on T) or a
//! matrix of ω₀-powers on ordered basis pairs. `eta` lists η(1,·) on the
//! Q-basis as ω₀-powers.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tgla::catalog::CatalogEntry;
use tgla::groupmod::{build_nu_hat, check_compatibility, compatible_nu_hat, epsilon_star, restrict_to_q_basis, CompatViolation, NuHat, TKind, TModule};
use tgla::lattice::{check_assumptions, m0_of, AssumptionReport, LatticeError, Quadruple, QuadrupleSpec};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}, field `{field}`: {message}")]
    Parse { line: usize, column: usize, field: String, message: String },
    #[error("field `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("assumption {name} fails: {detail}")]
    Assumption { name: &'static str, detail: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    GroupMod(#[from] tgla::groupmod::GroupModError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleBlock {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Q_basis")]
    pub q_basis: Vec<Vec<i64>>,
    pub sigma: Vec<usize>,
    pub iota: Vec<i8>,
    pub m: u32,
    pub gamma_rank: usize,
    pub conductor: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsilonC {
    Named(String),
    Table(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub mode_window: Option<i64>,
    pub exponent_window: Option<i32>,
    pub max_degree: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub quadruple: QuadrupleBlock,
    #[serde(rename = "module_T")]
    pub module_t: String,
    #[serde(rename = "epsilonC", default)]
    pub epsilon_c: Option<EpsilonC>,
    #[serde(default)]
    pub eta: Option<Vec<i64>>,
    #[serde(default)]
    pub sweep: SweepBlock,
    #[serde(default)]
    pub realization: Option<String>,
}

/// A validated config: quadruple, module and lift of ν.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub q: Quadruple,
    pub t: TModule,
    pub nu_hat: NuHat,
    pub compat: Vec<CompatViolation>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            ConfigError::Parse { line: inner.line(), column: inner.column(), field, message: inner.to_string() }
        })
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Config::parse(&text)
    }

    /// The config reproducing a catalog entry.
    pub fn from_catalog(e: &CatalogEntry) -> Config {
        let s = &e.spec;
        Config {
            quadruple: QuadrupleBlock { n: s.n, q_basis: s.q_basis.clone(), sigma: s.sigma.clone(), iota: s.iota.clone(), m: s.m, gamma_rank: s.l, conductor: s.conductor },
            module_t: e.t.name().into(),
            epsilon_c: e.star.then(|| EpsilonC::Named("star".into())),
            eta: None,
            sweep: SweepBlock::default(),
            realization: None,
        }
    }

    pub fn spec(&self) -> QuadrupleSpec {
        let b = &self.quadruple;
        QuadrupleSpec { n: b.n, q_basis: b.q_basis.clone(), sigma: b.sigma.clone(), iota: b.iota.clone(), m: b.m, l: b.gamma_rank, conductor: b.conductor }
    }

    pub fn kind(&self) -> Result<TKind, ConfigError> {
        TKind::parse(&self.module_t).ok_or_else(|| ConfigError::Invalid {
            field: "module_T",
            message: format!("unknown module `{}` (expected group_algebra_q, quotient_p_2p, quotient_p_2zeN or trivial)", self.module_t),
        })
    }

    fn star(&self) -> Result<bool, ConfigError> {
        match &self.epsilon_c {
            Some(EpsilonC::Named(s)) if s == "star" => Ok(true),
            Some(EpsilonC::Named(s)) => Err(ConfigError::Invalid { field: "epsilonC", message: format!("unknown cocycle `{s}`") }),
            _ => Ok(false),
        }
    }

    pub fn assumptions(&self) -> AssumptionReport {
        check_assumptions(&self.spec())
    }

    /// Validate (assumptions first) and build everything the commands need.
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        let spec = self.spec();
        let kind = self.kind()?;
        let star = self.star()?;
        // Structure, assumptions and conductor, before any ε_C override is read.
        if let Err(e) = Quadruple::new(spec.clone()) {
            return Err(match e {
                LatticeError::Assumption(name) => {
                    let detail = check_assumptions(&spec).get(name).map(|c| c.detail.clone()).unwrap_or_default();
                    ConfigError::Assumption { name, detail }
                }
                e => e.into(),
            });
        }
        let m0 = m0_of(spec.m);
        let st = epsilon_star(spec.n, spec.conductor);
        let n = spec.n;
        let table = match &self.epsilon_c {
            Some(EpsilonC::Table(t)) => Some(t.clone()),
            _ if star => Some(restrict_to_q_basis(&st, &spec.q_basis, spec.conductor, m0)),
            _ => None,
        };
        let q = Quadruple::with_epsilon_c(spec, table)?;
        let t = TModule::new(kind, n, star.then_some(st));
        let nu_hat = match &self.eta {
            Some(o) => build_nu_hat(&q, Some(o), &|_| true)?,
            None => compatible_nu_hat(&q, &t, 1)?,
        };
        let compat = check_compatibility(&q, &t, &nu_hat, 1);
        Ok(Resolved { q, t, nu_hat, compat })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: &str = r#"{
  "quadruple": { "N": 2, "Q_basis": [[1, -1]], "sigma": [0, 1], "iota": [1, 1],
                 "m": 1, "gamma_rank": 1, "conductor": 2 },
  "module_T": "group_algebra_q",
  "epsilonC": "star"
}"#;

    #[test]
    fn parses_and_resolves() {
        let c = Config::parse(A1).unwrap();
        let r = c.resolve().unwrap();
        assert!(r.compat.is_empty());
        assert_eq!(c, Config::from_catalog(&tgla::catalog::find("A1/Id/1").unwrap()));
    }

    #[test]
    fn parse_error_names_field_and_line() {
        let bad = A1.replace("\"m\": 1", "\"m\": -1");
        match Config::parse(&bad) {
            Err(ConfigError::Parse { line, field, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(field, "quadruple.m");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_permutation_and_conductor() {
        let c = Config::parse(&A1.replace("[0, 1]", "[0, 0]")).unwrap();
        assert!(matches!(c.resolve(), Err(ConfigError::Lattice(LatticeError::InvalidPermutation(_)))));
        let c = Config::from_catalog(&tgla::catalog::CatalogEntry { name: "odd", spec: tgla::catalog::odd_lattice(), t: TKind::Trivial, star: false });
        assert!(matches!(c.resolve(), Err(ConfigError::Assumption { name: "A2", .. })));
        let mut c = Config::from_catalog(&tgla::catalog::find("A2/coxeter/3").unwrap());
        c.quadruple.conductor = 3;
        assert!(matches!(c.resolve(), Err(ConfigError::Lattice(LatticeError::ConductorTooSmall { .. }))));
    }
}
