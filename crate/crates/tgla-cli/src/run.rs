//! Command dispatch.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use tgla::glie::{GLie, GenKey};
use tgla::realizations::{preset, DictWindow, PresetName, PresetParams, RealizationError, RealizationPreset};
use tgla::vertex::{FockRep, SweepParams};

use crate::config::{Config, ConfigError};
use crate::report::{key_json, key_label, scalar_json, Record, Report};
use crate::suites;

#[derive(Parser, Debug, Clone)]
#[command(name = "tgla", version, about = "Exact checks for twisted Γ-Lie algebras and their vertex operator representations")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// JSON config describing a quadruple, its module T and sweep parameters.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Where to write the JSON report (stdout if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Where `constants` writes the structure-constant table.
    #[arg(long, global = true, default_value = "constants.json")]
    pub export: PathBuf,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Series window D for the distribution identities.
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Largest Fock vector degree in commutator sweeps.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Number of sampled instances (triples, commutator checks, cocycle samples).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Loop modes range over [−w, w].
    #[arg(long, global = true)]
    pub mode_window: Option<i64>,
    /// Γ-exponents range over [−w, w] in each coordinate.
    #[arg(long, global = true)]
    pub exp_window: Option<i32>,
    /// Add wall-clock timings per suite to the report (breaks byte-identity).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Assumptions, cocycle identities and compatibility of the configured quadruple.
    Check,
    /// Export the bracket table on a window and spot-check it.
    Constants,
    /// Stratified vertex operator commutator sweep.
    VerifyTheorem,
    /// Partial-fraction, series and δ-function identities.
    VerifyIdentities,
    /// Dictionary checks for a named realization.
    Realization { name: String },
    /// Every suite on the built-in catalog.
    All,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Check => "check".into(),
            Command::Constants => "constants".into(),
            Command::VerifyTheorem => "verify-theorem".into(),
            Command::VerifyIdentities => "verify-identities".into(),
            Command::Realization { name } => format!("realization {name}"),
            Command::All => "all".into(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error("{0} requires --config")]
    MissingConfig(String),
    #[error("cannot start worker threads: {0}")]
    Threads(String),
}

pub struct Output {
    pub report: Report,
    /// Milliseconds per suite, always measured.
    pub timings: BTreeMap<String, u64>,
    /// The structure-constant table, for `constants`.
    pub export: Option<Value>,
}

/// Flag values override the config's sweep block, which overrides suite defaults.
struct Settings<'a> {
    args: &'a Args,
    config: Option<&'a Config>,
}

impl Settings<'_> {
    fn seed(&self) -> u64 {
        self.args.seed.or(self.config.and_then(|c| c.sweep.seed)).unwrap_or(0)
    }
    fn modes(&self, default: i64) -> i64 {
        self.args.mode_window.or(self.config.and_then(|c| c.sweep.mode_window)).unwrap_or(default)
    }
    fn exp_window(&self, default: i32) -> i32 {
        self.args.exp_window.or(self.config.and_then(|c| c.sweep.exponent_window)).unwrap_or(default)
    }
    fn max_degree(&self, default: u32) -> u32 {
        self.args.max_degree.or(self.config.and_then(|c| c.sweep.max_degree)).unwrap_or(default)
    }
    fn samples(&self, default: usize) -> usize {
        self.args.samples.or(self.config.and_then(|c| c.sweep.samples)).unwrap_or(default)
    }
    fn window(&self) -> i64 {
        self.args.window.unwrap_or(8)
    }

    /// At least ten checks per case and `samples` in total.
    fn sweep(&self, modes: i64, exp_window: i32, samples: usize, max_degree: u32) -> SweepParams {
        let per_case = samples.div_ceil(6).max(10);
        SweepParams { modes: self.modes(modes), exp_window: self.exp_window(exp_window), per_case, max_degree: self.max_degree(max_degree), random_vectors: 6, labels: 3, seed: self.seed() }
    }
}

fn require<'a>(c: Option<&'a Config>, cmd: &str) -> Result<&'a Config, RunError> {
    c.ok_or_else(|| RunError::MissingConfig(cmd.into()))
}

fn realization_from(cfg: Option<&Config>, name: &str) -> Result<RealizationPreset, RunError> {
    let params = cfg.map(|c| {
        let q = &c.quadruple;
        let sign = if q.iota.first().copied().unwrap_or(1) < 0 { -1 } else { 1 };
        let l = if PresetName::parse(name) == Some(PresetName::TwistedAffine) { 0 } else { q.gamma_rank };
        PresetParams { n: q.n, l, sign }
    });
    Ok(preset(name, params)?)
}

pub fn run(args: &Args) -> Result<Output, RunError> {
    let config = args.config.as_deref().map(Config::load).transpose()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.unwrap_or(0)).build().map_err(|e| RunError::Threads(e.to_string()))?;
    pool.install(|| dispatch(args, config.as_ref()))
}

fn dispatch(args: &Args, config: Option<&Config>) -> Result<Output, RunError> {
    let s = Settings { args, config };
    let seed = s.seed();
    let mut timings = BTreeMap::new();
    let mut export = None;
    let mut timed = |name: &str, f: &mut dyn FnMut() -> Result<Vec<Record>, RunError>| -> Result<Vec<Record>, RunError> {
        let start = Instant::now();
        let r = f()?;
        timings.insert(name.to_string(), start.elapsed().as_millis() as u64);
        Ok(r)
    };
    let (records, params) = match &args.command {
        Command::Check => {
            let cfg = require(config, "check")?;
            let samples = s.samples(200);
            let recs = timed("check", &mut || {
                let rep = cfg.assumptions();
                let mut out: Vec<Record> = rep.checks.iter().map(|c| Record::new(format!("check/assumptions/{}", c.name), c.passed, c.detail.clone()).with_witness(c.witness.as_ref().map(|w| json!(w)))).collect();
                if rep.all_pass() {
                    let r = cfg.resolve()?;
                    out.extend(suites::cocycles("check/cocycle", &r.q, seed, samples));
                    let w = r.compat.first().map(|v| json!({ "condition": v.condition, "alpha": v.alpha, "label": v.label, "detail": v.detail }));
                    out.push(Record::new("check/compatibility", r.compat.is_empty(), format!("{} violations, η(1,·) = {:?} on the Q-basis", r.compat.len(), r.nu_hat.basis_values())).with_witness(w));
                    out.push(Record::new("check/nu_hat_order", r.nu_hat.is_finite_order(&r.q), "ν̂^m = Id"));
                }
                Ok(out)
            })?;
            (recs, json!({ "samples": samples }))
        }
        Command::Constants => {
            let cfg = require(config, "constants")?;
            let (modes, w) = (s.modes(1), s.exp_window(1));
            let realization = cfg.realization.as_deref().map(|n| realization_from(Some(cfg), n)).transpose()?;
            let g = match &realization {
                Some(p) => p.glie.clone(),
                None => {
                    let r = cfg.resolve()?;
                    GLie::new(r.q, r.nu_hat)
                }
            };
            let keys = suites::canonical_keys(&g, modes, w);
            export = Some(constants_table(&g, &keys, cfg.realization.as_deref(), modes, w));
            let recs = timed("constants", &mut || {
                Ok(match &realization {
                    Some(p) => dictionary_rows("constants/dictionary", p, &keys),
                    None => suites::oracle_equivalence("constants/definition", &g, modes, w),
                })
            })?;
            (recs, json!({ "mode_window": modes, "exponent_window": w, "generators": keys.len(), "realization": cfg.realization }))
        }
        Command::VerifyTheorem => {
            let cfg = require(config, "verify-theorem")?;
            let r = cfg.resolve()?;
            let fock = FockRep::new(GLie::new(r.q, r.nu_hat), r.t);
            let p = s.sweep(3, 2, s.samples(100), 4);
            let recs = timed("verify-theorem", &mut || Ok(suites::theorem("theorem", &fock, &p, 10)))?;
            (recs, sweep_json(&p))
        }
        Command::VerifyIdentities => {
            let d = s.window();
            let recs = timed("verify-identities", &mut || Ok(suites::identities("identities", d, seed)))?;
            (recs, json!({ "window": d }))
        }
        Command::Realization { name } => {
            let pr = realization_from(config, name)?;
            let w = DictWindow { modes: s.modes(2), exp_window: s.exp_window(1) };
            let p = SweepParams { per_case: s.samples(4), max_degree: s.max_degree(3), random_vectors: 3, labels: 2, ..s.sweep(2, 1, 0, 3) };
            let recs = timed("realization", &mut || {
                let rep = pr.verify(w, Some(&p))?;
                Ok(suites::realization_records(&format!("realization/{name}"), &rep))
            })?;
            (recs, json!({ "mode_window": w.modes, "exponent_window": w.exp_window, "params": { "N": pr.params.n, "l": pr.params.l, "sign": pr.params.sign }, "sweep": sweep_json(&p) }))
        }
        Command::All => {
            let cocycle_samples = s.samples(200);
            let jacobi_samples = s.samples(100);
            let d = s.window();
            let (modes, w) = (s.modes(2), s.exp_window(1));
            let sweep = s.sweep(3, 2, s.samples(100), 4);
            let mut recs = Vec::new();
            recs.extend(timed("1.assumptions", &mut || Ok(suites::assumptions()))?);
            recs.extend(timed("2.cocycle", &mut || Ok(suites::catalog_cocycles(seed, cocycle_samples)))?);
            recs.extend(timed("3.identities", &mut || Ok(suites::identities("3.identities", d, seed)))?);
            recs.extend(timed("4.oracle", &mut || Ok(suites::catalog_oracle_equivalence(modes, w)))?);
            recs.extend(timed("5.jacobi", &mut || Ok(suites::catalog_jacobi(seed, jacobi_samples, modes, w)))?);
            recs.extend(timed("6.theorem", &mut || Ok(suites::catalog_theorem(&sweep)))?);
            recs.extend(timed("7.realization", &mut || Ok(suites::catalog_realizations(DictWindow { modes, exp_window: w })))?);
            recs.extend(timed("8.fock", &mut || Ok(suites::catalog_fock(seed)))?);
            let params = json!({
                "cocycle_samples": cocycle_samples,
                "identity_window": d,
                "mode_window": modes,
                "exponent_window": w,
                "jacobi_samples": jacobi_samples,
                "theorem_sweep": sweep_json(&sweep),
            });
            (recs, params)
        }
    };
    let mut report = Report::new(&args.command.name(), seed, params, records);
    if args.timings {
        report.timings = Some(timings.clone());
    }
    Ok(Output { report, timings, export })
}

fn sweep_json(p: &SweepParams) -> Value {
    json!({ "modes": p.modes, "exponent_window": p.exp_window, "per_case": p.per_case, "max_degree": p.max_degree, "random_vectors": p.random_vectors, "labels": p.labels, "seed": p.seed })
}

/// {gen1, gen2, result: [{gen, num, den}], central: {num, den}} for every ordered pair.
pub fn constants_table(g: &GLie, keys: &[GenKey], algebra: Option<&str>, modes: i64, w: i32) -> Value {
    let gen = |k: &GenKey| g.element([(k.clone(), g.ring().one())], g.ring().zero());
    let mut entries = Vec::new();
    for a in keys {
        for b in keys {
            let x = g.bracket_cr(&gen(a), &gen(b));
            let result: Vec<Value> = x.terms().map(|(k, v)| {
                let s = scalar_json(v);
                json!({ "gen": key_json(k), "num": s["num"], "den": s["den"] })
            }).collect();
            entries.push(json!({ "gen1": key_json(a), "gen2": key_json(b), "result": result, "central": scalar_json(x.central()) }));
        }
    }
    json!({
        "algebra": algebra.unwrap_or("config"),
        "mode_window": modes,
        "exponent_window": w,
        "conductor": g.quadruple().conductor(),
        "generators": keys.iter().map(key_json).collect::<Vec<_>>(),
        "entries": entries,
    })
}

fn dictionary_rows(prefix: &str, p: &RealizationPreset, keys: &[GenKey]) -> Vec<Record> {
    use rayon::prelude::*;
    keys.par_iter()
        .map(|a| {
            let fail = keys.iter().find_map(|b| p.check_pair(a, b));
            let w = fail.as_ref().map(|f| json!({ "left": f.left, "right": f.right, "detail": f.detail }));
            Record::new(format!("{prefix}/{}", key_label(a)), fail.is_none(), format!("{} pairs", keys.len())).with_witness(w)
        })
        .collect()
}
