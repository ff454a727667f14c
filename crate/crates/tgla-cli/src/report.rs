//! Check records, reports and the JSON encodings of scalars and keys.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use tgla::fock::FockVector;
use tgla::glie::{GenKey, LieElement};
use tgla::lattice::SIdx;
use tgla::scalars::{LaurentPoly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub detail: String,
}

impl Record {
    pub fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Record {
        Record { id: id.into(), status: if pass { Status::Pass } else { Status::Fail }, witness: None, detail: detail.into() }
    }

    pub fn vacuous(id: impl Into<String>, detail: impl Into<String>) -> Record {
        Record { id: id.into(), status: Status::Vacuous, witness: None, detail: detail.into() }
    }

    pub fn with_witness(mut self, w: Option<Value>) -> Record {
        self.witness = w;
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub parameters: Value,
    pub summary: Summary,
    pub records: Vec<Record>,
    /// Wall-clock milliseconds per suite. Left out unless requested, so that
    /// reports stay byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl Report {
    /// Sorts the records by id and fills in the summary.
    pub fn new(command: &str, seed: u64, parameters: Value, mut records: Vec<Record>) -> Report {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let mut s = Summary { total: records.len(), ..Default::default() };
        for r in &records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Vacuous => s.vacuous += 1,
            }
        }
        Report { command: command.into(), seed, parameters, summary: s, records, timings: None }
    }

    pub fn pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn exp_key(e: &[i32]) -> String {
    let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// {exponent vector: [rational coefficients in the power basis of ℚ(ζ_L)]}.
pub fn laurent_json(p: &LaurentPoly) -> Value {
    let deg = p.field().degree();
    let mut out = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut coeffs: Vec<String> = c.coeffs().iter().map(|r| r.to_string()).collect();
        coeffs.resize(deg, "0".into());
        out.insert(exp_key(e), coeffs);
    }
    json!(out)
}

pub fn scalar_json(s: &Scalar) -> Value {
    json!({ "num": laurent_json(s.num()), "den": laurent_json(s.den()) })
}

fn sidx(s: SIdx) -> i64 {
    s.sign as i64 * (s.idx as i64 + 1)
}

/// ẽ_{i,j}(c,n) with signed 1-based indices.
pub fn key_json(k: &GenKey) -> Value {
    json!({ "i": sidx(k.j.a), "j": sidx(k.j.b), "c": k.c, "n": k.n })
}

pub fn key_label(k: &GenKey) -> String {
    format!("e[{:+},{:+}](c={},n={})", sidx(k.j.a), sidx(k.j.b), exp_key(&k.c), k.n)
}

pub fn element_json(x: &LieElement) -> Value {
    let terms: Vec<Value> = x.terms().map(|(k, v)| json!({ "gen": key_json(k), "coeff": scalar_json(v) })).collect();
    json!({ "terms": terms, "central": scalar_json(x.central()) })
}

/// Coefficients of lhs − rhs keyed by Fock basis element, with both sides.
pub fn fock_diff_json(lhs: &FockVector, rhs: &FockVector) -> Value {
    let diff = lhs.sub(rhs);
    let mut out = BTreeMap::new();
    for (k, d) in diff.terms() {
        let l = lhs.coeff(k).cloned().unwrap_or_else(|| d.zero_like());
        let r = rhs.coeff(k).cloned().unwrap_or_else(|| d.zero_like());
        out.insert(format!("{:?}|{:?}", k.label, k.mono), json!({ "lhs": scalar_json(&l), "rhs": scalar_json(&r) }));
    }
    json!(out)
}
