//! Batch jobs: JSON documents naming an operation and its parameters, run
//! into deterministic JSON reports.
//!
//! A job is written either as `{"kind": K, ...parameters}` or as a single
//! key `{K: parameters}`; for `group` the single-key value is the group
//! description itself. An optional top-level `"seed"` is allowed in both.

pub mod build;
mod exec;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = concat!("sunada ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JobKind {
    Group,
    Certify,
    HeisenbergSuite,
    AffineSuite,
    Covers,
    Schreier,
    Forms,
    Distance,
}

impl JobKind {
    pub const ALL: [JobKind; 8] = [
        JobKind::Group,
        JobKind::Certify,
        JobKind::HeisenbergSuite,
        JobKind::AffineSuite,
        JobKind::Covers,
        JobKind::Schreier,
        JobKind::Forms,
        JobKind::Distance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JobKind::Group => "group",
            JobKind::Certify => "certify",
            JobKind::HeisenbergSuite => "heisenberg_suite",
            JobKind::AffineSuite => "affine_suite",
            JobKind::Covers => "covers",
            JobKind::Schreier => "schreier",
            JobKind::Forms => "forms",
            JobKind::Distance => "distance",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub kind: JobKind,
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ty {
    UInt,
    Bool,
    Str,
    Array,
    Object,
    ObjectOrStr,
}

impl Ty {
    fn accepts(self, v: &Value) -> bool {
        match self {
            Ty::UInt => v.as_u64().is_some(),
            Ty::Bool => v.is_boolean(),
            Ty::Str => v.is_string(),
            Ty::Array => v.is_array(),
            Ty::Object => v.is_object(),
            Ty::ObjectOrStr => v.is_object() || v.is_string(),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Ty::UInt => "a nonnegative integer",
            Ty::Bool => "a boolean",
            Ty::Str => "a string",
            Ty::Array => "an array",
            Ty::Object => "an object",
            Ty::ObjectOrStr => "an object or a string",
        }
    }
}

/// (field, type, required)
type Field = (&'static str, Ty, bool);

fn schema(kind: JobKind) -> &'static [Field] {
    use Ty::*;
    match kind {
        JobKind::Group => &[("group", Object, true), ("subgroups", Array, false), ("expect", Object, false)],
        JobKind::Certify => &[
            ("group", Object, true),
            ("subgroups", Array, true),
            ("relations", Array, false),
            ("expect", Object, false),
        ],
        JobKind::HeisenbergSuite => &[("p", UInt, true), ("n", UInt, true), ("expect", Object, false)],
        JobKind::AffineSuite => {
            &[("p", UInt, true), ("n", UInt, true), ("pairs", Array, false), ("expect", Object, false)]
        }
        JobKind::Covers => &[
            ("group", Object, true),
            ("subgroups", Array, true),
            ("phi", ObjectOrStr, true),
            ("L", UInt, true),
            ("modes", Array, false),
            ("emit_spectra", Bool, false),
            ("expect", Object, false),
        ],
        JobKind::Schreier => &[
            ("group", Object, true),
            ("subgroups", Array, true),
            ("generators", Array, false),
            ("modes", Array, false),
            ("expect", Object, false),
        ],
        JobKind::Forms => &[
            ("field", Object, true),
            ("action", Str, true),
            ("X", Str, false),
            ("n", UInt, false),
            ("height", UInt, false),
            ("entries", Array, false),
            ("distinguished", UInt, false),
            ("d", UInt, false),
            ("alpha", Array, false),
            ("beta", Array, false),
            ("matrix", Array, false),
            ("form", Array, false),
            ("expect", Object, false),
        ],
        JobKind::Distance => &[
            ("X", Str, false),
            ("points", Array, false),
            ("samples", UInt, false),
            ("expect", Object, false),
        ],
    }
}

/// Every schema violation of `params` for `kind`, as "path: message".
pub fn validate(kind: JobKind, params: &Map<String, Value>) -> Vec<String> {
    let fields = schema(kind);
    let mut out = Vec::new();
    for (name, ty, required) in fields {
        match params.get(*name) {
            None if *required => out.push(format!("/{name}: missing required field")),
            Some(v) if !ty.accepts(v) => out.push(format!("/{name}: expected {}", ty.describe())),
            _ => {}
        }
    }
    for key in params.keys() {
        if !fields.iter().any(|(n, _, _)| n == key) {
            out.push(format!("/{key}: unknown field for kind {}", kind.name()));
        }
    }
    if matches!(kind, JobKind::Certify | JobKind::Covers | JobKind::Schreier) {
        if let Some(Value::Array(a)) = params.get("subgroups") {
            if a.len() != 2 {
                out.push(format!("/subgroups: expected exactly 2 subgroups, found {}", a.len()));
            }
        }
    }
    if kind == JobKind::Forms {
        if let Some(Value::String(a)) = params.get("action") {
            if !exec::FORMS_ACTIONS.contains(&a.as_str()) {
                out.push(format!("/action: unknown action {a:?}"));
            }
        }
    }
    out
}

/// Parses and validates one job document.
pub fn parse_job(text: &str) -> Result<Job> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("/: invalid JSON: {e}")))?;
    job_from_value(v)
}

/// Parses a file holding one job or an array of jobs.
pub fn parse_jobs(text: &str) -> Result<Vec<Result<Job>>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("/: invalid JSON: {e}")))?;
    Ok(match v {
        Value::Array(items) => items.into_iter().map(job_from_value).collect(),
        other => vec![job_from_value(other)],
    })
}

pub fn job_from_value(v: Value) -> Result<Job> {
    let Value::Object(mut obj) = v else {
        return Err(Error::Schema("/: a job must be a JSON object".into()));
    };
    let seed = match obj.remove("seed") {
        None => None,
        Some(s) => Some(s.as_u64().ok_or_else(|| Error::Schema("/seed: expected a nonnegative integer".into()))?),
    };
    let (kind, params) = if let Some(k) = obj.remove("kind") {
        let name = k.as_str().ok_or_else(|| Error::Schema("/kind: expected a string".into()))?;
        let kind = JobKind::parse(name).ok_or_else(|| Error::Schema(format!("/kind: unknown kind {name:?}")))?;
        (kind, obj)
    } else if obj.len() == 1 {
        let (name, inner) = obj.into_iter().next().unwrap();
        let kind = JobKind::parse(&name).ok_or_else(|| Error::Schema(format!("/{name}: unknown kind")))?;
        let params = if kind == JobKind::Group {
            let mut m = Map::new();
            m.insert("group".into(), inner);
            m
        } else {
            match inner {
                Value::Object(m) => m,
                _ => return Err(Error::Schema(format!("/{name}: parameters must be an object"))),
            }
        };
        (kind, params)
    } else {
        return Err(Error::Schema("/kind: missing; expected \"kind\" or a single kind key".into()));
    };
    let violations = validate(kind, &params);
    if !violations.is_empty() {
        return Err(Error::Schema(violations.join("; ")));
    }
    Ok(Job { kind, params, seed })
}

impl Job {
    /// Canonical echo: kind, parameters and seed with sorted keys.
    pub fn echo(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), Value::from(self.kind.name()));
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        Value::Object(m)
    }

    /// SHA-256 of the canonical echo, which names the report file.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.echo().to_string().as_bytes()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confirmed,
    Refuted,
    Error,
}

impl Status {
    /// 0 confirmed, 2 refuted, 1 error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Confirmed => 0,
            Status::Error => 1,
            Status::Refuted => 2,
        }
    }
}

/// Exit code for a batch: any error gives 1, otherwise any refutation 2.
pub fn batch_exit_code(statuses: &[Status]) -> i32 {
    if statuses.contains(&Status::Error) {
        1
    } else if statuses.contains(&Status::Refuted) {
        2
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub job: Value,
    pub job_hash: String,
    pub status: Status,
    pub results: Value,
    /// Content hashes of the constructed objects, by name.
    pub hashes: BTreeMap<String, String>,
    /// Expectations or suite checks that failed.
    pub refutations: Vec<String>,
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Wall time of a run, kept outside the report so reports stay
/// byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub job_hash: String,
    pub seconds: f64,
}

/// What a job produced before expectations are applied.
pub(crate) struct Outcome {
    pub results: Value,
    pub hashes: BTreeMap<String, String>,
    /// Failed built-in checks (suites, certificate rechecks).
    pub refutations: Vec<String>,
}

/// `expected` matches `actual` when equal, or when both are objects and
/// every key of `expected` matches recursively.
pub fn value_matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            e.iter().all(|(k, ev)| a.get(k).is_some_and(|av| value_matches(ev, av)))
        }
        (Value::Number(x), Value::Number(y)) => x == y || x.as_f64() == y.as_f64(),
        _ => expected == actual,
    }
}

pub fn run_job(job: &Job) -> Report {
    run_job_timed(job).0
}

pub fn run_job_timed(job: &Job) -> (Report, Timing) {
    let start = Instant::now();
    let outcome = exec::execute(job);
    let elapsed: Duration = start.elapsed();
    let mut report = Report {
        tool: TOOL_VERSION.to_string(),
        job: job.echo(),
        job_hash: job.content_hash(),
        status: Status::Confirmed,
        results: Value::Null,
        hashes: BTreeMap::new(),
        refutations: Vec::new(),
        error: None,
    };
    match outcome {
        Ok(o) => {
            report.refutations = o.refutations;
            if let Some(Value::Object(exp)) = job.params.get("expect") {
                for (k, ev) in exp {
                    if !o.results.get(k).is_some_and(|av| value_matches(ev, av)) {
                        report.refutations.push(format!("expect.{k}: expected {ev}"));
                    }
                }
            }
            report.results = o.results;
            report.hashes = o.hashes;
            if !report.refutations.is_empty() {
                report.status = Status::Refuted;
            }
        }
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(format!("{e:?}: {e}"));
        }
    }
    let timing = Timing { job_hash: report.job_hash.clone(), seconds: elapsed.as_secs_f64() };
    (report, timing)
}
