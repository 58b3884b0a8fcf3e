//! Check records, their aggregation over trials, and the canonical report
//! encoding: object keys sorted, floats printed with 17 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Passes when `slack = rhs − lhs ≥ −inequalityTolerance`.
    Inequality,
    /// Passes when `|lhs − rhs| ≤ tolerance·(1 + |rhs|)`.
    Equality,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub equality: f64,
    pub inequality: f64,
}

/// One evaluation of a check.
#[derive(Debug, Clone)]
pub struct Observation {
    pub lhs: f64,
    pub rhs: f64,
    pub trial: u64,
    pub detail: Map<String, Value>,
}

impl Observation {
    pub fn new(lhs: f64, rhs: f64, trial: u64) -> Self {
        Observation {
            lhs,
            rhs,
            trial,
            detail: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.detail.insert(key.to_string(), value.into());
        self
    }
}

/// Larger is better; a check passes iff its worst score is ≥ 0.
fn score(kind: CheckKind, lhs: f64, rhs: f64, tol: &Tolerances) -> f64 {
    let s = match kind {
        CheckKind::Inequality => (rhs - lhs) + tol.inequality,
        CheckKind::Equality => tol.equality * (1.0 + rhs.abs()) - (lhs - rhs).abs(),
    };
    if s.is_nan() {
        f64::NEG_INFINITY
    } else {
        s
    }
}

#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub check_name: String,
    pub suite: String,
    pub pair: String,
    pub params: Map<String, Value>,
    pub kind: CheckKind,
    pub trial_count: u64,
    worst: Observation,
    worst_score: f64,
}

impl CheckRecord {
    pub fn pass(&self) -> bool {
        self.worst_score >= 0.0
    }

    pub fn lhs(&self) -> f64 {
        self.worst.lhs
    }

    pub fn rhs(&self) -> f64 {
        self.worst.rhs
    }

    pub fn slack(&self) -> f64 {
        self.worst.rhs - self.worst.lhs
    }

    pub fn worst_trial(&self) -> u64 {
        self.worst.trial
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("checkName".into(), self.check_name.clone().into());
        m.insert("suite".into(), self.suite.clone().into());
        m.insert("pair".into(), self.pair.clone().into());
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("kind".into(), serde_json::to_value(self.kind).unwrap());
        m.insert("lhs".into(), self.lhs().into());
        m.insert("rhs".into(), self.rhs().into());
        m.insert("slack".into(), self.slack().into());
        m.insert("pass".into(), self.pass().into());
        m.insert("trialCount".into(), self.trial_count.into());
        m.insert("worstTrialSeed".into(), self.worst.trial.into());
        if !self.worst.detail.is_empty() {
            m.insert("worstDetail".into(), Value::Object(self.worst.detail.clone()));
        }
        Value::Object(m)
    }
}

type RecordKey = (usize, usize, String, String);

/// Accumulates observations into one record per `(suite, pair, check, params)`,
/// keeping the worst trial. Keys sort by suite order, then catalog order.
#[derive(Debug)]
pub struct Recorder {
    tol: Tolerances,
    records: BTreeMap<RecordKey, CheckRecord>,
}

pub struct Scope<'a> {
    recorder: &'a mut Recorder,
    suite: (usize, &'a str),
    pair: (usize, &'a str),
}

impl Recorder {
    pub fn new(tol: Tolerances) -> Self {
        Recorder {
            tol,
            records: BTreeMap::new(),
        }
    }

    pub fn scope<'a>(&'a mut self, suite: (usize, &'a str), pair: (usize, &'a str)) -> Scope<'a> {
        Scope {
            recorder: self,
            suite,
            pair,
        }
    }

    pub fn into_records(self) -> Vec<CheckRecord> {
        self.records.into_values().collect()
    }
}

impl Scope<'_> {
    pub fn record(&mut self, check: &str, params: &Map<String, Value>, kind: CheckKind, obs: Observation) {
        let tol = self.recorder.tol;
        let s = score(kind, obs.lhs, obs.rhs, &tol);
        let key = (
            self.suite.0,
            self.pair.0,
            check.to_string(),
            Value::Object(params.clone()).to_string(),
        );
        let entry = self.recorder.records.entry(key).or_insert_with(|| CheckRecord {
            check_name: check.to_string(),
            suite: self.suite.1.to_string(),
            pair: self.pair.1.to_string(),
            params: params.clone(),
            kind,
            trial_count: 0,
            worst: obs.clone(),
            worst_score: s,
        });
        entry.trial_count += 1;
        let worse = s < entry.worst_score
            || (s == entry.worst_score && obs.trial < entry.worst.trial);
        if worse {
            entry.worst = obs;
            entry.worst_score = s;
        }
    }

    pub fn inequality(&mut self, check: &str, params: &Map<String, Value>, obs: Observation) {
        self.record(check, params, CheckKind::Inequality, obs);
    }

    pub fn equality(&mut self, check: &str, params: &Map<String, Value>, obs: Observation) {
        self.record(check, params, CheckKind::Equality, obs);
    }
}

/// Writes `value` with sorted keys, two-space indentation and every float in
/// `{:.16e}` form. Non-finite floats cannot occur in a `Value`.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| {
        for _ in 0..d {
            out.push_str("  ");
        }
    };
    match value {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&value.to_string()),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap();
                write!(out, "{x:.16e}").unwrap();
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            if items.iter().all(|v| !v.is_array() && !v.is_object()) {
                out.push('[');
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, v, depth);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, v, depth + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*k], depth + 1);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, depth);
            out.push('}');
        }
    }
}
