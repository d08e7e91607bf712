//! Reports shared by the text and JSON renderers.
//!
//! JSON schema, one object per input:
//!
//! ```text
//! {
//!   "input": string,
//!   "degree": int | null,
//!   "verdicts": { "integrable", "codim_ok", "saturated", "curve", "acm",
//!                 "split": bool | null, "determination": string | null },
//!   "splitting_type": [a, b] | null,
//!   "rao": { "<k>": dim, ... } | null,
//!   "family": { "dim", "effective_dim", "integrable", "members" } | null,
//!   "details": { ... command specific ... },
//!   "timings": { "total_ms": float }
//! }
//! ```
//!
//! Every key is always present; uncomputed values are `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Default, Clone, Serialize)]
pub struct Verdicts {
    pub integrable: Option<bool>,
    pub codim_ok: Option<bool>,
    pub saturated: Option<bool>,
    pub curve: Option<bool>,
    pub acm: Option<bool>,
    pub split: Option<bool>,
    pub determination: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub dim: usize,
    pub effective_dim: usize,
    /// `finite`, `positive-dimensional` or `inconclusive`.
    pub integrable: String,
    /// Integrable members found: all of them when finite, witnesses otherwise.
    pub members: Vec<String>,
}

#[derive(Debug, Default, Clone, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Default, Clone, Serialize)]
pub struct Report {
    pub input: String,
    pub degree: Option<u32>,
    pub verdicts: Verdicts,
    pub splitting_type: Option<[i64; 2]>,
    pub rao: Option<BTreeMap<String, i128>>,
    pub family: Option<FamilyReport>,
    pub details: BTreeMap<String, Value>,
    pub timings: Timings,
}

impl Report {
    pub fn new(input: impl Into<String>) -> Self {
        Self { input: input.into(), ..Self::default() }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering; timings are left out so output is stable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k}: {v}").expect("writing to a string");
        line("input", self.input.clone());
        if let Some(d) = self.degree {
            line("degree", d.to_string());
        }
        let v = &self.verdicts;
        for (k, b) in [
            ("integrable", v.integrable),
            ("codim 2", v.codim_ok),
            ("saturated", v.saturated),
            ("curve", v.curve),
            ("acm", v.acm),
            ("split", v.split),
        ] {
            if let Some(b) = b {
                line(k, b.to_string());
            }
        }
        if let Some([a, b]) = self.splitting_type {
            line("splitting type", format!("({a}, {b})"));
        }
        if let Some(rao) = &self.rao {
            let text = if rao.is_empty() {
                "zero".to_string()
            } else {
                rao.iter().map(|(k, d)| format!("[{k}]={d}")).collect::<Vec<_>>().join(" ")
            };
            line("rao module", text);
        }
        if let Some(f) = &self.family {
            line("family dim", format!("{} (effective {})", f.dim, f.effective_dim));
            line("integrable members", format!("{} ({} listed)", f.integrable, f.members.len()));
            for m in &f.members {
                line("  member", m.clone());
            }
        }
        if let Some(d) = &v.determination {
            line("determination", d.clone());
        }
        for (k, value) in &self.details {
            match value {
                Value::Array(items) => {
                    line(k, format!("{} item(s)", items.len()));
                    for item in items {
                        line("  -", plain(item));
                    }
                }
                other => line(k, plain(other)),
            }
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
