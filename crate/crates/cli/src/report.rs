//! Check records and their machine- and human-readable renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Generator used for every sampled input. Each suite draws from its own
/// stream so results do not depend on which suites run or in what order.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3): seed_from_u64(seed), set_stream(suite index)";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    /// Word, region and vectors of the worst sample.
    pub g_word: String,
    pub region: String,
    pub params_hash: String,
    pub samples: usize,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: f64,
}

impl CheckRecord {
    /// Content without the timing, for determinism comparisons.
    pub fn without_timing(&self) -> CheckRecord {
        CheckRecord {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

pub fn params_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// One evaluated input of a check.
#[derive(Clone, Debug)]
pub struct Sample {
    pub g_word: String,
    pub region: String,
    /// Free-form description of the remaining inputs; only its hash is kept.
    pub params: String,
    pub deviation: f64,
}

impl Sample {
    pub fn new(g_word: impl Into<String>, region: impl Into<String>, params: impl Into<String>, deviation: f64) -> Self {
        Self {
            g_word: g_word.into(),
            region: region.into(),
            params: params.into(),
            deviation,
        }
    }
}

/// Collects samples for one check id and reduces them to its worst case.
pub struct CheckBuilder {
    suite: &'static str,
    check: &'static str,
    tolerance: f64,
    started: Instant,
}

impl CheckBuilder {
    pub fn new(suite: &'static str, check: &'static str, tolerance: f64) -> Self {
        Self {
            suite,
            check,
            tolerance,
            started: Instant::now(),
        }
    }

    pub fn finish(self, samples: Vec<Sample>) -> CheckRecord {
        let count = samples.len();
        // NaN counts as the worst possible outcome
        let worst = samples
            .into_iter()
            .reduce(|a, b| {
                if b.deviation.is_nan() || (!a.deviation.is_nan() && b.deviation > a.deviation) {
                    b
                } else {
                    a
                }
            })
            .unwrap_or_else(|| Sample::new("", "", "", f64::NAN));
        CheckRecord {
            suite: self.suite.to_string(),
            check: self.check.to_string(),
            params_hash: params_hash(&format!("{}|{}|{}", worst.g_word, worst.region, worst.params)),
            g_word: worst.g_word,
            region: worst.region,
            samples: count,
            deviation: worst.deviation,
            tolerance: self.tolerance,
            pass: worst.deviation <= self.tolerance,
            error: None,
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn fail(self, error: impl ToString) -> CheckRecord {
        let error = error.to_string();
        CheckRecord {
            suite: self.suite.to_string(),
            check: self.check.to_string(),
            g_word: String::new(),
            region: String::new(),
            params_hash: params_hash(&error),
            samples: 0,
            deviation: f64::INFINITY,
            tolerance: self.tolerance,
            pass: false,
            error: Some(error),
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// `finish` for `Ok`, `fail` for `Err`.
    pub fn from_result<E: ToString>(self, samples: Result<Vec<Sample>, E>) -> CheckRecord {
        match samples {
            Ok(s) => self.finish(s),
            Err(e) => self.fail(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    #[serde(rename = "type")]
    pub kind: String,
    pub tool: String,
    pub version: String,
    pub rng: String,
    pub seed: u64,
    pub config_hash: String,
    pub suites: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(rename = "type")]
    pub kind: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failing: Vec<String>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub header: Header,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

fn sort_key(r: &CheckRecord) -> (&str, &str, &str) {
    (&r.suite, &r.check, &r.params_hash)
}

impl Report {
    pub fn new(header: Header, mut records: Vec<CheckRecord>, wall_time_ms: f64) -> Self {
        records.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        let failing: Vec<String> = records
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{}/{}", r.suite, r.check))
            .collect();
        let summary = Summary {
            kind: "summary".into(),
            total: records.len(),
            passed: records.len() - failing.len(),
            failed: failing.len(),
            failing,
            wall_time_ms,
        };
        Self { header, records, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Header line, one line per record, then the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        out.push_str(&serde_json::to_string(&self.header).expect("plain data"));
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("plain data"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("plain data"));
        out.push('\n');
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<14} {:<40} {:>12} {:>10}  {:<4}  worst input", "suite", "check", "deviation", "tolerance", "");
        for r in &self.records {
            let status = if r.pass { "ok" } else { "FAIL" };
            let mut input = r.g_word.clone();
            if !r.region.is_empty() {
                input = format!("{input} @ {}", r.region);
            }
            if let Some(e) = &r.error {
                input = format!("error: {e}");
            }
            let _ = writeln!(
                out,
                "{:<14} {:<40} {:>12.3e} {:>10.1e}  {:<4}  {}",
                r.suite, r.check, r.deviation, r.tolerance, status, input
            );
        }
        let _ = writeln!(
            out,
            "\n{} checks, {} passed, {} failed ({:.1} s)",
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.summary.wall_time_ms / 1e3
        );
        out
    }
}
