//! Deterministic suite reports in human text and JSON.
//!
//! The JSON schema is `{schema, suite, config, claims:[...]}` with every
//! integer rendered as a decimal string so arbitrary-precision values
//! survive any JSON reader. Wall-clock times appear only in the human
//! text: two runs with identical configuration produce byte-identical
//! JSON, and timing would break that guarantee.

use crate::config::Config;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::time::Duration;

/// Version string embedded in every JSON report.
pub const SCHEMA_VERSION: &str = "treelie-report/1";

/// Outcome of one claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The stated identity or certificate was checked and holds.
    Verified,
    /// The check ran to completion and the statement does not hold.
    Failed,
    /// The configured genus or support is outside the statement's
    /// hypotheses; the recorded outcome is informational only.
    OutOfHypothesis,
    /// Not run, for example a lattice claim in fast mode or after the
    /// budget ran out.
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::OutOfHypothesis => "out-of-hypothesis",
            Status::Skipped => "skipped",
        }
    }
}

/// One claim outcome inside a suite report.
#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: String,
    pub title: String,
    pub status: Status,
    pub mode: &'static str,
    pub support: Vec<u32>,
    /// Digest of the claim's computed witness data.
    pub witness: String,
    /// Short human note: the computed value, or why the claim failed.
    pub detail: String,
    /// Shown in text output only.
    pub wall: Duration,
}

/// A full run: configuration snapshot plus one result per claim.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub config: Config,
    pub results: Vec<ClaimResult>,
}

impl SuiteReport {
    /// True when any claim failed; out-of-hypothesis does not count.
    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Failed)
    }

    /// True when the run was cut short by the budget.
    pub fn budget_exhausted(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Skipped && r.detail.contains("budget"))
    }

    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert("schema".into(), Value::String(SCHEMA_VERSION.into()));
        root.insert("suite".into(), Value::String(self.suite.clone()));
        root.insert("config".into(), Value::Object(config_object(&self.config)));
        let claims = self.results.iter().map(claim_object).map(Value::Object).collect();
        root.insert("claims".into(), Value::Array(claims));
        let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let support = support_text(&self.config.support);
        let _ = writeln!(
            out,
            "suite {}  genus {}  support {}  mode {}  seed {}",
            self.suite,
            self.config.genus,
            support,
            self.config.mode.as_str(),
            self.config.seed
        );
        let mut counts = [0usize; 4];
        let mut wall = Duration::ZERO;
        for r in &self.results {
            counts[match r.status {
                Status::Verified => 0,
                Status::Failed => 1,
                Status::OutOfHypothesis => 2,
                Status::Skipped => 3,
            }] += 1;
            wall += r.wall;
            let _ = writeln!(
                out,
                "  {:<14} {:<17} {:>9}  {}",
                r.id,
                r.status.as_str(),
                format_wall(r.wall),
                if r.detail.is_empty() { &r.title } else { &r.detail }
            );
        }
        let _ = writeln!(
            out,
            "summary: {} verified, {} failed, {} out-of-hypothesis, {} skipped (wall {})",
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            format_wall(wall)
        );
        out
    }
}

/// Digest of a claim's witness data, prefixed with the hash name.
pub fn digest(witness: &str) -> String {
    let mut h = Sha256::new();
    h.update(witness.as_bytes());
    format!("sha256:{:x}", h.finalize())
}

fn config_object(c: &Config) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("genus".into(), Value::String(c.genus.to_string()));
    m.insert(
        "support".into(),
        Value::Array(c.support.iter().map(|i| Value::String(i.to_string())).collect()),
    );
    m.insert("max-degree".into(), Value::String(c.max_degree.to_string()));
    m.insert("gluing-sign".into(), Value::String(signed(c.gluing_sign)));
    m.insert("wedge-sign".into(), Value::String(signed(c.wedge_sign)));
    m.insert("mode".into(), Value::String(c.mode.as_str().into()));
    m.insert("seed".into(), Value::String(c.seed.to_string()));
    m
}

fn claim_object(r: &ClaimResult) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("id".into(), Value::String(r.id.clone()));
    m.insert("title".into(), Value::String(r.title.clone()));
    m.insert("status".into(), Value::String(r.status.as_str().into()));
    m.insert("mode".into(), Value::String(r.mode.into()));
    m.insert(
        "support".into(),
        Value::Array(r.support.iter().map(|i| Value::String(i.to_string())).collect()),
    );
    m.insert("witness".into(), Value::String(r.witness.clone()));
    m.insert("detail".into(), Value::String(r.detail.clone()));
    m
}

fn signed(v: i32) -> String {
    if v >= 0 {
        format!("+{v}")
    } else {
        v.to_string()
    }
}

fn support_text(support: &[u32]) -> String {
    let contiguous = support
        .windows(2)
        .all(|w| w[1] == w[0] + 1);
    if contiguous && support.len() > 1 {
        format!("{}..{}", support[0], support[support.len() - 1])
    } else {
        support.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn format_wall(d: Duration) -> String {
    let ms = d.as_millis();
    if ms < 10_000 {
        format!("{ms}ms")
    } else {
        format!("{:.1}s", d.as_secs_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        let result = ClaimResult {
            id: "R2.2-AS1".into(),
            title: "repeated outer labels kill a tripod".into(),
            status: Status::Verified,
            mode: "fast",
            support: vec![1, 2, 3, 4],
            witness: digest("t(a1,b1,a1) -> 0"),
            detail: String::new(),
            wall: Duration::from_millis(3),
        };
        SuiteReport { suite: "core-relations".into(), config: Config::default(), results: vec![result] }
    }

    #[test]
    fn json_is_stable_and_excludes_wall_time() {
        let r = sample();
        let one = r.to_json();
        let mut again = sample();
        again.results[0].wall = Duration::from_millis(900);
        assert_eq!(one, again.to_json());
        assert!(one.contains("\"schema\": \"treelie-report/1\""));
        assert!(one.contains("\"seed\": \"32776877117303141\""));
        assert!(!one.contains("wall"));
    }

    #[test]
    fn text_shows_wall_time_and_summary() {
        let text = sample().to_text();
        assert!(text.contains("3ms"));
        assert!(text.contains("summary: 1 verified, 0 failed, 0 out-of-hypothesis, 0 skipped"));
    }

    #[test]
    fn digests_are_hex_and_sensitive() {
        let d1 = digest("x");
        let d2 = digest("y");
        assert!(d1.starts_with("sha256:"));
        assert_ne!(d1, d2);
    }

    #[test]
    fn failed_summary_flags_the_run() {
        let mut r = sample();
        r.results[0].status = Status::Failed;
        assert!(r.failed());
        r.results[0].status = Status::OutOfHypothesis;
        assert!(!r.failed());
    }
}
