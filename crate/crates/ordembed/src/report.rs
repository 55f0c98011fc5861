//! JSON reports and atomic file output.

use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// Settings echoed into every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    pub seed: u64,
    pub stages: usize,
    pub checkpoint_interval: usize,
    pub power_budget: u64,
    pub stability_window: usize,
    pub growth_window: usize,
}

impl Config {
    pub fn new(seed: u64, stages: usize) -> Config {
        Config {
            seed,
            stages,
            checkpoint_interval: ordembed_core::analysis::DEFAULT_CHECKPOINT_INTERVAL,
            power_budget: ordembed_core::enumop::DEFAULT_POWER_BUDGET,
            stability_window: ordembed_core::analysis::DEFAULT_STABILITY_WINDOW,
            growth_window: ordembed_core::analysis::DEFAULT_GROWTH_WINDOW,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub operator: String,
    pub presentation: String,
    pub seed: u64,
    pub stages: usize,
    pub checkpoints: Vec<usize>,
    pub verdict: Verdict,
    pub evidence: Vec<Value>,
    pub assertions: Vec<Assertion>,
    pub config: Config,
}

impl Report {
    pub fn new(check: impl Into<String>, config: Config) -> Report {
        Report {
            check: check.into(),
            operator: String::new(),
            presentation: String::new(),
            seed: config.seed,
            stages: config.stages,
            checkpoints: Vec::new(),
            verdict: Verdict::Pass,
            evidence: Vec::new(),
            assertions: Vec::new(),
            config,
        }
    }

    pub fn assert(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
        if !pass {
            self.verdict = Verdict::Fail;
        }
    }

    /// Adds `value` under `name` to the evidence list.
    pub fn evidence(&mut self, name: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("evidence serializes");
        self.evidence
            .push(serde_json::json!({ "name": name, "value": value }));
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed_assertions(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_assertion_flips_verdict() {
        let mut r = Report::new("x", Config::new(1, 10));
        r.assert("a", true, "");
        assert!(r.passed());
        r.assert("b", false, "no");
        assert!(!r.passed());
        assert_eq!(r.failed_assertions().count(), 1);
    }

    #[test]
    fn field_names_are_stable() {
        let r = Report::new("x", Config::new(1, 10));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "check",
            "operator",
            "presentation",
            "seed",
            "stages",
            "checkpoints",
            "verdict",
            "evidence",
            "assertions",
            "config",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
    }
}
