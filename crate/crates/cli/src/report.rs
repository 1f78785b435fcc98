use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Verified,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub problem: String,
    pub k: Option<usize>,
    pub n: usize,
    pub value: Option<usize>,
    /// Members as vertex names.
    pub family: Vec<Vec<String>>,
    pub timings_ms: BTreeMap<String, f64>,
    pub counters: BTreeMap<String, i64>,
    pub details: BTreeMap<String, serde_json::Value>,
    pub certificate: Certificate,
    /// Why certification failed; empty when verified.
    pub problems: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, problem: impl Into<String>, n: usize) -> Self {
        RunReport {
            command: command.into(),
            problem: problem.into(),
            k: None,
            n,
            value: None,
            family: Vec::new(),
            timings_ms: BTreeMap::new(),
            counters: BTreeMap::new(),
            details: BTreeMap::new(),
            certificate: Certificate::Verified,
            problems: Vec::new(),
        }
    }

    pub fn count(&mut self, name: &str, value: impl TryInto<i64>) {
        self.counters.insert(name.into(), value.try_into().unwrap_or(i64::MAX));
    }

    pub fn detail(&mut self, name: &str, value: impl Serialize) {
        self.details.insert(name.into(), serde_json::to_value(value).expect("report values serialize"));
    }

    /// Runs `f`, recording its wall-clock time under `phase`.
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.record(phase, start);
        out
    }

    /// Adds the time since `start` to `phase`.
    pub fn record(&mut self, phase: &str, start: Instant) {
        *self.timings_ms.entry(phase.into()).or_default() += start.elapsed().as_secs_f64() * 1e3;
    }

    pub fn fail(&mut self, problem: impl Into<String>) {
        self.certificate = Certificate::Mismatch;
        self.problems.push(problem.into());
    }

    /// Fails the certificate unless `ok`.
    pub fn require(&mut self, ok: bool, problem: impl FnOnce() -> String) {
        if !ok {
            self.fail(problem());
        }
    }

    pub fn verified(&self) -> bool {
        self.certificate == Certificate::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(out, "{key:<14} {value}");
        };
        line("command", self.command.clone());
        line("problem", self.problem.clone());
        if let Some(k) = self.k {
            line("k", k.to_string());
        }
        line("vertices", self.n.to_string());
        if let Some(v) = self.value {
            line("value", v.to_string());
        }
        if !self.family.is_empty() {
            line("members", self.family.len().to_string());
            for (i, m) in self.family.iter().enumerate() {
                line(&format!("  {}", i + 1), m.join(" "));
            }
        }
        for (k, v) in &self.details {
            line(k, v.to_string());
        }
        for (k, v) in &self.counters {
            line(k, v.to_string());
        }
        for (k, v) in &self.timings_ms {
            line(&format!("{k} ms"), format!("{v:.3}"));
        }
        let status = match self.certificate {
            Certificate::Verified => "verified".to_string(),
            Certificate::Mismatch => format!("MISMATCH: {}", self.problems.join("; ")),
        };
        line("certificate", status);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = RunReport::new("solve", "ma-k", 3);
        r.k = Some(2);
        r.value = Some(3);
        r.family = vec![vec!["a".into()], vec!["b".into(), "c".into()]];
        r.count("cancellations", 4usize);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["certificate"], "verified");
        assert_eq!(v["counters"]["cancellations"], 4);
        assert_eq!(v["family"][1][1], "c");
        r.fail("value differs");
        assert!(!r.verified());
        assert!(r.to_table().contains("MISMATCH: value differs"));
    }
}
