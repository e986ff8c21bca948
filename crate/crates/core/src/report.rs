//! Structured pass/fail records produced by the checkers.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::module::PdResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Some projective dimension exceeded the cutoff.
    Inconclusive(usize),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "Pass"),
            Verdict::Fail => write!(f, "Fail"),
            Verdict::Inconclusive(b) => write!(f, "Inconclusive({b})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub instance: String,
    pub hypotheses: BTreeMap<String, bool>,
    pub measurements: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, instance: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            instance: instance.to_string(),
            hypotheses: BTreeMap::new(),
            measurements: BTreeMap::new(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, key: &str, holds: bool) -> &mut Self {
        self.hypotheses.insert(key.to_string(), holds);
        self
    }

    pub fn measure(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.measurements.insert(key.to_string(), value.into());
        self
    }

    pub fn measure_pd(&mut self, key: &str, pd: PdResult) -> &mut Self {
        self.measure(key, pd.to_string())
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    /// Downgrades the verdict to `Fail` and records why.
    pub fn fail(&mut self, why: impl Into<String>) -> &mut Self {
        self.verdict = Verdict::Fail;
        self.witness(why)
    }

    /// Records `lhs == rhs`, failing the check otherwise.
    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, lhs: T, rhs: T) -> &mut Self {
        if lhs != rhs {
            self.fail(format!("{what}: {lhs:?} != {rhs:?}"));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// All checks run on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub instance: String,
    pub checks: Vec<CheckReport>,
    pub version: String,
}

impl Report {
    pub fn new(instance: &str) -> Report {
        Report {
            instance: instance.to_string(),
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == verdict).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c.verdict, Verdict::Inconclusive(_))).count()
    }

    /// Plain-text table, one row per check.
    pub fn to_table(&self) -> String {
        let mut rows = vec![("check".to_string(), "verdict".to_string(), "measurements".to_string())];
        for c in &self.checks {
            let m: Vec<String> = c.measurements.iter().map(|(k, v)| format!("{k}={v}")).collect();
            rows.push((c.name.clone(), c.verdict.to_string(), m.join(" ")));
        }
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
        let mut out = format!("instance: {}\n", self.instance);
        for (a, b, c) in rows {
            out.push_str(&format!("{a:<w0$}  {b:<w1$}  {c}\n"));
        }
        for c in &self.checks {
            for w in &c.witnesses {
                out.push_str(&format!("  [{}] {}\n", c.name, w));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_serialize_as_strings() {
        let mut c = CheckReport::new("x", "inst");
        c.measure("dim", 3).hypothesis("h", true);
        c.verdict = Verdict::Inconclusive(10);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"Inconclusive(10)\""));
        c.expect_eq("dims", 1, 2);
        assert_eq!(c.verdict, Verdict::Fail);
    }
}
