//! Pass/fail bookkeeping shared by the verification suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first failing instance of a check family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Which instance failed, e.g. `"l=1, i=2"`.
    pub case: String,
    /// Basis coordinate where the two sides first differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Counterexample {
    pub fn case(case: impl Into<String>) -> Self {
        Counterexample {
            case: case.into(),
            coordinate: None,
            lhs: None,
            rhs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub status: Status,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Default for CheckOutcome {
    fn default() -> Self {
        CheckOutcome {
            status: Status::Pass,
            cases: 0,
            counterexample: None,
        }
    }
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records one instance; only the first failure keeps its witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            self.counterexample = Some(witness());
        }
    }

    pub fn single(ok: bool, witness: impl FnOnce() -> Counterexample) -> Self {
        let mut out = Self::default();
        out.record(ok, witness);
        out
    }
}

/// Named check families plus free-form notes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub families: BTreeMap<String, CheckOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn family(&mut self, name: &str) -> &mut CheckOutcome {
        self.families.entry(name.to_string()).or_default()
    }

    pub fn insert(&mut self, name: &str, outcome: CheckOutcome) {
        self.families.insert(name.to_string(), outcome);
    }

    pub fn all_passed(&self) -> bool {
        self.families.values().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &CheckOutcome)> {
        self.families.iter().filter(|(_, o)| !o.passed())
    }

    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for (k, v) in other.families {
            self.families.insert(format!("{prefix}{k}"), v);
        }
        self.notes.extend(other.notes);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_wins() {
        let mut o = CheckOutcome::default();
        o.record(true, || Counterexample::case("a"));
        o.record(false, || Counterexample::case("b"));
        o.record(false, || Counterexample::case("c"));
        assert_eq!(o.cases, 3);
        assert_eq!(o.status, Status::Fail);
        assert_eq!(o.counterexample.unwrap().case, "b");
    }

    #[test]
    fn serializes_status_lowercase() {
        let mut r = CheckReport::default();
        r.insert("x", CheckOutcome::single(true, || unreachable!()));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"families":{"x":{"status":"pass","cases":1}}}"#);
    }
}
