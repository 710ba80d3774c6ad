//! Structured pass/fail results with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// A concrete object a reader can re-check by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Index {
        index: String,
    },
    Pair {
        pair: [String; 2],
    },
    Set {
        set: Vec<String>,
    },
    /// An inconsistent pair and a consistent set violating (C2).
    PairAndSet {
        pair: [String; 2],
        set: Vec<String>,
    },
    /// A consistent set and an index outside it.
    SetAndIndex {
        set: Vec<String>,
        index: String,
    },
    SetPair {
        left: Vec<String>,
        right: Vec<String>,
    },
    /// A relation between two named elements that came out wrong.
    Relation {
        lower: String,
        upper: String,
        expected: bool,
        actual: bool,
    },
    Height {
        element: String,
        expected: usize,
        actual: usize,
    },
    Note {
        text: String,
    },
}

impl Witness {
    pub fn index(i: impl Into<String>) -> Self {
        Witness::Index { index: i.into() }
    }

    pub fn pair(a: impl Into<String>, b: impl Into<String>) -> Self {
        Witness::Pair {
            pair: [a.into(), b.into()],
        }
    }

    pub fn note(text: impl Into<String>) -> Self {
        Witness::Note { text: text.into() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[String]| format!("{{{}}}", s.join(", "));
        match self {
            Witness::Index { index } => write!(f, "{index}"),
            Witness::Pair { pair } => write!(f, "{{{}, {}}}", pair[0], pair[1]),
            Witness::Set { set: s } => write!(f, "{}", set(s)),
            Witness::PairAndSet { pair, set: s } => {
                write!(f, "I={{{}, {}}} C={}", pair[0], pair[1], set(s))
            }
            Witness::SetAndIndex { set: s, index } => write!(f, "C={} j={index}", set(s)),
            Witness::SetPair { left, right } => write!(f, "{} / {}", set(left), set(right)),
            Witness::Relation {
                lower,
                upper,
                expected,
                actual,
            } => write!(f, "{lower} < {upper}: expected {expected}, got {actual}"),
            Witness::Height {
                element,
                expected,
                actual,
            } => write!(f, "height({element}) = {actual}, expected {expected}"),
            Witness::Note { text } => write!(f, "{text}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes iff `witnesses` is empty; a failing check always has one.
    pub fn from_witnesses(name: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            status,
            witnesses,
            detail: None,
        }
    }

    pub fn not_applicable(name: impl Into<String>, why: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::NotApplicable,
            witnesses: Vec::new(),
            detail: Some(why.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        Report { checks }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// No check failed. Not-applicable checks do not count against it.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    /// Plain-text table, one line per check plus one per witness.
    pub fn to_human(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a",
            };
            out.push_str(&format!("{:<width$}  {status}", c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
            for w in &c.witnesses {
                out.push_str(&format!("{:<width$}    - {w}\n", ""));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_has_witness() {
        let c = Check::from_witnesses("M3", vec![Witness::index("x")]);
        assert!(c.failed());
        assert!(Check::from_witnesses("M3", vec![]).passed());
    }

    #[test]
    fn not_applicable_does_not_fail_report() {
        let r = Report::new(vec![
            Check::from_witnesses("a", vec![]),
            Check::not_applicable("b", "skipped"),
        ]);
        assert!(r.passed());
        assert_eq!(r.status("b"), Some(Status::NotApplicable));
    }

    #[test]
    fn json_shape() {
        let r = Report::new(vec![Check::from_witnesses(
            "C2",
            vec![Witness::PairAndSet {
                pair: ["1".into(), "2".into()],
                set: vec!["1".into(), "2".into()],
            }],
        )]);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][0]["witnesses"][0]["kind"], "pair_and_set");
        let back: Report = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
