//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

use crate::padic::Verdict;

/// One failed or indeterminate case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of a named suite: `{"suite", "identity", "cases", "passed", "failed", "indeterminate"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    /// The identity the suite checks.
    pub identity: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: Vec<Failure>,
    #[serde(default)]
    pub indeterminate: Vec<Failure>,
}

impl SuiteReport {
    pub fn new(suite: &str, identity: &str) -> Self {
        SuiteReport { suite: suite.into(), identity: identity.into(), ..Default::default() }
    }

    /// Records a comparison verdict.
    pub fn verdict(&mut self, case: impl Into<String>, v: Verdict) {
        self.cases += 1;
        match v {
            Verdict::Equal(_) => self.passed += 1,
            Verdict::Unequal => self.failed.push(Failure { case: case.into(), expected: "equal".into(), got: v.to_string() }),
            Verdict::Indeterminate(_) => self.indeterminate.push(Failure { case: case.into(), expected: "equal".into(), got: v.to_string() }),
        }
    }

    /// Records a boolean check with descriptions of both sides.
    pub fn check(&mut self, case: impl Into<String>, ok: bool, expected: impl Into<String>, got: impl Into<String>) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(Failure { case: case.into(), expected: expected.into(), got: got.into() });
        }
    }

    /// Records a case that could not be evaluated.
    pub fn error(&mut self, case: impl Into<String>, err: impl std::fmt::Display) {
        self.cases += 1;
        self.failed.push(Failure { case: case.into(), expected: "evaluation".into(), got: format!("error: {err}") });
    }

    /// Appends the cases of another report, prefixing their names.
    pub fn absorb(&mut self, o: SuiteReport) {
        let pre = |f: Failure| Failure { case: format!("{}: {}", o.suite, f.case), ..f };
        self.cases += o.cases;
        self.passed += o.passed;
        self.failed.extend(o.failed.into_iter().map(pre));
        self.indeterminate.extend(o.indeterminate.into_iter().map(pre));
    }

    pub fn all_passed(&self) -> bool {
        self.failed.is_empty() && self.indeterminate.is_empty() && self.passed == self.cases
    }

    /// Process exit code: 0 all pass, 1 any failure, 3 only indeterminate cases.
    pub fn exit_code(&self) -> i32 {
        if !self.failed.is_empty() {
            1
        } else if !self.indeterminate.is_empty() {
            3
        } else {
            0
        }
    }
}
