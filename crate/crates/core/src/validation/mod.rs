//! Cross-validation suites. Each suite returns a [`SuiteReport`] whose
//! sub-checks name the exact comparison made and, on failure, the smallest
//! offending statistic tuple.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::formulas::FormulaError;
use crate::grammar::GrammarError;
use crate::series::lagrange::LagrangeError;
use crate::series::SeriesError;
use crate::surface::StructureError;
use crate::trees::TreeError;
use crate::{Budget, BudgetExceeded, JointTable};

mod counting;
mod identities;
mod tree_suites;

pub use counting::{area_report, check_formulas, check_oracle, check_series_vs_enum, AreaRow};
pub use identities::check_identities;
pub use tree_suites::{check_conjecture, check_fincore, check_trees, Orientation};

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Lagrange(#[from] LagrangeError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid parameter: {0}")]
    Param(String),
}

impl ValidationError {
    /// True when the suite stopped because an enumeration hit its budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            ValidationError::Budget(_)
                | ValidationError::Grammar(GrammarError::Budget(_))
                | ValidationError::Tree(TreeError::Budget(_))
        )
    }
}

/// First failing comparison of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub key: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub pass: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

impl SubCheck {
    fn ok(name: &str, checked: u64) -> SubCheck {
        SubCheck {
            name: name.to_owned(),
            pass: true,
            checked,
            failure: None,
        }
    }

    fn failed(name: &str, checked: u64, key: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> SubCheck {
        SubCheck {
            name: name.to_owned(),
            pass: false,
            checked,
            failure: Some(Failure {
                check: name.to_owned(),
                key: key.into(),
                expected: expected.into(),
                actual: actual.into(),
            }),
        }
    }

    /// Compares two exact tables over the union of their keys.
    fn tables<K: Ord + Clone + Debug>(name: &str, expected: &JointTable<K>, actual: &JointTable<K>) -> SubCheck {
        let keys: std::collections::BTreeSet<&K> = expected.iter().chain(actual.iter()).map(|(k, _)| k).collect();
        let checked = keys.len() as u64;
        match expected.first_difference(actual) {
            None => SubCheck::ok(name, checked),
            Some((k, e, a)) => SubCheck::failed(name, checked, format!("{k:?}"), e.to_string(), a.to_string()),
        }
    }

    fn equal<T: PartialEq + Debug>(name: &str, key: &str, expected: T, actual: T) -> SubCheck {
        if expected == actual {
            SubCheck::ok(name, 1)
        } else {
            SubCheck::failed(name, 1, key, format!("{expected:?}"), format!("{actual:?}"))
        }
    }
}

/// Machine-readable outcome of one suite. `seconds` is the only
/// nondeterministic field.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub seconds: f64,
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&SubCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks whose name starts with `prefix`, all passing and at least one.
    pub fn checks_pass(&self, prefix: &str) -> bool {
        let mut any = false;
        for c in self.checks.iter().filter(|c| c.name.starts_with(prefix)) {
            if !c.pass {
                return false;
            }
            any = true;
        }
        any
    }
}

struct ReportBuilder {
    suite: &'static str,
    params: BTreeMap<String, Value>,
    checks: Vec<SubCheck>,
    details: Value,
    start: Instant,
}

impl ReportBuilder {
    fn new(suite: &'static str, params: &[(&str, Value)]) -> ReportBuilder {
        ReportBuilder {
            suite,
            params: params.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect(),
            checks: Vec::new(),
            details: Value::Null,
            start: Instant::now(),
        }
    }

    fn push(&mut self, c: SubCheck) {
        self.checks.push(c);
    }

    fn finish(self) -> SuiteReport {
        let pass = self.checks.iter().all(|c| c.pass);
        self.finish_with(pass)
    }

    fn finish_with(self, pass: bool) -> SuiteReport {
        let failure = if pass {
            None
        } else {
            self.checks.iter().find_map(|c| c.failure.clone())
        };
        SuiteReport {
            suite: self.suite.to_owned(),
            params: self.params,
            pass,
            checked: self.checks.iter().map(|c| c.checked).sum(),
            failure,
            seconds: self.start.elapsed().as_secs_f64(),
            checks: self.checks,
            details: self.details,
        }
    }
}

/// The suites runnable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteName {
    Formulas,
    SeriesVsEnum,
    Oracle,
    Fincore,
    Conjecture,
    Identities,
    Trees,
    Area,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Formulas,
        SuiteName::SeriesVsEnum,
        SuiteName::Oracle,
        SuiteName::Fincore,
        SuiteName::Conjecture,
        SuiteName::Identities,
        SuiteName::Trees,
        SuiteName::Area,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Formulas => "formulas",
            SuiteName::SeriesVsEnum => "series",
            SuiteName::Oracle => "oracle",
            SuiteName::Fincore => "fincore",
            SuiteName::Conjecture => "conjecture",
            SuiteName::Identities => "identities",
            SuiteName::Trees => "trees",
            SuiteName::Area => "area",
        }
    }

    /// Default size parameter: the `maxN`, order, area or size bound the
    /// suite takes.
    pub fn default_param(self) -> usize {
        match self {
            SuiteName::Formulas => 9,
            SuiteName::SeriesVsEnum => 8,
            SuiteName::Oracle => 6,
            SuiteName::Fincore => 10,
            SuiteName::Conjecture => 10,
            SuiteName::Identities => 12,
            SuiteName::Trees => 8,
            SuiteName::Area => 10,
        }
    }

    /// Largest accepted parameter.
    pub fn max_param(self) -> usize {
        match self {
            SuiteName::Formulas => 11,
            SuiteName::SeriesVsEnum => 10,
            SuiteName::Oracle => 8,
            SuiteName::Fincore => 12,
            SuiteName::Conjecture => 12,
            SuiteName::Identities => 12,
            SuiteName::Trees => 10,
            SuiteName::Area => 11,
        }
    }

    pub fn run(self, param: usize, budget: Budget) -> Result<SuiteReport, ValidationError> {
        if param > self.max_param() {
            return Err(ValidationError::Param(format!(
                "{} accepts at most {}, got {param}",
                self.as_str(),
                self.max_param()
            )));
        }
        match self {
            SuiteName::Formulas => check_formulas(param, budget),
            SuiteName::SeriesVsEnum => check_series_vs_enum(param, budget),
            SuiteName::Oracle => check_oracle(param, budget),
            SuiteName::Fincore => check_fincore(param),
            SuiteName::Conjecture => check_conjecture(param),
            SuiteName::Identities => check_identities(param),
            SuiteName::Trees => check_trees(param, budget),
            SuiteName::Area => area_report(param, budget),
        }
    }
}

impl FromStr for SuiteName {
    type Err = ValidationError;

    fn from_str(s: &str) -> Result<SuiteName, ValidationError> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s || (s == "series-vs-enum" && *n == SuiteName::SeriesVsEnum))
            .ok_or_else(|| ValidationError::Param(format!("unknown suite {s:?}")))
    }
}
