//! Verdicts and check reports shared by every decision procedure.

use std::fmt;

use crate::fincat::{FinCategory, MorId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// A theorem whose hypotheses and conclusion hold on the instance.
    Holds,
    /// A theorem whose hypothesis does not hold on the instance.
    Vacuous,
    /// A check whose precondition does not hold.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Holds => "HOLDS",
            Verdict::Vacuous => "VACUOUS",
            Verdict::NotApplicable => "NOT-APPLICABLE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a check. Failures always carry the morphisms that witness them,
/// in an order documented by the check that produced the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub witnesses: Vec<MorId>,
    pub detail: String,
    pub children: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        CheckReport {
            check: check.into(),
            verdict,
            witnesses: Vec::new(),
            detail: String::new(),
            children: Vec::new(),
        }
    }

    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass)
    }

    pub fn fail(check: impl Into<String>, witnesses: Vec<MorId>, detail: impl Into<String>) -> Self {
        CheckReport {
            witnesses,
            detail: detail.into(),
            ..Self::new(check, Verdict::Fail)
        }
    }

    pub fn not_applicable(check: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            detail: detail.into(),
            ..Self::new(check, Verdict::NotApplicable)
        }
    }

    pub fn vacuous(check: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            detail: detail.into(),
            ..Self::new(check, Verdict::Vacuous)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// Conjunction of sub-checks: FAIL if any child fails (the parent takes the
    /// first failing child's witnesses), NOT-APPLICABLE if any child is, else PASS.
    pub fn all(check: impl Into<String>, children: Vec<CheckReport>) -> Self {
        let mut report = Self::pass(check);
        if let Some(bad) = children.iter().find(|c| c.verdict == Verdict::Fail) {
            report.verdict = Verdict::Fail;
            report.witnesses = bad.witnesses.clone();
            report.detail = format!("{}: {}", bad.check, bad.detail);
        } else if let Some(na) = children.iter().find(|c| c.verdict == Verdict::NotApplicable) {
            report.verdict = Verdict::NotApplicable;
            report.detail = format!("{}: {}", na.check, na.detail);
        }
        report.children = children;
        report
    }

    pub fn is_pass(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::Holds)
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn find(&self, check: &str) -> Option<&CheckReport> {
        if self.check == check {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(check))
    }

    pub fn witness_labels<'a>(&self, cat: &'a FinCategory) -> Vec<&'a str> {
        self.witnesses.iter().map(|&m| cat.label(m)).collect()
    }

    /// Indented human-readable rendering with morphism labels.
    pub fn render(&self, cat: &FinCategory) -> String {
        let mut out = String::new();
        self.render_into(cat, 0, &mut out);
        out
    }

    fn render_into(&self, cat: &FinCategory, depth: usize, out: &mut String) {
        use fmt::Write;
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}{}: {}", self.check, self.verdict);
        if !self.witnesses.is_empty() {
            let _ = write!(out, " [{}]", self.witness_labels(cat).join(", "));
        }
        if !self.detail.is_empty() {
            let _ = write!(out, " -- {}", self.detail);
        }
        out.push('\n');
        for child in &self.children {
            child.render_into(cat, depth + 1, out);
        }
    }
}
