use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

/// Outcome of one verification suite.
///
/// Serialization omits `wall_time` so that identical runs produce identical
/// reports regardless of machine load or thread count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub cells: Vec<CellReport>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// The first failing case, with the command that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub rerun: String,
}

/// Per-cell summary (one `(n, l)` pair, one injection domain, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub cell: String,
    pub cases: u64,
    pub passed: bool,
    pub facts: BTreeMap<String, String>,
}

impl CellReport {
    pub fn new(cell: impl Into<String>) -> CellReport {
        CellReport {
            cell: cell.into(),
            cases: 0,
            passed: true,
            facts: BTreeMap::new(),
        }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.insert(key.to_string(), value.to_string());
    }
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> VerificationReport {
        VerificationReport {
            suite: suite.into(),
            cases: 0,
            passed: true,
            counterexample: None,
            cells: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// Appends a cell, keeping the first counterexample seen.
    pub fn push_cell(&mut self, cell: CellReport, failure: Option<Counterexample>) {
        self.cases += cell.cases;
        self.passed &= cell.passed && failure.is_none();
        if self.counterexample.is_none() {
            self.counterexample = failure;
        }
        self.cells.push(cell);
    }

    /// Folds another report into this one as a sub-suite.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.passed &= other.passed;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self.wall_time += other.wall_time;
        for mut cell in other.cells {
            cell.cell = format!("{}/{}", other.suite, cell.cell);
            self.cells.push(cell);
        }
    }

    /// Renders a short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite: {}\nstatus: {}\ncases: {}\n",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            self.cases
        );
        for cell in &self.cells {
            out.push_str(&format!(
                "  [{}] {} cases={}",
                if cell.passed { "ok" } else { "FAIL" },
                cell.cell,
                cell.cases
            ));
            for (k, v) in &cell.facts {
                out.push_str(&format!(" {k}={v}"));
            }
            out.push('\n');
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!(
                "counterexample: {}: {}\nrerun: {}\n",
                c.check, c.detail, c.rerun
            ));
        }
        out
    }
}
