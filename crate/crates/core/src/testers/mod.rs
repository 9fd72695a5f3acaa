//! The passive testers. Each run owns a [`CopyLedger`] and reports the
//! copies it drew next to its decision and internal estimates.

mod baseline;
mod intersection;
mod mm;
mod monotonicity;
pub mod params;
mod symmetry;
mod triangle;

use std::collections::BTreeMap;

use serde::Serialize;

pub use baseline::{classical_triangle_baseline, witness_rate_bound};
pub use intersection::{estimate_intersection2, IntersectionEstimate};
pub use mm::test_mm;
pub use monotonicity::test_monotonicity;
pub use params::{
    mm_repetitions, mm_sample_count, IntersectionParams, MonotonicityParams, SymmetryParams,
    TriangleParams,
};
pub use symmetry::test_symmetry;
pub use triangle::test_triangle_freeness;

use crate::qstate::CopyLedger;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn is_accept(self) -> bool {
        self == Decision::Accept
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TesterVerdict {
    pub decision: Decision,
    /// The tester's estimate: `p̂`, `v̂`, mean `μ̂` or the MM `p̂`.
    pub statistic: f64,
    pub copies_used: u64,
    /// Triangle-freeness only; zero elsewhere.
    pub aborted_iterations: u64,
    pub diagnostics: BTreeMap<String, f64>,
    pub flags: Vec<String>,
}

impl TesterVerdict {
    fn new(decision: Decision, statistic: f64, ledger: &CopyLedger) -> Self {
        Self {
            decision,
            statistic,
            copies_used: ledger.consumed(),
            aborted_iterations: 0,
            diagnostics: BTreeMap::new(),
            flags: Vec::new(),
        }
    }

    fn diag(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }
}
