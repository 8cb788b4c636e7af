//! Einstein systems, the `G2/T` case analysis, the Newton oracle and
//! isometry classification.

pub mod ansatz;
pub mod classify;
pub mod general;
pub mod newton;
pub mod pipeline;
pub mod report;
pub mod system;
pub mod triangular;

pub use ansatz::{solve_symmetric_ansatz, AnsatzOutcome};
pub use classify::{classify, EinsteinSolution, Provenance, Scalar};
pub use newton::{newton_oracle, OracleConfig, OracleResult};
pub use system::{build_system, Assignment, EinsteinSystem, Normalization, Slot};
pub use triangular::{CertifiedPoint, ShapeBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseStatus {
    Solved,
    /// Elimination ran out of budget; counts are unknown.
    BudgetExceeded,
    /// Numeric search: no completeness claim.
    Search,
}

impl CaseStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseStatus::Solved => "solved",
            CaseStatus::BudgetExceeded => "budgetExceeded",
            CaseStatus::Search => "search",
        }
    }
}

/// Summary of one branch of the case tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub name: String,
    pub elimination_degree: Option<usize>,
    pub real_roots: Option<usize>,
    pub positive_roots: Option<usize>,
    pub status: CaseStatus,
}

/// Classified solutions plus the log of the cases that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub group: String,
    pub normalization: String,
    pub cases: Vec<CaseReport>,
    pub solutions: Vec<EinsteinSolution>,
}

impl SolutionSet {
    pub fn kaehler_classes(&self) -> usize {
        self.solutions.iter().filter(|s| s.kaehler).count()
    }

    pub fn budget_exceeded(&self) -> bool {
        self.cases.iter().any(|c| c.status == CaseStatus::BudgetExceeded)
    }
}
