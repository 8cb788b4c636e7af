//! End-to-end runs: the symmetric ansatz, the general case, the oracle
//! search, and the combined `G2` classification.

use crate::curvature::kaehler_einstein_metric;
use crate::error::Result;
use crate::isotropy::triple_tensor;
use crate::polyalg::Budget;
use crate::rootsys::{LieType, RootSystem};

use super::ansatz::{ansatz_normalization, solve_symmetric_ansatz};
use super::classify::{classify, EinsteinSolution, Provenance};
use super::general::solve_general_case;
use super::newton::{newton_oracle, OracleConfig};
use super::system::{build_system, Normalization};
use super::{CaseReport, CaseStatus, SolutionSet};

/// Relative distance under which two metrics count as the same class.
pub const CLASS_TOL: f64 = 1e-6;

/// The Weyl orbit of the Kähler–Einstein metric, exactly, in the gauge
/// `x1 = 1`.
pub fn kaehler_orbit(sys: &RootSystem) -> Result<Vec<EinsteinSolution>> {
    let tensor = triple_tensor(sys);
    let base = EinsteinSolution::exact(kaehler_einstein_metric(sys).x, &tensor)?;
    let mut out: Vec<EinsteinSolution> = Vec::new();
    for p in sys.weyl_orbit_permutations()? {
        let s = base.permuted(&p).in_gauge(0);
        if !out.iter().any(|o| o.x == s.x) {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn symmetric_solution_set(sys: &RootSystem, budget: &Budget) -> Result<SolutionSet> {
    let out = solve_symmetric_ansatz(sys, budget)?;
    Ok(SolutionSet {
        group: sys.label(),
        normalization: ansatz_normalization().to_string(),
        cases: out.cases,
        solutions: classify(out.solutions, sys, CLASS_TOL)?,
    })
}

/// General case; when elimination runs out of budget the oracle covers the
/// region instead and the case is marked accordingly.
pub fn general_solution_set(sys: &RootSystem, budget: &Budget, cfg: &OracleConfig) -> Result<SolutionSet> {
    let out = solve_general_case(sys, budget)?;
    let mut cases = vec![out.case.clone()];
    let mut solutions = out.solutions;
    if out.case.status == CaseStatus::BudgetExceeded {
        let (case, found) = oracle_search(sys, cfg)?;
        cases.push(case);
        solutions.extend(found);
    }
    Ok(SolutionSet {
        group: sys.label(),
        normalization: Normalization::gauge().to_string(),
        cases,
        solutions: classify(solutions, sys, CLASS_TOL)?,
    })
}

fn oracle_search(sys: &RootSystem, cfg: &OracleConfig) -> Result<(CaseReport, Vec<EinsteinSolution>)> {
    let tensor = triple_tensor(sys);
    let system = build_system(&tensor, &Normalization::gauge())?;
    let perms = sys.weyl_orbit_permutations()?;
    let res = newton_oracle(&system, &tensor, &perms, cfg)?;
    let found = res
        .classes
        .iter()
        .map(|c| EinsteinSolution::numeric(c.x.clone(), Provenance::Numeric, &tensor))
        .collect::<Result<Vec<_>>>()?;
    let case = CaseReport {
        name: format!("newton x1=1, {} starts, seed {}", cfg.starts, cfg.seed),
        elimination_degree: None,
        real_roots: None,
        positive_roots: Some(found.len()),
        status: CaseStatus::Search,
    };
    Ok((case, found))
}

/// Oracle-only run for any group; a search, not a classification.
pub fn oracle_solution_set(sys: &RootSystem, cfg: &OracleConfig) -> Result<SolutionSet> {
    let (case, found) = oracle_search(sys, cfg)?;
    Ok(SolutionSet {
        group: sys.label(),
        normalization: Normalization::gauge().to_string(),
        cases: vec![case],
        solutions: classify(found, sys, CLASS_TOL)?,
    })
}

/// Everything combined: the Kähler–Einstein orbit, both ansatz branches,
/// the general case and the oracle. For `G2` this is the full case tree.
/// `general` bounds the general case, `budget` the ansatz.
pub fn classification(
    sys: &RootSystem,
    budget: &Budget,
    general: &Budget,
    cfg: &OracleConfig,
) -> Result<SolutionSet> {
    let mut cases = Vec::new();
    let mut solutions = kaehler_orbit(sys)?;
    if sys.lie_type() == LieType::G2 {
        let ansatz = solve_symmetric_ansatz(sys, budget)?;
        cases.extend(ansatz.cases);
        solutions.extend(ansatz.solutions);
        let general = solve_general_case(sys, general)?;
        cases.push(general.case);
        solutions.extend(general.solutions);
    }
    let (case, found) = oracle_search(sys, cfg)?;
    cases.push(case);
    solutions.extend(found);
    Ok(SolutionSet {
        group: sys.label(),
        normalization: Normalization::gauge().to_string(),
        cases,
        solutions: classify(solutions, sys, CLASS_TOL)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{self, q};

    #[test]
    fn g2_kaehler_orbit_is_six_rational_metrics() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let orbit = kaehler_orbit(&g2).unwrap();
        let mut x6: Vec<_> = orbit.iter().map(|s| s.x[5].clone()).collect();
        x6.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
        let want = [q(1, 3), q(1, 2), q(2, 3), q(3, 2), rational::int(2), rational::int(3)];
        assert_eq!(x6.len(), 6);
        for (a, b) in x6.iter().zip(want) {
            assert_eq!(*a, crate::solver::Scalar::Exact(b));
        }
        assert!(orbit.iter().all(|s| s.residual == 0.0));
    }

    #[test]
    fn a2_oracle_finds_normal_and_kaehler() {
        let a2 = RootSystem::from_label("A2").unwrap();
        let cfg = OracleConfig {
            starts: 500,
            ..OracleConfig::default()
        };
        let set = oracle_solution_set(&a2, &cfg).unwrap();
        assert_eq!(set.solutions.len(), 2);
        assert_eq!(set.kaehler_classes(), 1);
        let normal = set.solutions.iter().find(|s| !s.kaehler).unwrap();
        assert!(normal.x_f64().iter().all(|v| (v - 1.0).abs() < 1e-9));
    }
}
