//! The `G2/T` case `(x1 - x5)(x1 - x6)(x5 - x6) != 0` in the gauge `x1 = 1`.
//!
//! Elimination is multi-modular: the saturated ideal is brought into shape
//! position with respect to `x6` modulo word-size primes and lifted to `Q`.
//! The lift is then checked exactly: substituting the parametrisation into
//! every equation gives zero modulo the eliminant, so each root of the
//! eliminant is a solution.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isotropy::triple_tensor;
use crate::polyalg::sturm::{isolate_positive_roots, isolate_real_roots, UniPoly};
use crate::polyalg::{lift_shape, Budget, LiftedShape, MultiPoly, TermOrder};
use crate::rational::{self, Rational};
use crate::rootsys::{LieType, RootSystem};

use super::ansatz::certificate_width;
use super::classify::{EinsteinSolution, Provenance};
use super::system::{build_system, EinsteinSystem, Normalization};
use super::triangular::{CertifiedPoint, ShapeBasis};
use super::{CaseReport, CaseStatus};

pub const CASE_NAME: &str = "x1=1, (x1-x5)(x1-x6)(x5-x6)!=0";

/// Default per-prime budget. Completing this case needs far more pairs than
/// a desk run can afford, so the default stops early and deterministically.
pub fn general_default_budget() -> Budget {
    Budget {
        max_pairs: 60,
        max_coeff_bits: 4096,
    }
}

#[derive(Clone, Debug)]
pub struct GeneralOutcome {
    pub system: EinsteinSystem,
    pub case: CaseReport,
    /// Present when elimination finished within budget.
    pub shape: Option<LiftedShape>,
    /// Rational roots of the eliminant in `x6`.
    pub rational_roots: Vec<Rational>,
    /// Eliminant with the rational roots divided out, integer-primitive.
    pub irrational_factor: Option<UniPoly>,
    /// Certified positive roots of the irrational factor whose solution has
    /// a nonpositive coordinate.
    pub rejected: Vec<CertifiedPoint>,
    /// Positive solutions (gauge `x1 = 1`).
    pub solutions: Vec<EinsteinSolution>,
    /// Why elimination stopped, when it did not finish.
    pub budget_status: Option<String>,
}

fn require_g2(sys: &RootSystem) -> Result<()> {
    if sys.lie_type() != LieType::G2 {
        return Err(Error::domain(format!(
            "the general case analysis is specific to G2, not {}",
            sys.label()
        )));
    }
    Ok(())
}

/// The system in `(x2, ..., x6)` and the polynomials assumed nonzero.
pub fn general_system(sys: &RootSystem) -> Result<(EinsteinSystem, Vec<MultiPoly>)> {
    require_g2(sys)?;
    let tensor = triple_tensor(sys);
    let system = build_system(&tensor, &Normalization::gauge())?;
    let v = &system.vars;
    let one = MultiPoly::one(v);
    let x5 = MultiPoly::var(v, 3);
    let x6 = MultiPoly::var(v, 4);
    let mut nonzero = system.saturation.clone();
    nonzero.push(&one - &x5);
    nonzero.push(&one - &x6);
    nonzero.push(&x5 - &x6);
    Ok((system, nonzero))
}

/// Rational roots of `p`, found as the simplest rational inside each
/// isolating interval and confirmed by exact evaluation.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let width = rational::q(1, 1_000_000_000_000);
    for root in isolate_real_roots(p, None)? {
        let r = root.refined(&width);
        let c = rational::simplest_in(&r.lo, &r.hi);
        if p.eval(&c).is_zero() {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn solve_general_case(sys: &RootSystem, budget: &Budget) -> Result<GeneralOutcome> {
    let (system, nonzero) = general_system(sys)?;
    let tensor = triple_tensor(sys);
    let x6 = 4;
    let lifted = match lift_shape(&system.polynomials, &nonzero, &TermOrder::grevlex(5), x6, budget) {
        Ok(l) => l,
        Err(Error::BudgetExceeded(partial)) => {
            return Ok(GeneralOutcome {
                system,
                case: CaseReport {
                    name: CASE_NAME.into(),
                    elimination_degree: None,
                    real_roots: None,
                    positive_roots: None,
                    status: CaseStatus::BudgetExceeded,
                },
                shape: None,
                rational_roots: Vec::new(),
                irrational_factor: None,
                rejected: Vec::new(),
                solutions: Vec::new(),
                budget_status: Some(format!(
                    "{} after {} pairs",
                    partial.reason, partial.pairs_processed
                )),
            })
        }
        Err(e) => return Err(e),
    };
    for f in &system.polynomials {
        if !lifted.residue(f)?.is_zero() {
            return Err(Error::Invariant(
                "lifted parametrisation does not satisfy the equations".into(),
            ));
        }
    }

    let h = lifted.eliminant.primitive();
    let roots = rational_roots(&h)?;
    let mut solutions = Vec::new();
    let mut factor = h.clone();
    for r in &roots {
        let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
        factor = factor.div_rem(&lin).0;
        let mut free: Vec<Rational> = vec![Rational::one(); 5];
        free[x6] = r.clone();
        for (v, g) in &lifted.rows {
            free[*v] = g.eval(r);
        }
        if free.iter().all(Signed::is_positive) {
            solutions.push(EinsteinSolution::exact(system.expand_exact(&free), &tensor)?);
        }
    }
    let factor = factor.primitive();

    let shape = ShapeBasis::from_parametrisation(x6, factor.clone(), &lifted.rows);
    let width = certificate_width();
    let mut rejected = Vec::new();
    let positive = isolate_positive_roots(&factor)?;
    for root in &positive {
        let p = shape.certify(root, &width)?;
        if p.has_nonpositive() {
            rejected.push(p);
        } else if p.is_positive() {
            let x = system.expand_f64(&p.midpoint());
            solutions.push(EinsteinSolution::numeric(x, Provenance::Algebraic, &tensor)?);
        } else {
            return Err(Error::Invariant("a coordinate box straddles zero".into()));
        }
    }
    let real = isolate_real_roots(&h, None)?.len();
    let positive_total = isolate_positive_roots(&h)?.len();
    Ok(GeneralOutcome {
        system,
        case: CaseReport {
            name: CASE_NAME.into(),
            elimination_degree: Some(h.degree()),
            real_roots: Some(real),
            positive_roots: Some(positive_total),
            status: CaseStatus::Solved,
        },
        shape: Some(lifted),
        rational_roots: roots,
        irrational_factor: Some(factor),
        rejected,
        solutions,
        budget_status: None,
    })
}

/// Whether the coefficient list reads the same in both directions.
pub fn is_palindromic(p: &UniPoly) -> bool {
    let c = p.coeffs();
    c.iter().eq(c.iter().rev())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn rational_roots_of_products() {
        // (x - 3)(2x - 1)(x^2 - 2)
        let p = UniPoly::new(vec![q(-3, 1), q(1, 1)])
            .mul(&UniPoly::new(vec![q(-1, 1), q(2, 1)]))
            .mul(&UniPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(rational_roots(&p).unwrap(), vec![q(1, 2), q(3, 1)]);
        assert!(rational_roots(&UniPoly::from_i64(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn palindromes() {
        assert!(is_palindromic(&UniPoly::from_i64(&[2, 5, 2])));
        assert!(!is_palindromic(&UniPoly::from_i64(&[1, 5, 2])));
    }

    #[test]
    fn default_budget_stops_deterministically() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let a = solve_general_case(&g2, &general_default_budget()).unwrap();
        let b = solve_general_case(&g2, &general_default_budget()).unwrap();
        assert_eq!(a.case.status, CaseStatus::BudgetExceeded);
        assert_eq!(a.budget_status, b.budget_status);
        assert!(a.solutions.is_empty() && a.shape.is_none());
    }

    #[test]
    fn system_and_nonvanishing_factors() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let (sys, nonzero) = general_system(&g2).unwrap();
        assert_eq!(sys.vars.join(","), "x2,x3,x4,x5,x6");
        assert_eq!(nonzero.len(), sys.saturation.len() + 3);
        assert!(general_system(&RootSystem::from_label("B2").unwrap()).is_err());
    }
}
