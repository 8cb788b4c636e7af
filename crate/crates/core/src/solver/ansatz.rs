//! The `G2/T` ansatz `x1 = x5 = 1`, `x4 = x3`.

use crate::error::{Error, Result};
use crate::isotropy::{triple_tensor, TripleTensor};
use crate::polyalg::groebner::{buchberger, saturate, Budget, GroebnerBasis};
use crate::polyalg::sturm::{isolate_positive_roots, isolate_real_roots, SturmSequence, UniPoly};
use crate::polyalg::{MultiPoly, OrderKind, TermOrder};
use crate::rational::{self, Rational};
use crate::rootsys::{LieType, RootSystem};

use super::classify::{EinsteinSolution, Provenance};
use super::system::{build_system, EinsteinSystem, Normalization};
use super::triangular::{CertifiedPoint, ShapeBasis};
use super::{CaseReport, CaseStatus};

/// Width of the rational boxes around back-substituted coordinates.
pub fn certificate_width() -> Rational {
    rational::q(1, 1_000_000_000_000_000)
}

pub fn ansatz_normalization() -> Normalization {
    Normalization::gauge()
        .fixed(4, Rational::from_integer(1.into()))
        .equal(3, 2)
}

#[derive(Clone, Debug)]
pub struct AnsatzOutcome {
    /// Equations in `(x2, x3, x6)`.
    pub system: EinsteinSystem,
    /// Lex basis (`x3 > x2 > x6`) of the branch `x6 = 1`.
    pub degenerate_basis: GroebnerBasis,
    /// Its eliminant in `x2`.
    pub degenerate_eliminant: MultiPoly,
    pub degenerate_real_roots: usize,
    /// Lex basis (`x2 > x3 > x6`) of the branch `x6 != 1`.
    pub basis: GroebnerBasis,
    pub eliminant: MultiPoly,
    pub real_roots: usize,
    /// Certified positive solutions `(x2, x3, x6)`.
    pub points: Vec<CertifiedPoint>,
    pub cases: Vec<CaseReport>,
    pub solutions: Vec<EinsteinSolution>,
    /// `x3 - x4` lies in the saturated ideal of the `x1 = x5 = 1` system.
    pub x3_equals_x4: bool,
}

fn require_g2(sys: &RootSystem) -> Result<()> {
    if sys.lie_type() != LieType::G2 {
        return Err(Error::domain(format!(
            "the ansatz case analysis is specific to G2, not {}",
            sys.label()
        )));
    }
    Ok(())
}

pub fn solve_symmetric_ansatz(sys: &RootSystem, budget: &Budget) -> Result<AnsatzOutcome> {
    require_g2(sys)?;
    let tensor = triple_tensor(sys);
    let system = build_system(&tensor, &ansatz_normalization())?;
    let vars = system.vars.clone();
    let (x2, x6) = (0, 2);
    let one = MultiPoly::one(&vars);
    let x6m1 = &MultiPoly::var(&vars, x6) - &one;

    // Branch x6 = 1.
    let mut gens = system.polynomials.clone();
    gens.push(x6m1.clone());
    let order = TermOrder::new(OrderKind::Lex, vec![1, 0, 2])?;
    let degenerate_basis = saturate(&gens, &system.saturation, &order, budget)?;
    let degenerate_eliminant = degenerate_basis
        .univariate_in(x2)
        .first()
        .map(|p| (*p).clone())
        .ok_or_else(|| Error::Invariant("x6 = 1 branch has no eliminant in x2".into()))?;
    let degenerate_real_roots =
        SturmSequence::new(&UniPoly::from_multi(&degenerate_eliminant)?).count_all();

    // Branch x6 != 1.
    let mut nonzero = system.saturation.clone();
    nonzero.push(x6m1);
    let basis = saturate(&system.polynomials, &nonzero, &TermOrder::lex(3), budget)?;
    let shape = ShapeBasis::from_basis(&basis, x6)?;
    let eliminant = basis.univariate_in(x6)[0].clone();
    let real_roots = isolate_real_roots(&shape.eliminant, None)?.len();
    let width = certificate_width();
    let mut points = Vec::new();
    for root in isolate_positive_roots(&shape.eliminant)? {
        let p = shape.certify(&root, &width)?;
        if p.has_nonpositive() {
            continue;
        }
        if !p.is_positive() || !p.consistent_with(&system.polynomials) {
            return Err(Error::Invariant("uncertified ansatz solution".into()));
        }
        points.push(p);
    }

    let solutions = points
        .iter()
        .map(|p| solution_from_point(&system, &tensor, &p.midpoint()))
        .collect::<Result<Vec<_>>>()?;

    let cases = vec![
        CaseReport {
            name: "x1=x5=1, x4=x3, x6=1".into(),
            elimination_degree: Some(degenerate_eliminant.total_degree() as usize),
            real_roots: Some(degenerate_real_roots),
            positive_roots: Some(
                isolate_positive_roots(&UniPoly::from_multi(&degenerate_eliminant)?)?.len(),
            ),
            status: CaseStatus::Solved,
        },
        CaseReport {
            name: "x1=x5=1, x4=x3, x6!=1".into(),
            elimination_degree: Some(shape.eliminant.degree()),
            real_roots: Some(real_roots),
            positive_roots: Some(points.len()),
            status: CaseStatus::Solved,
        },
    ];
    let x3_equals_x4 = ansatz_forces_x3_eq_x4(sys, budget)?;
    if !x3_equals_x4 {
        return Err(Error::Invariant("x1 = x5 = 1 does not force x3 = x4".into()));
    }
    Ok(AnsatzOutcome {
        x3_equals_x4,
        system,
        degenerate_basis,
        degenerate_eliminant,
        degenerate_real_roots,
        basis,
        eliminant,
        real_roots,
        points,
        cases,
        solutions,
    })
}

fn solution_from_point(
    system: &EinsteinSystem,
    tensor: &TripleTensor,
    free: &[f64],
) -> Result<EinsteinSolution> {
    let x = system.expand_f64(free);
    let s = EinsteinSolution::numeric(x, Provenance::Algebraic, tensor)?;
    if s.residual >= 1e-10 {
        return Err(Error::Invariant(format!(
            "back-substituted solution has Ricci spread {:e}",
            s.residual
        )));
    }
    Ok(s)
}

/// Whether `x3 - x4` lies in the ideal of the `x1 = x5 = 1` equations
/// saturated by `x2 x3 x4 x6 (x6 - 1)`.
pub fn ansatz_forces_x3_eq_x4(sys: &RootSystem, budget: &Budget) -> Result<bool> {
    require_g2(sys)?;
    let tensor = triple_tensor(sys);
    let norm = Normalization::gauge().fixed(4, Rational::from_integer(1.into()));
    let system = build_system(&tensor, &norm)?;
    let vars = &system.vars;
    let idx = |name: &str| vars.iter().position(|v| v == name).expect("variable present");
    let (x3, x4, x6) = (idx("x3"), idx("x4"), idx("x6"));
    let mut nonzero = system.saturation.clone();
    nonzero.push(&MultiPoly::var(vars, x6) - &MultiPoly::one(vars));
    let gb = saturate(&system.polynomials, &nonzero, &TermOrder::grevlex(vars.len()), budget)?;
    let diff = &MultiPoly::var(vars, x3) - &MultiPoly::var(vars, x4);
    Ok(gb.reduces_to_zero(&diff))
}

/// Lex basis of arbitrary generators, for callers that only need the basis.
pub fn lex_basis(gens: &[MultiPoly], budget: &Budget) -> Result<GroebnerBasis> {
    let n = gens
        .first()
        .map(|g| g.nvars())
        .ok_or_else(|| Error::domain("empty generator list"))?;
    buchberger(gens, &TermOrder::lex(n), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_ansatz_cases() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let out = solve_symmetric_ansatz(&g2, &Budget::default()).unwrap();
        assert_eq!(out.degenerate_eliminant.to_string(), "15*x2^2 - 20*x2 + 9");
        assert_eq!(out.degenerate_real_roots, 0);
        assert_eq!(out.eliminant.total_degree(), 14);
        assert_eq!(out.points.len(), 2);
        assert!(out.x3_equals_x4);
        let expect = [
            ([1.0, 0.2173, 1.0234, 1.0234, 1.0, 0.7440], 0.4269),
            ([1.0, 0.2762, 1.0347, 1.0347, 1.0, 1.7896], 0.3560),
        ];
        let mut got: Vec<_> = out.solutions.iter().map(|s| (s.x_f64(), s.k.to_f64())).collect();
        got.sort_by(|a, b| a.0[5].total_cmp(&b.0[5]));
        for ((x, k), (ex, ek)) in got.iter().zip(expect) {
            for (a, b) in x.iter().zip(ex) {
                assert!((a - b).abs() < 1e-4, "{x:?}");
            }
            assert!((k - ek).abs() < 1e-4);
        }
    }

    #[test]
    fn rejects_other_groups() {
        let a2 = RootSystem::from_label("A2").unwrap();
        assert!(solve_symmetric_ansatz(&a2, &Budget::default()).is_err());
    }
}
