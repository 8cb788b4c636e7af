//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when a
//! gating criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::*;
use flag_einstein::curvature::{
    einstein_residual, kaehler_einstein_metric, metric_variables, ricci, symbolic_ricci, InvariantMetric,
};
use flag_einstein::isotropy::triple_tensor;
use flag_einstein::polyalg::text::parse_poly;
use flag_einstein::polyalg::{Budget, LaurentPoly, UniPoly};
use flag_einstein::rational::{self, q, Rational};
use flag_einstein::rootsys::RootSystem;
use flag_einstein::solver::general::{general_default_budget, is_palindromic, solve_general_case};
use flag_einstein::solver::pipeline::classification;
use flag_einstein::solver::{solve_symmetric_ansatz, AnsatzOutcome, CaseStatus, OracleConfig, SolutionSet};

type Verdict = Result<String, String>;

struct Suite {
    failures: Vec<&'static str>,
}

impl Suite {
    fn report(&mut self, id: &'static str, gating: bool, limit: Option<Duration>, f: impl FnOnce() -> Verdict) {
        let t0 = Instant::now();
        let mut v = f();
        let took = t0.elapsed();
        if let (Ok(msg), Some(limit)) = (&v, limit) {
            if took > limit {
                v = Err(format!("{msg}; runtime {took:.2?} over {limit:?}"));
            }
        }
        let tag = if gating { "" } else { " [not gating]" };
        match v {
            Ok(msg) => println!("{id} PASS{tag} ({took:.2?}) {msg}"),
            Err(msg) => {
                println!("{id} FAIL{tag} ({took:.2?}) {msg}");
                if gating {
                    self.failures.push(id);
                }
            }
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g2() -> RootSystem {
    RootSystem::from_label("G2").unwrap()
}

fn ac1() -> Verdict {
    let records = triple_tensor(&g2()).records();
    let got: Vec<([usize; 3], String)> = records.into_iter().map(|r| (r.indices, r.value)).collect();
    let want = vec![
        ([1, 2, 3], "1/4".to_string()),
        ([1, 5, 6], "1/4".to_string()),
        ([2, 3, 4], "1/3".to_string()),
        ([2, 4, 5], "1/4".to_string()),
        ([3, 4, 6], "1/4".to_string()),
    ];
    check(got == want, || format!("got {got:?}"))?;
    Ok("[3;12]=[5;24]=[6;34]=[6;15]=1/4, [4;23]=1/3, no other entries".into())
}

fn ac2() -> Verdict {
    let sys = g2();
    let tensor = triple_tensor(&sys);
    let ke = kaehler_einstein_metric(&sys);
    let want: Vec<Rational> = [3, 1, 4, 5, 6, 9].iter().map(|&v| rational::int(v)).collect();
    check(ke.x == want, || format!("KE metric {:?}", ke.x))?;
    let r = ricci(&want, &tensor).map_err(|e| e.to_string())?.r;
    check(r.iter().all(|v| *v == q(1, 12)), || format!("r = {r:?}"))?;
    let (_, spread) = einstein_residual(&ke, &tensor).map_err(|e| e.to_string())?;
    check(spread.is_zero(), || format!("residual {spread}"))?;
    Ok("(3,1,4,5,6,9), every r_i = 1/12, residual 0".into())
}

/// `c (x_a/(x_b x_c) - x_b/(x_a x_c) - x_c/(x_a x_b))`, 1-based.
type Bracket = (i64, i64, usize, usize, usize);

const REFERENCE_RICCI: [&[Bracket]; 6] = [
    &[(1, 16, 1, 2, 3), (1, 16, 1, 5, 6)],
    &[(1, 16, 2, 1, 3), (1, 12, 2, 3, 4), (1, 16, 2, 4, 5)],
    &[(1, 16, 3, 1, 2), (1, 12, 3, 2, 4), (1, 16, 3, 4, 6)],
    &[(1, 12, 4, 2, 3), (1, 16, 4, 2, 5), (1, 16, 4, 3, 6)],
    &[(1, 16, 5, 1, 6), (1, 16, 5, 2, 4)],
    &[(1, 16, 6, 1, 5), (1, 16, 6, 3, 4)],
];

fn ac3() -> Verdict {
    let tensor = triple_tensor(&g2());
    let got = symbolic_ricci(&tensor).map_err(|e| e.to_string())?;
    let vars = metric_variables(6);
    let x = |i: usize| LaurentPoly::var(&vars, i - 1);
    let inv = |i: usize| x(i).recip().expect("monomial");
    for (i, brackets) in REFERENCE_RICCI.iter().enumerate() {
        let mut want = inv(i + 1).scale(&q(1, 2));
        for &(n, d, a, b, c) in brackets.iter() {
            let t = x(a)
                .mul(&inv(b))
                .mul(&inv(c))
                .sub(&x(b).mul(&inv(a)).mul(&inv(c)))
                .sub(&x(c).mul(&inv(a)).mul(&inv(b)));
            want = want.add(&t.scale(&q(n, d)));
        }
        check(want.sub(&got[i]).is_zero(), || format!("r{} differs: {} vs {want}", i + 1, got[i]))?;
        check(want.clear_denominators() == got[i].clear_denominators(), || {
            format!("r{} differs after clearing denominators", i + 1)
        })?;
    }
    Ok("all six r_i are identical as Laurent polynomials and after clearing denominators".into())
}

fn ac4(out: &AnsatzOutcome) -> Verdict {
    let text = data("g2_ansatz_eliminant.txt");
    let want = parse_poly(text.trim(), out.eliminant.vars()).map_err(|e| e.to_string())?;
    let want = UniPoly::from_multi(&want).map_err(|e| e.to_string())?;
    let got = UniPoly::from_multi(&out.eliminant).map_err(|e| e.to_string())?;
    check(got.degree() == 14, || format!("degree {}", got.degree()))?;
    // Compare integer-primitive forms with a positive leading coefficient.
    let norm = |p: &UniPoly| {
        let p = p.primitive();
        if p.leading() < Rational::zero() {
            p.scale(&-Rational::one())
        } else {
            p
        }
    };
    let (g, w) = (norm(&got), norm(&want));
    check(g.coeffs() == w.coeffs(), || format!("got {g}"))?;
    check(g.leading() == rational::int(28431) && g.coeffs()[0] == rational::int(3_888_000), || {
        "leading or constant coefficient differs".into()
    })?;
    Ok(format!("degree 14, all 15 integer coefficients match: {}", out.eliminant))
}

fn ac5(out: &AnsatzOutcome) -> Verdict {
    let mut sols: Vec<(Vec<f64>, f64, f64)> =
        out.solutions.iter().map(|s| (s.x_f64(), s.k.to_f64(), s.residual)).collect();
    sols.sort_by(|a, b| a.0[5].total_cmp(&b.0[5]));
    check(sols.len() == 2, || format!("{} positive solutions", sols.len()))?;
    let want = [(0.7440, 0.2173, 1.0234, 0.4269), (1.7896, 0.2762, 1.0347, 0.3560)];
    let mut lines = Vec::new();
    for ((x, k, res), (x6, x2, x3, kk)) in sols.iter().zip(want) {
        let close = (x[5] - x6).abs() < 1e-4
            && (x[1] - x2).abs() < 1e-4
            && (x[2] - x3).abs() < 1e-4
            && (x[3] - x3).abs() < 1e-4
            && (k - kk).abs() < 1e-4;
        check(close, || format!("solution {x:?} k={k} not within 1e-4 of {x6}, {x2}, {x3}, {kk}"))?;
        check(*res < 1e-10, || format!("residual {res:e}"))?;
        lines.push(format!("x6={:.4} x2={:.4} x3={:.4} k={:.4} res={res:.1e}", x[5], x[1], x[2], k));
    }
    Ok(lines.join("; "))
}

fn ac6(out: &AnsatzOutcome) -> Verdict {
    let got = UniPoly::from_multi(&out.degenerate_eliminant).map_err(|e| e.to_string())?.primitive();
    let want = UniPoly::from_i64(&[9, -20, 15]);
    let same = got.coeffs() == want.coeffs() || got.scale(&-Rational::one()).coeffs() == want.coeffs();
    check(same, || format!("got {}", out.degenerate_eliminant))?;
    check(out.degenerate_real_roots == 0, || format!("{} real roots", out.degenerate_real_roots))?;
    Ok("x6 = 1 gives 15*x2^2 - 20*x2 + 9, Sturm count 0 real roots".into())
}

fn ac7(set: &SolutionSet) -> Verdict {
    let kaehler = set.kaehler_classes();
    check(set.solutions.len() == 3 && kaehler == 1, || {
        format!("{} classes, {kaehler} Kähler", set.solutions.len())
    })?;
    let mut k: Vec<f64> = set.solutions.iter().filter(|s| !s.kaehler).map(|s| s.k.to_f64()).collect();
    k.sort_by(f64::total_cmp);
    check((k[0] - 0.3560).abs() < 1e-4 && (k[1] - 0.4269).abs() < 1e-4, || format!("non-Kähler k = {k:?}"))?;
    let search = set.cases.iter().find(|c| c.status == CaseStatus::Search).map(|c| c.name.clone());
    Ok(format!(
        "3 classes (1 Kähler, 2 non-Kähler, k = {:.4}, {:.4}); {}",
        k[0],
        k[1],
        search.unwrap_or_default()
    ))
}

fn ac8() -> Verdict {
    let a2 = RootSystem::from_label("A2").unwrap();
    let ta2 = triple_tensor(&a2);
    let normal = |n: usize| InvariantMetric::new(vec![Rational::one(); n]).unwrap();
    let (_, s) = einstein_residual(&normal(3), &ta2).map_err(|e| e.to_string())?;
    check(s.is_zero(), || format!("A2 normal residual {s}"))?;
    let ke = kaehler_einstein_metric(&a2);
    let want: Vec<Rational> = [1, 1, 2].iter().map(|&v| rational::int(v)).collect();
    check(ke.x == want, || format!("A2 KE {:?}", ke.x))?;
    let (_, s) = einstein_residual(&normal(6), &triple_tensor(&g2())).map_err(|e| e.to_string())?;
    check(s == q(1, 12), || format!("G2 normal residual {s}"))?;
    Ok("A2 normal residual 0, A2 KE (1,1,2), G2 normal residual 1/12".into())
}

fn run_property<S: proptest::strategy::Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Check,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |v| test(v).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

fn ac9() -> Verdict {
    use proptest::prelude::*;
    let seeds = || prop::collection::vec(positive_rational(), 1..6);
    run_property("Killing identity", (group(), 0usize..200), |(g, i)| killing_identity(g, i))?;
    run_property(
        "triple symmetry and Weyl invariance",
        (group(), 0usize..64, 0usize..64, 0usize..64, 0usize..10_000),
        |(g, i, j, k, w)| triple_symmetry(g, i, j, k, w),
    )?;
    run_property("Ricci homogeneity", (group(), seeds(), positive_rational()), |(g, s, c)| {
        ricci_homogeneity(g, &s, &c)
    })?;
    run_property("Weyl equivariance", (group(), seeds(), 0usize..10_000), |(g, s, w)| {
        weyl_equivariance(g, &s, w)
    })?;
    run_property("Groebner self-reduction", small_system(), |(gens, lex)| {
        groebner_self_reduction(&gens, lex)
    })?;
    run_property("Sturm certification", rational_roots(), |(r, quad)| {
        sturm_isolation(&poly_with_roots(&r, quad))
    })?;
    Ok("6 suites x 200 cases".into())
}

fn parse_budget(s: &str) -> Option<Budget> {
    let mut b = general_default_budget();
    let (pairs, bits) = s.split_once('/').map_or((s, None), |(p, q)| (p, Some(q)));
    b.max_pairs = pairs.trim().parse().ok()?;
    if let Some(q) = bits {
        b.max_coeff_bits = q.trim().parse().ok()?;
    }
    Some(b)
}

fn ac10(ac7_passed: bool) -> Verdict {
    let budget = std::env::var("FLAG_EINSTEIN_BUDGET")
        .ok()
        .and_then(|s| parse_budget(&s))
        .unwrap_or_else(general_default_budget);
    let out = solve_general_case(&g2(), &budget).map_err(|e| e.to_string())?;
    if out.case.status == CaseStatus::BudgetExceeded {
        let why = out.budget_status.clone().unwrap_or_default();
        check(ac7_passed, || format!("budget exceeded ({why}) and AC7 failed"))?;
        return Ok(format!(
            "budget branch: status {} ({why}); AC7 passes. Exact elimination not reproduced",
            out.case.status.as_str()
        ));
    }
    let want_roots = [q(1, 3), q(1, 2), q(2, 3), q(3, 2), rational::int(2), rational::int(3)];
    let mut roots = out.rational_roots.clone();
    roots.sort();
    check(roots == want_roots, || format!("rational roots {roots:?}"))?;
    let factor = out.irrational_factor.clone().ok_or("no irrational factor")?;
    check(factor.degree() == 84 && is_palindromic(&factor), || {
        format!("factor of degree {} (palindromic: {})", factor.degree(), is_palindromic(&factor))
    })?;
    let reference: Vec<Rational> = data_lines("g2_general_factor84.txt")
        .iter()
        .rev()
        .map(|l| rational::parse(l).expect("integer"))
        .collect();
    let reference = UniPoly::new(reference).primitive();
    let same = factor.coeffs() == reference.coeffs() || factor.scale(&-Rational::one()).coeffs() == reference.coeffs();
    check(same, || "degree-84 factor differs from the reference factor".into())?;
    let mut x6: Vec<f64> = out.rejected.iter().map(|p| p.midpoint()[4]).collect();
    x6.sort_by(f64::total_cmp);
    let listed: Vec<f64> = data_lines("g2_general_positive_roots.txt").iter().map(|l| l.parse().unwrap()).collect();
    check(x6.len() == 14 && out.solutions.iter().all(|s| s.is_exact()), || {
        format!("{} rejected roots, {} solutions", x6.len(), out.solutions.len())
    })?;
    for (a, b) in x6.iter().zip(&listed) {
        check((a - b).abs() < 1e-10, || format!("root {a} vs listed {b}"))?;
    }
    Ok("six linear factors, palindromic degree-84 factor, 14 positive roots all rejected".into())
}

fn main() {
    let mut suite = Suite { failures: Vec::new() };
    let second = Duration::from_secs(1);
    suite.report("AC1", true, Some(second), ac1);
    suite.report("AC2", true, Some(second), ac2);
    suite.report("AC3", true, Some(Duration::from_secs(10)), ac3);

    let t0 = Instant::now();
    let ansatz = solve_symmetric_ansatz(&g2(), &Budget::default());
    let ansatz_time = t0.elapsed();
    match &ansatz {
        Ok(out) => {
            suite.report("AC4", true, None, || {
                let msg = ac4(out)?;
                let limit = Duration::from_secs(60);
                check(ansatz_time <= limit, || format!("ansatz pipeline took {ansatz_time:.2?}"))?;
                Ok(format!("{msg} (pipeline {ansatz_time:.2?})"))
            });
            suite.report("AC5", true, None, || ac5(out));
            suite.report("AC6", true, None, || ac6(out));
        }
        Err(e) => {
            for id in ["AC4", "AC5", "AC6"] {
                suite.report(id, true, None, || Err(format!("ansatz pipeline failed: {e}")));
            }
        }
    }

    let cfg = OracleConfig {
        starts: 100_000,
        seed: 1,
        ..OracleConfig::default()
    };
    let mut ac7_passed = false;
    suite.report("AC7", true, Some(Duration::from_secs(600)), || {
        let set = classification(&g2(), &Budget::default(), &general_default_budget(), &cfg)
            .map_err(|e| e.to_string())?;
        let v = ac7(&set);
        ac7_passed = v.is_ok();
        v
    });
    suite.report("AC8", true, None, ac8);
    suite.report("AC9", true, None, ac9);
    suite.report("AC10", false, None, || ac10(ac7_passed));

    if suite.failures.is_empty() {
        println!("acceptance: all gating criteria pass");
    } else {
        println!("acceptance: failing {}", suite.failures.join(", "));
        std::process::exit(1);
    }
}
