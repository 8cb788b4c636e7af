//! Shared fixtures and property checks for the integration targets.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use flag_einstein::curvature::{self, permute};
use flag_einstein::isotropy::{triple_tensor, TripleTensor};
use flag_einstein::polyalg::groebner::s_polynomial;
use flag_einstein::polyalg::sturm::SturmSequence;
use flag_einstein::polyalg::{
    buchberger, isolate_real_roots, variables, Budget, Monomial, MultiPoly, TermOrder, UniPoly,
};
use flag_einstein::rational::{self, Rational};
use flag_einstein::rootsys::RootSystem;

pub const GROUPS: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"];

pub struct Fixture {
    pub sys: RootSystem,
    pub tensor: TripleTensor,
    pub perms: Vec<Vec<usize>>,
}

/// Root system, triple tensor and Weyl permutations, built once per label.
pub fn fixture(label: &str) -> Arc<Fixture> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Fixture>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut map = cache.lock().unwrap();
    map.entry(label.to_string())
        .or_insert_with(|| {
            let sys = RootSystem::from_label(label).unwrap();
            let tensor = triple_tensor(&sys);
            let perms = sys.weyl_orbit_permutations().unwrap();
            Arc::new(Fixture { sys, tensor, perms })
        })
        .clone()
}

pub fn data(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Non-comment, non-blank lines of a data file.
pub fn data_lines(name: &str) -> Vec<String> {
    data(name)
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

pub fn group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(GROUPS)
}

/// Positive rationals `n/d` with `n, d` in `1..=50`.
pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=50, 1i64..=50).prop_map(|(n, d)| rational::q(n, d))
}

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Σ_{β∈R} Q(α,β)² = Q(α,α)` for the root with index `pick` (mod |R|).
pub fn killing_identity(label: &str, pick: usize) -> Check {
    let f = fixture(label);
    let roots = f.sys.roots();
    let a = &roots[pick % roots.len()];
    let sum: BigRational = roots.iter().map(|b| {
        let q = f.sys.inner(a, b);
        &q * &q
    }).sum();
    ensure(sum == f.sys.norm2(a), || format!("{label}: identity fails at {a}"))?;
    ensure(flag_einstein::rootsys::is_positive_definite(&f.sys.killing_form().gram), || {
        format!("{label}: Gram matrix not positive definite")
    })
}

/// Full symmetry of `[k; ij]` and invariance under the Weyl permutation
/// with index `w`.
pub fn triple_symmetry(label: &str, i: usize, j: usize, k: usize, w: usize) -> Check {
    let f = fixture(label);
    let s = f.tensor.size();
    if s == 0 {
        return Ok(());
    }
    let (i, j, k) = (i % s, j % s, k % s);
    let v = f.tensor.get(i, j, k);
    for (a, b, c) in [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
        ensure(f.tensor.get(a, b, c) == v, || format!("{label}: asymmetric at {i},{j},{k}"))?;
    }
    let p = &f.perms[w % f.perms.len()];
    ensure(f.tensor.get(p[i], p[j], p[k]) == v, || {
        format!("{label}: not Weyl invariant at {i},{j},{k} under {p:?}")
    })
}

fn metric(label: &str, seed: &[Rational]) -> Vec<Rational> {
    let s = fixture(label).tensor.size();
    (0..s).map(|i| seed[i % seed.len()].clone() + rational::int(i as i64 % 3)).collect()
}

/// `r(c x) = r(x) / c`, exactly.
pub fn ricci_homogeneity(label: &str, seed: &[Rational], c: &Rational) -> Check {
    let f = fixture(label);
    let x = metric(label, seed);
    let cx: Vec<Rational> = x.iter().map(|v| v * c).collect();
    let r = curvature::ricci(&x, &f.tensor).map_err(|e| e.to_string())?.r;
    let rc = curvature::ricci(&cx, &f.tensor).map_err(|e| e.to_string())?.r;
    for (a, b) in r.iter().zip(&rc) {
        ensure(*b == a / c, || format!("{label}: homogeneity fails for c = {c}"))?;
    }
    Ok(())
}

/// Ricci components commute with the Weyl permutation with index `w`, so
/// permuting an Einstein metric gives an Einstein metric.
pub fn weyl_equivariance(label: &str, seed: &[Rational], w: usize) -> Check {
    let f = fixture(label);
    let p = &f.perms[w % f.perms.len()];
    let x = metric(label, seed);
    let r = curvature::ricci(&x, &f.tensor).map_err(|e| e.to_string())?.r;
    let rp = curvature::ricci(&permute(&x, p), &f.tensor).map_err(|e| e.to_string())?.r;
    ensure(rp == permute(&r, p), || format!("{label}: Ricci not equivariant under {p:?}"))?;
    let ke = curvature::kaehler_einstein_metric(&f.sys);
    let moved = curvature::InvariantMetric::new(permute(&ke.x, p)).map_err(|e| e.to_string())?;
    let (_, spread) = curvature::einstein_residual(&moved, &f.tensor).map_err(|e| e.to_string())?;
    ensure(spread.is_zero(), || format!("{label}: permuted KE metric not Einstein"))
}

/// A polynomial in `nvars` variables from `(coefficient, exponents)` pairs.
pub fn poly(nvars: usize, terms: &[(i64, Vec<u32>)]) -> MultiPoly {
    let names: Vec<String> = (0..nvars).map(|i| format!("x{}", i + 1)).collect();
    MultiPoly::from_terms(
        &variables(&names),
        terms.iter().map(|(c, e)| (Monomial::from_exponents(e.clone()), rational::int(*c))),
    )
    .unwrap()
}

/// Up to three sparse polynomials in three variables with small degrees.
pub fn small_system() -> impl Strategy<Value = (Vec<MultiPoly>, bool)> {
    let term = (-5i64..=5, prop::collection::vec(0u32..=2, 3));
    let p = prop::collection::vec(term, 1..=3).prop_map(|ts| poly(3, &ts));
    (prop::collection::vec(p, 1..=3), any::<bool>())
}

/// Every generator and every S-polynomial of basis pairs reduces to zero,
/// and the basis is reduced.
pub fn groebner_self_reduction(gens: &[MultiPoly], lex: bool) -> Check {
    let gens: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(());
    }
    let order = if lex { TermOrder::lex(3) } else { TermOrder::grevlex(3) };
    let budget = Budget { max_pairs: 2_000, max_coeff_bits: 2_000 };
    let gb = match buchberger(&gens, &order, &budget) {
        Ok(gb) => gb,
        // Budget overruns are reported, not wrong; nothing to check.
        Err(flag_einstein::Error::BudgetExceeded(_)) => return Ok(()),
        Err(e) => return Err(e.to_string()),
    };
    for g in &gens {
        ensure(gb.reduces_to_zero(g), || format!("generator {g} does not reduce to 0"))?;
    }
    let b = &gb.generators;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let s = s_polynomial(&b[i], &b[j], &order);
            ensure(gb.reduces_to_zero(&s), || format!("S({}, {}) does not reduce to 0", b[i], b[j]))?;
        }
    }
    let leads = gb.leading_monomials();
    for (i, g) in b.iter().enumerate() {
        for (m, _) in g.terms() {
            for (j, l) in leads.iter().enumerate() {
                ensure(i == j || !l.divides(m), || format!("basis not reduced: {} divides a term of {g}", b[j]))?;
            }
        }
    }
    Ok(())
}

/// `(f + g) - g = f`.
pub fn exact_arithmetic(f: &MultiPoly, g: &MultiPoly) -> Check {
    ensure(&(f + g) - g == *f, || format!("({f}) + ({g}) - ({g}) != {f}"))
}

/// Integer polynomial with the given rational roots times an irreducible
/// quadratic `x^2 + 1` or `x^2 - 2` (chosen by `quad`).
pub fn poly_with_roots(roots: &[(i64, i64)], quad: bool) -> UniPoly {
    let mut p = UniPoly::new(vec![if quad { rational::int(1) } else { rational::int(-2) }, rational::int(0), rational::int(1)]);
    for &(n, d) in roots {
        p = p.mul(&UniPoly::new(vec![rational::q(-n, d), rational::int(1)]));
    }
    p
}

/// Isolating intervals `(lo, hi]` (or exact points) are pairwise disjoint,
/// each holds exactly one root by Sturm count with a sign change across it,
/// and together they account for every real root.
pub fn sturm_isolation(p: &UniPoly) -> Check {
    let sf = p.square_free();
    let sturm = SturmSequence::new(&sf);
    let roots = isolate_real_roots(p, None).map_err(|e| e.to_string())?;
    ensure(roots.len() == sturm.count_all(), || {
        format!("{} intervals but {} real roots", roots.len(), sturm.count_all())
    })?;
    for w in roots.windows(2) {
        let apart = w[0].hi < w[1].lo || (w[0].hi == w[1].lo && !w[1].is_exact());
        ensure(apart, || "intervals overlap or are unsorted".into())?;
    }
    for r in &roots {
        let n = if r.is_exact() { 1 } else { sturm.count(&r.lo, &r.hi) };
        ensure(n == 1, || format!("[{}, {}] holds {n} roots", r.lo, r.hi))?;
        if !r.is_exact() {
            ensure(sf.sign_at(&r.lo) * sf.sign_at(&r.hi) < 0, || format!("no sign change on [{}, {}]", r.lo, r.hi))?;
        }
        ensure(!r.width().is_negative(), || "negative width".into())?;
    }
    Ok(())
}

/// Distinct rational roots with small numerators and denominators.
pub fn rational_roots() -> impl Strategy<Value = (Vec<(i64, i64)>, bool)> {
    (prop::collection::btree_set((-12i64..=12, 1i64..=6), 0..=5), any::<bool>()).prop_map(|(s, q)| {
        let mut seen: Vec<Rational> = Vec::new();
        let mut out = Vec::new();
        for (n, d) in s {
            let r = rational::q(n, d);
            if !seen.contains(&r) {
                seen.push(r);
                out.push((n, d));
            }
        }
        (out, q)
    })
}
