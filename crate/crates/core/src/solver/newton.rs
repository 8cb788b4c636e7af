//! Multi-start damped Newton on the cleared Einstein equations: an
//! independent numeric oracle for the algebraic pipeline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::classify::{self, ClassKey};
use super::system::EinsteinSystem;
use crate::curvature;
use crate::error::{Error, Result};
use crate::isotropy::TripleTensor;
use crate::polyalg::MultiPoly;
use crate::rational;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub starts: usize,
    pub seed: u64,
    /// Acceptance threshold for the Ricci spread and the coordinate floor.
    pub tol: f64,
    pub max_iter: usize,
    /// Starts are drawn log-uniformly from `[lo, hi]` per coordinate.
    pub range: (f64, f64),
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            starts: 100_000,
            seed: DEFAULT_SEED,
            tol: 1e-10,
            max_iter: 100,
            range: (1e-2, 1e2),
        }
    }
}

/// Polynomial with float coefficients for fast evaluation.
#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(f64, Vec<i32>)>,
}

impl CompiledPoly {
    fn new(p: &MultiPoly) -> Self {
        CompiledPoly {
            terms: p
                .terms()
                .map(|(m, c)| {
                    (
                        rational::to_f64(c),
                        m.exponents().iter().map(|&e| e as i32).collect(),
                    )
                })
                .collect(),
        }
    }

    /// Value and the sum of absolute term values (for a relative residual).
    fn eval(&self, x: &[f64]) -> (f64, f64) {
        let mut v = 0.0;
        let mut mag = 0.0;
        for (c, e) in &self.terms {
            let mut t = *c;
            for (xi, &k) in x.iter().zip(e) {
                if k != 0 {
                    t *= xi.powi(k);
                }
            }
            v += t;
            mag += t.abs();
        }
        (v, mag)
    }
}

struct CompiledSystem {
    f: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
}

impl CompiledSystem {
    fn new(polys: &[MultiPoly], dim: usize) -> Self {
        CompiledSystem {
            f: polys.iter().map(CompiledPoly::new).collect(),
            jac: polys
                .iter()
                .map(|p| (0..dim).map(|j| CompiledPoly::new(&p.derivative(j))).collect())
                .collect(),
        }
    }

    fn residual(&self, x: &[f64]) -> (Vec<f64>, f64) {
        let mut rel: f64 = 0.0;
        let vals = self
            .f
            .iter()
            .map(|p| {
                let (v, m) = p.eval(x);
                rel = rel.max(if m > 0.0 { v.abs() / m } else { 0.0 });
                v
            })
            .collect();
        (vals, rel)
    }

    fn jacobian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(x).0).collect())
            .collect()
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() < 1e-300 || !a[p][k].is_finite() {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != 0.0 {
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

/// Outcome of one Newton run.
#[derive(Clone, Debug)]
pub struct NewtonRun {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Damped Newton with backtracking on `|F|²`. Returns the final point when
/// the relative residual of every equation falls below `1e-13` or the step
/// stalls at a small residual.
fn newton(sys: &CompiledSystem, mut x: Vec<f64>, max_iter: usize) -> Option<NewtonRun> {
    let (mut f, mut rel) = sys.residual(&x);
    let mut nf = norm2(&f);
    for it in 0..max_iter {
        if rel < 1e-13 {
            return Some(NewtonRun {
                x,
                iterations: it,
                relative_residual: rel,
            });
        }
        let dx = solve_linear(sys.jacobian(&x), f.iter().map(|v| -v).collect())?;
        let mut t = 1.0;
        loop {
            let xn: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + t * d).collect();
            if xn.iter().any(|v| !v.is_finite() || v.abs() > 1e8) {
                return None;
            }
            let (fn_, reln) = sys.residual(&xn);
            let nn = norm2(&fn_);
            if nn < (1.0 - 1e-4 * t) * nf || (nn <= nf && reln < 1e-12) {
                let step = t * norm2(&dx).sqrt();
                x = xn;
                f = fn_;
                nf = nn;
                rel = reln;
                if step <= 1e-15 * norm2(&x).sqrt().max(1.0) && rel < 1e-10 {
                    return Some(NewtonRun {
                        x,
                        iterations: it + 1,
                        relative_residual: rel,
                    });
                }
                break;
            }
            t *= 0.5;
            if t < 1e-8 {
                return None;
            }
        }
    }
    (rel < 1e-13).then_some(NewtonRun {
        x,
        iterations: max_iter,
        relative_residual: rel,
    })
}

/// Runs damped Newton from a single point (free coordinates).
pub fn newton_from(system: &EinsteinSystem, start: &[f64], max_iter: usize) -> Result<Option<NewtonRun>> {
    check_square(system)?;
    let compiled = CompiledSystem::new(&system.polynomials, system.dim());
    Ok(newton(&compiled, start.to_vec(), max_iter))
}

fn check_square(system: &EinsteinSystem) -> Result<()> {
    if system.polynomials.len() != system.dim() {
        return Err(Error::domain(format!(
            "oracle needs a square system, got {} equations in {} unknowns",
            system.polynomials.len(),
            system.dim()
        )));
    }
    Ok(())
}

/// One isometry class found by the oracle.
#[derive(Clone, Debug)]
pub struct OracleClass {
    /// Full metric vector in the system's gauge.
    pub x: Vec<f64>,
    pub k: f64,
    pub residual: f64,
    /// Number of accepted starts that landed in this class.
    pub hits: usize,
    pub key: ClassKey,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub classes: Vec<OracleClass>,
    pub starts: usize,
    pub converged: usize,
    pub accepted: usize,
}

/// Multi-start oracle. Start `i` draws from a ChaCha8 stream keyed by
/// `(seed, i)`, so results do not depend on the thread count.
pub fn newton_oracle(
    system: &EinsteinSystem,
    tensor: &TripleTensor,
    perms: &[Vec<usize>],
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    if cfg.starts == 0 {
        return Err(Error::config("at least one start is required"));
    }
    check_square(system)?;
    let dim = system.dim();
    let compiled = CompiledSystem::new(&system.polynomials, dim);
    let (lo, hi) = (cfg.range.0.ln(), cfg.range.1.ln());

    let runs: Vec<Option<Vec<f64>>> = (0..cfg.starts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(lo..=hi).exp()).collect();
            newton(&compiled, x0, cfg.max_iter).map(|r| r.x)
        })
        .collect();
    let converged = runs.iter().filter(|r| r.is_some()).count();

    let mut classes: Vec<OracleClass> = Vec::new();
    let mut accepted = 0;
    for free in runs.into_iter().flatten() {
        if free.iter().any(|&v| v <= cfg.tol) {
            continue;
        }
        let x = system.expand_f64(&free);
        let Ok((k, residual)) = curvature::einstein_residual_f64(&x, tensor) else {
            continue;
        };
        if residual >= cfg.tol {
            continue;
        }
        accepted += 1;
        let key = classify::canonical_form(&x, perms);
        match classes
            .iter_mut()
            .find(|c| classify::same_class(&c.key, &key, perms, 1e-6)) {
            Some(c) => c.hits += 1,
            None => classes.push(OracleClass {
                x,
                k,
                residual,
                hits: 1,
                key,
            }),
        }
    }
    classes.sort_by(|a, b| classify::compare_keys(&a.key, &b.key, 1e-9));
    Ok(OracleResult {
        classes,
        starts: cfg.starts,
        converged,
        accepted,
    })
}
