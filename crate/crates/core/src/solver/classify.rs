//! Isometry classes of Einstein metrics: scale and Weyl-orbit
//! canonicalisation.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::curvature::{self, permute, InvariantMetric};
use crate::error::{Error, Result};
use crate::isotropy::TripleTensor;
use crate::rational::{self, Rational};
use crate::rootsys::RootSystem;

/// Canonical representative of a metric: scaled so the largest coordinate
/// is 1, then the lexicographically smallest Weyl image.
pub type ClassKey = Vec<f64>;

fn scaled(x: &[f64]) -> Vec<f64> {
    let m = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    x.iter().map(|v| v / m).collect()
}

/// Lexicographic comparison treating coordinates within `tol` as equal.
pub fn compare_keys(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x.total_cmp(y);
        }
    }
    Ordering::Equal
}

pub fn canonical_form(x: &[f64], perms: &[Vec<usize>]) -> ClassKey {
    let s = scaled(x);
    perms
        .iter()
        .map(|p| permute(&s, p))
        .min_by(|a, b| compare_keys(a, b, 1e-9))
        .unwrap_or(s)
}

/// Whether two metrics agree up to scale and a Weyl permutation, with
/// relative coordinate distance below `tol`.
pub fn same_class(a: &[f64], b: &[f64], perms: &[Vec<usize>], tol: f64) -> bool {
    let sa = scaled(a);
    let sb = scaled(b);
    perms.iter().any(|p| {
        permute(&sb, p)
            .iter()
            .zip(&sa)
            .all(|(u, v)| (u - v).abs() <= tol * u.abs().max(v.abs()))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational::to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    fn mul(&self, c: &Scalar) -> Scalar {
        match (self, c) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Float(self.to_f64() * c.to_f64()),
        }
    }

    fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(num_traits::Inv::inv(a.clone())),
            Scalar::Float(v) => Scalar::Float(1.0 / v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Found by exact elimination (rational, or certified by intervals).
    Algebraic,
    /// Found by the Newton oracle only.
    Numeric,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Algebraic => "algebraic",
            Provenance::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinSolution {
    pub x: Vec<Scalar>,
    pub k: Scalar,
    pub kaehler: bool,
    /// 1-based isometry class id; 0 until classified.
    pub class: usize,
    pub provenance: Provenance,
    /// Ricci spread `max r_i - min r_i`.
    pub residual: f64,
}

impl EinsteinSolution {
    /// Exact solution; fails unless the Ricci components agree exactly.
    pub fn exact(x: Vec<Rational>, tensor: &TripleTensor) -> Result<Self> {
        let metric = InvariantMetric::new(x)?;
        let (k, res) = curvature::einstein_residual(&metric, tensor)?;
        if !res.is_zero() {
            return Err(Error::Invariant(format!(
                "rational metric is not Einstein (spread {})",
                rational::to_string(&res)
            )));
        }
        Ok(EinsteinSolution {
            x: metric.x.into_iter().map(Scalar::Exact).collect(),
            k: Scalar::Exact(k),
            kaehler: false,
            class: 0,
            provenance: Provenance::Algebraic,
            residual: 0.0,
        })
    }

    pub fn numeric(x: Vec<f64>, provenance: Provenance, tensor: &TripleTensor) -> Result<Self> {
        let (k, residual) = curvature::einstein_residual_f64(&x, tensor)?;
        Ok(EinsteinSolution {
            x: x.into_iter().map(Scalar::Float).collect(),
            k: Scalar::Float(k),
            kaehler: false,
            class: 0,
            provenance,
            residual,
        })
    }

    pub fn x_f64(&self) -> Vec<f64> {
        self.x.iter().map(Scalar::to_f64).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.x.iter().all(Scalar::is_exact)
    }

    /// Rescales so that `x_i = 1`; `k` scales inversely with the metric.
    pub fn in_gauge(&self, i: usize) -> EinsteinSolution {
        let c = self.x[i].recip();
        EinsteinSolution {
            x: self.x.iter().map(|v| v.mul(&c)).collect(),
            k: self.k.mul(&self.x[i]),
            residual: self.residual * self.x[i].to_f64(),
            ..self.clone()
        }
    }

    /// Weyl image `out[perm[k]] = x[k]`.
    pub fn permuted(&self, perm: &[usize]) -> EinsteinSolution {
        EinsteinSolution {
            x: permute(&self.x, perm),
            ..self.clone()
        }
    }
}

/// Preference when merging duplicates: exact, then algebraic, then numeric.
fn rank(s: &EinsteinSolution) -> (bool, Provenance) {
    (!s.is_exact(), s.provenance)
}

/// Merges solutions in the same isometry class (relative distance `tol`
/// after scale and Weyl canonicalisation), sets the Kähler flag, and numbers
/// classes in order of their canonical representatives. Returns one
/// representative per class, in the gauge `x1 = 1`.
pub fn classify(
    solutions: Vec<EinsteinSolution>,
    sys: &RootSystem,
    tol: f64,
) -> Result<Vec<EinsteinSolution>> {
    let perms = sys.weyl_orbit_permutations()?;
    let mut reps: Vec<(ClassKey, EinsteinSolution)> = Vec::new();
    for s in solutions {
        let x = s.x_f64();
        match reps
            .iter_mut()
            .find(|(_, r)| same_class(&r.x_f64(), &x, &perms, tol))
        {
            Some(slot) => {
                if rank(&s) < rank(&slot.1) {
                    slot.1 = s;
                }
            }
            None => reps.push((canonical_form(&x, &perms), s)),
        }
    }
    reps.sort_by(|a, b| compare_keys(&a.0, &b.0, 1e-9));
    let mut out = Vec::with_capacity(reps.len());
    for (i, (_, s)) in reps.into_iter().enumerate() {
        let mut s = s.in_gauge(0);
        s.class = i + 1;
        s.kaehler = if s.is_exact() {
            let x: Vec<Rational> = s
                .x
                .iter()
                .map(|v| match v {
                    Scalar::Exact(r) => r.clone(),
                    Scalar::Float(_) => unreachable!("checked exact"),
                })
                .collect();
            curvature::is_kaehler_exact(&x, sys)?.is_some()
        } else {
            curvature::is_kaehler(&s.x_f64(), sys, 1e-8)?.is_some()
        };
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropy::triple_tensor;
    use crate::rational::q;

    #[test]
    fn ke_orbit_is_one_class() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let t = triple_tensor(&g2);
        let ke = curvature::kaehler_einstein_metric(&g2);
        let base = EinsteinSolution::exact(ke.x, &t).unwrap();
        let orbit: Vec<EinsteinSolution> = g2
            .weyl_orbit_permutations()
            .unwrap()
            .iter()
            .map(|p| base.permuted(p))
            .collect();
        let classes = classify(orbit, &g2, 1e-6).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].kaehler);
        assert_eq!(classes[0].class, 1);
        assert_eq!(classes[0].x[0], Scalar::Exact(q(1, 1)));
    }

    #[test]
    fn permuted_metric_has_same_key() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let perms = g2.weyl_orbit_permutations().unwrap();
        let x = [1.0, 0.2762, 1.0347, 1.0347, 1.0, 1.7896];
        let k0 = canonical_form(&x, &perms);
        for p in &perms {
            let y: Vec<f64> = permute(&x, p).iter().map(|v| v * 3.0).collect();
            assert_eq!(compare_keys(&canonical_form(&y, &perms), &k0, 1e-12), Ordering::Equal);
            assert!(same_class(&x, &y, &perms, 1e-9));
        }
    }

    #[test]
    fn gauge_rescales_k() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let t = triple_tensor(&g2);
        let s = EinsteinSolution::exact(curvature::kaehler_einstein_metric(&g2).x, &t).unwrap();
        assert_eq!(s.k, Scalar::Exact(q(1, 12)));
        let g = s.in_gauge(0);
        assert_eq!(g.k, Scalar::Exact(q(1, 4)));
        assert_eq!(g.x[1], Scalar::Exact(q(1, 3)));
    }
}
