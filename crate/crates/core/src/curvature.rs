//! Ricci components of invariant metrics on `K/T`.
//!
//! For `g = Σ x_α Q|_{m_α}`,
//!
//! ```text
//! r_α = 1/(2x_α) + 1/8 Σ_{β,γ} x_α/(x_β x_γ) [α; βγ] - 1/4 Σ_{β,γ} x_γ/(x_α x_β) [γ; αβ]
//! ```
//!
//! with both sums over ordered pairs. Each unordered triple `{a, b, c}` with
//! value `v` therefore contributes `v/4 · (x_a/(x_b x_c) - x_b/(x_a x_c) -
//! x_c/(x_a x_b))` to `r_a`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isotropy::TripleTensor;
use crate::polyalg::{variables, LaurentPoly, Vars};
use crate::rational::{self, Rational};
use crate::rootsys::RootSystem;

/// Coefficient domains the Ricci formula can be evaluated in.
pub trait RicciField: Clone {
    /// The rational constant `c` in the same ring as `self`.
    fn constant_like(&self, c: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn recip(&self) -> Option<Self>;
    /// `None` when the sign is not determined (symbolic entries).
    fn positivity(&self) -> Option<bool>;
}

impl RicciField for f64 {
    fn constant_like(&self, c: &Rational) -> Self {
        rational::to_f64(c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn positivity(&self) -> Option<bool> {
        Some(*self > 0.0)
    }
}

impl RicciField for Rational {
    fn constant_like(&self, c: &Rational) -> Self {
        c.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| num_traits::Inv::inv(self.clone()))
    }
    fn positivity(&self) -> Option<bool> {
        Some(Signed::is_positive(self))
    }
}

impl RicciField for LaurentPoly {
    fn constant_like(&self, c: &Rational) -> Self {
        LaurentPoly::constant(self.vars(), c.clone())
    }
    fn add(&self, o: &Self) -> Self {
        LaurentPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPoly::mul(self, o)
    }
    fn recip(&self) -> Option<Self> {
        LaurentPoly::recip(self)
    }
    fn positivity(&self) -> Option<bool> {
        if self.is_zero() {
            return Some(false);
        }
        // A single term with positive coefficient is positive for positive
        // variables; anything else is undecided.
        let mut terms = self.terms();
        match (terms.next(), terms.next()) {
            (Some((_, c)), None) => Signed::is_positive(c).then_some(true),
            _ => None,
        }
    }
}

/// Exact positive metric `x_α`, one entry per positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMetric {
    pub x: Vec<Rational>,
}

impl InvariantMetric {
    pub fn new(x: Vec<Rational>) -> Result<Self> {
        if let Some(i) = x.iter().position(|v| !Signed::is_positive(v)) {
            return Err(Error::domain(format!("metric entry x{} is not positive", i + 1)));
        }
        Ok(InvariantMetric { x })
    }

    pub fn from_integers(x: &[i64]) -> Result<Self> {
        Self::new(x.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.x.iter().map(rational::to_f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RicciComponents<T> {
    pub r: Vec<T>,
    /// `Σ d_i r_i` with `d_i = 2`.
    pub scalar_curvature: T,
}

/// Ricci components of the metric `x`.
pub fn ricci<T: RicciField>(x: &[T], tensor: &TripleTensor) -> Result<RicciComponents<T>> {
    if x.len() != tensor.size() {
        return Err(Error::domain(format!(
            "metric has {} entries, expected {}",
            x.len(),
            tensor.size()
        )));
    }
    if x.is_empty() {
        return Err(Error::domain("empty metric"));
    }
    let mut inv = Vec::with_capacity(x.len());
    for (i, v) in x.iter().enumerate() {
        if v.positivity() == Some(false) {
            return Err(Error::domain(format!("metric entry x{} is not positive", i + 1)));
        }
        inv.push(
            v.recip()
                .ok_or_else(|| Error::domain(format!("metric entry x{} is not invertible", i + 1)))?,
        );
    }
    let one = x[0].constant_like(&Rational::one());
    let half = x[0].constant_like(&rational::q(1, 2));
    let mut r: Vec<T> = inv.iter().map(|v| v.mul(&half)).collect();
    for (k, v) in tensor.iter() {
        let w = x[0].constant_like(&(v / rational::int(4)));
        for rot in 0..3 {
            let a = k[rot];
            let b = k[(rot + 1) % 3];
            let c = k[(rot + 2) % 3];
            let plus = x[a].mul(&inv[b]).mul(&inv[c]);
            let minus = x[b]
                .mul(&inv[a])
                .mul(&inv[c])
                .add(&x[c].mul(&inv[a]).mul(&inv[b]));
            r[a] = r[a].add(&w.mul(&plus.sub(&minus)));
        }
    }
    let two = one.add(&one);
    let mut s = x[0].constant_like(&Rational::zero());
    for ri in &r {
        s = s.add(&two.mul(ri));
    }
    Ok(RicciComponents {
        r,
        scalar_curvature: s,
    })
}

/// Exact `(k, residual)`: `k` is the mean of the `r_i`, the residual is the
/// spread `max r_i - min r_i` (zero iff the metric is Einstein).
pub fn einstein_residual(
    metric: &InvariantMetric,
    tensor: &TripleTensor,
) -> Result<(Rational, Rational)> {
    let rc = ricci(&metric.x, tensor)?;
    let n = rational::int(rc.r.len() as i64);
    let k: Rational = rc.r.iter().sum::<Rational>() / n;
    let max = rc.r.iter().max().expect("nonempty");
    let min = rc.r.iter().min().expect("nonempty");
    Ok((k, max - min))
}

/// Float `(k, residual)`, same definitions as [`einstein_residual`].
pub fn einstein_residual_f64(x: &[f64], tensor: &TripleTensor) -> Result<(f64, f64)> {
    let rc = ricci(x, tensor)?;
    let k = rc.r.iter().sum::<f64>() / rc.r.len() as f64;
    let max = rc.r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = rc.r.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((k, max - min))
}

/// Variables `x1, …, xs` for symbolic evaluation.
pub fn metric_variables(s: usize) -> Vars {
    let names: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
    variables(&names)
}

/// The `r_i` as Laurent polynomials in `x1, …, xs`.
pub fn symbolic_ricci(tensor: &TripleTensor) -> Result<Vec<LaurentPoly>> {
    let vars = metric_variables(tensor.size());
    let x: Vec<LaurentPoly> = (0..tensor.size()).map(|i| LaurentPoly::var(&vars, i)).collect();
    Ok(ricci(&x, tensor)?.r)
}

/// `x_α = 2(δ, α)`, rescaled to coprime positive integers.
pub fn kaehler_einstein_metric(sys: &RootSystem) -> InvariantMetric {
    let delta = sys.delta_weight();
    let raw: Vec<Rational> = sys
        .positive_roots()
        .iter()
        .map(|a| rational::int(2) * sys.pair_weight_root(&delta, a))
        .collect();
    let ints = rational::primitive_integer_vector(&raw);
    InvariantMetric {
        x: ints.into_iter().map(Rational::from_integer).collect(),
    }
}

/// `out[perm[k]] = x[k]`: the metric transported by a Weyl-induced
/// permutation of the summands.
pub fn permute<T: Clone>(x: &[T], perm: &[usize]) -> Vec<T> {
    let mut out = x.to_vec();
    for (k, &p) in perm.iter().enumerate() {
        out[p] = x[k].clone();
    }
    out
}

/// Exact test: the Weyl permutation (if any) that makes `x` proportional to
/// the Kähler–Einstein metric.
pub fn is_kaehler_exact(x: &[Rational], sys: &RootSystem) -> Result<Option<Vec<usize>>> {
    let ke = kaehler_einstein_metric(sys);
    for perm in sys.weyl_orbit_permutations()? {
        let y = permute(x, &perm);
        let ratio = &y[0] / &ke.x[0];
        if y.iter().zip(&ke.x).all(|(a, b)| *a == b * &ratio) {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

/// Float test with relative tolerance `tol`.
pub fn is_kaehler(x: &[f64], sys: &RootSystem, tol: f64) -> Result<Option<Vec<usize>>> {
    let ke = kaehler_einstein_metric(sys).to_f64();
    for perm in sys.weyl_orbit_permutations()? {
        let y = permute(x, &perm);
        let ratio = y.iter().sum::<f64>() / ke.iter().sum::<f64>();
        if y
            .iter()
            .zip(&ke)
            .all(|(a, b)| (a - b * ratio).abs() <= tol * a.abs().max(b * ratio))
        {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropy::triple_tensor;
    use crate::rational::q;

    fn g2() -> (RootSystem, TripleTensor) {
        let sys = RootSystem::from_label("G2").unwrap();
        let t = triple_tensor(&sys);
        (sys, t)
    }

    #[test]
    fn ke_metrics() {
        let (sys, t) = g2();
        let ke = kaehler_einstein_metric(&sys);
        assert_eq!(ke, InvariantMetric::from_integers(&[3, 1, 4, 5, 6, 9]).unwrap());
        let rc = ricci(&ke.x, &t).unwrap();
        assert!(rc.r.iter().all(|r| *r == q(1, 12)));
        assert_eq!(rc.scalar_curvature, q(1, 1));
        for (label, expect) in [("A2", vec![1, 1, 2]), ("A1", vec![1])] {
            let s = RootSystem::from_label(label).unwrap();
            assert_eq!(
                kaehler_einstein_metric(&s),
                InvariantMetric::from_integers(&expect).unwrap()
            );
        }
    }

    #[test]
    fn normal_metric_on_g2() {
        let (_, t) = g2();
        let x = InvariantMetric::from_integers(&[1; 6]).unwrap();
        let r = ricci(&x.x, &t).unwrap().r;
        assert_eq!(r, [q(3, 8), q(7, 24), q(7, 24), q(7, 24), q(3, 8), q(3, 8)]);
        let (_, res) = einstein_residual(&x, &t).unwrap();
        assert_eq!(res, q(1, 12));
        let two = ricci(&vec![q(2, 1); 6], &t).unwrap().r;
        assert_eq!(two[0], q(3, 16));
        assert_eq!(two[1], q(7, 48));
    }

    #[test]
    fn rejects_bad_metrics() {
        let (_, t) = g2();
        assert!(ricci(&[0.0, 1.0, 1.0, 1.0, 1.0, 1.0], &t).is_err());
        assert!(ricci(&[1.0; 5], &t).is_err());
        assert!(InvariantMetric::from_integers(&[1, -1]).is_err());
    }

    #[test]
    fn float_matches_exact() {
        let (_, t) = g2();
        let (k, res) = einstein_residual_f64(&[3.0, 1.0, 4.0, 5.0, 6.0, 9.0], &t).unwrap();
        assert!((k - 1.0 / 12.0).abs() < 1e-15);
        assert!(res < 1e-15);
    }

    #[test]
    fn kaehler_detection() {
        let (sys, _) = g2();
        let x: Vec<Rational> = [q(1, 1), q(1, 3), q(4, 3), q(5, 3), q(2, 1), q(3, 1)].to_vec();
        assert!(is_kaehler_exact(&x, &sys).unwrap().is_some());
        let ke = kaehler_einstein_metric(&sys);
        assert_eq!(
            is_kaehler_exact(&ke.x, &sys).unwrap(),
            Some(vec![0, 1, 2, 3, 4, 5])
        );
        let other = [1.0, 0.2762, 1.0347, 1.0347, 1.0, 1.7896];
        assert!(is_kaehler(&other, &sys, 1e-6).unwrap().is_none());
    }

    #[test]
    fn symbolic_agrees_with_exact() {
        let (_, t) = g2();
        let sym = symbolic_ricci(&t).unwrap();
        let pt: Vec<Rational> = [3, 1, 4, 5, 6, 9].iter().map(|&v| rational::int(v)).collect();
        for r in &sym {
            assert_eq!(r.eval(&pt), q(1, 12));
        }
    }
}
