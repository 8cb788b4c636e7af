//! Univariate polynomials over `Q` and exact real-root isolation with
//! Sturm sequences.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Dense univariate polynomial, coefficients in increasing degree, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// Converts a polynomial that involves at most one variable.
    pub fn from_multi(p: &MultiPoly) -> Result<Self> {
        match p.univariate_var() {
            Some(v) => Ok(UniPoly::new(p.univariate_coeffs(v)?)),
            None if p.is_constant() => Ok(UniPoly::new(vec![p.constant_term()])),
            None => Err(Error::domain("polynomial is not univariate")),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ints = rational::primitive_integer_vector(&self.coeffs);
        let sign = if self.leading().is_negative() { -1 } else { 1 };
        UniPoly::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c * sign))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dn = d.degree();
        if r.len() < d.coeffs.len() {
            return (UniPoly::new(vec![]), self.clone());
        }
        let lc_inv = d.leading().recip();
        let mut q = vec![Rational::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, made primitive.
    pub fn square_free(&self) -> UniPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.primitive()
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = super::poly::variables(&["x"]);
        let p = MultiPoly::from_univariate(&vars, 0, &self.coeffs);
        write!(f, "{p}")
    }
}

/// Sturm chain `p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)` of a
/// square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Self {
        let p0 = p.square_free();
        let mut chain = vec![p0.clone()];
        if p0.degree() > 0 {
            chain.push(p0.derivative().primitive());
            loop {
                let n = chain.len();
                let r = chain[n - 2].div_rem(&chain[n - 1]).1;
                if r.is_zero() {
                    break;
                }
                // Positive rescaling keeps sign changes intact.
                chain.push(r.primitive().scale(&if r.leading().is_negative() {
                    Rational::one()
                } else {
                    -Rational::one()
                }));
            }
        }
        SturmSequence { chain }
    }

    pub fn polynomial(&self) -> &UniPoly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign changes at `x`, zeros dropped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let mut s = if p.leading().is_positive() { 1 } else { -1 };
            if !positive && p.degree() % 2 == 1 {
                s = -s;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct roots in `(0, inf)`.
    pub fn count_positive(&self) -> usize {
        self.variations(&Rational::zero()) - self.variations_at_infinity(true)
    }
}

/// Interval `[lo, hi]` containing exactly one root of the square-free
/// polynomial `poly`; `lo == hi` marks an exact rational root. Otherwise the
/// root lies in `(lo, hi]`.
#[derive(Clone, Debug)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    sturm: Arc<SturmSequence>,
}

impl IsolatingInterval {
    pub fn poly(&self) -> &UniPoly {
        self.sturm.polynomial()
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&mut self, width: &Rational) {
        while !self.is_exact() && self.width() > *width {
            let m = self.midpoint();
            if self.poly().sign_at(&m) == 0 {
                self.lo = m.clone();
                self.hi = m;
            } else if self.sturm.count(&self.lo, &m) == 1 {
                self.hi = m;
            } else {
                self.lo = m;
            }
        }
    }

    pub fn refined(mut self, width: &Rational) -> Self {
        self.refine(width);
        self
    }

    pub fn as_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }
}

/// Isolates the distinct real roots of `p` in `(lo, hi]`, or all real roots
/// when `range` is `None`. Intervals are returned in increasing order.
pub fn isolate_real_roots(
    p: &UniPoly,
    range: Option<(Rational, Rational)>,
) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::domain("the zero polynomial has no isolated roots"));
    }
    let sturm = Arc::new(SturmSequence::new(p));
    let sf = sturm.polynomial().clone();
    if sf.degree() == 0 {
        return Ok(vec![]);
    }
    let (lo, hi) = match range {
        Some(r) => r,
        None => {
            let b = sf.root_bound();
            (-b.clone(), b)
        }
    };
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), sturm.count(&lo, &hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                // The only root may be the right endpoint itself.
                let lo = if sf.sign_at(&b) == 0 { b.clone() } else { a };
                out.push(IsolatingInterval {
                    lo,
                    hi: b,
                    sturm: sturm.clone(),
                })
            }
            _ => {
                let m = (&a + &b) / rational::int(2);
                if sf.sign_at(&m) == 0 {
                    out.push(IsolatingInterval {
                        lo: m.clone(),
                        hi: m.clone(),
                        sturm: sturm.clone(),
                    });
                    // Pull the cut points off the exact root.
                    let mut d = (&b - &a) / rational::int(4);
                    while sturm.count(&(&m - &d), &m) != 1 || sturm.count(&m, &(&m + &d)) != 0 {
                        d /= rational::int(2);
                    }
                    let left = &m - &d;
                    let right = &m + &d;
                    stack.push((right.clone(), b.clone(), sturm.count(&right, &b)));
                    stack.push((a.clone(), left.clone(), sturm.count(&a, &left)));
                } else {
                    stack.push((m.clone(), b.clone(), sturm.count(&m, &b)));
                    stack.push((a.clone(), m.clone(), sturm.count(&a, &m)));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Isolating intervals of the roots in `(0, inf)`.
pub fn isolate_positive_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>> {
    let b = if p.is_zero() {
        Rational::one()
    } else {
        p.square_free().root_bound()
    };
    isolate_real_roots(p, Some((Rational::zero(), b)))
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval::new(x.clone(), x)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Largest absolute value attained.
    pub fn magnitude(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().expect("four candidates").clone();
        let hi = cands.iter().max().expect("four candidates").clone();
        Interval::new(lo, hi)
    }

    pub fn pow(&self, n: u32) -> Interval {
        let mut acc = Interval::point(Rational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rounds the endpoints outward to multiples of `2^-bits` so that long
    /// evaluations keep small denominators.
    pub fn widen_to_dyadic(&self, bits: u32) -> Interval {
        let s = Rational::from_integer(num_bigint::BigInt::one() << bits);
        Interval::new(
            Rational::from_integer((&self.lo * &s).floor().to_integer()) / &s,
            Rational::from_integer((&self.hi * &s).ceil().to_integer()) / &s,
        )
    }
}

impl UniPoly {
    /// Horner evaluation over an interval; the result encloses the range.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Interval::point(c.clone()));
        }
        acc
    }
}

/// Interval enclosure of `p` over a box.
pub fn eval_multi_interval(p: &MultiPoly, point: &[Interval]) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = t.mul(&point[i].pow(e));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn division_and_gcd() {
        let p = UniPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let d = UniPoly::from_i64(&[-1, 1]);
        let (quo, r) = p.div_rem(&d);
        assert_eq!(quo, UniPoly::from_i64(&[1, 1]));
        assert!(r.is_zero());
        let sq = UniPoly::from_i64(&[1, -2, 1]); // (x-1)^2
        assert_eq!(p.gcd(&sq), d);
        assert_eq!(sq.square_free(), d);
    }

    #[test]
    fn counts_roots() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let p = UniPoly::from_i64(&[6, -7, 0, 1]);
        let s = SturmSequence::new(&p);
        assert_eq!(s.count_all(), 3);
        assert_eq!(s.count_positive(), 2);
        assert_eq!(s.count(&q(0, 1), &q(1, 1)), 1);
        assert_eq!(s.count(&q(1, 1), &q(2, 1)), 1);
        assert_eq!(s.count(&q(-4, 1), &q(0, 1)), 1);
    }

    #[test]
    fn no_real_roots() {
        let p = UniPoly::from_i64(&[9, -20, 15]);
        assert!(isolate_real_roots(&p, None).unwrap().is_empty());
    }

    #[test]
    fn isolates_exact_and_irrational_roots() {
        // x (x^2 - 2) (2x - 1)
        let p = UniPoly::from_i64(&[0, 2, -4, -1, 2]);
        let roots = isolate_real_roots(&p, None).unwrap();
        assert_eq!(roots.len(), 4);
        let w = q(1, 1_000_000_000_000);
        let vals: Vec<f64> = roots.into_iter().map(|r| r.refined(&w).to_f64()).collect();
        let expect = [-2f64.sqrt(), 0.0, 0.5, 2f64.sqrt()];
        for (v, e) in vals.iter().zip(expect) {
            assert!((v - e).abs() < 1e-11, "{v} vs {e}");
        }
    }

    #[test]
    fn positive_range_excludes_zero() {
        let p = UniPoly::from_i64(&[0, -1, 0, 1]); // x^3 - x
        let roots = isolate_positive_roots(&p).unwrap();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn root_on_right_endpoint_is_exact() {
        let p = UniPoly::from_i64(&[0, -2, 1]); // x (x - 2)
        let roots = isolate_real_roots(&p, Some((q(0, 1), q(2, 1)))).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact() && roots[0].hi == q(2, 1));
        // roots 0, 6, 9, 12: a cut point lands on a root
        let p = UniPoly::from_i64(&[0, -648, 234, -27, 1]);
        let roots = isolate_real_roots(&p, None).unwrap();
        assert_eq!(roots.len(), 4);
    }

    #[test]
    fn interval_horner_encloses() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let x = Interval::new(q(14, 10), q(15, 10));
        let v = p.eval_interval(&x);
        assert!(v.contains(&q(0, 1)));
    }
}
