//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn variables<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Two blocks: the first `first` variables of the priority list, then the
    /// rest, each compared by grevlex. Eliminates the first block.
    BlockGrevLex { first: usize },
}

/// A monomial order together with a variable priority list
/// (`priority[0]` is the largest variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = priority.clone();
        seen.sort_unstable();
        if seen != (0..priority.len()).collect::<Vec<_>>() {
            return Err(Error::domain("term order priority must be a permutation"));
        }
        if let OrderKind::BlockGrevLex { first } = kind {
            if first > priority.len() {
                return Err(Error::domain("block size exceeds variable count"));
            }
        }
        Ok(TermOrder { kind, priority })
    }

    /// Lex with variable 0 largest.
    pub fn lex(nvars: usize) -> Self {
        TermOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        TermOrder {
            kind: OrderKind::GrevLex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Integer vector whose lexicographic order is this term order.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exponents();
        match self.kind {
            OrderKind::Lex => self.priority.iter().map(|&v| e[v] as i64).collect(),
            OrderKind::GrevLex => grevlex_key(e, &self.priority),
            OrderKind::BlockGrevLex { first } => {
                let mut k = grevlex_key(e, &self.priority[..first]);
                k.extend(grevlex_key(e, &self.priority[first..]));
                k
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            _ => self.key(a).cmp(&self.key(b)),
        }
    }
}

fn grevlex_key(e: &[u32], block: &[usize]) -> Vec<i64> {
    let mut k = Vec::with_capacity(block.len() + 1);
    k.push(block.iter().map(|&v| e[v] as i64).sum());
    k.extend(block.iter().rev().map(|&v| -(e[v] as i64)));
    k
}

/// Sparse polynomial over `Q`. No zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), Rational::one());
        p
    }

    /// Variable by name; `None` if absent.
    pub fn var_named(vars: &Vars, name: &str) -> Option<Self> {
        vars.iter().position(|v| v == name).map(|i| Self::var(vars, i))
    }

    pub fn from_terms(
        vars: &Vars,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            if m.nvars() != vars.len() {
                return Err(Error::domain("exponent vector length differs from variable count"));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Univariate polynomial `sum coeffs[i] * var^i`.
    pub fn from_univariate(vars: &Vars, var: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[var] = i as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    /// The single variable this polynomial depends on, if it depends on
    /// exactly one.
    pub fn univariate_var(&self) -> Option<usize> {
        match self.support()[..] {
            [v] => Some(v),
            _ => None,
        }
    }

    /// Dense coefficients in `var`, lowest degree first. Fails if another
    /// variable occurs.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::domain(format!(
                    "polynomial is not univariate in {}",
                    self.vars[var]
                )));
            }
            out[m.0[var] as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        Ok(out)
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "variable mismatch: [{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(rational::to_f64(c), |t, (&e, x)| t * x.powi(e as i32))
            })
            .sum()
    }

    /// Replaces variable `var` by `value` (a polynomial over the same
    /// variables).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(value)?;
        let max_e = self.degree_in(var);
        let mut powers = vec![MultiPoly::one(&self.vars)];
        for i in 1..=max_e as usize {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0[var];
            rest.0[var] = 0;
            let piece = powers[e as usize].mul_monomial(&rest).scale(c);
            for (mm, cc) in piece.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[var] -= 1;
            out.add_term(mm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Moves the polynomial to a new variable list. `map[i]` is the new
    /// index of old variable `i`, or `None` if it is dropped; dropping a
    /// variable that occurs is an error.
    pub fn remap(&self, new_vars: &Vars, map: &[Option<usize>]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &ex) in m.0.iter().enumerate() {
                match map[i] {
                    Some(j) => e[j] += ex,
                    None if ex == 0 => {}
                    None => {
                        return Err(Error::domain(format!(
                            "cannot drop variable {} which occurs in the polynomial",
                            self.vars[i]
                        )))
                    }
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `new_vars`, matching by name.
    pub fn rename_into(&self, new_vars: &Vars) -> Result<MultiPoly> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        self.remap(new_vars, &map)
    }

    /// Integer content of a polynomial with integer coefficients after
    /// clearing denominators.
    pub fn content(&self) -> Rational {
        let l = rational::denominator_lcm(self.terms.values());
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| {
                acc.gcd(&(c * Rational::from_integer(l.clone())).to_integer())
            });
        Rational::new(g, l)
    }

    /// Primitive integer multiple with positive leading coefficient under
    /// `order`.
    pub fn primitive(&self, order: &TermOrder) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mut p = self.scale(&c.recip());
        if p.leading_term(order).map(|(_, c)| c.is_negative()) == Some(true) {
            p = -p;
        }
        p
    }

    /// `primitive` under lex with variable 0 largest.
    pub fn normalized(&self) -> MultiPoly {
        self.primitive(&TermOrder::lex(self.nvars()))
    }

    /// Largest coefficient bit size.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(rational::bits).max().unwrap_or(0)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial variable mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial variable mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial variable mismatch")
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

/// Canonical text form: terms in descending lex order (variable 0 largest),
/// e.g. `-3*x2^2*x3*x6 + 24*x2*x3^2 - 1/2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono = format_monomial(m, &self.vars);
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", rational::to_string(&a))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", rational::to_string(&a))?,
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn xy() -> (Vars, MultiPoly, MultiPoly) {
        let v = variables(&["x", "y"]);
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn zero_is_additive_identity() {
        let (v, x, y) = xy();
        let f = &(&x * &y) + &MultiPoly::constant(&v, q(3, 2));
        assert_eq!(&f + &MultiPoly::zero(&v), f);
    }

    #[test]
    fn variable_mismatch_is_domain_error() {
        let (_, x, _) = xy();
        let other = MultiPoly::var(&variables(&["z"]), 0);
        assert!(matches!(x.checked_add(&other), Err(Error::Domain(_))));
    }

    #[test]
    fn orders() {
        // x*y^2 vs x^2: lex (x>y) puts x^2 first, grevlex puts x*y^2 first.
        let a = Monomial::from_exponents(vec![1, 2]);
        let b = Monomial::from_exponents(vec![2, 0]);
        assert_eq!(TermOrder::lex(2).cmp(&a, &b), Ordering::Less);
        assert_eq!(TermOrder::grevlex(2).cmp(&a, &b), Ordering::Greater);
        // grevlex tie-break: x^2*z < x*y^2 for x > y > z, both degree 3.
        let g = TermOrder::grevlex(3);
        let m1 = Monomial::from_exponents(vec![2, 0, 1]);
        let m2 = Monomial::from_exponents(vec![1, 2, 0]);
        assert_eq!(g.cmp(&m1, &m2), Ordering::Less);
        let lex_rev = TermOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(lex_rev.cmp(&a, &b), Ordering::Greater);
        assert!(TermOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn substitution_and_derivative() {
        let (v, x, y) = xy();
        let f = &(&x * &x) + &y; // x^2 + y
        let g = f.substitute(0, &(&y + &MultiPoly::one(&v))).unwrap();
        assert_eq!(g.to_string(), "y^2 + 3*y + 1");
        assert_eq!(f.derivative(0).to_string(), "2*x");
        assert_eq!(f.eval(&[int(2), int(3)]), int(7));
        assert_eq!(f.eval_f64(&[2.0, 3.0]), 7.0);
    }

    #[test]
    fn primitive_normalization() {
        let (_, x, y) = xy();
        let f = (&x.scale(&q(-3, 4)) + &y.scale(&q(3, 2))).primitive(&TermOrder::lex(2));
        assert_eq!(f.to_string(), "x - 2*y");
    }

    #[test]
    fn display_rational_coefficients() {
        let (v, x, _) = xy();
        let f = &x.scale(&q(3, 2)) - &MultiPoly::constant(&v, q(1, 3));
        assert_eq!(f.to_string(), "3/2*x - 1/3");
        assert_eq!(MultiPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let (_, x, y) = xy();
        let s = &x + &y;
        assert_eq!(s.pow(3), &(&s * &s) * &s);
        assert_eq!(s.pow(0).to_string(), "1");
    }
}
