//! Laurent polynomials (negative exponents allowed), used to write Ricci
//! components symbolically before clearing denominators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly, TermOrder, Vars};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = LaurentPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = LaurentPoly::zero(vars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    fn insert(&mut self, e: Vec<i32>, c: Rational) {
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.vars);
        if !c.is_zero() {
            for (e, a) in &self.terms {
                out.terms.insert(e.clone(), a * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    /// Inverse of a single nonzero term; `None` otherwise.
    pub fn recip(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut out = LaurentPoly::zero(&self.vars);
        out.terms
            .insert(e.iter().map(|a| -a).collect(), c.recip());
        Some(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k >= 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                } else {
                    t /= num_traits::pow(x.clone(), (-k) as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Multiplies by the monomial that makes every exponent nonnegative with
    /// minimum 0 in each variable, then normalises to an integer-primitive
    /// polynomial with positive leading coefficient in lex order.
    pub fn clear_denominators(&self) -> MultiPoly {
        let n = self.vars.len();
        if self.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mins: Vec<i32> = (0..n)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect();
        let p = MultiPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(e, c)| {
                let exps = e.iter().zip(&mins).map(|(a, m)| (a - m) as u32).collect();
                (Monomial::from_exponents(exps), c.clone())
            }),
        )
        .expect("consistent variable count");
        p.primitive(&TermOrder::lex(n))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if *c < Rational::zero() { "-" } else { "+" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = if *c < Rational::zero() { -c.clone() } else { c.clone() };
            let mut parts = Vec::new();
            if !a.is_one() || e.iter().all(|&k| k == 0) {
                parts.push(crate::rational::to_string(&a));
            }
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => parts.push(v.clone()),
                    _ => parts.push(format!("{v}^{k}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::variables;
    use crate::rational::q;

    #[test]
    fn clears_denominators() {
        let vars = variables(&["x", "y"]);
        let x = LaurentPoly::var(&vars, 0);
        let y = LaurentPoly::var(&vars, 1);
        // x/y - 1/(2x) -> 2x^2 - y
        let p = x.mul(&y.recip().unwrap())
            .sub(&x.recip().unwrap().scale(&q(1, 2)));
        assert_eq!(p.clear_denominators().to_string(), "2*x^2 - y");
    }

    #[test]
    fn recip_needs_single_term() {
        let vars = variables(&["x"]);
        let x = LaurentPoly::var(&vars, 0);
        assert!(x.add(&LaurentPoly::constant(&vars, q(1, 1))).recip().is_none());
        let inv = x.scale(&q(3, 1)).recip().unwrap();
        assert_eq!(inv.eval(&[q(2, 1)]), q(1, 6));
    }
}
