//! Einstein equations `r_i = r_j` as polynomial systems.

use std::fmt;

use num_traits::One;

use crate::curvature::{self, metric_variables};
use crate::error::{Error, Result};
use crate::isotropy::TripleTensor;
use crate::polyalg::{variables, LaurentPoly, MultiPoly, Vars};
use crate::rational::{self, Rational};

/// One gauge or ansatz constraint on the metric (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    Fixed(usize, Rational),
    Equal(usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Normalization {
    pub assignments: Vec<Assignment>,
}

impl Normalization {
    /// `x1 = 1`.
    pub fn gauge() -> Self {
        Normalization::default().fixed(0, Rational::one())
    }

    pub fn fixed(mut self, i: usize, v: Rational) -> Self {
        self.assignments.push(Assignment::Fixed(i, v));
        self
    }

    pub fn equal(mut self, i: usize, j: usize) -> Self {
        self.assignments.push(Assignment::Equal(i, j));
        self
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignments
            .iter()
            .map(|a| match a {
                Assignment::Fixed(i, v) => format!("x{}={}", i + 1, rational::to_string(v)),
                Assignment::Equal(i, j) => format!("x{}=x{}", i + 1, j + 1),
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Value of one metric entry after normalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Fixed(Rational),
    /// Index into [`EinsteinSystem::vars`].
    Free(usize),
}

#[derive(Clone, Debug)]
pub struct EinsteinSystem {
    /// Free variables, named after the smallest metric index they stand for.
    pub vars: Vars,
    pub slots: Vec<Slot>,
    pub normalization: Normalization,
    /// Ricci components in the free variables.
    pub ricci: Vec<LaurentPoly>,
    /// Indices of the pairwise distinct `r_i`; equation `j` is
    /// `r_{chain[j]} - r_{chain[j+1]}`.
    pub chain: Vec<usize>,
    /// Cleared equations, integer-primitive.
    pub polynomials: Vec<MultiPoly>,
    /// Polynomials assumed nonzero on solutions (saturation constraints).
    pub saturation: Vec<MultiPoly>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = i;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

fn resolve_slots(s: usize, norm: &Normalization) -> Result<(Vec<Slot>, Vec<String>)> {
    let mut parent: Vec<usize> = (0..s).collect();
    for a in &norm.assignments {
        let (i, j) = match a {
            Assignment::Fixed(i, _) => (*i, *i),
            Assignment::Equal(i, j) => (*i, *j),
        };
        if i >= s || j >= s {
            return Err(Error::domain(format!("normalisation refers to x{} beyond x{s}", i.max(j) + 1)));
        }
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        let (lo, hi) = (ri.min(rj), ri.max(rj));
        parent[hi] = lo;
    }
    let mut value: Vec<Option<Rational>> = vec![None; s];
    for a in &norm.assignments {
        if let Assignment::Fixed(i, v) = a {
            if !num_traits::Signed::is_positive(v) {
                return Err(Error::domain(format!("x{} fixed to a nonpositive value", i + 1)));
            }
            let r = find(&mut parent, *i);
            match &value[r] {
                Some(old) if old != v => {
                    return Err(Error::domain(format!(
                        "inconsistent normalisation: x{} = {} and {}",
                        i + 1,
                        rational::to_string(old),
                        rational::to_string(v)
                    )))
                }
                _ => value[r] = Some(v.clone()),
            }
        }
    }
    if value.iter().all(Option::is_none) {
        return Err(Error::domain("normalisation must fix at least one variable"));
    }
    let mut names = Vec::new();
    let mut var_of_root: Vec<Option<usize>> = vec![None; s];
    let mut slots = Vec::with_capacity(s);
    for i in 0..s {
        let r = find(&mut parent, i);
        let slot = match &value[r] {
            Some(v) => Slot::Fixed(v.clone()),
            None => {
                let idx = *var_of_root[r].get_or_insert_with(|| {
                    names.push(format!("x{}", r + 1));
                    names.len() - 1
                });
                Slot::Free(idx)
            }
        };
        slots.push(slot);
    }
    Ok((slots, names))
}

/// Symbolic Ricci components under `norm`, pairwise differences of the
/// distinct ones cleared of denominators.
pub fn build_system(tensor: &TripleTensor, norm: &Normalization) -> Result<EinsteinSystem> {
    let s = tensor.size();
    let (slots, names) = resolve_slots(s, norm)?;
    let vars = variables(&names);
    let x: Vec<LaurentPoly> = slots
        .iter()
        .map(|sl| match sl {
            Slot::Fixed(v) => LaurentPoly::constant(&vars, v.clone()),
            Slot::Free(k) => LaurentPoly::var(&vars, *k),
        })
        .collect();
    let ricci = curvature::ricci(&x, tensor)?.r;
    let mut chain: Vec<usize> = Vec::new();
    for (i, r) in ricci.iter().enumerate() {
        if !chain.iter().any(|&j| ricci[j] == *r) {
            chain.push(i);
        }
    }
    let polynomials = chain
        .windows(2)
        .map(|w| ricci[w[0]].sub(&ricci[w[1]]).clear_denominators())
        .filter(|p| !p.is_zero())
        .collect();
    let saturation = (0..vars.len()).map(|i| MultiPoly::var(&vars, i)).collect();
    Ok(EinsteinSystem {
        vars,
        slots,
        normalization: norm.clone(),
        ricci,
        chain,
        polynomials,
        saturation,
    })
}

impl EinsteinSystem {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// Full metric vector from values of the free variables.
    pub fn expand<T: Clone>(&self, free: &[T], fixed: impl Fn(&Rational) -> T) -> Vec<T> {
        self.slots
            .iter()
            .map(|sl| match sl {
                Slot::Fixed(v) => fixed(v),
                Slot::Free(k) => free[*k].clone(),
            })
            .collect()
    }

    pub fn expand_f64(&self, free: &[f64]) -> Vec<f64> {
        self.expand(free, rational::to_f64)
    }

    pub fn expand_exact(&self, free: &[Rational]) -> Vec<Rational> {
        self.expand(free, Clone::clone)
    }

    /// The Ricci components in the original variables `x1..xs`, for
    /// comparing against externally written formulas.
    pub fn full_variables(&self) -> Vars {
        metric_variables(self.slots.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropy::triple_tensor;
    use crate::polyalg::text::parse_system;
    use crate::rational::q;
    use crate::rootsys::RootSystem;

    fn g2_tensor() -> TripleTensor {
        triple_tensor(&RootSystem::from_label("G2").unwrap())
    }

    #[test]
    fn symmetric_ansatz_polynomials() {
        let norm = Normalization::gauge().fixed(4, q(1, 1)).equal(3, 2);
        let sys = build_system(&g2_tensor(), &norm).unwrap();
        assert_eq!(sys.vars.join(","), "x2,x3,x6");
        assert_eq!(sys.chain, [0, 1, 2, 5]);
        let vars: Vec<String> = sys.vars.iter().cloned().collect();
        let expect = parse_system(
            "-9*x2^2*x3 - 4*x2^2 - 3*x2*x3^2*x6 + 24*x2*x3^2 + 3*x3^3 - 16*x3^2 + 9*x3\n\
             9*x2^2*x3 + 8*x2^2 - 24*x2*x3 + 3*x2*x6 - 9*x3^3 + 16*x3^2 - 3*x3\n\
             -3*x2^2*x3*x6 - 4*x2^2*x6 - 3*x2*x3^2*x6^2 - 12*x2*x3^2 + 24*x2*x3*x6 - 6*x2*x6^2 + 3*x3^3*x6 - 3*x3*x6",
            Some(&vars),
        )
        .unwrap();
        for (got, want) in sys.polynomials.iter().zip(&expect) {
            assert_eq!(*got, want.normalized());
        }
    }

    #[test]
    fn general_gauge_has_five_equations() {
        let sys = build_system(&g2_tensor(), &Normalization::gauge()).unwrap();
        assert_eq!(sys.dim(), 5);
        assert_eq!(sys.polynomials.len(), 5);
    }

    #[test]
    fn a1_is_trivial() {
        let t = triple_tensor(&RootSystem::from_label("A1").unwrap());
        let sys = build_system(&t, &Normalization::gauge()).unwrap();
        assert!(sys.polynomials.is_empty());
        assert_eq!(sys.dim(), 0);
    }

    #[test]
    fn inconsistent_normalisation() {
        let norm = Normalization::gauge().fixed(0, q(2, 1));
        assert!(build_system(&g2_tensor(), &norm).is_err());
        let chained = Normalization::gauge().fixed(1, q(2, 1)).equal(0, 1);
        assert!(build_system(&g2_tensor(), &chained).is_err());
        assert!(build_system(&g2_tensor(), &Normalization::default()).is_err());
    }
}
