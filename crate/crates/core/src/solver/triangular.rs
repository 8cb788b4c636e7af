//! Back-substitution through a lex basis in shape position
//! (`c·v + p(t)` for every variable `v` other than the last one `t`), with
//! rational interval enclosures.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::groebner::GroebnerBasis;
use crate::polyalg::sturm::{eval_multi_interval, Interval, IsolatingInterval, UniPoly};
use crate::polyalg::MultiPoly;
use crate::rational::{self, Rational};

/// `v = -p(t)/c` for one variable.
#[derive(Clone, Debug)]
pub struct ShapeRow {
    pub var: usize,
    pub lead: Rational,
    pub tail: UniPoly,
}

/// Shape-position data: the eliminant in `t` and one row per other
/// variable.
#[derive(Clone, Debug)]
pub struct ShapeBasis {
    pub last: usize,
    pub eliminant: UniPoly,
    pub rows: Vec<ShapeRow>,
}

fn as_row(g: &MultiPoly, last: usize) -> Option<ShapeRow> {
    let mut lead: Option<(usize, Rational)> = None;
    let mut tail = MultiPoly::zero(g.vars());
    for (m, c) in g.terms() {
        let e = m.exponents();
        let others: Vec<usize> = (0..e.len()).filter(|&i| i != last && e[i] > 0).collect();
        match others.as_slice() {
            [] => {
                tail = &tail + &MultiPoly::from_terms(g.vars(), [(m.clone(), c.clone())]).ok()?;
            }
            [v] if e[*v] == 1 && e[last] == 0 && lead.is_none() => lead = Some((*v, c.clone())),
            _ => return None,
        }
    }
    let (var, lead) = lead?;
    let tail = if tail.is_zero() {
        UniPoly::new(vec![])
    } else {
        UniPoly::from_multi(&tail).ok()?
    };
    Some(ShapeRow { var, lead, tail })
}

impl ShapeBasis {
    /// Recognises a reduced lex basis in shape position with `last` the
    /// smallest variable.
    pub fn from_basis(gb: &GroebnerBasis, last: usize) -> Result<Self> {
        let n = gb.vars().map(|v| v.len()).unwrap_or(0);
        let uni = gb.univariate_in(last);
        let [eliminant] = uni.as_slice() else {
            return Err(Error::domain("basis has no unique eliminant"));
        };
        let eliminant = UniPoly::from_multi(eliminant)?;
        let mut rows = Vec::new();
        for g in &gb.generators {
            if g.support().iter().all(|&v| v == last) {
                continue;
            }
            let row = as_row(g, last).ok_or_else(|| Error::domain("basis is not in shape position"))?;
            rows.push(row);
        }
        rows.sort_by_key(|r| r.var);
        if rows.len() + 1 != n || rows.windows(2).any(|w| w[0].var == w[1].var) {
            return Err(Error::domain("basis is not in shape position"));
        }
        Ok(ShapeBasis {
            last,
            eliminant,
            rows,
        })
    }

    /// From an explicit parametrisation `x_var = g(t)` over the roots of
    /// `eliminant`.
    pub fn from_parametrisation(last: usize, eliminant: UniPoly, rows: &[(usize, UniPoly)]) -> Self {
        let mut rows: Vec<ShapeRow> = rows
            .iter()
            .map(|(v, g)| ShapeRow {
                var: *v,
                lead: Rational::one(),
                tail: g.scale(&-Rational::one()),
            })
            .collect();
        rows.sort_by_key(|r| r.var);
        ShapeBasis {
            last,
            eliminant,
            rows,
        }
    }

    pub fn nvars(&self) -> usize {
        self.rows.len() + 1
    }

    /// Enclosures of every coordinate for the root in `t`.
    pub fn enclose(&self, t: &Interval) -> Vec<Interval> {
        let mut out = vec![Interval::point(Rational::zero()); self.nvars()];
        out[self.last] = t.clone();
        for r in &self.rows {
            let v = r.tail.eval_interval(t).neg().scale(&r.lead.recip());
            out[r.var] = v;
        }
        out
    }

    /// Refines the isolating interval until every coordinate enclosure is
    /// narrower than `width`.
    pub fn certify(&self, root: &IsolatingInterval, width: &Rational) -> Result<CertifiedPoint> {
        let mut root = root.clone();
        let mut target = width.clone();
        for _ in 0..64 {
            root.refine(&target);
            let boxes = self.enclose(&root.as_interval());
            if boxes.iter().all(|b| b.width() < *width) {
                return Ok(CertifiedPoint { root, boxes });
            }
            target /= rational::int(1 << 16);
        }
        Err(Error::Invariant("interval back-substitution did not converge".into()))
    }
}

/// A solution whose coordinates are known to lie in rational boxes.
#[derive(Clone, Debug)]
pub struct CertifiedPoint {
    pub root: IsolatingInterval,
    pub boxes: Vec<Interval>,
}

impl CertifiedPoint {
    pub fn midpoint(&self) -> Vec<f64> {
        self.boxes
            .iter()
            .map(|b| rational::to_f64(&((&b.lo + &b.hi) / rational::int(2))))
            .collect()
    }

    /// Every coordinate certainly positive.
    pub fn is_positive(&self) -> bool {
        self.boxes.iter().all(|b| b.lo.is_positive())
    }

    /// Some coordinate certainly nonpositive.
    pub fn has_nonpositive(&self) -> bool {
        self.boxes.iter().any(|b| !b.hi.is_positive())
    }

    /// Whether each polynomial's interval enclosure over the box contains 0.
    pub fn consistent_with(&self, polys: &[MultiPoly]) -> bool {
        polys
            .iter()
            .all(|p| eval_multi_interval(p, &self.boxes).contains(&Rational::zero()))
    }
}
