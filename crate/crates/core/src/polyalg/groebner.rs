//! Buchberger's algorithm over `Q`.
//!
//! Internally polynomials are kept primitive over `Z` and reduced
//! fraction-free; every term carries its order key so that comparisons are
//! plain slice comparisons (all supported orders have keys that are linear
//! in the exponent vector, so `key(a*b) = key(a) + key(b)`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{variables, Monomial, MultiPoly, OrderKind, TermOrder, Vars};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Limits for a Groebner computation.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Maximum number of critical pairs reduced.
    pub max_pairs: usize,
    /// Maximum coefficient size (bits) of any basis element.
    pub max_coeff_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 20_000,
            max_coeff_bits: 20_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_pairs: usize::MAX,
            max_coeff_bits: u64::MAX,
        }
    }
}

/// State handed back when a computation exceeds its [`Budget`].
#[derive(Clone, Debug)]
pub struct PartialBasis {
    pub generators: Vec<MultiPoly>,
    pub pairs_processed: usize,
    pub pairs_remaining: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub zero_reductions: usize,
    pub max_coeff_bits: u64,
}

/// A reduced Groebner basis: generators are integer-primitive with positive
/// leading coefficient, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<MultiPoly>,
    pub order: TermOrder,
    pub stats: GroebnerStats,
}

#[derive(Clone, Debug)]
struct Term {
    key: Vec<i64>,
    mono: Monomial,
    coeff: BigInt,
}

/// Nonzero polynomial, terms in strictly decreasing order.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<Term>,
}

impl IPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].coeff
    }

    fn bits(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff.bits()).max().unwrap_or(0)
    }
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn to_ipoly(p: &MultiPoly, order: &TermOrder) -> Option<IPoly> {
    if p.is_zero() {
        return None;
    }
    let l = rational::denominator_lcm(p.terms().map(|(_, c)| c));
    let lr = Rational::from_integer(l);
    let mut terms: Vec<Term> = p
        .terms()
        .map(|(m, c)| Term {
            key: order.key(m),
            mono: m.clone(),
            coeff: (c * &lr).to_integer(),
        })
        .collect();
    terms.sort_by(|a, b| b.key.cmp(&a.key));
    Some(make_primitive(terms))
}

fn make_primitive(mut terms: Vec<Term>) -> IPoly {
    let mut g = BigInt::zero();
    for t in &terms {
        g = g.gcd(&t.coeff);
        if g.is_one() {
            break;
        }
    }
    let flip = terms[0].coeff.is_negative();
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for t in &mut terms {
            t.coeff = &t.coeff / &g;
        }
    }
    IPoly { terms }
}

fn from_ipoly(p: &IPoly, vars: &Vars) -> MultiPoly {
    MultiPoly::from_terms(
        vars,
        p.terms
            .iter()
            .map(|t| (t.mono.clone(), Rational::from_integer(t.coeff.clone()))),
    )
    .expect("consistent variable count")
}

/// Full reduction of `f` modulo `basis`. Returns `(r, m)` with
/// `r = m * NF(f)` for a nonzero rational multiplier `m`.
fn reduce_terms(f: Vec<Term>, basis: &[&IPoly]) -> (Vec<Term>, Rational) {
    let mut work: BTreeMap<Vec<i64>, (Monomial, BigInt)> = f
        .into_iter()
        .map(|t| (t.key, (t.mono, t.coeff)))
        .collect();
    let mut rem: Vec<Term> = Vec::new();
    let mut mult = Rational::one();
    let mut steps = 0usize;
    while let Some((key, (mono, c))) = work.pop_last() {
        let Some(g) = basis.iter().find(|g| g.lm().divides(&mono)) else {
            rem.push(Term { key, mono, coeff: c });
            continue;
        };
        let q = mono.div(g.lm()).expect("divisibility checked");
        let qkey: Vec<i64> = key
            .iter()
            .zip(&g.terms[0].key)
            .map(|(a, b)| a - b)
            .collect();
        let gg = c.gcd(g.lc());
        let mut a = g.lc() / &gg;
        let mut b = &c / &gg;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        if !a.is_one() {
            for (_, v) in work.values_mut() {
                *v *= &a;
            }
            for t in &mut rem {
                t.coeff *= &a;
            }
            mult *= Rational::from_integer(a);
        }
        for t in &g.terms[1..] {
            let k = add_keys(&t.key, &qkey);
            let delta = -(&b * &t.coeff);
            match work.entry(k) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((t.mono.mul(&q), delta));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().1 += delta;
                    if o.get().1.is_zero() {
                        o.remove();
                    }
                }
            }
        }
        steps += 1;
        if steps.is_multiple_of(16) {
            let g = work
                .values()
                .map(|(_, c)| c)
                .chain(rem.iter().map(|t| &t.coeff))
                .fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !g.is_zero() && !g.is_one() {
                for (_, v) in work.values_mut() {
                    *v /= &g;
                }
                for t in &mut rem {
                    t.coeff /= &g;
                }
                mult /= Rational::from_integer(g);
            }
        }
    }
    (rem, mult)
}

fn reduce_ipoly(f: &IPoly, basis: &[&IPoly]) -> Option<IPoly> {
    let (r, _) = reduce_terms(f.terms.clone(), basis);
    if r.is_empty() {
        None
    } else {
        Some(make_primitive(r))
    }
}

fn spoly(f: &IPoly, g: &IPoly, lcm: &Monomial, order: &TermOrder) -> Vec<Term> {
    let lkey = order.key(lcm);
    let gg = f.lc().gcd(g.lc());
    let af = g.lc() / &gg;
    let ag = f.lc() / &gg;
    let mut acc: BTreeMap<Vec<i64>, (Monomial, BigInt)> = BTreeMap::new();
    for (p, a, sign) in [(f, &af, 1i32), (g, &ag, -1i32)] {
        let q = lcm.div(p.lm()).expect("lcm divisible");
        let qkey: Vec<i64> = lkey.iter().zip(&p.terms[0].key).map(|(x, y)| x - y).collect();
        for t in &p.terms[1..] {
            let mut c = a * &t.coeff;
            if sign < 0 {
                c = -c;
            }
            let k = add_keys(&t.key, &qkey);
            let e = acc.entry(k).or_insert_with(|| (t.mono.mul(&q), BigInt::zero()));
            e.1 += c;
        }
    }
    let mut out: Vec<Term> = acc
        .into_iter()
        .filter(|(_, (_, c))| !c.is_zero())
        .map(|(key, (mono, coeff))| Term { key, mono, coeff })
        .collect();
    out.reverse();
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a TermOrder,
    polys: Vec<IPoly>,
    active: Vec<bool>,
    /// Keyed by (lcm key, age) so the first entry is the normal-strategy choice.
    pairs: BTreeMap<(Vec<i64>, usize), Pair>,
    age: usize,
    stats: GroebnerStats,
}

impl<'a> Engine<'a> {
    fn active_polys(&self) -> Vec<&IPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller update with the new polynomial `h`.
    fn update(&mut self, h: IPoly) {
        let hi = self.polys.len();
        let hlm = h.lm().clone();
        self.stats.max_coeff_bits = self.stats.max_coeff_bits.max(h.bits());
        self.polys.push(h);
        self.active.push(false);

        let candidates: Vec<(usize, Monomial, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let glm = self.polys[g].lm();
                (g, hlm.lcm(glm), hlm.is_coprime(glm))
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l, coprime)) in candidates.iter().enumerate() {
            let dominated = |other: &(usize, Monomial, bool)| other.1.divides(l);
            let keep = *coprime
                || (!candidates[idx + 1..].iter().any(dominated) && !kept.iter().any(dominated));
            if keep {
                kept.push((*g, l.clone(), *coprime));
            }
        }
        // Among pairs with equal lcm keep one; drop coprime ones (product criterion).
        let mut seen: Vec<Monomial> = Vec::new();
        let mut fresh: Vec<(usize, Monomial)> = Vec::new();
        for (g, l, coprime) in kept {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l.clone());
            if !coprime {
                fresh.push((g, l));
            }
        }

        // Old pairs made redundant by h.
        let polys = &self.polys;
        self.pairs.retain(|_, p| {
            let l = &p.lcm;
            !(hlm.divides(l)
                && hlm.lcm(polys[p.i].lm()) != *l
                && hlm.lcm(polys[p.j].lm()) != *l)
        });

        for (g, l) in fresh {
            let key = self.order.key(&l);
            self.pairs.insert((key, self.age), Pair { i: g, j: hi, lcm: l });
            self.age += 1;
        }

        for g in 0..hi {
            if self.active[g] && hlm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn partial(&self, vars: &Vars, reason: String) -> PartialBasis {
        PartialBasis {
            generators: self
                .active_polys()
                .iter()
                .map(|p| from_ipoly(p, vars))
                .collect(),
            pairs_processed: self.stats.pairs_processed,
            pairs_remaining: self.pairs.len(),
            reason,
        }
    }
}

/// Reduced Groebner basis of the ideal generated by `generators`.
///
/// Pairs are selected by the normal strategy (smallest lcm of leading
/// monomials, ties broken by age); Buchberger's product and chain criteria
/// prune pairs. Exceeding `budget` yields [`Error::BudgetExceeded`] with the
/// partial state.
pub fn buchberger(
    generators: &[MultiPoly],
    order: &TermOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let vars = match generators.first() {
        Some(g) => g.vars().clone(),
        None => return Err(Error::domain("empty generator list")),
    };
    if order.nvars() != vars.len() {
        return Err(Error::domain("term order does not match variable count"));
    }
    let mut engine = Engine {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeMap::new(),
        age: 0,
        stats: GroebnerStats::default(),
    };
    for g in generators {
        if g.vars()[..] != vars[..] {
            return Err(Error::domain("generators use different variable lists"));
        }
        let Some(ip) = to_ipoly(g, order) else { continue };
        let reduced = {
            let basis = engine.active_polys();
            reduce_ipoly(&ip, &basis)
        };
        if let Some(h) = reduced {
            engine.update(h);
        }
    }

    while let Some((_, pair)) = engine.pairs.pop_first() {
        if engine.stats.pairs_processed >= budget.max_pairs {
            engine.pairs.insert((vec![], 0), pair);
            let reason = format!("pair limit {}", budget.max_pairs);
            return Err(Error::BudgetExceeded(Box::new(engine.partial(&vars, reason))));
        }
        engine.stats.pairs_processed += 1;
        let s = spoly(&engine.polys[pair.i], &engine.polys[pair.j], &pair.lcm, order);
        if s.is_empty() {
            engine.stats.zero_reductions += 1;
            continue;
        }
        let reduced = {
            let basis = engine.active_polys();
            let (r, _) = reduce_terms(s, &basis);
            (!r.is_empty()).then(|| make_primitive(r))
        };
        match reduced {
            None => engine.stats.zero_reductions += 1,
            Some(h) => {
                if h.bits() > budget.max_coeff_bits {
                    let reason = format!("coefficient size {} bits", h.bits());
                    return Err(Error::BudgetExceeded(Box::new(engine.partial(&vars, reason))));
                }
                engine.update(h);
            }
        }
    }

    let basis = interreduce(engine.active_polys().into_iter().cloned().collect());
    Ok(GroebnerBasis {
        generators: basis.iter().map(|p| from_ipoly(p, &vars)).collect(),
        order: order.clone(),
        stats: engine.stats,
    })
}

/// Minimal, fully interreduced basis sorted by increasing leading monomial.
fn interreduce(mut polys: Vec<IPoly>) -> Vec<IPoly> {
    polys.sort_by(|a, b| a.terms[0].key.cmp(&b.terms[0].key));
    let mut minimal: Vec<IPoly> = Vec::new();
    for p in polys {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let head = minimal[i].terms[0].clone();
        let (mut tail, mult) = reduce_terms(minimal[i].terms[1..].to_vec(), &others);
        // tail = mult * NF(old tail); rescale the head to match.
        let scale = mult;
        let mut h = head;
        let num = scale.numer().clone();
        let den = scale.denom().clone();
        h.coeff *= &num;
        for t in &mut tail {
            t.coeff *= &den;
        }
        let mut terms = vec![h];
        terms.extend(tail);
        out.push(make_primitive(terms));
    }
    out
}

impl GroebnerBasis {
    pub fn vars(&self) -> Option<&Vars> {
        self.generators.first().map(|g| g.vars())
    }

    /// Exact normal form of `f` (rational coefficients, not rescaled).
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let basis: Vec<IPoly> = self
            .generators
            .iter()
            .filter_map(|g| to_ipoly(g, &self.order))
            .collect();
        normal_form_with(f, &basis.iter().collect::<Vec<_>>(), &self.order)
    }

    pub fn reduces_to_zero(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_term(&self.order).expect("nonzero generator").0.clone())
            .collect()
    }

    /// Generators that only involve the variable `var`.
    pub fn univariate_in(&self, var: usize) -> Vec<&MultiPoly> {
        self.generators
            .iter()
            .filter(|g| g.support().iter().all(|&v| v == var) && !g.is_constant())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }
}

fn normal_form_with(f: &MultiPoly, basis: &[&IPoly], order: &TermOrder) -> MultiPoly {
    let Some(ip) = to_ipoly(f, order) else {
        return f.clone();
    };
    let content = f.content();
    // f = sign * content * ip, with ip primitive.
    let sign_fix = {
        let (m, c) = f.leading_term(order).expect("nonzero");
        let _ = m;
        if c.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        }
    };
    let (r, mult) = reduce_terms(ip.terms, basis);
    let scale = content * sign_fix / mult;
    let vars = f.vars();
    MultiPoly::from_terms(
        vars,
        r.into_iter()
            .map(|t| (t.mono, Rational::from_integer(t.coeff) * &scale)),
    )
    .expect("consistent variable count")
}

/// Exact normal form of `f` modulo an arbitrary list of polynomials
/// (division algorithm; a remainder of zero proves ideal membership).
pub fn reduce(f: &MultiPoly, divisors: &[MultiPoly], order: &TermOrder) -> MultiPoly {
    let basis: Vec<IPoly> = divisors.iter().filter_map(|g| to_ipoly(g, order)).collect();
    normal_form_with(f, &basis.iter().collect::<Vec<_>>(), order)
}

/// S-polynomial `lc(g) * (L/lm f) * f - lc(f) * (L/lm g) * g` scaled to
/// cancel the leading terms, `L = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &TermOrder) -> MultiPoly {
    let (Some(fi), Some(gi)) = (to_ipoly(f, order), to_ipoly(g, order)) else {
        return MultiPoly::zero(f.vars());
    };
    let l = fi.lm().lcm(gi.lm());
    let s = spoly(&fi, &gi, &l, order);
    MultiPoly::from_terms(
        f.vars(),
        s.into_iter()
            .map(|t| (t.mono, Rational::from_integer(t.coeff))),
    )
    .expect("consistent variable count")
}

/// Name for the auxiliary saturation variable that does not clash with
/// `vars`.
fn fresh_name(vars: &Vars) -> String {
    let mut name = "t".to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// Generators and order of `I + <t * prod(h) - 1>` in the ring with the
/// auxiliary variable `t` prepended and ranked above every original
/// variable. `None` when the product is a nonzero constant.
pub(crate) fn saturation_ring(
    generators: &[MultiPoly],
    nonvanishing: &[MultiPoly],
    order: &TermOrder,
) -> Result<Option<(Vec<MultiPoly>, TermOrder)>> {
    let vars = match generators.first() {
        Some(g) => g.vars().clone(),
        None => return Err(Error::domain("empty generator list")),
    };
    let mut product = MultiPoly::one(&vars);
    for h in nonvanishing {
        product = product.checked_mul(h)?;
    }
    if product.is_zero() {
        return Err(Error::domain("saturating by the zero polynomial"));
    }
    if product.is_constant() {
        return Ok(None);
    }
    let n = vars.len();
    let mut names: Vec<String> = vec![fresh_name(&vars)];
    names.extend(vars.iter().cloned());
    let ext = variables(&names);
    let map: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
    let mut gens: Vec<MultiPoly> = generators
        .iter()
        .map(|g| g.remap(&ext, &map))
        .collect::<Result<_>>()?;
    let t = MultiPoly::var(&ext, 0);
    let lifted = product.remap(&ext, &map)?;
    gens.push(&(&t * &lifted) - &MultiPoly::one(&ext));

    let mut priority = vec![0];
    priority.extend(order.priority().iter().map(|&v| v + 1));
    let ext_order = match order.kind() {
        OrderKind::Lex => TermOrder::new(OrderKind::Lex, priority)?,
        OrderKind::GrevLex => TermOrder::new(OrderKind::BlockGrevLex { first: 1 }, priority)?,
        OrderKind::BlockGrevLex { .. } => {
            return Err(Error::domain("saturation over a block order is not supported"))
        }
    };
    Ok(Some((gens, ext_order)))
}

/// Saturation `I : (prod h)^inf` via the auxiliary variable `t`:
/// computes a basis of `I + <t * prod(h) - 1>` under an order that ranks `t`
/// above every original variable, then keeps the `t`-free elements. The
/// result is a reduced Groebner basis over the original variables for
/// `order`.
pub fn saturate(
    generators: &[MultiPoly],
    nonvanishing: &[MultiPoly],
    order: &TermOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let Some((gens, ext_order)) = saturation_ring(generators, nonvanishing, order)? else {
        return buchberger(generators, order, budget);
    };
    let vars = generators[0].vars().clone();
    let n = vars.len();
    let gb = buchberger(&gens, &ext_order, budget)?;
    let back: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let generators: Vec<MultiPoly> = gb
        .generators
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.remap(&vars, &back))
        .collect::<Result<_>>()?;
    Ok(GroebnerBasis {
        generators,
        order: order.clone(),
        stats: gb.stats,
    })
}
