//! Groebner bases over prime fields `F_p` (word-size `p`) and multi-modular
//! lifting of shape-position eliminations to `Q`.
//!
//! A zero-dimensional ideal is in shape position with respect to `t` when
//! its quotient ring has the powers `1, t, ..., t^(D-1)` as a basis; then
//! the minimal polynomial of `t` has degree `D` and every other variable is
//! a polynomial of degree `< D` in `t`. Both are computed per prime by
//! Krylov iteration on the multiplication-by-`t` matrix and lifted by
//! Chinese remaindering and rational reconstruction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::groebner::{saturation_ring, Budget, PartialBasis};
use super::poly::{MultiPoly, TermOrder, Vars};
use super::sturm::UniPoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest number of variables (including the saturation variable).
pub const MAX_VARS: usize = 8;
const MAX_KEY: usize = MAX_VARS + 2;

type Exp = [u16; MAX_VARS];
type Key = [i32; MAX_KEY];

/// Arithmetic modulo a prime below `2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::domain(format!("{p} is not a prime below 2^63")));
        }
        Ok(Field { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits")
    }

    /// `None` when the denominator vanishes mod `p`.
    pub fn reduce_rational(&self, a: &Rational) -> Option<u64> {
        let d = self.reduce_int(a.denom());
        (d != 0).then(|| self.mul(self.reduce_int(a.numer()), self.inv(d)))
    }
}

/// Primes below `2^62` in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62))
        .rev()
        .step_by(2)
        .filter(|&n| num_prime::nt_funcs::is_prime64(n))
}

/// Order keys as a linear map of exponents.
#[derive(Clone, Debug)]
struct KeyMap {
    rows: Vec<Key>,
}

impl KeyMap {
    fn new(order: &TermOrder) -> Result<Self> {
        let n = order.nvars();
        if n > MAX_VARS {
            return Err(Error::domain(format!(
                "modular engine supports at most {MAX_VARS} variables"
            )));
        }
        let rows = (0..n)
            .map(|i| {
                let k = order.key(&super::poly::Monomial::var(n, i));
                let mut out = [0i32; MAX_KEY];
                for (o, v) in out.iter_mut().zip(k) {
                    *o = v as i32;
                }
                out
            })
            .collect();
        Ok(KeyMap { rows })
    }

    fn key(&self, e: &Exp) -> Key {
        let mut k = [0i32; MAX_KEY];
        for (i, row) in self.rows.iter().enumerate() {
            let ei = e[i] as i32;
            if ei != 0 {
                for (a, b) in k.iter_mut().zip(row) {
                    *a += ei * b;
                }
            }
        }
        k
    }
}

fn add_exp(a: &Exp, b: &Exp) -> Exp {
    let mut out = *a;
    for (o, v) in out.iter_mut().zip(b) {
        *o += v;
    }
    out
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    let mut out = *a;
    for (o, v) in out.iter_mut().zip(b) {
        *o -= v;
    }
    out
}

fn add_key(a: &Key, b: &Key) -> Key {
    let mut out = *a;
    for (o, v) in out.iter_mut().zip(b) {
        *o += v;
    }
    out
}

fn sub_key(a: &Key, b: &Key) -> Key {
    let mut out = *a;
    for (o, v) in out.iter_mut().zip(b) {
        *o -= v;
    }
    out
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &Exp, b: &Exp) -> Exp {
    let mut out = *a;
    for (o, v) in out.iter_mut().zip(b) {
        *o = (*o).max(*v);
    }
    out
}

fn coprime(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Clone, Copy, Debug)]
struct Term {
    key: Key,
    e: Exp,
    c: u64,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Term {}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Nonzero polynomial, terms strictly decreasing; monic once in a basis.
type Poly = Vec<Term>;

fn to_exp(m: &super::poly::Monomial) -> Result<Exp> {
    let mut e = [0u16; MAX_VARS];
    for (o, &v) in e.iter_mut().zip(m.exponents()) {
        *o = u16::try_from(v).map_err(|_| Error::domain("exponent too large for modular engine"))?;
    }
    Ok(e)
}

fn from_multi(p: &MultiPoly, km: &KeyMap, f: &Field) -> Result<Poly> {
    let mut out = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let c = f
            .reduce_rational(c)
            .ok_or_else(|| Error::domain("denominator vanishes modulo p"))?;
        if c != 0 {
            let e = to_exp(m)?;
            out.push(Term { key: km.key(&e), e, c });
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

fn make_monic(mut p: Poly, f: &Field) -> Poly {
    let inv = f.inv(p[0].c);
    if inv != 1 {
        for t in &mut p {
            t.c = f.mul(t.c, inv);
        }
    }
    p
}

fn degree(e: &Exp) -> u32 {
    e.iter().map(|&v| v as u32).sum()
}

/// Full reduction modulo monic `basis`; input terms may be unsorted and
/// repeated.
fn reduce(input: Vec<Term>, basis: &[&Poly], f: &Field) -> Poly {
    reduce_sugar(input, basis, None, 0, f).0
}

/// [`reduce`] that also tracks the sugar degree, given the sugar of each
/// basis element.
fn reduce_sugar(input: Vec<Term>, basis: &[&Poly], sugars: Option<&[u32]>, mut sugar: u32, f: &Field) -> (Poly, u32) {
    let mut heap: BinaryHeap<Term> = input.into();
    let mut rem = Vec::new();
    while let Some(top) = heap.pop() {
        let mut c = top.c;
        while heap.peek().is_some_and(|t| t.key == top.key) {
            c = f.add(c, heap.pop().expect("peeked").c);
        }
        if c == 0 {
            continue;
        }
        match basis.iter().position(|g| divides(&g[0].e, &top.e)) {
            Some(k) => {
                let g = basis[k];
                let qe = sub_exp(&top.e, &g[0].e);
                if let Some(s) = sugars {
                    sugar = sugar.max(s[k] + degree(&qe));
                }
                let qk = sub_key(&top.key, &g[0].key);
                let nc = f.neg(c);
                for t in &g[1..] {
                    heap.push(Term {
                        key: add_key(&t.key, &qk),
                        e: add_exp(&t.e, &qe),
                        c: f.mul(nc, t.c),
                    });
                }
            }
            None => rem.push(Term { c, ..top }),
        }
    }
    (rem, sugar)
}

fn spoly(a: &Poly, b: &Poly, lcm: &Exp, f: &Field, km: &KeyMap) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    for (p, negate) in [(a, false), (b, true)] {
        let qe = sub_exp(lcm, &p[0].e);
        let qk = km.key(&qe);
        for t in &p[1..] {
            out.push(Term {
                key: add_key(&t.key, &qk),
                e: add_exp(&t.e, &qe),
                c: if negate { f.neg(t.c) } else { t.c },
            });
        }
    }
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

struct Engine {
    km: KeyMap,
    polys: Vec<Poly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    /// Keyed by (sugar, lcm key, age): the sugar strategy.
    pairs: BTreeMap<(u32, Key, usize), Pair>,
    age: usize,
    pairs_processed: usize,
}

impl Engine {
    fn active_polys(&self) -> Vec<&Poly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn active_sugars(&self) -> Vec<u32> {
        self.sugar
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(s, _)| *s)
            .collect()
    }

    fn update(&mut self, h: Poly, sugar: u32) {
        let hi = self.polys.len();
        let hlm = h[0].e;
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(false);
        let candidates: Vec<(usize, Exp, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let glm = &self.polys[g][0].e;
                (g, lcm_exp(&hlm, glm), coprime(&hlm, glm))
            })
            .collect();
        let mut kept: Vec<(usize, Exp, bool)> = Vec::new();
        for (idx, (g, l, cp)) in candidates.iter().enumerate() {
            let dominated = |o: &(usize, Exp, bool)| divides(&o.1, l);
            if *cp || (!candidates[idx + 1..].iter().any(dominated) && !kept.iter().any(dominated)) {
                kept.push((*g, *l, *cp));
            }
        }
        let mut seen: Vec<Exp> = Vec::new();
        let mut fresh: Vec<(usize, Exp)> = Vec::new();
        for (g, l, cp) in kept {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            if !cp {
                fresh.push((g, l));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|_, p| {
            let l = &p.lcm;
            !(divides(&hlm, l)
                && lcm_exp(&hlm, &polys[p.i][0].e) != *l
                && lcm_exp(&hlm, &polys[p.j][0].e) != *l)
        });
        for (g, l) in fresh {
            let key = self.km.key(&l);
            let dl = degree(&l);
            let sugar = (self.sugar[g] + dl - degree(&self.polys[g][0].e))
                .max(sugar + dl - degree(&hlm));
            self.pairs.insert((sugar, key, self.age), Pair { i: g, j: hi, lcm: l, sugar });
            self.age += 1;
        }
        for g in 0..hi {
            if self.active[g] && divides(&hlm, &self.polys[g][0].e) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }
}

/// A reduced Groebner basis over `F_p`, monic, sorted by increasing leading
/// monomial.
#[derive(Clone, Debug)]
pub struct ModBasis {
    field: Field,
    nvars: usize,
    km: KeyMap,
    polys: Vec<Poly>,
    pub pairs_processed: usize,
}

fn run_buchberger(gens: Vec<Poly>, field: Field, km: KeyMap, nvars: usize, max_pairs: usize) -> Result<ModBasis> {
    let mut eng = Engine {
        km,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: BTreeMap::new(),
        age: 0,
        pairs_processed: 0,
    };
    for g in gens {
        let s0 = g.iter().map(|t| degree(&t.e)).max().unwrap_or(0);
        let (r, s) = reduce_sugar(g, &eng.active_polys(), Some(&eng.active_sugars()), s0, &field);
        if !r.is_empty() {
            eng.update(make_monic(r, &field), s);
        }
    }
    while let Some((_, pair)) = eng.pairs.pop_first() {
        if eng.pairs_processed >= max_pairs {
            return Err(Error::BudgetExceeded(Box::new(PartialBasis {
                generators: Vec::new(),
                pairs_processed: eng.pairs_processed,
                pairs_remaining: eng.pairs.len() + 1,
                reason: format!("pair limit {max_pairs} modulo {}", field.p),
            })));
        }
        eng.pairs_processed += 1;
        let s = spoly(&eng.polys[pair.i], &eng.polys[pair.j], &pair.lcm, &field, &eng.km);
        let (r, sugar) = reduce_sugar(s, &eng.active_polys(), Some(&eng.active_sugars()), pair.sugar, &field);
        if !r.is_empty() {
            eng.update(make_monic(r, &field), sugar);
        }
    }
    let mut basis: Vec<Poly> = eng.active_polys().into_iter().cloned().collect();
    basis.sort_by(|a, b| a[0].key.cmp(&b[0].key));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| divides(&q[0].e, &p[0].e)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let mut p = vec![minimal[i][0]];
        p.extend(reduce(minimal[i][1..].to_vec(), &others, &field));
        out.push(p);
    }
    Ok(ModBasis {
        field,
        nvars,
        km: eng.km,
        polys: out,
        pairs_processed: eng.pairs_processed,
    })
}

/// Reduced Groebner basis of `generators` modulo `p`.
pub fn buchberger_mod(generators: &[MultiPoly], order: &TermOrder, p: u64, max_pairs: usize) -> Result<ModBasis> {
    let field = Field::new(p)?;
    let km = KeyMap::new(order)?;
    let gens = generators
        .iter()
        .map(|g| from_multi(g, &km, &field))
        .collect::<Result<Vec<_>>>()?;
    run_buchberger(gens, field, km, order.nvars(), max_pairs)
}

/// Saturation `I : (prod h)^inf` modulo `p` (see
/// [`saturate`](super::groebner::saturate)).
pub fn saturate_mod(
    generators: &[MultiPoly],
    nonvanishing: &[MultiPoly],
    order: &TermOrder,
    p: u64,
    max_pairs: usize,
) -> Result<ModBasis> {
    let Some((gens, ext_order)) = saturation_ring(generators, nonvanishing, order)? else {
        return buchberger_mod(generators, order, p, max_pairs);
    };
    let ext = buchberger_mod(&gens, &ext_order, p, max_pairs)?;
    let km = KeyMap::new(order)?;
    let polys = ext
        .polys
        .into_iter()
        .filter(|g| g.iter().all(|t| t.e[0] == 0))
        .map(|g| {
            let mut g: Poly = g
                .into_iter()
                .map(|t| {
                    let mut e = [0u16; MAX_VARS];
                    e[..MAX_VARS - 1].copy_from_slice(&t.e[1..]);
                    Term { key: km.key(&e), e, c: t.c }
                })
                .collect();
            g.sort_by(|a, b| b.cmp(a));
            g
        })
        .collect::<Vec<_>>();
    let mut polys = polys;
    polys.sort_by(|a, b| a[0].key.cmp(&b[0].key));
    Ok(ModBasis {
        field: ext.field,
        nvars: order.nvars(),
        km,
        polys,
        pairs_processed: ext.pairs_processed,
    })
}

/// Minimal polynomial of the last variable and the other variables as
/// polynomials in it, modulo one prime. Coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModShape {
    pub prime: u64,
    pub dim: usize,
    /// Monic, degree `dim`.
    pub eliminant: Vec<u64>,
    /// `(var, g)` with `x_var = g(t)`, `deg g < dim`.
    pub rows: Vec<(usize, Vec<u64>)>,
}

impl ModBasis {
    pub fn prime(&self) -> u64 {
        self.field.p
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0][0].e == [0; MAX_VARS]
    }

    /// Leading exponent vectors, in basis order.
    pub fn leading_exponents(&self) -> Vec<Vec<u32>> {
        self.polys
            .iter()
            .map(|p| p[0].e[..self.nvars].iter().map(|&v| v as u32).collect())
            .collect()
    }

    /// Generators as `(exponents, coefficient)` lists.
    pub fn generators(&self) -> Vec<Vec<(Vec<u32>, u64)>> {
        self.polys
            .iter()
            .map(|p| {
                p.iter()
                    .map(|t| (t.e[..self.nvars].iter().map(|&v| v as u32).collect(), t.c))
                    .collect()
            })
            .collect()
    }

    fn nf(&self, terms: Vec<Term>) -> Poly {
        let refs: Vec<&Poly> = self.polys.iter().collect();
        reduce(terms, &refs, &self.field)
    }

    /// Whether `f` reduces to zero modulo this basis.
    pub fn reduces_to_zero(&self, f: &MultiPoly) -> Result<bool> {
        let p = from_multi(f, &self.km, &self.field)?;
        Ok(self.nf(p).is_empty())
    }

    /// Monomials outside the leading-term ideal; fails when there are more
    /// than `limit` of them (in particular for positive-dimensional ideals).
    fn standard_monomials(&self, limit: usize) -> Result<Vec<Exp>> {
        if self.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let lms: Vec<Exp> = self.polys.iter().map(|p| p[0].e).collect();
        let standard = |e: &Exp| !lms.iter().any(|l| divides(l, e));
        let mut out = vec![[0u16; MAX_VARS]];
        let mut seen: HashMap<Exp, ()> = HashMap::from([([0u16; MAX_VARS], ())]);
        let mut i = 0;
        while i < out.len() {
            let m = out[i];
            for v in 0..self.nvars {
                let mut e = m;
                e[v] += 1;
                if standard(&e) && seen.insert(e, ()).is_none() {
                    out.push(e);
                    if out.len() > limit {
                        return Err(Error::domain(format!(
                            "quotient ring has more than {limit} standard monomials"
                        )));
                    }
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// Shape data for the variable `last`.
    pub fn shape(&self, last: usize, limit: usize) -> Result<ModShape> {
        let f = self.field;
        let basis = self.standard_monomials(limit)?;
        let d = basis.len();
        if d == 0 {
            return Err(Error::domain("ideal has no solutions"));
        }
        let index: HashMap<Exp, usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let dense = |p: &Poly| -> Vec<u64> {
            let mut v = vec![0u64; d];
            for t in p {
                v[index[&t.e]] = t.c;
            }
            v
        };
        let monomial = |e: Exp| Term {
            key: self.km.key(&e),
            e,
            c: 1,
        };
        // Columns of multiplication by t.
        let columns: Vec<Vec<(usize, u64)>> = basis
            .iter()
            .map(|b| {
                let mut e = *b;
                e[last] += 1;
                self.nf(vec![monomial(e)])
                    .iter()
                    .map(|t| (index[&t.e], t.c))
                    .collect()
            })
            .collect();

        let mut ech = Echelon::new(d, f);
        let mut v = vec![0u64; d];
        v[index[&[0u16; MAX_VARS]]] = 1;
        let eliminant = loop {
            if let Some(dep) = ech.insert(v.clone()) {
                break dep;
            }
            let mut w = vec![0u64; d];
            for (s, col) in columns.iter().enumerate() {
                if v[s] != 0 {
                    for &(r, c) in col {
                        w[r] = f.add(w[r], f.mul(v[s], c));
                    }
                }
            }
            v = w;
        };
        let degree = eliminant.len() - 1;
        if degree != d {
            return Err(Error::domain(format!(
                "not in shape position: eliminant degree {degree}, quotient dimension {d}"
            )));
        }
        let mut rows = Vec::new();
        for var in (0..self.nvars).filter(|&v| v != last) {
            let mut e = [0u16; MAX_VARS];
            e[var] = 1;
            let target = dense(&self.nf(vec![monomial(e)]));
            let g = ech
                .express(target)
                .ok_or_else(|| Error::Invariant("coordinate outside the Krylov span".into()))?;
            rows.push((var, g));
        }
        Ok(ModShape {
            prime: f.p,
            dim: d,
            eliminant,
            rows,
        })
    }
}

/// Incremental row echelon form of Krylov vectors `v_0, v_1, ...`, tracking
/// each reduced row as a combination of the inserted vectors.
struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
    inserted: usize,
}

impl Echelon {
    fn new(dim: usize, field: Field) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    fn eliminate(&self, w: &mut [u64], combo: &mut [u64]) {
        let f = self.field;
        for (piv, row, rc) in &self.rows {
            let a = w[*piv];
            if a != 0 {
                let na = f.neg(a);
                for (x, y) in w.iter_mut().zip(row) {
                    if *y != 0 {
                        *x = f.add(*x, f.mul(na, *y));
                    }
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    if *y != 0 {
                        *x = f.add(*x, f.mul(na, *y));
                    }
                }
            }
        }
    }

    /// Inserts the next Krylov vector; on linear dependence returns the
    /// monic relation `sum c_i v_i = 0` (coefficients ascending).
    fn insert(&mut self, mut w: Vec<u64>) -> Option<Vec<u64>> {
        let f = self.field;
        let k = self.inserted;
        self.inserted += 1;
        let mut combo = vec![0u64; self.dim + 1];
        combo[k] = 1;
        self.eliminate(&mut w, &mut combo);
        match w.iter().position(|&x| x != 0) {
            None => {
                combo.truncate(k + 1);
                Some(combo)
            }
            Some(piv) => {
                let inv = f.inv(w[piv]);
                for x in w.iter_mut().chain(combo.iter_mut()) {
                    *x = f.mul(*x, inv);
                }
                self.rows.push((piv, w, combo));
                None
            }
        }
    }

    /// Coefficients of `target` in the basis `v_0, ..., v_{n-1}`.
    fn express(&self, target: Vec<u64>) -> Option<Vec<u64>> {
        let f = self.field;
        let mut w = target;
        let mut combo = vec![0u64; self.dim + 1];
        self.eliminate(&mut w, &mut combo);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        // target = sum a_j row_j and combo = -sum a_j combo_j.
        Some(combo[..self.dim].iter().map(|&c| f.neg(c)).collect())
    }
}

/// Shape-position elimination over `Q`, lifted from several primes.
#[derive(Clone, Debug)]
pub struct LiftedShape {
    pub vars: Vars,
    pub last: usize,
    pub dim: usize,
    /// Monic over `Q`.
    pub eliminant: UniPoly,
    pub rows: Vec<(usize, UniPoly)>,
    pub primes: usize,
    pub pairs_processed: usize,
    pub modulus_bits: u64,
}

/// Symmetric rational reconstruction of `a` modulo `m`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn flatten(s: &ModShape) -> Vec<u64> {
    let mut out = s.eliminant.clone();
    for (_, g) in &s.rows {
        out.extend(g);
    }
    out
}

/// Eliminates to shape position with respect to `last` in the saturation of
/// `generators` by `nonvanishing`, over `Q`, by computing modulo successive
/// primes until the rational reconstruction is confirmed by one further
/// prime. `budget.max_pairs` bounds each modular basis computation and
/// `budget.max_coeff_bits` the size of the combined modulus.
pub fn lift_shape(
    generators: &[MultiPoly],
    nonvanishing: &[MultiPoly],
    order: &TermOrder,
    last: usize,
    budget: &Budget,
) -> Result<LiftedShape> {
    let vars = generators
        .first()
        .map(|g| g.vars().clone())
        .ok_or_else(|| Error::domain("empty generator list"))?;
    const LIMIT: usize = 100_000;
    let mut signature: Option<(usize, Vec<Vec<u32>>)> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut candidate: Option<Vec<Rational>> = None;
    let mut primes_used = 0;
    let mut pairs = 0;
    let mut shape_rows: Vec<usize> = Vec::new();

    for p in primes() {
        let basis = match saturate_mod(generators, nonvanishing, order, p, budget.max_pairs) {
            Ok(b) => b,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        };
        pairs += basis.pairs_processed;
        let shape = basis.shape(last, LIMIT)?;
        let sig = (shape.dim, basis.leading_exponents());
        match &signature {
            None => {
                shape_rows = shape.rows.iter().map(|r| r.0).collect();
                signature = Some(sig);
            }
            Some(s) if *s == sig => {}
            Some(s) if sig.0 > s.0 => {
                // The earlier primes were unlucky.
                shape_rows = shape.rows.iter().map(|r| r.0).collect();
                signature = Some(sig);
                residues.clear();
                modulus = BigInt::one();
                candidate = None;
            }
            Some(_) => continue,
        }
        let image = flatten(&shape);
        let f = Field::new(p)?;
        if let Some(c) = &candidate {
            let agrees = c
                .iter()
                .zip(&image)
                .all(|(q, &v)| f.reduce_rational(q) == Some(v));
            if agrees {
                primes_used += 1;
                return Ok(assemble(vars, last, shape.dim, &shape_rows, c, primes_used, pairs, modulus.bits()));
            }
        }
        // Chinese remaindering.
        let pb = BigInt::from(p);
        if residues.is_empty() {
            residues = image.iter().map(|&v| BigInt::from(v)).collect();
        } else {
            let minv = f.inv(f.reduce_int(&modulus));
            for (r, &v) in residues.iter_mut().zip(&image) {
                let rm = f.reduce_int(r);
                let k = f.mul(f.sub(v, rm), minv);
                *r += &modulus * BigInt::from(k);
            }
        }
        modulus *= &pb;
        primes_used += 1;
        if modulus.bits() > budget.max_coeff_bits {
            return Err(Error::BudgetExceeded(Box::new(PartialBasis {
                generators: Vec::new(),
                pairs_processed: pairs,
                pairs_remaining: 0,
                reason: format!(
                    "modulus of {} bits after {primes_used} primes without a stable reconstruction",
                    modulus.bits()
                ),
            })));
        }
        candidate = residues
            .iter()
            .map(|r| rational_reconstruction(r, &modulus))
            .collect();
    }
    unreachable!("the prime iterator is effectively unbounded")
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    vars: Vars,
    last: usize,
    dim: usize,
    row_vars: &[usize],
    flat: &[Rational],
    primes: usize,
    pairs_processed: usize,
    modulus_bits: u64,
) -> LiftedShape {
    let eliminant = UniPoly::new(flat[..=dim].to_vec());
    let rows = row_vars
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let start = dim + 1 + k * dim;
            (v, UniPoly::new(flat[start..start + dim].to_vec()))
        })
        .collect();
    LiftedShape {
        vars,
        last,
        dim,
        eliminant,
        rows,
        primes,
        pairs_processed,
        modulus_bits,
    }
}

impl LiftedShape {
    /// Substitutes the parametrisation into `f` and reduces modulo the
    /// eliminant; zero for every generator proves that each root of the
    /// eliminant yields a solution.
    pub fn residue(&self, f: &MultiPoly) -> Result<UniPoly> {
        let h = &self.eliminant;
        let mut coords: Vec<UniPoly> = vec![UniPoly::new(vec![]); self.vars.len()];
        coords[self.last] = UniPoly::new(vec![Rational::zero(), Rational::one()]);
        for (v, g) in &self.rows {
            coords[*v] = g.clone();
        }
        let mut powers: Vec<Vec<UniPoly>> = coords.iter().map(|c| vec![UniPoly::from_i64(&[1]), c.clone()]).collect();
        let mut acc = UniPoly::new(vec![]);
        for (m, c) in f.terms() {
            let mut term = UniPoly::new(vec![c.clone()]);
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().expect("seeded").mul(&coords[v]).div_rem(h).1;
                    powers[v].push(next);
                }
                term = term.mul(&powers[v][e as usize]).div_rem(h).1;
            }
            acc = acc.add(&term);
        }
        Ok(acc.div_rem(h).1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::groebner::buchberger;
    use crate::polyalg::text::parse_system;
    use crate::rational::q;

    fn images_agree(gb: &crate::polyalg::GroebnerBasis, m: &ModBasis) {
        let f = Field::new(m.prime()).unwrap();
        assert_eq!(gb.generators.len(), m.len());
        for (g, mg) in gb.generators.iter().zip(m.generators()) {
            let order = &gb.order;
            let lc = g.leading_term(order).unwrap().1.clone();
            let mut terms: Vec<(Vec<u32>, u64)> = g
                .terms()
                .map(|(mono, c)| (mono.exponents().to_vec(), f.reduce_rational(&(c / &lc)).unwrap()))
                .collect();
            terms.sort();
            let mut mg = mg;
            mg.sort();
            assert_eq!(terms, mg);
        }
    }

    #[test]
    fn field_arithmetic() {
        let f = Field::new(101).unwrap();
        assert_eq!(f.mul(f.inv(7), 7), 1);
        assert_eq!(f.reduce_rational(&q(-1, 2)), Some(50));
        assert_eq!(f.reduce_rational(&q(1, 101)), None);
        assert!(Field::new(100).is_err());
        let p: Vec<u64> = primes().take(2).collect();
        assert!(p[0] > p[1] && p[0] < 1 << 62);
    }

    #[test]
    fn matches_rational_basis() {
        let g = parse_system("x^2 + y^2 - 1\nx*y - 2\nz^2 - x + y", None).unwrap();
        for order in [TermOrder::lex(3), TermOrder::grevlex(3)] {
            let gb = buchberger(&g, &order, &Budget::default()).unwrap();
            let p = primes().next().unwrap();
            let m = buchberger_mod(&g, &order, p, 10_000).unwrap();
            images_agree(&gb, &m);
        }
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003i64) * BigInt::from(998_244_353i64);
        let x = q(-355, 113);
        let f = |p: i64| {
            let fld = Field::new(p as u64).unwrap();
            BigInt::from(fld.reduce_rational(&x).unwrap())
        };
        // CRT by hand for two primes.
        let (a, b) = (f(1_000_003), f(998_244_353));
        let p1 = BigInt::from(1_000_003i64);
        let p2 = BigInt::from(998_244_353i64);
        let mut r = BigInt::zero();
        for k in 0..p1.to_i64().unwrap() {
            let c = &b + &p2 * BigInt::from(k);
            if c.mod_floor(&p1) == a {
                r = c;
                break;
            }
        }
        assert_eq!(rational_reconstruction(&r, &m), Some(x));
    }

    #[test]
    fn shape_of_circle_and_parabola() {
        // y = x^2 - 1, x^2 + y^2 = 2 has 4 simple solutions with distinct x.
        let g = parse_system("y - x^2 + 1\nx^2 + y^2 - 2", None).unwrap();
        let lifted = lift_shape(&g, &[], &TermOrder::grevlex(2), 0, &Budget::default()).unwrap();
        assert_eq!(lifted.dim, 4);
        assert_eq!(
            lifted.eliminant.primitive(),
            UniPoly::from_i64(&[-1, 0, -1, 0, 1]).primitive()
        );
        let (v, row) = &lifted.rows[0];
        assert_eq!(*v, 1);
        assert_eq!(*row, UniPoly::from_i64(&[-1, 0, 1]));
        for f in &g {
            assert!(lifted.residue(f).unwrap().is_zero());
        }
    }

    #[test]
    fn rejects_non_shape() {
        let g = parse_system("x^2 - 2\ny^2 - 3", None).unwrap();
        let m = buchberger_mod(&g, &TermOrder::grevlex(2), primes().next().unwrap(), 100).unwrap();
        assert!(m.shape(1, 100).is_err());
    }

    #[test]
    fn saturation_matches() {
        let g = parse_system("x*y\nx^2 - x", None).unwrap();
        let x = MultiPoly::var(g[0].vars(), 0);
        let m = saturate_mod(&g, &[x], &TermOrder::grevlex(2), primes().next().unwrap(), 100).unwrap();
        // <x*y, x^2 - x> : x^inf = <y, x - 1>
        assert_eq!(m.leading_exponents(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn positive_dimensional_is_reported() {
        let g = parse_system("x*y - 1", None).unwrap();
        let m = buchberger_mod(&g, &TermOrder::grevlex(2), primes().next().unwrap(), 100).unwrap();
        assert!(m.shape(0, 50).is_err());
    }
}
