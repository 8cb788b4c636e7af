//! Root systems of compact simple Lie algebras.
//!
//! Cartan matrices follow `A_ij = 2(α_i, α_j)/(α_i, α_i)`, so simple
//! reflections act as `s_i(α_j) = α_j - A_ij α_i`. For `G2` this gives
//! `[[2, -1], [-3, 2]]` with `α1` long.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest Weyl group [`RootSystem::weyl_orbit_permutations`] will enumerate.
pub const MAX_WEYL_ORDER: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    F4,
    G2,
}

impl LieType {
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let bad = || Error::config(format!("unsupported Lie type {label:?}"));
        let mut chars = label.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, rank) {
            ('A', n) if n >= 1 => LieType::A(n),
            ('B', n) if n >= 2 => LieType::B(n),
            ('C', n) if n >= 3 => LieType::C(n),
            ('D', n) if n >= 4 => LieType::D(n),
            ('F', 4) => LieType::F4,
            ('G', 2) => LieType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        match *self {
            LieType::A(n) | LieType::B(n) | LieType::C(n) | LieType::D(n) => n,
            LieType::F4 => 4,
            LieType::G2 => 2,
        }
    }

    /// Unnormalised inner products of the simple roots (Bourbaki numbering).
    fn base_gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        let chain = |g: &mut Vec<Vec<i64>>, lens: &[i64], links: &[(usize, usize)]| {
            for (i, l) in lens.iter().enumerate() {
                g[i][i] = *l;
            }
            for &(i, j) in links {
                let v = -lens[i].max(lens[j]) / 2;
                g[i][j] = v;
                g[j][i] = v;
            }
        };
        let path: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        match *self {
            LieType::A(_) => chain(&mut g, &vec![2; n], &path),
            LieType::B(_) => {
                let mut lens = vec![4; n];
                lens[n - 1] = 2;
                chain(&mut g, &lens, &path)
            }
            LieType::C(_) => {
                let mut lens = vec![2; n];
                lens[n - 1] = 4;
                chain(&mut g, &lens, &path);
            }
            LieType::D(_) => {
                let mut links: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                links.push((n - 3, n - 1));
                chain(&mut g, &vec![2; n], &links)
            }
            LieType::F4 => chain(&mut g, &[4, 4, 2, 2], &path),
            LieType::G2 => {
                g[0][0] = 6;
                g[1][1] = 2;
                g[0][1] = -3;
                g[1][0] = -3;
            }
        }
        g
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LieType::A(n) => write!(f, "A{n}"),
            LieType::B(n) => write!(f, "B{n}"),
            LieType::C(n) => write!(f, "C{n}"),
            LieType::D(n) => write!(f, "D{n}"),
            LieType::F4 => write!(f, "F4"),
            LieType::G2 => write!(f, "G2"),
        }
    }
}

/// Integer coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    /// The positive root among `±self`.
    pub fn folded(&self) -> Root {
        if self.0.iter().any(|&c| c < 0) {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("a{}", i + 1)),
                -1 => parts.push(format!("-a{}", i + 1)),
                _ => parts.push(format!("{c}a{}", i + 1)),
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join("+").replace("+-", "-"))
    }
}

/// Rational coordinates in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(pub Vec<Rational>);

/// Killing-normalised inner product on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingForm {
    pub gram: Vec<Vec<Rational>>,
    /// Factor applied to the unnormalised integer Gram matrix.
    pub scale: Rational,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    form: KillingForm,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(LieType::parse(label)?)
    }

    pub fn new(lie_type: LieType) -> Result<Self> {
        let base = lie_type.base_gram();
        let n = lie_type.rank();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * base[i][j] / base[i][i]).collect())
            .collect();
        validate_cartan(&cartan)?;
        let positive = generate_positive_roots(&cartan);
        let index = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut sys = RootSystem {
            lie_type,
            cartan,
            form: KillingForm {
                gram: base
                    .iter()
                    .map(|row| row.iter().map(|&v| rational::int(v)).collect())
                    .collect(),
                scale: Rational::one(),
            },
            positive,
            index,
        };
        sys.form = sys.killing_normalised()?;
        Ok(sys)
    }

    fn killing_normalised(&self) -> Result<KillingForm> {
        let roots = self.roots();
        let scales: Vec<Rational> = roots
            .iter()
            .map(|a| {
                let sq: Rational = roots.iter().map(|b| num_traits::pow(self.inner(a, b), 2)).sum();
                self.inner(a, a) / sq
            })
            .collect();
        let c = scales[0].clone();
        if scales.iter().any(|s| *s != c) {
            return Err(Error::Invariant(
                "Killing identity has no common scale".into(),
            ));
        }
        Ok(KillingForm {
            gram: self
                .form
                .gram
                .iter()
                .map(|row| row.iter().map(|v| v * &c).collect())
                .collect(),
            scale: c,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn label(&self) -> String {
        self.lie_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn killing_form(&self) -> &KillingForm {
        &self.form
    }

    /// Positive roots ordered by height, then by decreasing coefficient
    /// vector (so `α1` precedes `α2`).
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        self.positive
            .iter()
            .cloned()
            .chain(self.positive.iter().map(Root::neg))
            .collect()
    }

    /// Index of a positive root.
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(&r.folded()) && !r.is_zero()
    }

    pub fn inner(&self, a: &Root, b: &Root) -> Rational {
        let mut acc = Rational::zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    acc += &self.form.gram[i][j] * rational::int(x * y);
                }
            }
        }
        acc
    }

    pub fn norm2(&self, a: &Root) -> Rational {
        self.inner(a, a)
    }

    /// Whether the `i`-th positive root has maximal length.
    pub fn is_long(&self, i: usize) -> bool {
        let max = self
            .positive
            .iter()
            .map(|r| self.norm2(r))
            .max()
            .expect("nonempty root system");
        self.norm2(&self.positive[i]) == max
    }

    /// `s_mirror(v) = v - 2 Q(v, mirror)/Q(mirror, mirror) · mirror`.
    pub fn weyl_reflect(&self, v: &Root, mirror: &Root) -> Result<Root> {
        if mirror.is_zero() {
            return Err(Error::domain("reflection in the zero vector"));
        }
        let k = rational::int(2) * self.inner(v, mirror) / self.norm2(mirror);
        if !k.is_integer() {
            return Err(Error::domain("mirror is not a root"));
        }
        let k = k.to_integer().try_into().expect("small Cartan integer");
        Ok(v.sub(&mirror.scale(k)))
    }

    /// Coordinates of a root in the fundamental-weight basis:
    /// `w_i = Σ_j A_ij c_j`.
    pub fn root_as_weight(&self, r: &Root) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| rational::int((0..n).map(|j| self.cartan[i][j] * r.0[j]).sum()))
                .collect(),
        )
    }

    /// `(w, α)` using `(Λ_i, α_j) = δ_ij (α_j, α_j)/2`.
    pub fn pair_weight_root(&self, w: &Weight, a: &Root) -> Rational {
        let half = rational::q(1, 2);
        (0..self.rank())
            .map(|j| &w.0[j] * rational::int(a.0[j]) * &self.form.gram[j][j] * &half)
            .sum()
    }

    pub fn weyl_reflect_weight(&self, w: &Weight, mirror: &Root) -> Result<Weight> {
        if mirror.is_zero() {
            return Err(Error::domain("reflection in the zero vector"));
        }
        let k = rational::int(2) * self.pair_weight_root(w, mirror) / self.norm2(mirror);
        let m = self.root_as_weight(mirror);
        Ok(Weight(
            w.0.iter().zip(&m.0).map(|(a, b)| a - &k * b).collect(),
        ))
    }

    /// `δ = Λ_1 + … + Λ_ℓ`, the half sum of the positive roots.
    pub fn delta_weight(&self) -> Weight {
        Weight(vec![Rational::one(); self.rank()])
    }

    /// Permutation of positive-root indices induced by reflecting in
    /// `mirror` and folding signs: `perm[k]` is the index of `±s(α_k)`.
    pub fn reflection_permutation(&self, mirror: &Root) -> Result<Vec<usize>> {
        self.positive
            .iter()
            .map(|r| {
                let image = self.weyl_reflect(r, mirror)?.folded();
                self.index_of(&image)
                    .ok_or_else(|| Error::Invariant(format!("{image} is not a root")))
            })
            .collect()
    }

    /// The Weyl group as permutations of positive-root indices, generated by
    /// the simple reflections. Sorted, identity first.
    pub fn weyl_orbit_permutations(&self) -> Result<Vec<Vec<usize>>> {
        let gens: Vec<Vec<usize>> = (0..self.rank())
            .map(|i| self.reflection_permutation(&Root::simple(self.rank(), i)))
            .collect::<Result<_>>()?;
        let id: Vec<usize> = (0..self.num_positive()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in &gens {
                let sw: Vec<usize> = w.iter().map(|&k| s[k]).collect();
                if seen.insert(sw.clone()) {
                    if seen.len() > MAX_WEYL_ORDER {
                        return Err(Error::config(format!(
                            "Weyl group of {} is too large to enumerate",
                            self.label()
                        )));
                    }
                    queue.push_back(sw);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let ok = if i == j {
                v == 2
            } else {
                v <= 0 && ((v == 0) == (a[j][i] == 0))
            };
            if !ok {
                return Err(Error::config(format!("invalid Cartan entry A[{i}][{j}] = {v}")));
            }
        }
    }
    Ok(())
}

/// Breadth-first closure by height using root strings: for `β` and simple
/// `α_i`, `p - q = Σ_j c_j A_ij`, and `β + α_i` is a root iff `q > 0`.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut all: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut layer: Vec<Root> = all.iter().cloned().collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for b in &layer {
            for i in 0..n {
                let ai = Root::simple(n, i);
                if *b == ai {
                    continue;
                }
                let mut p = 0;
                while all.contains(&b.sub(&ai.scale(p + 1))) {
                    p += 1;
                }
                let pq: i64 = (0..n).map(|j| b.0[j] * cartan[i][j]).sum();
                if p - pq > 0 {
                    next.insert(b.add(&ai));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Root> = all.into_iter().collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    roots
}

/// Positive-definiteness by exact Gaussian elimination (all pivots > 0).
pub fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    true
}
