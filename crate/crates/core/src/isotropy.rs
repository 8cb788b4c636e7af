//! Root strings, squared structure constants and the triple tensor `[k; ij]`
//! of the isotropy representation of `K/T`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rootsys::{Root, RootSystem};

/// The `α`-string through `β` is `β + kα`, `-p <= k <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootString {
    pub p: u32,
    pub q: u32,
}

pub fn root_string(sys: &RootSystem, alpha: &Root, beta: &Root) -> Result<RootString> {
    if !sys.is_root(alpha) || !sys.is_root(beta) {
        return Err(Error::domain("root string of a non-root"));
    }
    if beta == alpha || *beta == alpha.neg() {
        return Err(Error::domain("root string through a proportional root"));
    }
    let mut p = 0;
    while sys.is_root(&beta.sub(&alpha.scale(p as i64 + 1))) {
        p += 1;
    }
    let mut q = 0;
    while sys.is_root(&beta.add(&alpha.scale(q as i64 + 1))) {
        q += 1;
    }
    let cartan = rational::int(2) * sys.inner(alpha, beta) / sys.norm2(alpha);
    if cartan != rational::int(p as i64 - q as i64) {
        return Err(Error::Invariant(format!(
            "string of {alpha} through {beta}: p - q != Cartan integer"
        )));
    }
    Ok(RootString { p, q })
}

/// `N²_{α,β} = q(p+1)/2 · Q(α, α)`, or 0 when `α + β` is not a root.
pub fn n_squared(sys: &RootSystem, alpha: &Root, beta: &Root) -> Result<Rational> {
    if !sys.is_root(&alpha.add(beta)) {
        return Ok(Rational::zero());
    }
    let s = root_string(sys, alpha, beta)?;
    Ok(rational::int((s.q * (s.p + 1)) as i64) / rational::int(2) * sys.norm2(alpha))
}

/// Fully symmetric tensor on positive-root indices, stored once per sorted
/// index triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTensor {
    size: usize,
    entries: BTreeMap<[usize; 3], Rational>,
}

/// JSON form of one tensor entry; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub indices: [usize; 3],
    pub value: String,
}

impl TripleTensor {
    pub fn from_entries(size: usize, entries: impl IntoIterator<Item = ([usize; 3], Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (mut k, v) in entries {
            k.sort_unstable();
            if !v.is_zero() {
                map.insert(k, v);
            }
        }
        TripleTensor { size, entries: map }
    }

    /// Number of isotropy summands.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Real dimension of each summand.
    pub fn dim(&self, _i: usize) -> usize {
        2
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        let mut key = [i, j, k];
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 3], &Rational)> {
        self.entries.iter()
    }

    /// The tensor with indices relabelled by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> TripleTensor {
        TripleTensor::from_entries(
            self.size,
            self.entries
                .iter()
                .map(|(k, v)| ([perm[k[0]], perm[k[1]], perm[k[2]]], v.clone())),
        )
    }

    pub fn records(&self) -> Vec<TripleRecord> {
        self.entries
            .iter()
            .map(|(k, v)| TripleRecord {
                indices: [k[0] + 1, k[1] + 1, k[2] + 1],
                value: rational::to_string(v),
            })
            .collect()
    }
}

/// `[α+β; α β] = 2 N²_{α,β}` for every pair of positive roots whose sum is a
/// root.
pub fn triple_tensor(sys: &RootSystem) -> TripleTensor {
    let pos = sys.positive_roots();
    let mut entries = Vec::new();
    for (i, a) in pos.iter().enumerate() {
        for (j, b) in pos.iter().enumerate().skip(i + 1) {
            if let Some(k) = sys.index_of(&a.add(b)) {
                let n2 = n_squared(sys, a, b).expect("positive roots with a root sum");
                entries.push(([i, j, k], rational::int(2) * n2));
            }
        }
    }
    TripleTensor::from_entries(pos.len(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn g2_strings() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        assert_eq!(root_string(&g2, &a2, &a1).unwrap(), RootString { p: 0, q: 3 });
        assert_eq!(root_string(&g2, &a1, &a2).unwrap(), RootString { p: 0, q: 1 });
        assert_eq!(
            root_string(&g2, &a2, &Root(vec![1, 3])).unwrap(),
            RootString { p: 3, q: 0 }
        );
        assert!(root_string(&g2, &a1, &a1.neg()).is_err());
    }

    #[test]
    fn g2_n_squared() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        assert_eq!(n_squared(&g2, &a1, &a2).unwrap(), q(1, 8));
        assert_eq!(n_squared(&g2, &a2, &a1).unwrap(), q(1, 8));
        assert_eq!(n_squared(&g2, &a2, &Root(vec![1, 1])).unwrap(), q(1, 6));
        assert_eq!(n_squared(&g2, &a1, &Root(vec![1, 1])).unwrap(), q(0, 1));
    }

    #[test]
    fn g2_tensor() {
        let g2 = RootSystem::from_label("G2").unwrap();
        let t = triple_tensor(&g2);
        let expect = [
            ([0, 1, 2], q(1, 4)),
            ([1, 3, 4], q(1, 4)),
            ([2, 3, 5], q(1, 4)),
            ([0, 4, 5], q(1, 4)),
            ([1, 2, 3], q(1, 3)),
        ];
        assert_eq!(t.len(), 5);
        for (k, v) in expect {
            assert_eq!(t.get(k[2], k[0], k[1]), v);
        }
    }

    #[test]
    fn small_tensors() {
        let a1 = triple_tensor(&RootSystem::from_label("A1").unwrap());
        assert!(a1.is_empty());
        let a2 = triple_tensor(&RootSystem::from_label("A2").unwrap());
        assert_eq!(a2.records(), [TripleRecord { indices: [1, 2, 3], value: "1/3".into() }]);
    }
}
