use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Elem, FinAbGroup};

/// A subset of a finite abelian group, stored as a membership bit-vector
/// over element indices.
#[derive(Clone)]
pub struct GroupSubset {
    group: FinAbGroup,
    words: Vec<u64>,
}

impl GroupSubset {
    pub fn empty(group: &FinAbGroup) -> Self {
        GroupSubset {
            group: group.clone(),
            words: vec![0; group.order().div_ceil(64)],
        }
    }

    pub fn full(group: &FinAbGroup) -> Self {
        let mut s = Self::empty(group);
        for x in group.elements() {
            s.insert(x);
        }
        s
    }

    pub fn from_elems(group: &FinAbGroup, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(group);
        for x in elems {
            s.insert(x);
        }
        s
    }

    /// Subset of a group of order at most 128 from a bit mask.
    pub fn from_mask(group: &FinAbGroup, mask: u128) -> Self {
        debug_assert!(group.order() <= 128);
        let mut s = Self::empty(group);
        for (i, w) in s.words.iter_mut().enumerate() {
            *w = (mask >> (64 * i)) as u64;
        }
        s
    }

    pub fn to_mask(&self) -> u128 {
        debug_assert!(self.group.order() <= 128);
        self.words
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &w)| acc | (w as u128) << (64 * i))
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: Elem) {
        debug_assert!(x < self.group.order());
        self.words[x / 64] |= 1 << (x % 64);
    }

    #[inline]
    pub fn remove(&mut self, x: Elem) {
        self.words[x / 64] &= !(1 << (x % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &GroupSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &GroupSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn zip_with(&self, other: &GroupSubset, f: impl Fn(u64, u64) -> u64) -> GroupSubset {
        GroupSubset {
            group: self.group.clone(),
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &GroupSubset) -> GroupSubset {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GroupSubset) -> GroupSubset {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GroupSubset) -> GroupSubset {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> GroupSubset {
        GroupSubset::full(&self.group).difference(self)
    }

    /// `self + g`.
    pub fn translate(&self, g: Elem) -> GroupSubset {
        GroupSubset::from_elems(&self.group, self.iter().map(|x| self.group.add(x, g)))
    }

    pub fn neg(&self) -> GroupSubset {
        GroupSubset::from_elems(&self.group, self.iter().map(|x| self.group.neg(x)))
    }

    /// `k·A = {k·a : a ∈ A}`.
    pub fn dilate(&self, k: i64) -> GroupSubset {
        GroupSubset::from_elems(&self.group, self.iter().map(|x| self.group.mul(k, x)))
    }

    pub fn sumset(&self, other: &GroupSubset) -> GroupSubset {
        let g = &self.group;
        let mut out = GroupSubset::empty(g);
        let bs = other.to_vec();
        for a in self.iter() {
            for &b in &bs {
                out.insert(g.add(a, b));
            }
        }
        out
    }

    pub fn difference_set(&self, other: &GroupSubset) -> GroupSubset {
        self.sumset(&other.neg())
    }

    /// The `t`-fold sumset `A + … + A`; `t = 0` gives `{0}`.
    pub fn iterated_sumset(&self, t: usize) -> GroupSubset {
        let mut acc = GroupSubset::from_elems(&self.group, [0]);
        for _ in 0..t {
            acc = acc.sumset(self);
        }
        acc
    }

    /// Image under a map given as an element permutation table.
    pub fn map(&self, table: &[u32]) -> GroupSubset {
        GroupSubset::from_elems(&self.group, self.iter().map(|x| table[x] as Elem))
    }

    pub fn coords(&self) -> Vec<Vec<u64>> {
        self.iter().map(|x| self.group.coords(x)).collect()
    }
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words && self.group == other.group
    }
}

impl Eq for GroupSubset {}

impl Hash for GroupSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

/// Lexicographic order on the ascending member lists.
impl Ord for GroupSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GroupSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.rank() == 1 {
            f.debug_set().entries(self.iter()).finish()
        } else {
            f.debug_set().entries(self.coords()).finish()
        }
    }
}
