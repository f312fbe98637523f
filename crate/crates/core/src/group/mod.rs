//! Finite abelian groups in invariant-factor form.
//!
//! Elements are addressed by their mixed-radix index: the coordinate tuple
//! `(x_1, …, x_r)` with `0 ≤ x_i < d_i` maps to
//! `((x_1·d_2 + x_2)·d_3 + …)·d_r + x_r`, so index order is lexicographic
//! order on tuples and the identity is index 0.

mod aut;
mod hom;
mod subgroup;
mod subset;

pub use aut::{aut_order, automorphism_generators, Automorphism};
pub use hom::{enumerate_splittings, enumerate_surjections_to_cyclic, layers, CyclicHom, Splitting};
pub use subgroup::{enumerate_subgroups, stabilizer, Subgroup};
pub use subset::GroupSubset;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::factorize;
use crate::error::{Error, Result};

/// Element index into a [`FinAbGroup`].
pub type Elem = usize;

const TABLE_MAX: usize = 1024;

#[derive(Clone)]
pub struct FinAbGroup(Arc<GroupData>);

struct GroupData {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
    table: OnceLock<Vec<u16>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GroupType {
    TypeI(u64),
    TypeII,
    TypeIII,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::TypeI(p) => write!(f, "I({p})"),
            GroupType::TypeII => f.write_str("II"),
            GroupType::TypeIII => f.write_str("III"),
        }
    }
}

/// Combine prime-power cyclic factors into invariant factors `d_1 | … | d_r`.
fn invariant_factors_from_primary(primary: &BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    let rank = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; rank];
    for (&p, exps) in primary {
        let mut exps = exps.clone();
        exps.sort_unstable();
        // Largest powers go to the last invariant factors.
        for (j, &e) in exps.iter().rev().enumerate() {
            out[rank - 1 - j] *= p.pow(e);
        }
    }
    out
}

/// Normalise any list of cyclic orders into invariant-factor form.
pub fn normalize_factors(factors: &[u64]) -> Result<Vec<u64>> {
    if factors.is_empty() {
        return Err(Error::InvalidGroup("empty factor list".into()));
    }
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &d in factors {
        if d <= 1 {
            return Err(Error::InvalidGroup(format!("factor {d} must be at least 2")));
        }
        for (p, e) in factorize(d) {
            primary.entry(p).or_default().push(e);
        }
    }
    Ok(invariant_factors_from_primary(&primary))
}

impl FinAbGroup {
    /// Build a group from cyclic factors, normalising to invariant-factor form.
    pub fn new(factors: &[u64]) -> Result<Self> {
        Self::from_invariant_factors(normalize_factors(factors)?)
    }

    /// The trivial group `{0}`; it has no invariant factors.
    pub fn trivial() -> Self {
        Self::from_invariant_factors(Vec::new()).expect("trivial group")
    }

    /// Build from factors already in invariant-factor form; an empty list
    /// gives the trivial group.
    pub(crate) fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let exponent = factors.last().copied().unwrap_or(1);
        Ok(FinAbGroup(Arc::new(GroupData {
            factors,
            strides,
            order,
            exponent,
            table: OnceLock::new(),
        })))
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(&[m])
    }

    /// Parse a comma-separated factor literal such as `"7,7"`.
    pub fn parse(literal: &str) -> Result<Self> {
        let factors = literal
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidGroup(format!("bad factor {s:?} in {literal:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.0.factors
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() == 1
    }

    pub fn literal(&self) -> String {
        self.factors()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn group_type(&self) -> GroupType {
        let primes = factorize(self.order() as u64);
        if let Some(&(p, _)) = primes.iter().find(|(p, _)| p % 3 == 2) {
            GroupType::TypeI(p)
        } else if primes.iter().any(|&(p, _)| p == 3) {
            GroupType::TypeII
        } else {
            GroupType::TypeIII
        }
    }

    pub fn is_type_iii(&self) -> bool {
        self.group_type() == GroupType::TypeIII
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn coords(&self, x: Elem) -> Vec<u64> {
        self.0
            .factors
            .iter()
            .zip(&self.0.strides)
            .map(|(&d, &s)| ((x / s) as u64) % d)
            .collect()
    }

    /// Index of a coordinate tuple; coordinates are reduced modulo the factors.
    pub fn index(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidArgument(format!(
                "element {coords:?} has {} coordinates, group rank is {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(self.index_unchecked(coords))
    }

    fn index_unchecked(&self, coords: &[u64]) -> Elem {
        coords
            .iter()
            .zip(&self.0.factors)
            .zip(&self.0.strides)
            .map(|((&c, &d), &s)| (c % d) as usize * s)
            .sum()
    }

    /// The canonical generator `e_i` (unit vector in coordinate `i`).
    pub fn generator(&self, i: usize) -> Elem {
        self.0.strides[i]
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let mut out = 0;
        for (&d, &s) in self.0.factors.iter().zip(&self.0.strides) {
            let d = d as usize;
            out += ((a / s) % d + (b / s) % d) % d * s;
        }
        out
    }

    fn table(&self) -> &[u16] {
        self.0.table.get_or_init(|| {
            let n = self.order();
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self.add_slow(a, b) as u16;
                }
            }
            t
        })
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let n = self.order();
        if self.rank() == 1 {
            let s = a + b;
            return if s >= n { s - n } else { s };
        }
        if n <= TABLE_MAX {
            return self.table()[a * n + b] as Elem;
        }
        self.add_slow(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.rank() == 1 {
            return if a == 0 { 0 } else { self.order() - a };
        }
        let mut out = 0;
        for (&d, &s) in self.0.factors.iter().zip(&self.0.strides) {
            let d = d as usize;
            out += (d - (a / s) % d) % d * s;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `k·a` for an integer `k` (negative allowed).
    pub fn mul(&self, k: i64, a: Elem) -> Elem {
        let mut out = 0;
        for (&d, &s) in self.0.factors.iter().zip(&self.0.strides) {
            let x = ((a / s) as u64 % d) as i128;
            out += ((k as i128 * x).rem_euclid(d as i128)) as usize * s;
        }
        out
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        self.coords(a)
            .iter()
            .zip(self.factors())
            .map(|(&x, &d)| d / num_integer::gcd(x, d))
            .fold(1, num_integer::lcm)
    }

    /// Number of elements `x` with `k·x = 0`.
    pub fn torsion_count(&self, k: u64) -> usize {
        self.factors()
            .iter()
            .map(|&d| num_integer::gcd(k, d) as usize)
            .product()
    }
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }
}

impl Eq for FinAbGroup {}

impl std::hash::Hash for FinAbGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.factors.hash(state);
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return f.write_str("{0}");
        }
        let parts: Vec<String> = self.factors().iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// Invariant factors of a subgroup, computed from the torsion counts
/// `#{x ∈ K : p^j x = 0}` of its elements.
pub(crate) fn invariant_factors_of(g: &FinAbGroup, members: &[Elem]) -> Vec<u64> {
    let order = members.len() as u64;
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, _) in factorize(order) {
        // ranks[j] = number of cyclic p-factors of exponent > j
        let mut ranks = Vec::new();
        let mut prev = 1u64;
        let mut pj = 1i64;
        loop {
            pj *= p as i64;
            let cnt = members.iter().filter(|&&x| g.mul(pj, x) == 0).count() as u64;
            let mut ratio = cnt / prev;
            let mut r = 0u32;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            if r == 0 {
                break;
            }
            ranks.push(r);
            prev = cnt;
        }
        let mut exps = Vec::new();
        for j in 0..ranks.len() {
            let next = ranks.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(ranks[j] - next) {
                exps.push(j as u32 + 1);
            }
        }
        primary.insert(p, exps);
    }
    invariant_factors_from_primary(&primary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_examples() {
        let g = FinAbGroup::new(&[7]).unwrap();
        assert_eq!((g.order(), g.exponent()), (7, 7));
        let g = FinAbGroup::new(&[7, 7]).unwrap();
        assert_eq!((g.order(), g.exponent()), (49, 7));
        let g = FinAbGroup::new(&[7, 91]).unwrap();
        assert_eq!((g.order(), g.exponent()), (637, 91));
        assert_eq!(g.factors(), &[7, 91]);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_factors(&[13, 7]).unwrap(), vec![91]);
        assert_eq!(normalize_factors(&[91, 7]).unwrap(), vec![7, 91]);
        assert_eq!(normalize_factors(&[4, 2, 3]).unwrap(), vec![2, 12]);
        assert!(FinAbGroup::new(&[]).is_err());
        assert!(FinAbGroup::new(&[7, 1]).is_err());
        assert!(FinAbGroup::new(&[0]).is_err());
        assert!(FinAbGroup::parse("7,x").is_err());
        assert_eq!(FinAbGroup::parse(" 7, 7").unwrap().factors(), &[7, 7]);
    }

    #[test]
    fn types() {
        assert_eq!(FinAbGroup::cyclic(10).unwrap().group_type(), GroupType::TypeI(2));
        assert_eq!(FinAbGroup::cyclic(9).unwrap().group_type(), GroupType::TypeII);
        assert_eq!(FinAbGroup::cyclic(91).unwrap().group_type(), GroupType::TypeIII);
        assert_eq!(FinAbGroup::cyclic(35).unwrap().group_type(), GroupType::TypeI(5));
        assert_eq!(FinAbGroup::new(&[3, 7]).unwrap().group_type(), GroupType::TypeII);
    }

    #[test]
    fn indexing_round_trip() {
        let g = FinAbGroup::new(&[7, 91]).unwrap();
        for x in g.elements() {
            assert_eq!(g.index(&g.coords(x)).unwrap(), x);
        }
        assert_eq!(g.coords(1), vec![0, 1]);
        assert_eq!(g.coords(91), vec![1, 0]);
    }

    #[test]
    fn arithmetic_matches_coordinates() {
        for g in [FinAbGroup::new(&[7, 7]).unwrap(), FinAbGroup::new(&[7, 91]).unwrap()] {
            for a in (0..g.order()).step_by(5) {
                for b in (0..g.order()).step_by(7) {
                    let s = g.add(a, b);
                    let expect: Vec<u64> = g
                        .coords(a)
                        .iter()
                        .zip(g.coords(b))
                        .zip(g.factors())
                        .map(|((x, y), d)| (x + y) % d)
                        .collect();
                    assert_eq!(g.coords(s), expect);
                    assert_eq!(g.sub(s, b), a);
                }
                assert_eq!(g.add(a, g.neg(a)), 0);
                assert_eq!(g.mul(-1, a), g.neg(a));
            }
        }
    }

    #[test]
    fn orders_and_torsion() {
        let g = FinAbGroup::new(&[7, 49]).unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(g.generator(1)), 49);
        assert_eq!(g.torsion_count(7), 49);
        assert_eq!(g.torsion_count(49), 343);
    }

    #[test]
    fn subgroup_invariant_factors() {
        let g = FinAbGroup::new(&[7, 49]).unwrap();
        let all: Vec<Elem> = g.elements().collect();
        assert_eq!(invariant_factors_of(&g, &all), vec![7, 49]);
        let g = FinAbGroup::new(&[7, 91]).unwrap();
        let all: Vec<Elem> = g.elements().collect();
        assert_eq!(invariant_factors_of(&g, &all), vec![7, 91]);
        assert_eq!(invariant_factors_of(&g, &[0]), Vec::<u64>::new());
    }
}
