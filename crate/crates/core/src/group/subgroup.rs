use std::collections::HashSet;

use super::{invariant_factors_of, Elem, FinAbGroup, GroupSubset};
use crate::config::Guards;
use crate::error::{guard, Error, Result};

/// A subgroup together with its isomorphism type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    set: GroupSubset,
    invariant_factors: Vec<u64>,
}

impl Subgroup {
    /// Wrap a subset after checking closure.
    pub fn from_subset(set: GroupSubset) -> Result<Self> {
        if !is_subgroup(&set) {
            return Err(Error::InvalidArgument(format!("{set:?} is not a subgroup")));
        }
        Ok(Self::from_closed(set))
    }

    pub(crate) fn from_closed(set: GroupSubset) -> Self {
        let invariant_factors = invariant_factors_of(set.group(), &set.to_vec());
        Subgroup {
            set,
            invariant_factors,
        }
    }

    pub fn trivial(g: &FinAbGroup) -> Self {
        Self::from_closed(GroupSubset::from_elems(g, [0]))
    }

    pub fn whole(g: &FinAbGroup) -> Self {
        Self::from_closed(GroupSubset::full(g))
    }

    /// `⟨x⟩`.
    pub fn cyclic(g: &FinAbGroup, x: Elem) -> Self {
        let mut set = GroupSubset::empty(g);
        let mut y = 0;
        loop {
            set.insert(y);
            y = g.add(y, x);
            if y == 0 {
                break;
            }
        }
        Self::from_closed(set)
    }

    pub fn set(&self) -> &GroupSubset {
        &self.set
    }

    pub fn into_set(self) -> GroupSubset {
        self.set
    }

    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// The subgroup as an abstract group.
    pub fn abstract_group(&self) -> FinAbGroup {
        FinAbGroup::from_invariant_factors(self.invariant_factors.clone()).expect("valid factors")
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    /// `K + ⟨x⟩`.
    pub fn join_element(&self, x: Elem) -> Subgroup {
        let g = self.set.group();
        let mut out = self.set.clone();
        let mut shift = x;
        while !self.set.contains(shift) {
            for k in self.set.iter() {
                out.insert(g.add(k, shift));
            }
            shift = g.add(shift, x);
        }
        Self::from_closed(out)
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}{:?}", self.invariant_factors, self.set)
    }
}

pub(crate) fn is_subgroup(set: &GroupSubset) -> bool {
    let g = set.group();
    if !set.contains(0) {
        return false;
    }
    let elems = set.to_vec();
    elems
        .iter()
        .all(|&a| set.contains(g.neg(a)) && elems.iter().all(|&b| set.contains(g.add(a, b))))
}

/// All subgroups of `g`, sorted by order and then lexicographically.
///
/// Starts from the cyclic subgroups and joins in one more generator at a
/// time until nothing new appears.
pub fn enumerate_subgroups(g: &FinAbGroup, guards: &Guards) -> Result<Vec<Subgroup>> {
    guard("group order", g.order() as u64, guards.structural_order as u64)?;
    let mut seen: HashSet<GroupSubset> = HashSet::new();
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    let mut all: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let c = Subgroup::cyclic(g, x);
        if seen.insert(c.set.clone()) {
            cyclic_gens.push(x);
            all.push(c);
        }
    }
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in frontier {
            for &x in &cyclic_gens {
                if all[i].contains(x) {
                    continue;
                }
                let j = all[i].join_element(x);
                if seen.insert(j.set.clone()) {
                    all.push(j);
                    next.push(all.len() - 1);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.set.cmp(&b.set)));
    Ok(all)
}

/// `S(A) = {g : g + A = A}`. The empty set is stabilised by everything.
pub fn stabilizer(a: &GroupSubset) -> Subgroup {
    let g = a.group();
    let Some(a0) = a.first() else {
        return Subgroup::whole(g);
    };
    let members = a.to_vec();
    // any stabilising shift maps a0 into A
    let set = GroupSubset::from_elems(
        g,
        members
            .iter()
            .map(|&x| g.sub(x, a0))
            .filter(|&s| members.iter().all(|&x| a.contains(g.add(x, s)))),
    );
    Subgroup::from_closed(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        let guards = Guards::default();
        assert_eq!(enumerate_subgroups(&grp(&[7]), &guards).unwrap().len(), 2);
        assert_eq!(enumerate_subgroups(&grp(&[7, 7]), &guards).unwrap().len(), 10);
        assert_eq!(enumerate_subgroups(&grp(&[49]), &guards).unwrap().len(), 3);
        let subs = enumerate_subgroups(&grp(&[91]), &guards).unwrap();
        assert_eq!(subs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 7, 13, 91]);
    }

    #[test]
    fn subgroup_lattice_is_closed_and_sorted() {
        let g = grp(&[7, 7]);
        let subs = enumerate_subgroups(&g, &Guards::default()).unwrap();
        for s in &subs {
            assert!(is_subgroup(s.set()));
        }
        assert_eq!(subs[0].order(), 1);
        assert_eq!(subs[9].order(), 49);
        assert!(subs.windows(2).all(|w| (w[0].order(), w[0].set()) < (w[1].order(), w[1].set())));
        assert_eq!(subs[1].invariant_factors(), &[7]);
        assert_eq!(subs[9].invariant_factors(), &[7, 7]);
    }

    #[test]
    fn guard_refuses_large_groups() {
        let guards = Guards {
            structural_order: 10,
            ..Guards::default()
        };
        assert!(enumerate_subgroups(&grp(&[13]), &guards).unwrap_err().is_guard());
    }

    #[test]
    fn stabilizer_examples() {
        let g = grp(&[7]);
        assert_eq!(stabilizer(&GroupSubset::full(&g)).order(), 7);
        assert_eq!(stabilizer(&GroupSubset::from_elems(&g, [3, 4])).order(), 1);
        assert_eq!(stabilizer(&GroupSubset::empty(&g)).order(), 7);

        let g = grp(&[7, 7]);
        let k = Subgroup::cyclic(&g, g.index(&[1, 3]).unwrap());
        let coset = k.set().translate(g.index(&[2, 5]).unwrap());
        assert_eq!(stabilizer(&coset), k);
    }

    #[test]
    fn from_subset_rejects_non_subgroups() {
        let g = grp(&[7]);
        assert!(Subgroup::from_subset(GroupSubset::from_elems(&g, [0, 1])).is_err());
        assert!(Subgroup::from_subset(GroupSubset::full(&g)).is_ok());
    }
}
