use proptest::prelude::*;
use sumfree_core::group::{
    automorphism_generators, enumerate_splittings, enumerate_subgroups, stabilizer, Elem,
};
use sumfree_core::{FinAbGroup, GroupSubset, Guards};

const GROUPS: [&[u64]; 10] = [
    &[7],
    &[12],
    &[2, 4],
    &[3, 9],
    &[49],
    &[7, 7],
    &[2, 2, 8],
    &[5, 25],
    &[7, 49],
    &[7, 7, 7],
];

fn group(i: usize) -> FinAbGroup {
    FinAbGroup::new(GROUPS[i % GROUPS.len()]).unwrap()
}

fn subset_from_seed(g: &FinAbGroup, seed: &[bool]) -> GroupSubset {
    GroupSubset::from_elems(g, g.elements().filter(|&x| seed[x % seed.len()] ^ (x % 3 == 0 && seed.len() % 2 == 1)))
}

#[test]
fn every_subgroup_is_closed() {
    for f in [&[2u64, 2, 4][..], &[7, 7], &[3, 9], &[49]] {
        let g = FinAbGroup::new(f).unwrap();
        for k in enumerate_subgroups(&g, &Guards::default()).unwrap() {
            assert!(k.contains(0));
            assert_eq!(k.set().sumset(k.set()), *k.set());
        }
    }
}

#[test]
fn splittings_decompose_uniquely() {
    for f in [&[7u64, 7][..], &[13], &[7, 49], &[3, 9]] {
        let g = FinAbGroup::new(f).unwrap();
        for s in enumerate_splittings(&g, &Guards::default()).unwrap() {
            let m = s.m();
            assert_eq!(s.h().order() * m as usize, g.order());
            let mut seen = vec![false; g.order()];
            for h in s.h().set().iter() {
                for c in 0..m {
                    let x = s.element(h, c as i64);
                    assert!(!seen[x], "{x} has two decompositions");
                    seen[x] = true;
                    assert_eq!(s.decompose(x), (h, c));
                }
            }
            assert!(seen.iter().all(|&b| b));
        }
    }
}

#[test]
fn automorphisms_permute_subgroups() {
    for f in [&[7u64, 7][..], &[2, 4], &[3, 9], &[2, 2, 2]] {
        let g = FinAbGroup::new(f).unwrap();
        let subs: Vec<GroupSubset> = enumerate_subgroups(&g, &Guards::default())
            .unwrap()
            .into_iter()
            .map(|k| k.into_set())
            .collect();
        for a in automorphism_generators(&g, &Guards::default()).unwrap() {
            let mut images: Vec<GroupSubset> = subs.iter().map(|k| a.apply_set(k)).collect();
            images.sort();
            let mut sorted = subs.clone();
            sorted.sort();
            assert_eq!(images, sorted);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stabilizer_is_translation_invariant(gi in 0usize..10, seed in prop::collection::vec(any::<bool>(), 1..40), t in any::<usize>()) {
        let g = group(gi);
        let a = subset_from_seed(&g, &seed);
        let t: Elem = t % g.order();
        prop_assert_eq!(stabilizer(&a.translate(t)), stabilizer(&a));
    }

    #[test]
    fn large_halves_of_cosets_fill_the_sum_coset(
        gi in 0usize..10,
        hi in any::<prop::sample::Index>(),
        x in any::<usize>(),
        y in any::<usize>(),
        keep in prop::collection::vec(any::<bool>(), 1..64),
        keep2 in prop::collection::vec(any::<bool>(), 1..64),
    ) {
        let g = group(gi);
        let subs = enumerate_subgroups(&g, &Guards::default()).unwrap();
        let h = hi.get(&subs);
        let (x, y) = (x % g.order(), y % g.order());
        let members = h.set().to_vec();
        let need = members.len() / 2 + 1;
        // keep every flagged element, then top up to more than half
        let pick = |flags: &[bool], shift: Elem| {
            let mut chosen: Vec<Elem> = members.iter().enumerate().filter(|(i, _)| flags[i % flags.len()]).map(|(_, &e)| e).collect();
            for &e in &members {
                if chosen.len() >= need { break; }
                if !chosen.contains(&e) { chosen.push(e); }
            }
            GroupSubset::from_elems(&g, chosen.into_iter().map(|e| g.add(e, shift)))
        };
        let a = pick(&keep, x);
        let b = pick(&keep2, y);
        prop_assert!(2 * a.len() > members.len() && 2 * b.len() > members.len());
        prop_assert_eq!(a.sumset(&b), h.set().translate(g.add(x, y)));
    }
}
