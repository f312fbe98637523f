use proptest::prelude::*;
use sumfree_core::arith::units;
use sumfree_core::group::automorphism_generators;
use sumfree_core::sumfree::{
    c_of_g, enumerate_extremal, for_each_sumfree, fourier_residual, is_sum_free, is_t_free,
    max_sumfree_bruteforce, schur_triple_count,
};
use sumfree_core::{Ctx, FinAbGroup, GroupSubset, GroupType, Guards};

fn subset(g: &FinAbGroup, bits: &[bool]) -> GroupSubset {
    GroupSubset::from_elems(g, g.elements().filter(|&x| bits[x % bits.len()]))
}

#[test]
fn closed_form_matches_search_on_small_groups() {
    let ctx = Ctx::default();
    let mut groups: Vec<Vec<u64>> = (2..=26).map(|m| vec![m]).collect();
    groups.extend([vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![2, 6], vec![4, 4], vec![3, 6], vec![2, 2, 4], vec![5, 5]]);
    let mut types = std::collections::BTreeSet::new();
    for f in groups {
        let g = FinAbGroup::new(&f).unwrap();
        types.insert(match g.group_type() {
            GroupType::TypeI(_) => 1,
            GroupType::TypeII => 2,
            GroupType::TypeIII => 3,
        });
        let (best, witness) = max_sumfree_bruteforce(&g, &ctx).unwrap();
        assert_eq!(c_of_g(&g), best, "{f:?}");
        assert!(is_sum_free(&witness));
    }
    assert!(types.len() >= 3);
    assert_eq!(FinAbGroup::new(&[3, 3]).unwrap().group_type(), GroupType::TypeII);
}

#[test]
fn automorphisms_preserve_sum_free_and_extremal_sets() {
    let ctx = Ctx::default();
    for m in [7u64, 13] {
        let g = FinAbGroup::cyclic(m).unwrap();
        let gens = automorphism_generators(&g, &Guards::default()).unwrap();
        let extremal = enumerate_extremal(&g, &ctx).unwrap();
        let mut all = Vec::new();
        for_each_sumfree(&g, &ctx, |a| all.push(a.clone())).unwrap();
        for a in &gens {
            for s in &all {
                assert!(is_sum_free(&a.apply_set(s)));
            }
            let mut images: Vec<GroupSubset> = extremal.iter().map(|l| a.apply_set(l)).collect();
            images.sort();
            assert_eq!(images, extremal);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dilation_preserves_sum_freeness(m in 2u64..80, bits in prop::collection::vec(any::<bool>(), 1..80), di in any::<prop::sample::Index>()) {
        let g = FinAbGroup::cyclic(m).unwrap();
        let a = subset(&g, &bits);
        let us = units(m);
        let d = *di.get(&us);
        prop_assert_eq!(is_sum_free(&a.dilate(d as i64)), is_sum_free(&a));
    }

    #[test]
    fn schur_fourier_and_predicate_agree(gi in 0usize..6, bits in prop::collection::vec(prop::bool::weighted(0.2), 1..130)) {
        let f: [&[u64]; 6] = [&[13], &[7, 7], &[5, 25], &[2, 2, 8], &[121], &[3, 3, 9]];
        let g = FinAbGroup::new(f[gi]).unwrap();
        let a = subset(&g, &bits);
        let triples = schur_triple_count(&a);
        let residual = fourier_residual(&a);
        prop_assert!((residual - triples as f64).abs() < 1e-6);
        prop_assert_eq!(is_sum_free(&a), triples == 0);
    }

    #[test]
    fn two_free_means_sum_free(gi in 0usize..4, bits in prop::collection::vec(prop::bool::weighted(0.15), 1..60)) {
        let f: [&[u64]; 4] = [&[7], &[7, 7], &[19], &[2, 10]];
        let g = FinAbGroup::new(f[gi]).unwrap();
        let a = subset(&g, &bits);
        prop_assert_eq!(is_t_free(&a, 2).unwrap(), is_sum_free(&a));
    }
}
