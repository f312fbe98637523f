use num_rational::Ratio;
use sumfree_core::classification::{
    build_family, cyclic_families, recover_structure, subgroups_of_h, Kind, RecoveryParams,
};
use sumfree_core::group::{automorphism_generators, enumerate_splittings, stabilizer, Splitting};
use sumfree_core::orbits::{
    cyclic_orbit_separation_check, extremal_family, orbit_count_subgroups, orbit_sizes_divide, orbits_under,
    ExtremalSource, Provenance,
};
use sumfree_core::sumfree::{c_of_g, is_sum_free};
use sumfree_core::{Ctx, Error, FinAbGroup, GroupSubset, Guards, Subgroup};

fn grp(f: &[u64]) -> FinAbGroup {
    FinAbGroup::new(f).unwrap()
}

#[test]
fn families_are_extremal_for_every_splitting_and_subgroup() {
    let ctx = Ctx::default();
    for f in [&[7u64][..], &[13], &[7, 7], &[49], &[91], &[13, 13], &[7, 49]] {
        let g = grp(f);
        let k = (g.exponent() - 1) / 6;
        let size = 2 * k as usize * g.order() / g.exponent() as usize;
        assert_eq!(size as u64, c_of_g(&g));
        for s in enumerate_splittings(&g, &Guards::default()).unwrap() {
            let zero = build_family(&s, Kind::Zero, None).unwrap();
            assert!(is_sum_free(&zero) && zero.len() == size);
            assert_eq!(stabilizer(&zero), *s.h());
            for ks in subgroups_of_h(&s, &ctx).unwrap() {
                for kind in [Kind::I, Kind::II] {
                    let l = build_family(&s, kind, Some(&ks)).unwrap();
                    assert!(is_sum_free(&l) && l.len() == size, "{f:?} {kind}");
                    assert_eq!(stabilizer(&l), ks);
                }
            }
        }
    }
}

#[test]
fn degenerate_kinds_match_cyclic_families() {
    for m in [7u64, 13, 19, 31, 37] {
        let g = FinAbGroup::cyclic(m).unwrap();
        let s = Splitting::new(Subgroup::trivial(&g), 1).unwrap();
        let [_, second, third] = cyclic_families(m).unwrap();
        let h = s.h().clone();
        assert_eq!(build_family(&s, Kind::I, Some(&h)).unwrap(), third);
        assert_eq!(build_family(&s, Kind::II, Some(&h)).unwrap(), second);
    }
}

#[test]
fn recovery_returns_built_families_unchanged() {
    let ctx = Ctx::default();
    let g = grp(&[7, 7]);
    let splittings = enumerate_splittings(&g, &Guards::default()).unwrap();
    for s in splittings.iter().step_by(23) {
        for ks in subgroups_of_h(s, &ctx).unwrap() {
            for kind in [Kind::Zero, Kind::I, Kind::II] {
                let l = build_family(s, kind, Some(&ks)).unwrap();
                let r = recover_structure(&l, &RecoveryParams::default(), &ctx).unwrap();
                assert_eq!(r.excess, 0);
                assert_eq!(r.family, l);
                assert_eq!(r.presentation.build().unwrap(), l);
            }
        }
    }
}

#[test]
fn recovery_enforces_declared_deficiency_and_strict_mode() {
    let ctx = Ctx::default();
    let g = FinAbGroup::cyclic(13).unwrap();
    let mut a = cyclic_families(13).unwrap()[0].clone();
    a.remove(5);
    let declared = RecoveryParams {
        epsilon: Some(Ratio::new(0, 1)),
        strict_mode: false,
    };
    assert!(recover_structure(&a, &declared, &ctx).is_err());
    let strict = RecoveryParams {
        epsilon: None,
        strict_mode: true,
    };
    assert!(recover_structure(&a, &strict, &ctx).is_err());
    let r = recover_structure(&a, &RecoveryParams::default(), &ctx).unwrap();
    assert_eq!((r.deficiency, r.excess), (1, 0));
    assert!(r.heuristic);
    let far = GroupSubset::from_elems(&g, [1, 2, 4]);
    match recover_structure(&far, &RecoveryParams::default(), &ctx) {
        Err(Error::NoAdmissibleSurjection(_)) | Err(Error::Precondition(_)) => {}
        other => panic!("expected a refusal, got {other:?}"),
    }
}

#[test]
fn orbit_counts_do_not_depend_on_the_generating_set() {
    let ctx = Ctx::default();
    for f in [&[13u64][..], &[7, 7]] {
        let g = grp(f);
        let (sets, _) = extremal_family(&g, ExtremalSource::Auto, &ctx).unwrap();
        let gens = automorphism_generators(&g, &Guards::default()).unwrap();
        let base = orbits_under(&sets, &gens, Provenance::Enumerated, &ctx).unwrap();
        let mut extended: Vec<_> = gens.iter().rev().cloned().collect();
        extended.extend(gens.iter().flat_map(|a| gens.iter().map(move |b| a.compose(b))));
        let again = orbits_under(&sets, &extended, Provenance::Enumerated, &ctx).unwrap();
        assert_eq!(base.orbit_sizes, again.orbit_sizes);
        assert_eq!(base.orbit_sizes.iter().sum::<usize>(), sets.len());
        assert!(orbit_sizes_divide(&base, &g));
    }
}

#[test]
fn subgroup_orbit_counts_multiply_over_primes() {
    let ctx = Ctx::default();
    let count = |f: &[u64]| orbit_count_subgroups(&grp(f), &ctx).unwrap().orbit_count;
    assert_eq!(count(&[91]), count(&[7]) * count(&[13]));
    assert_eq!(count(&[7, 91]), count(&[7, 7]) * count(&[13]));
    assert_eq!(count(&[5, 35]), count(&[5, 5]) * count(&[7]));
}

#[test]
fn cyclic_family_orbits_separate_except_at_seven() {
    for m in [7u64, 13, 19, 31, 37, 43] {
        let c = cyclic_orbit_separation_check(m).unwrap();
        assert!(c.holds, "m = {m}");
        assert!(c.c0_symmetric && c.c2_symmetric && !c.c1_symmetric);
        assert_eq!(c.c2_to_c0.is_some(), m == 7);
    }
}
