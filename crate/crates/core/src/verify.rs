//! The acceptance battery: one check per criterion, each reporting a single
//! pass/fail line.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{interval_mod, k_of};
use crate::classification::{
    build_family, classify_cyclic_extremal, cyclic_families, disjoint_pair_cover, presentation_of,
    presentations_of, recover_structure, window_census, Kind, PresentationOutcome, RecoveryParams,
};
use crate::config::Ctx;
use crate::counting::{
    a_of_h, a_of_h_streaming, bah_bound, coun_bound, doubling_table, sf_bounds, small_g_bound,
    window_count_identity, BoundParams, DyadicRational,
};
use crate::error::{Error, Result};
use crate::group::{
    automorphism_generators, enumerate_splittings, enumerate_subgroups, enumerate_surjections_to_cyclic,
    stabilizer, Elem, FinAbGroup, GroupSubset, Subgroup,
};
use crate::orbits::{
    homogeneous_transitivity_check, orbi_formula, orbit_count_extremal, orbit_count_subgroups, rorb_check,
    subgroup_iso_class_count, ExtremalSource,
};
use crate::sumfree::{
    c_of_g, count_all_sumfree, enumerate_extremal, fourier_residual, is_sum_free, kneser_coset_check,
    kneser_identity, layer_inequality_check, max_sumfree_bruteforce, pair_partition, schur_triple_count,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Fast,
    Full,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}; expected fast or full"))),
        }
    }

    /// Randomised cases per property.
    pub fn samples(self) -> usize {
        match self {
            Suite::Fast => 250,
            Suite::Full => 1000,
        }
    }
}

/// Oracle values stored beside the tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub sf_z13: u64,
    pub window_census_z13: GoldenCensus,
    pub sf_z7x7: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCensus {
    pub total: u64,
    pub covered: u64,
    pub exceptions: u64,
}

pub const GOLDEN_JSON: &str = include_str!("../tests/fixtures/golden.json");

pub fn golden() -> Golden {
    serde_json::from_str(GOLDEN_JSON).expect("golden fixture parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {}: {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed_ms
        )
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "c(G) agreement"),
    (2, "cyclic classification"),
    (3, "general classification"),
    (4, "extremal orbit counts"),
    (5, "subgroup orbits"),
    (6, "census and sandwich"),
    (7, "window identity"),
    (8, "doubling tables"),
    (9, "property suites"),
    (10, "recovery"),
    (11, "bound calculators"),
];

/// Outcome of one criterion: pass flag and a one-line detail.
type Check = Result<(bool, String)>;

pub fn run_criterion(id: u8, suite: Suite, ctx: &Ctx) -> CriterionResult {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion");
    let start = Instant::now();
    let outcome = match id {
        1 => c1_c_agreement(ctx),
        2 => c2_cyclic_classification(ctx),
        3 => c3_general_classification(ctx),
        4 => c4_orbit_counts(ctx),
        5 => c5_subgroup_orbits(ctx),
        6 => c6_census(suite, ctx),
        7 => c7_window_identity(suite, ctx),
        8 => c8_doubling(ctx),
        9 => c9_properties(suite, ctx),
        10 => c10_recovery(suite, ctx),
        11 => c11_bounds(ctx),
        _ => Err(Error::InvalidArgument(format!("no criterion {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn run_suite(suite: Suite, ctx: &Ctx) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, suite, ctx)).collect()
}

fn cyc(m: u64) -> FinAbGroup {
    FinAbGroup::cyclic(m).expect("m ≥ 2")
}

fn grp(f: &[u64]) -> FinAbGroup {
    FinAbGroup::new(f).expect("valid factors")
}

fn pretty(g: &FinAbGroup) -> String {
    let f: Vec<String> = g.factors().iter().map(|m| format!("Z/{m}")).collect();
    f.join(" x ")
}

fn c1_c_agreement(ctx: &Ctx) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut listed_mismatch = Vec::new();
    // (m, value listed alongside the criterion)
    for (m, listed) in [(7, 2), (10, 4), (13, 4), (19, 6), (31, 10)] {
        let g = cyc(m);
        let c = c_of_g(&g);
        let (bf, w) = max_sumfree_bruteforce(&g, ctx)?;
        ok &= c == bf && is_sum_free(&w) && w.len() as u64 == bf;
        if c != listed {
            listed_mismatch.push(format!("Z/{m} listed {listed}, witness {:?}", w.to_vec()));
        }
        parts.push(format!("Z/{m}: {c}={bf}"));
    }
    if !listed_mismatch.is_empty() {
        parts.push(format!("listed value differs: {}", listed_mismatch.join("; ")));
    }
    Ok((ok, parts.join(", ")))
}

fn c2_cyclic_classification(ctx: &Ctx) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [7, 13, 19, 31] {
        let fams = cyclic_families(m)?;
        let sets = enumerate_extremal(&cyc(m), ctx)?;
        let mut failures = 0;
        for e in &sets {
            match classify_cyclic_extremal(e)? {
                Some((d, id)) if e.dilate(d as i64) == fams[id as usize - 1] => {}
                _ => failures += 1,
            }
        }
        ok &= failures == 0 && !sets.is_empty();
        parts.push(format!("m={m}: {} sets, {failures} failures", sets.len()));
    }
    Ok((ok, parts.join("; ")))
}

/// Closure of a family of sets under a set of automorphism generators.
fn aut_closure(g: &FinAbGroup, seeds: Vec<GroupSubset>, ctx: &Ctx) -> Result<Vec<GroupSubset>> {
    let gens = automorphism_generators(g, &ctx.guards)?;
    let mut seen: HashSet<GroupSubset> = seeds.iter().cloned().collect();
    let mut queue = seeds;
    while let Some(s) = queue.pop() {
        for a in &gens {
            let img = a.apply_set(&s);
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    let mut out: Vec<GroupSubset> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn c3_general_classification(ctx: &Ctx) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [7, 13, 19] {
        let sets = enumerate_extremal(&cyc(m), ctx)?;
        let mut missing = 0;
        for l in &sets {
            match presentation_of(l, ctx)? {
                PresentationOutcome::Found(p) if p.build()? == *l => {}
                _ => missing += 1,
            }
        }
        ok &= missing == 0;
        parts.push(format!("Z/{m}: {}/{} presented", sets.len() - missing, sets.len()));
    }
    let g = grp(&[7, 7]);
    let mut built = Vec::new();
    let subgroups = enumerate_subgroups(&g, &ctx.guards)?;
    for s in enumerate_splittings(&g, &ctx.guards)? {
        built.push(build_family(&s, Kind::Zero, None)?);
        for ks in subgroups.iter().filter(|k| k.is_subgroup_of(s.h())) {
            built.push(build_family(&s, Kind::I, Some(ks))?);
            built.push(build_family(&s, Kind::II, Some(ks))?);
        }
    }
    let images = aut_closure(&g, built, ctx)?;
    let (mut presented, mut exact) = (0, 0);
    for l in &images {
        if let PresentationOutcome::Found(p) = presentation_of(l, ctx)? {
            presented += usize::from(p.build()? == *l);
        }
        let r = recover_structure(l, &RecoveryParams::default(), ctx)?;
        exact += usize::from(r.excess == 0 && r.family == *l);
    }
    ok &= presented == images.len() && exact == images.len();
    parts.push(format!(
        "(Z/7)^2: {} Aut-images, {presented} presented, {exact} recovered with excess 0",
        images.len()
    ));
    Ok((ok, parts.join("; ")))
}

fn c4_orbit_counts(ctx: &Ctx) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, expected) in [(&[7][..], 2), (&[13], 3), (&[19], 3), (&[7, 7], 4)] {
        let g = grp(f);
        let report = orbit_count_extremal(&g, ExtremalSource::Auto, ctx)?;
        let formula = orbi_formula(g.exponent(), g.rank() as u64 - 1)?;
        let rorb = rorb_check(&g, ExtremalSource::Auto, ctx)?;
        ok &= report.orbit_count == expected && formula == expected as u128 && rorb.holds;
        parts.push(format!(
            "{}: {} orbits, formula {formula}, 2·{}+{}",
            pretty(&g),
            report.orbit_count,
            rorb.subgroup_orbits,
            rorb.epsilon
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn c5_subgroup_orbits(ctx: &Ctx) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, (p, t, r)) in [(&[7, 7][..], (7, 1, 2)), (&[49], (7, 2, 1))] {
        let h = grp(f);
        let orbits = orbit_count_subgroups(&h, ctx)?.orbit_count;
        let classes = subgroup_iso_class_count(p, t, r)?;
        let trans = homogeneous_transitivity_check(&h, ctx)?;
        ok &= orbits as u128 == classes && classes == 3 && trans.holds;
        parts.push(format!("{}: {orbits} orbits = C({},{}) = {classes}", pretty(&h), t + r, r));
    }
    Ok((ok, parts.join("; ")))
}

fn c6_census(suite: Suite, ctx: &Ctx) -> Check {
    let gold = golden();
    let mut groups = vec![(grp(&[7]), 16u64), (grp(&[13]), gold.sf_z13)];
    if suite == Suite::Full {
        groups.push((grp(&[7, 7]), gold.sf_z7x7));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (g, expected) in groups {
        let count = count_all_sumfree(&g, ctx)?;
        let b = sf_bounds(&g, ctx)?;
        let lower_ok = b.lower <= DyadicRational::from_int(count);
        ok &= count == expected && lower_ok && count >= 1u64 << c_of_g(&g);
        parts.push(format!("|SF({})| = {count}, a(H)2^c = {}", pretty(&g), b.lower));
    }
    let w = window_census(&grp(&[13]), ctx)?;
    ok &= w.total == gold.window_census_z13.total && w.exceptions == gold.window_census_z13.exceptions;
    parts.push(format!("Z/13 window exceptions {}", w.exceptions));
    Ok((ok, parts.join("; ")))
}

fn c7_window_identity(suite: Suite, ctx: &Ctx) -> Check {
    let g = grp(&[7, 7]);
    let splittings = enumerate_splittings(&g, &ctx.guards)?;
    let take = if suite == Suite::Full { splittings.len() } else { 1 };
    let mut ok = true;
    let mut first = None;
    for s in splittings.iter().take(take) {
        let w = window_count_identity(s, ctx)?;
        ok &= w.holds()
            && w.dfs_count == 139264
            && w.a_h == DyadicRational::new(15, 1)
            && w.closed_form == DyadicRational::from_int(139264);
        first.get_or_insert(w);
    }
    let w = first.expect("splittings exist");
    Ok((
        ok,
        format!(
            "DFS {} = layered {} = (1 + {})·2^{} over {take} splitting(s); a(H)·2^c alone is {}",
            w.dfs_count, w.layered_count, w.a_h, w.c, w.literal
        ),
    ))
}

fn c8_doubling(ctx: &Ctx) -> Check {
    let h = cyc(7);
    let t = doubling_table(&h, 2, ctx)?;
    let a1 = t.a();
    let a2 = a_of_h_streaming(&h, 2, ctx)?;
    let half = DyadicRational::new(15, 1);
    let ok = t.total() == 127 && t.get(1, 1) == 7 && t.get(2, 3) == 21 && a1 == half && a2 == half;
    Ok((
        ok,
        format!(
            "ΣS = {}, S(1,1) = {}, S(2,3) = {}, a = {a1} (table) = {a2} (stream)",
            t.total(),
            t.get(1, 1),
            t.get(2, 3)
        ),
    ))
}

const PROPERTY_GROUPS: [&[u64]; 12] = [
    &[7],
    &[13],
    &[19],
    &[49],
    &[91],
    &[7, 7],
    &[7, 49],
    &[13, 13],
    &[7, 7, 7],
    &[2, 2, 4],
    &[3, 9],
    &[5, 25],
];

const TYPE_III_GROUPS: [&[u64]; 8] = [&[7], &[13], &[19], &[49], &[91], &[7, 7], &[13, 13], &[7, 7, 7]];

fn random_subset(g: &FinAbGroup, density: f64, rng: &mut ChaCha8Rng) -> GroupSubset {
    GroupSubset::from_elems(g, g.elements().filter(|_| rng.gen_bool(density)))
}

/// A random sum-free set: greedy over a shuffled order, then thinned.
pub fn random_sum_free(g: &FinAbGroup, rng: &mut ChaCha8Rng) -> GroupSubset {
    let mut order: Vec<Elem> = g.elements().skip(1).collect();
    order.shuffle(rng);
    let mut a = GroupSubset::empty(g);
    for x in order {
        let mut trial = a.clone();
        trial.insert(x);
        if is_sum_free(&trial) {
            a = trial;
        }
    }
    let keep = rng.gen_range(0.3..1.0);
    GroupSubset::from_elems(g, a.iter().filter(|_| rng.gen_bool(keep)))
}

fn c9_properties(suite: Suite, ctx: &Ctx) -> Check {
    let n_cases = suite.samples();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut parts = Vec::new();
    let mut ok = true;

    // Kneser coset law and the identity for pairs
    let subgroup_cache: Vec<Vec<Subgroup>> = PROPERTY_GROUPS
        .iter()
        .map(|f| enumerate_subgroups(&grp(f), &ctx.guards))
        .collect::<Result<_>>()?;
    let (mut applicable, mut violations) = (0, 0);
    for _ in 0..n_cases {
        let gi = rng.gen_range(0..PROPERTY_GROUPS.len());
        let g = grp(PROPERTY_GROUPS[gi]);
        let b = if rng.gen_bool(0.6) {
            let ks = subgroup_cache[gi].choose(&mut rng).expect("nonempty");
            let x = rng.gen_range(0..g.order());
            let dense = rng.gen_range(0.5..1.0);
            let mut b = GroupSubset::from_elems(&g, ks.set().iter().filter(|_| rng.gen_bool(dense)).map(|y| g.add(y, x)));
            if b.is_empty() {
                b.insert(x);
            }
            if rng.gen_bool(0.2) {
                b.insert(rng.gen_range(0..g.order()));
            }
            b
        } else {
            random_subset(&g, rng.gen_range(0.02..0.6), &mut rng)
        };
        let r = kneser_coset_check(&b);
        applicable += usize::from(r.applicable);
        violations += usize::from(!r.passes());
        let c = random_subset(&g, rng.gen_range(0.05..0.9), &mut rng);
        violations += usize::from(kneser_identity(&b, &c) == Some(false));
    }
    ok &= violations == 0;
    parts.push(format!("Kneser {n_cases} cases ({applicable} applicable), {violations} violations"));

    // layer inequality
    let mut violations = 0;
    for _ in 0..n_cases {
        let g = grp(TYPE_III_GROUPS[rng.gen_range(0..TYPE_III_GROUPS.len())]);
        let a = random_sum_free(&g, &mut rng);
        let divisors: Vec<u64> = crate::arith::divisors(g.exponent()).into_iter().filter(|&q| q > 1).collect();
        let q = *divisors.choose(&mut rng).expect("m > 1");
        let fs = enumerate_surjections_to_cyclic(&g, q)?;
        let f = fs.choose(&mut rng).expect("surjections exist");
        violations += usize::from(!layer_inequality_check(&a, f)?);
    }
    ok &= violations == 0;
    parts.push(format!("layer inequality {n_cases} cases, {violations} violations"));

    // pair partition
    let mut bad = Vec::new();
    for m in (7..=200).filter(|m| m % 6 == 1) {
        let k = k_of(m).expect("m ≡ 1 mod 6");
        let pairs = pair_partition(m)?;
        let mut covered: Vec<u64> = pairs.iter().flat_map(|&(y, h)| [y, h]).collect();
        covered.sort_unstable();
        let expected = interval_mod(k as i64 + 1, 5 * k as i64, m);
        let halves_ok = pairs.iter().all(|&(y, h)| 2 * h % m == y);
        if covered != expected || !halves_ok || pairs.len() as u64 != 2 * k {
            bad.push(m);
        }
    }
    ok &= bad.is_empty();
    parts.push(format!("pair partition m≤200: {} failures", bad.len()));

    // stabilisers of subsets of families lie in H
    let mut violations = 0;
    let mut checked = 0;
    let g13 = cyc(13);
    for s in enumerate_splittings(&g13, &ctx.guards)? {
        let k0 = Subgroup::trivial(&g13);
        for l in [
            build_family(&s, Kind::Zero, None)?,
            build_family(&s, Kind::I, Some(&k0))?,
            build_family(&s, Kind::II, Some(&k0))?,
        ] {
            let members = l.to_vec();
            for bits in 1u32..1 << members.len() {
                let a = GroupSubset::from_elems(&g13, (0..members.len()).filter(|i| bits >> i & 1 == 1).map(|i| members[i]));
                checked += 1;
                violations += usize::from(!stabilizer(&a).is_subgroup_of(s.h()));
            }
        }
    }
    let g49 = grp(&[7, 7]);
    let splits49 = enumerate_splittings(&g49, &ctx.guards)?;
    let subs49 = enumerate_subgroups(&g49, &ctx.guards)?;
    for _ in 0..n_cases {
        let s = splits49.choose(&mut rng).expect("splittings");
        let ks: Vec<&Subgroup> = subs49.iter().filter(|k| k.is_subgroup_of(s.h())).collect();
        let kind = [Kind::Zero, Kind::I, Kind::II][rng.gen_range(0..3)];
        let l = build_family(s, kind, Some(ks.choose(&mut rng).expect("K")))?;
        let mut a = random_subset(&g49, rng.gen_range(0.05..0.9), &mut rng).intersection(&l);
        if a.is_empty() {
            a.insert(l.first().expect("nonempty family"));
        }
        checked += 1;
        violations += usize::from(!stabilizer(&a).is_subgroup_of(s.h()));
    }
    ok &= violations == 0;
    parts.push(format!("stabiliser containment {checked} subsets, {violations} violations"));

    // Schur triples against the Fourier residual on every subset of Z/13
    let mut disagreements = 0;
    for mask in 0u128..1 << 13 {
        let a = GroupSubset::from_mask(&g13, mask);
        let count = schur_triple_count(&a);
        let residual = fourier_residual(&a);
        let agree = (residual - count as f64).abs() < 1e-6;
        let three_way = is_sum_free(&a) == (count == 0) && (count == 0) == (residual < 1e-6);
        disagreements += usize::from(!agree || !three_way);
    }
    ok &= disagreements == 0;
    parts.push(format!("Schur/Fourier 8192 subsets, {disagreements} disagreements"));

    // R(x, L) lower bounds
    let (checked, violations) = pair_cover_checks(n_cases, &mut rng, ctx)?;
    ok &= violations == 0;
    parts.push(format!("R(x,L) {checked} cases, {violations} violations"));

    Ok((ok, parts.join("; ")))
}

/// `x ∉ (H, [2k, 4k+1]_m)` for the splitting of a presentation.
fn outside_window(p: &crate::classification::Presentation, x: Elem) -> bool {
    let m = p.splitting.m();
    let k = k_of(m).expect("type III");
    let c = p.splitting.projection().apply(x);
    !(2 * k..=4 * k + 1).contains(&c)
}

fn pair_cover_checks(n_cases: usize, rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<(usize, usize)> {
    let (mut checked, mut violations) = (0usize, 0usize);
    // m ≠ 7: every extremal set of Z/13 under every presentation
    let g = cyc(13);
    for l in enumerate_extremal(&g, ctx)? {
        for p in presentations_of(&l, ctx)? {
            for x in g.elements().filter(|&x| outside_window(&p, x)) {
                checked += 1;
                violations += usize::from(7 * 13 * disjoint_pair_cover(x, &l).len() < 5 * 13);
            }
        }
    }
    // m ≠ 7: sampled families and points in (Z/13)^2
    let g = grp(&[13, 13]);
    let splits = enumerate_splittings(&g, &ctx.guards)?;
    let subs = enumerate_subgroups(&g, &ctx.guards)?;
    let (n, m) = (g.order(), 13usize);
    for _ in 0..n_cases {
        let s = splits.choose(rng).expect("splittings");
        let ks: Vec<&Subgroup> = subs.iter().filter(|k| k.is_subgroup_of(s.h())).collect();
        let kind = [Kind::Zero, Kind::I, Kind::II][rng.gen_range(0..3)];
        let k_sub = ks.choose(rng).map(|k| (*k).clone());
        let l = build_family(s, kind, k_sub.as_ref())?;
        let p = crate::classification::Presentation::new(kind, s.clone(), k_sub)?;
        let outside: Vec<Elem> = g.elements().filter(|&x| outside_window(&p, x)).collect();
        let x = *outside.choose(rng).expect("window is proper");
        checked += 1;
        violations += usize::from(7 * m * disjoint_pair_cover(x, &l).len() < 5 * n);
    }
    // m = 7: every extremal set of (Z/7)^2, presentation other than (H,f,H,II)
    let g = grp(&[7, 7]);
    for l in enumerate_extremal(&g, ctx)? {
        let ps = presentations_of(&l, ctx)?;
        let Some(p) = ps
            .iter()
            .find(|p| !(p.kind == Kind::II && p.k.as_ref().map(|k| k.order()) == Some(p.splitting.h().order())))
        else {
            violations += 1;
            continue;
        };
        for x in g.elements().filter(|&x| x != 0 && outside_window(p, x)) {
            checked += 1;
            violations += usize::from(49 * disjoint_pair_cover(x, &l).len() < 49);
        }
    }
    Ok((checked, violations))
}

fn c10_recovery(suite: Suite, ctx: &Ctx) -> Check {
    let params = RecoveryParams::default();
    let (mut cases, mut over, mut exact_zero, mut nonzero_at_eps0) = (0usize, 0usize, 0usize, 0usize);
    let mut check = |a: &GroupSubset| -> Result<()> {
        let r = recover_structure(a, &params, ctx)?;
        cases += 1;
        over += usize::from(!r.within_bound());
        exact_zero += usize::from(r.excess == 0);
        if r.deficiency == 0 && r.excess != 0 {
            nonzero_at_eps0 += 1;
        }
        Ok(())
    };
    for l in enumerate_extremal(&cyc(13), ctx)? {
        check(&l)?;
        for x in l.iter() {
            let mut a = l.clone();
            a.remove(x);
            check(&a)?;
        }
    }
    let g = grp(&[7, 7]);
    let sets = enumerate_extremal(&g, ctx)?;
    for l in &sets {
        check(l)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for _ in 0..suite.samples() {
        let l = sets.choose(&mut rng).expect("extremal sets");
        let mut a = l.clone();
        a.remove(*l.to_vec().choose(&mut rng).expect("nonempty"));
        check(&a)?;
    }
    let ok = over == 0 && nonzero_at_eps0 == 0;
    Ok((
        ok,
        format!(
            "{cases} cases, {over} above 4εn, {nonzero_at_eps0} nonzero at ε=0, {exact_zero} with excess 0"
        ),
    ))
}

fn c11_bounds(ctx: &Ctx) -> Check {
    let p = BoundParams::new(10.0, 1.0)?;
    let mut ok = true;
    // k1 = 1
    for (k2, n) in [(1, 7), (3, 49), (9, 343)] {
        ok &= small_g_bound(1, k2, n, &p)?.value() == 1.0;
    }
    // monotone in n for k1, k2 > 1
    let ns = [7u64, 49, 343, 2401];
    for (k1, k2) in [(2, 3), (3, 5), (4, 7)] {
        let vals: Vec<f64> = ns.iter().map(|&n| small_g_bound(k1, k2, n, &p).map(|v| v.0)).collect::<Result<_>>()?;
        ok &= vals.windows(2).all(|w| w[1] > w[0]);
    }
    let bah: Vec<f64> = ns.iter().map(|&n| bah_bound(n, 7, 1.0).map(|v| v.0)).collect::<Result<_>>()?;
    ok &= bah.windows(2).all(|w| w[1] > w[0]);
    let coun: Vec<f64> = ns.iter().map(|&n| coun_bound(n, 7, &p).map(|v| v.0)).collect::<Result<_>>()?;
    ok &= coun.windows(2).all(|w| w[1] > w[0]);
    for (n, m) in [(7, 7), (49, 7), (91, 91), (343, 7)] {
        ok &= coun_bound(n, m, &p)?.0 >= crate::sumfree::c_from_order_exponent(n, m) as f64;
    }
    let a = a_of_h(&cyc(7), 2, ctx)?;
    Ok((
        ok,
        format!(
            "k1=1 gives 1; monotone in n; coun ≥ 2^c; a(Z/7) = {a}, bah(Z/7, c=1) = 2^{:.1}",
            bah_bound(7, 7, 1.0)?.0
        ),
    ))
}
