//! The three extremal families, the cyclic classification, presentations of
//! extremal sets and the near-extremal recovery pipeline.

use num_rational::Ratio;
use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::arith::{interval_mod, k_of, units};
use crate::config::{par_map, Ctx};
use crate::error::{guard, Error, Result};
use crate::group::{
    enumerate_subgroups, enumerate_surjections_to_cyclic, layers, stabilizer, CyclicHom, Elem, FinAbGroup,
    GroupSubset, GroupType, Splitting, Subgroup,
};
use crate::sumfree::{c_of_g, is_sum_free, SumFreeSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    #[serde(rename = "ZERO")]
    Zero,
    I,
    II,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Zero => "ZERO",
            Kind::I => "I",
            Kind::II => "II",
        })
    }
}

/// `k = (m − 1)/6` for a group of type III.
pub(crate) fn type_iii_k(g: &FinAbGroup) -> Result<u64> {
    if g.group_type() != GroupType::TypeIII {
        return Err(Error::Precondition(format!("{g:?} is not of type III")));
    }
    k_of(g.exponent()).ok_or_else(|| Error::Precondition(format!("{g:?} has exponent < 7")))
}

/// A certificate that a set is one of the three extremal families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub kind: Kind,
    pub splitting: Splitting,
    /// Absent for [`Kind::Zero`].
    pub k: Option<Subgroup>,
}

impl Presentation {
    pub fn new(kind: Kind, splitting: Splitting, k: Option<Subgroup>) -> Result<Self> {
        let k = if kind == Kind::Zero { None } else { k };
        let p = Presentation { kind, splitting, k };
        p.build()?;
        Ok(p)
    }

    pub fn build(&self) -> Result<GroupSubset> {
        build_family(&self.splitting, self.kind, self.k.as_ref())
    }

    pub fn record(&self) -> PresentationRecord {
        let g = self.splitting.group();
        PresentationRecord {
            kind: self.kind,
            h: self.splitting.h().set().coords(),
            gen: g.coords(self.splitting.gen()),
            f: self.splitting.projection().images().to_vec(),
            k: self.k.as_ref().map(|k| k.set().coords()),
        }
    }
}

/// Serializable view of a [`Presentation`], in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationRecord {
    pub kind: Kind,
    #[serde(rename = "H")]
    pub h: Vec<Vec<u64>>,
    pub gen: Vec<u64>,
    /// Images of the canonical generators under the projection onto `Z/mZ`.
    pub f: Vec<u64>,
    #[serde(rename = "K")]
    pub k: Option<Vec<Vec<u64>>>,
}

/// `L(H,f,0)`, `L(H,f,K,I)` or `L(H,f,K,II)`.
pub fn build_family(s: &Splitting, kind: Kind, k_sub: Option<&Subgroup>) -> Result<GroupSubset> {
    let g = s.group();
    let k = type_iii_k(g)?;
    let m = s.m();
    let h = s.h();
    let iv = |a: u64, b: u64| interval_mod(a as i64, b as i64, m);
    if kind == Kind::Zero {
        return Ok(s.lift(h.set(), &iv(2 * k + 1, 4 * k)));
    }
    let ks = k_sub.ok_or_else(|| Error::InvalidArgument(format!("kind {kind} needs a subgroup K")))?;
    if ks.set().group() != g || !ks.is_subgroup_of(h) {
        return Err(Error::InvalidArgument("K is not a subgroup of H".into()));
    }
    let kc = h.set().difference(ks.set());
    let mut out = s.lift(ks.set(), &[2 * k]).union(&s.lift(&kc, &[4 * k]));
    match kind {
        Kind::I => out = out.union(&s.lift(h.set(), &iv(2 * k + 1, 4 * k - 1))),
        Kind::II => {
            out = out
                .union(&s.lift(ks.set(), &[4 * k + 1]))
                .union(&s.lift(&kc, &[2 * k + 1]))
                .union(&s.lift(h.set(), &iv(2 * k + 2, 4 * k - 1)));
        }
        Kind::Zero => unreachable!(),
    }
    Ok(out)
}

/// `[2k+1,4k]`, `{2k,4k+1} ∪ [2k+2,4k−1]` and `[2k,4k−1]` in `Z/mZ`.
pub fn cyclic_families(m: u64) -> Result<[GroupSubset; 3]> {
    let g = FinAbGroup::cyclic(m)?;
    let k = type_iii_k(&g)?;
    let set = |v: Vec<u64>| GroupSubset::from_elems(&g, v.into_iter().map(|x| x as Elem));
    let iv = |a: u64, b: u64| interval_mod(a as i64, b as i64, m);
    let mut second = iv(2 * k + 2, 4 * k - 1);
    second.extend([2 * k, 4 * k + 1]);
    Ok([set(iv(2 * k + 1, 4 * k)), set(second), set(iv(2 * k, 4 * k - 1))])
}

/// Least family id (1-based) and then least unit `d` with `d·E` equal to
/// that family; `None` would contradict the cyclic classification.
pub fn classify_cyclic_extremal(e: &GroupSubset) -> Result<Option<(u64, u8)>> {
    let g = e.group();
    if !g.is_cyclic() {
        return Err(Error::InvalidArgument("cyclic classification needs Z/mZ".into()));
    }
    let m = g.exponent();
    let fams = cyclic_families(m)?;
    let k = type_iii_k(g)?;
    if e.len() as u64 != 2 * k {
        return Err(Error::InvalidArgument(format!("|E| = {} but 2k = {}", e.len(), 2 * k)));
    }
    if !is_sum_free(e) {
        return Err(Error::InvalidArgument("E is not sum-free".into()));
    }
    let dilates: Vec<(u64, GroupSubset)> = units(m).into_iter().map(|d| (d, e.dilate(d as i64))).collect();
    for (i, fam) in fams.iter().enumerate() {
        if let Some((d, _)) = dilates.iter().find(|(_, de)| de == fam) {
            return Ok(Some((*d, i as u8 + 1)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationOutcome {
    Found(Presentation),
    /// `L` is not sum-free or not of size `c(G)`.
    NotExtremal,
    /// `L` is extremal yet matches no family: a counterexample.
    Violation,
}

/// Search every splitting (surjections lexicographically, then generators)
/// for a presentation of `L`, trying ZERO, I, II in turn.
pub fn presentation_of(l: &GroupSubset, ctx: &Ctx) -> Result<PresentationOutcome> {
    let g = l.group();
    let k = type_iii_k(g)?;
    guard("group order", g.order() as u64, ctx.guards.structural_order as u64)?;
    if !is_sum_free(l) || l.len() as u64 != c_of_g(g) {
        return Ok(PresentationOutcome::NotExtremal);
    }
    let m = g.exponent();
    let window = interval_mod(2 * k as i64, 4 * k as i64 + 1, m);
    for phi in enumerate_surjections_to_cyclic(g, m)? {
        if !l.is_subset(&phi.preimage(&window)) {
            continue;
        }
        let vals = phi.values();
        let h = phi.kernel();
        let mut gens = g.elements().filter(|&x| vals[x] == 1);
        let first = gens.next().expect("surjective");
        let s = Splitting::from_parts(h.clone(), first, phi.clone());
        if build_family(&s, Kind::Zero, None)? == *l {
            return Ok(PresentationOutcome::Found(Presentation {
                kind: Kind::Zero,
                splitting: s,
                k: None,
            }));
        }
        for gen in std::iter::once(first).chain(gens) {
            // the 2k layer is K itself, so 2k·gen must lie in L
            if !l.contains(g.mul(2 * k as i64, gen)) {
                continue;
            }
            let s = Splitting::from_parts(h.clone(), gen, phi.clone());
            let Ok(ks) = Subgroup::from_subset(s.layer(l, 2 * k as i64)) else {
                continue;
            };
            for kind in [Kind::I, Kind::II] {
                if build_family(&s, kind, Some(&ks))? == *l {
                    return Ok(PresentationOutcome::Found(Presentation {
                        kind,
                        splitting: s,
                        k: Some(ks),
                    }));
                }
            }
        }
    }
    Ok(PresentationOutcome::Violation)
}

/// Every presentation of `L`, in the search order of [`presentation_of`].
pub fn presentations_of(l: &GroupSubset, ctx: &Ctx) -> Result<Vec<Presentation>> {
    let g = l.group();
    let k = type_iii_k(g)?;
    guard("group order", g.order() as u64, ctx.guards.structural_order as u64)?;
    let m = g.exponent();
    let window = interval_mod(2 * k as i64, 4 * k as i64 + 1, m);
    let mut out = Vec::new();
    for phi in enumerate_surjections_to_cyclic(g, m)? {
        if !l.is_subset(&phi.preimage(&window)) {
            continue;
        }
        let vals = phi.values();
        let h = phi.kernel();
        for gen in g.elements().filter(|&x| vals[x] == 1) {
            let s = Splitting::from_parts(h.clone(), gen, phi.clone());
            if build_family(&s, Kind::Zero, None)? == *l {
                out.push(Presentation {
                    kind: Kind::Zero,
                    splitting: s.clone(),
                    k: None,
                });
            }
            let Ok(ks) = Subgroup::from_subset(s.layer(l, 2 * k as i64)) else {
                continue;
            };
            for kind in [Kind::I, Kind::II] {
                if build_family(&s, kind, Some(&ks))? == *l {
                    out.push(Presentation {
                        kind,
                        splitting: s.clone(),
                        k: Some(ks.clone()),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `α_i = |A_i|·q/n` for `i ∈ Z/qZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaProfile {
    pub q: u64,
    pub alphas: Vec<Ratio<u64>>,
}

impl AlphaProfile {
    pub fn sum(&self) -> Ratio<u64> {
        self.alphas.iter().copied().sum()
    }
}

pub fn alpha_profile(a: &GroupSubset, f: &CyclicHom) -> Result<AlphaProfile> {
    let n = a.group().order() as u64;
    let q = f.modulus();
    let alphas = layers(a, f)?
        .iter()
        .map(|l| Ratio::new(l.len() as u64 * q, n))
        .collect();
    Ok(AlphaProfile { q, alphas })
}

/// `C(A) = {i : α_i > 1/2}` as a subset of `Z/qZ`.
pub fn heavy_layers(a: &GroupSubset, f: &CyclicHom) -> Result<GroupSubset> {
    let profile = alpha_profile(a, f)?;
    let zq = if profile.q == 1 {
        FinAbGroup::trivial()
    } else {
        FinAbGroup::cyclic(profile.q)?
    };
    let half = Ratio::new(1, 2);
    Ok(GroupSubset::from_elems(
        &zq,
        profile.alphas.iter().enumerate().filter(|(_, &a)| a > half).map(|(i, _)| i),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct RecoveryParams {
    /// Declared upper bound on the deficiency `ε = (c(G) − |A|)/n`; `None`
    /// accepts whatever the input has.
    pub epsilon: Option<Ratio<u64>>,
    /// Demand `ε < min(1/(6m), 10⁻²³)`.
    pub strict_mode: bool,
}


/// Which edge layers exceed `2εn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeCase {
    BothLight,
    LowHeavy,
    HighHeavy,
    BothHeavy,
}

#[derive(Clone, Debug)]
pub struct Recovery {
    pub presentation: Presentation,
    pub family: GroupSubset,
    /// `|A \ L|` for the returned family.
    pub excess: usize,
    /// `|A \ L|` for the family the four-case analysis selects on the first
    /// admissible surjection.
    pub case_excess: usize,
    pub case: EdgeCase,
    /// `c(G) − |A|`; `ε = deficiency / n` and the bound `4εn` is `4·deficiency`.
    pub deficiency: u64,
    pub epsilon: Ratio<u64>,
    /// The first admissible surjection `f'` with `A ⊆ f'^{-1}[2k,4k+1]`.
    pub surjection: CyclicHom,
    /// `C(A)` with respect to `f'`.
    pub heavy: Vec<u64>,
    /// Strict hypotheses did not hold; the bound is then checked, not implied.
    pub heuristic: bool,
}

impl Recovery {
    pub fn bound(&self) -> u64 {
        4 * self.deficiency
    }

    pub fn within_bound(&self) -> bool {
        self.excess as u64 <= self.bound()
    }
}

fn strict_holds(deficiency: u64, n: u64, m: u64) -> bool {
    // j/n < 1/(6m) and j/n < 10^-23
    (deficiency as u128) * 6 * (m as u128) < n as u128 && (deficiency as u128) * 10u128.pow(23) < n as u128
}

/// Kind I rebased so that its 2k layer is read from `A_{2k} ⊆ K + x`.
fn kind_i_from_low(s: &Splitting, a: &GroupSubset, k: u64) -> Result<Option<Presentation>> {
    let low = s.layer(a, 2 * k as i64);
    let Some(x) = low.first() else { return Ok(None) };
    let ks = stabilizer(&low.sumset(&low));
    let g = s.group();
    // f(2k) = f'(2k) + x  ⇔  gen = gen' − 3x, since 2k·(−3) ≡ 1 (mod m)
    let rebased = s.with_gen(g.sub(s.gen(), g.mul(3, x)))?;
    Ok(Some(Presentation::new(Kind::I, rebased, Some(ks))?))
}

fn kind_ii(s: &Splitting, a: &GroupSubset, k: u64, from_high: bool) -> Result<Option<Presentation>> {
    let g = s.group();
    let low = s.layer(a, 2 * k as i64);
    let high = s.layer(a, 4 * k as i64 + 1);
    if low.is_empty() || high.is_empty() {
        return Ok(None);
    }
    let (ks, x) = if from_high {
        // A_{4k+1} ⊆ K − x
        (stabilizer(&high.sumset(&high)), g.neg(high.first().unwrap()))
    } else {
        (stabilizer(&low.sumset(&low)), low.first().unwrap())
    };
    let rebased = s.with_gen(g.sub(s.gen(), g.mul(3, x)))?;
    Ok(Some(Presentation::new(Kind::II, rebased, Some(ks))?))
}

/// Find an extremal family close to a near-extremal sum-free set.
///
/// Admissible surjections `f'` (those with `A ⊆ f'^{-1}[2k,4k+1]`) are found
/// by exhaustive search. On each, the edge layers `A_{2k}` and `A_{4k+1}`
/// are compared against `2εn` to pick ZERO, I (possibly after negating the
/// splitting) or II, with `K` the stabiliser of the heavy layer's sumset and
/// the generator rebased onto the coset it occupies. The alternatives the
/// thresholds rule out are tried as well, and the family with the fewest
/// points of `A` outside it wins; ties go to the threshold choice on the
/// lexicographically least surjection.
pub fn recover_structure(a: &GroupSubset, params: &RecoveryParams, ctx: &Ctx) -> Result<Recovery> {
    let g = a.group();
    let k = type_iii_k(g)?;
    guard("group order", g.order() as u64, ctx.guards.structural_order as u64)?;
    if !is_sum_free(a) {
        return Err(Error::Precondition("set is not sum-free".into()));
    }
    let (n, m) = (g.order() as u64, g.exponent());
    let deficiency = c_of_g(g) - a.len() as u64;
    let epsilon = Ratio::new(deficiency, n);
    if let Some(declared) = params.epsilon {
        if epsilon > declared {
            return Err(Error::Precondition(format!(
                "actual deficiency {epsilon} exceeds the declared ε = {declared}"
            )));
        }
    }
    let strict = strict_holds(deficiency, n, m);
    if params.strict_mode && !strict {
        return Err(Error::Precondition(format!(
            "ε = {epsilon} is not below min(1/(6m), 1e-23)"
        )));
    }
    let window = interval_mod(2 * k as i64, 4 * k as i64 + 1, m);
    let admissible: Vec<CyclicHom> = enumerate_surjections_to_cyclic(g, m)?
        .into_iter()
        .filter(|f| a.is_subset(&f.preimage(&window)))
        .collect();
    if admissible.is_empty() {
        let best = enumerate_surjections_to_cyclic(g, m)?
            .iter()
            .map(|f| a.difference(&f.preimage(&window)).len())
            .min()
            .unwrap_or(a.len());
        return Err(Error::NoAdmissibleSurjection(format!(
            "no surjection onto Z/{m} puts A in [2k,4k+1]; the closest leaves {best} point(s) outside"
        )));
    }
    // 2|A_i| > 4εn  ⇔  |A_i| > 2εn, in integers
    let heavy = |layer: &GroupSubset| layer.len() as u64 > 2 * deficiency;

    let candidates_for = |f: &CyclicHom| -> Result<(EdgeCase, Vec<Presentation>)> {
        let vals = f.values();
        let gen = g.elements().find(|&x| vals[x] == 1).expect("surjective");
        let s = Splitting::from_parts(f.kernel(), gen, f.clone());
        let low = s.layer(a, 2 * k as i64);
        let high = s.layer(a, 4 * k as i64 + 1);
        let zero = Presentation::new(Kind::Zero, s.clone(), None)?;
        let low_i = kind_i_from_low(&s, a, k)?;
        let high_i = kind_i_from_low(&s.negated(), a, k)?;
        let ii_low = kind_ii(&s, a, k, false)?;
        let ii_high = kind_ii(&s, a, k, true)?;
        let (case, first) = match (heavy(&low), heavy(&high)) {
            (false, false) => (EdgeCase::BothLight, Some(zero.clone())),
            (true, false) => (EdgeCase::LowHeavy, low_i.clone()),
            (false, true) => (EdgeCase::HighHeavy, high_i.clone()),
            (true, true) => (EdgeCase::BothHeavy, ii_low.clone()),
        };
        let mut all: Vec<Presentation> = first.into_iter().collect();
        all.extend([Some(zero), low_i, high_i, ii_low, ii_high].into_iter().flatten());
        Ok((case, all))
    };

    let scored = par_map(ctx.exec, admissible.clone(), |f| -> Result<_> {
        let (case, cands) = candidates_for(&f)?;
        let mut out = Vec::with_capacity(cands.len());
        for p in cands {
            let l = p.build()?;
            out.push((a.difference(&l).len(), p, l));
        }
        Ok((case, out))
    });
    let scored: Vec<(EdgeCase, Vec<(usize, Presentation, GroupSubset)>)> = scored.into_iter().collect::<Result<_>>()?;
    let (case, first_cands) = &scored[0];
    let case_excess = first_cands[0].0;
    let (excess, presentation, family) = scored
        .iter()
        .flat_map(|(_, c)| c.iter())
        .min_by_key(|(e, _, _)| *e)
        .cloned()
        .expect("at least one candidate");
    let surjection = admissible[0].clone();
    let heavy = heavy_layers(a, &surjection)?.iter().map(|i| i as u64).collect();
    Ok(Recovery {
        presentation,
        family,
        excess,
        case_excess,
        case: *case,
        deficiency,
        epsilon,
        surjection,
        heavy,
        heuristic: !strict,
    })
}

/// A maximum family `R(x, L)` of pairwise disjoint pairs `{a, b} ⊆ L` with
/// `a + b = x` or `a − b = ±x`.
pub fn disjoint_pair_cover(x: Elem, l: &GroupSubset) -> Vec<(Elem, Elem)> {
    let g = l.group();
    let members = l.to_vec();
    let mut graph: UnGraph<Elem, ()> = UnGraph::default();
    let nodes: Vec<_> = members.iter().map(|&a| graph.add_node(a)).collect();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate().skip(i + 1) {
            if g.add(a, b) == x || g.sub(a, b) == x || g.sub(b, a) == x {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut pairs: Vec<(Elem, Elem)> = maximum_matching(&graph)
        .edges()
        .map(|(u, v)| {
            let (a, b) = (graph[u], graph[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCensus {
    pub total: u64,
    pub covered: u64,
    pub exceptions: u64,
    /// Distinct windows `f^{-1}[2k,4k+1]` over all surjections `f`.
    pub windows: usize,
}

impl WindowCensus {
    pub fn exception_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.exceptions, self.total.max(1))
    }
}

/// Sum-free sets inside some window `(H,[2k,4k+1]_m)` versus the rest.
pub fn window_census(g: &FinAbGroup, ctx: &Ctx) -> Result<WindowCensus> {
    let k = type_iii_k(g)?;
    guard("census group order", g.order() as u64, ctx.guards.census_order as u64)?;
    let m = g.exponent();
    let window = interval_mod(2 * k as i64, 4 * k as i64 + 1, m);
    let mut masks: Vec<u128> = enumerate_surjections_to_cyclic(g, m)?
        .iter()
        .map(|f| f.preimage(&window).to_mask())
        .collect();
    masks.sort_unstable();
    masks.dedup();
    let search = SumFreeSearch::new(g)?;
    let parts = search.fold_subtrees(
        ctx.exec,
        0,
        || (0u64, 0u64),
        |acc, mask, _| {
            acc.0 += 1;
            if masks.iter().any(|w| mask & !w == 0) {
                acc.1 += 1;
            }
        },
    );
    // the empty set lies in every window
    let (total, covered) = parts.into_iter().fold((1, 1), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(WindowCensus {
        total,
        covered,
        exceptions: total - covered,
        windows: masks.len(),
    })
}

/// Every subgroup `K ≤ H` of a splitting, for use with [`build_family`].
pub fn subgroups_of_h(s: &Splitting, ctx: &Ctx) -> Result<Vec<Subgroup>> {
    let h = s.h();
    let abstract_h = h.abstract_group();
    // enumerate inside G, keeping those contained in H
    let g = s.group();
    if abstract_h.order() == 1 {
        return Ok(vec![Subgroup::trivial(g)]);
    }
    Ok(enumerate_subgroups(g, &ctx.guards)?
        .into_iter()
        .filter(|k| k.is_subgroup_of(h))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_splittings;
    use crate::sumfree::enumerate_extremal;

    fn z(m: u64) -> FinAbGroup {
        FinAbGroup::cyclic(m).unwrap()
    }

    fn set(g: &FinAbGroup, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_elems(g, xs.iter().copied())
    }

    fn trivial_splitting(m: u64) -> Splitting {
        let g = z(m);
        Splitting::new(Subgroup::trivial(&g), 1).unwrap()
    }

    /// Membership read straight off the defining coordinates.
    fn oracle_family(s: &Splitting, kind: Kind, ks: Option<&Subgroup>) -> GroupSubset {
        let g = s.group();
        let m = s.m() as i64;
        let k = (m - 1) / 6;
        let inside = |c: i64, lo: i64, hi: i64| (c - lo).rem_euclid(m) <= (hi - lo).rem_euclid(m);
        GroupSubset::from_elems(
            g,
            g.elements().filter(|&x| {
                let (h, c) = s.decompose(x);
                let c = c as i64;
                let in_k = ks.map_or(false, |ks| ks.contains(h));
                match kind {
                    Kind::Zero => inside(c, 2 * k + 1, 4 * k),
                    Kind::I => (c == 2 * k && in_k) || (c == 4 * k && !in_k) || inside(c, 2 * k + 1, 4 * k - 1),
                    Kind::II => {
                        ((c == 2 * k || c == 4 * k + 1) && in_k)
                            || ((c == 4 * k || c == 2 * k + 1) && !in_k)
                            || (4 * k - 1 >= 2 * k + 2 && inside(c, 2 * k + 2, 4 * k - 1))
                    }
                }
            }),
        )
    }

    #[test]
    fn build_family_examples() {
        let s = trivial_splitting(7);
        let k0 = Subgroup::trivial(s.group());
        assert_eq!(build_family(&s, Kind::Zero, None).unwrap().to_vec(), vec![3, 4]);
        assert_eq!(build_family(&s, Kind::I, Some(&k0)).unwrap().to_vec(), vec![2, 3]);
        assert_eq!(build_family(&s, Kind::II, Some(&k0)).unwrap().to_vec(), vec![2, 5]);
        let s = trivial_splitting(13);
        let k0 = Subgroup::trivial(s.group());
        assert_eq!(build_family(&s, Kind::II, Some(&k0)).unwrap().to_vec(), vec![4, 6, 7, 9]);
    }

    #[test]
    fn build_family_rejects_bad_input() {
        let s = trivial_splitting(7);
        assert!(build_family(&s, Kind::I, None).is_err());
        let g = FinAbGroup::new(&[7, 7]).unwrap();
        let s = enumerate_splittings(&g, &Default::default()).unwrap().remove(0);
        let outside = Subgroup::cyclic(&g, s.gen());
        assert!(build_family(&s, Kind::I, Some(&outside)).is_err());
        let g10 = z(10);
        let s10 = Splitting::new(Subgroup::trivial(&g10), 1).unwrap();
        assert!(build_family(&s10, Kind::Zero, None).is_err());
    }

    #[test]
    fn families_match_coordinate_oracle() {
        let ctx = Ctx::default();
        for f in [&[7][..], &[13], &[7, 7]] {
            let g = FinAbGroup::new(f).unwrap();
            let c = c_of_g(&g) as usize;
            for s in enumerate_splittings(&g, &ctx.guards).unwrap() {
                assert_eq!(build_family(&s, Kind::Zero, None).unwrap(), oracle_family(&s, Kind::Zero, None));
                for ks in subgroups_of_h(&s, &ctx).unwrap() {
                    for kind in [Kind::I, Kind::II] {
                        let l = build_family(&s, kind, Some(&ks)).unwrap();
                        assert_eq!(l, oracle_family(&s, kind, Some(&ks)));
                        assert_eq!(l.len(), c);
                        assert!(is_sum_free(&l));
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_family_examples() {
        let [a, b, c] = cyclic_families(7).unwrap();
        assert_eq!((a.to_vec(), b.to_vec(), c.to_vec()), (vec![3, 4], vec![2, 5], vec![2, 3]));
        let [a, b, c] = cyclic_families(13).unwrap();
        assert_eq!(a.to_vec(), vec![5, 6, 7, 8]);
        assert_eq!(b.to_vec(), vec![4, 6, 7, 9]);
        assert_eq!(c.to_vec(), vec![4, 5, 6, 7]);
        assert!(cyclic_families(10).is_err());
        assert!(cyclic_families(9).is_err());
    }

    #[test]
    fn degenerate_kinds_are_cyclic_families() {
        for m in [7, 13, 19, 31] {
            let s = trivial_splitting(m);
            let whole = Subgroup::trivial(s.group());
            let fams = cyclic_families(m).unwrap();
            assert_eq!(build_family(&s, Kind::I, Some(&whole)).unwrap(), fams[2]);
            assert_eq!(build_family(&s, Kind::II, Some(&whole)).unwrap(), fams[1]);
        }
    }

    #[test]
    fn cyclic_classification_examples() {
        let g = z(7);
        assert_eq!(classify_cyclic_extremal(&set(&g, &[3, 4])).unwrap(), Some((1, 1)));
        assert_eq!(classify_cyclic_extremal(&set(&g, &[1, 6])).unwrap(), Some((3, 1)));
        assert_eq!(classify_cyclic_extremal(&set(&g, &[2, 3])).unwrap(), Some((1, 3)));
        assert!(classify_cyclic_extremal(&set(&g, &[1, 2])).is_err());
        assert!(classify_cyclic_extremal(&set(&g, &[3])).is_err());
    }

    #[test]
    fn every_cyclic_extremal_set_classifies() {
        let ctx = Ctx::default();
        for m in [7, 13, 19] {
            for e in enumerate_extremal(&z(m), &ctx).unwrap() {
                assert!(classify_cyclic_extremal(&e).unwrap().is_some(), "{e:?}");
            }
        }
    }

    #[test]
    fn presentation_examples() {
        let ctx = Ctx::default();
        let g = z(7);
        match presentation_of(&set(&g, &[3, 4]), &ctx).unwrap() {
            PresentationOutcome::Found(p) => assert_eq!(p.kind, Kind::Zero),
            o => panic!("{o:?}"),
        }
        match presentation_of(&set(&g, &[2, 5]), &ctx).unwrap() {
            PresentationOutcome::Found(p) => {
                assert_eq!(p.kind, Kind::II);
                assert_eq!(p.k.unwrap().order(), 1);
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(presentation_of(&set(&g, &[1, 2]), &ctx).unwrap(), PresentationOutcome::NotExtremal);
        assert!(presentation_of(&set(&z(10), &[1, 3]), &ctx).is_err());
    }

    #[test]
    fn every_extremal_set_has_a_presentation() {
        let ctx = Ctx::default();
        for m in [7, 13, 19] {
            for l in enumerate_extremal(&z(m), &ctx).unwrap() {
                match presentation_of(&l, &ctx).unwrap() {
                    PresentationOutcome::Found(p) => assert_eq!(p.build().unwrap(), l),
                    o => panic!("{l:?}: {o:?}"),
                }
            }
        }
    }

    #[test]
    fn all_presentations_include_the_first() {
        let ctx = Ctx::default();
        for l in enumerate_extremal(&z(13), &ctx).unwrap() {
            let all = presentations_of(&l, &ctx).unwrap();
            let PresentationOutcome::Found(first) = presentation_of(&l, &ctx).unwrap() else { panic!() };
            assert_eq!(all[0].build().unwrap(), first.build().unwrap());
            assert!(all.iter().all(|p| p.build().unwrap() == l));
        }
    }

    #[test]
    fn alpha_and_heavy_layers() {
        let g = FinAbGroup::new(&[7, 7]).unwrap();
        let f = CyclicHom::new(&g, 7, vec![0, 1]).unwrap();
        let a = f.preimage(&[3, 4]);
        let p = alpha_profile(&a, &f).unwrap();
        assert_eq!(p.alphas[3], Ratio::from_integer(1));
        assert_eq!(p.sum(), Ratio::from_integer(2));
        assert_eq!(heavy_layers(&a, &f).unwrap().to_vec(), vec![3, 4]);
        assert!(heavy_layers(&GroupSubset::empty(&g), &f).unwrap().is_empty());
        let not_onto = CyclicHom::new(&g, 7, vec![0, 0]).unwrap();
        assert!(alpha_profile(&a, &not_onto).is_err());
    }

    #[test]
    fn recovery_is_exact_on_families() {
        let ctx = Ctx::default();
        let g = z(13);
        for fam in cyclic_families(13).unwrap() {
            let r = recover_structure(&fam, &RecoveryParams::default(), &ctx).unwrap();
            assert_eq!(r.excess, 0);
            assert_eq!(r.case_excess, 0);
            assert_eq!(r.family, fam);
        }
        let r = recover_structure(&set(&g, &[4, 6, 7, 9]), &RecoveryParams::default(), &ctx).unwrap();
        assert_eq!(r.presentation.kind, Kind::II);
        assert_eq!(r.case, EdgeCase::BothHeavy);
    }

    #[test]
    fn recovery_minus_one_point() {
        let ctx = Ctx::default();
        let g = z(13);
        let a = set(&g, &[4, 7, 9]);
        let r = recover_structure(&a, &RecoveryParams::default(), &ctx).unwrap();
        assert_eq!(r.deficiency, 1);
        assert!(r.heuristic);
        assert!(r.within_bound());
        assert_eq!(r.excess, 0);
        let strict = RecoveryParams {
            epsilon: None,
            strict_mode: true,
        };
        assert!(recover_structure(&a, &strict, &ctx).is_err());
        let declared = RecoveryParams {
            epsilon: Some(Ratio::new(0, 1)),
            strict_mode: false,
        };
        assert!(recover_structure(&a, &declared, &ctx).is_err());
    }

    #[test]
    fn recovery_rejects_bad_input() {
        let ctx = Ctx::default();
        let g = z(13);
        assert!(recover_structure(&set(&g, &[1, 2]), &RecoveryParams::default(), &ctx).is_err());
        // sum-free but outside every window
        let a = set(&g, &[1, 3, 5]);
        let err = recover_structure(&a, &RecoveryParams::default(), &ctx);
        assert!(is_sum_free(&a));
        if let Err(e) = err {
            assert!(matches!(e, Error::NoAdmissibleSurjection(_)));
        }
    }

    fn brute_pair_cover(x: Elem, l: &GroupSubset) -> usize {
        let g = l.group();
        let members = l.to_vec();
        let mut edges = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if g.add(a, b) == x || g.sub(a, b) == x || g.sub(b, a) == x {
                    edges.push((a, b));
                }
            }
        }
        fn best(edges: &[(Elem, Elem)], used: &mut Vec<Elem>) -> usize {
            let Some((&(a, b), rest)) = edges.split_first() else { return 0 };
            let skip = best(rest, used);
            if used.contains(&a) || used.contains(&b) {
                return skip;
            }
            used.extend([a, b]);
            let take = 1 + best(rest, used);
            used.truncate(used.len() - 2);
            skip.max(take)
        }
        best(&edges, &mut Vec::new())
    }

    #[test]
    fn pair_cover_examples() {
        let g = z(7);
        assert_eq!(disjoint_pair_cover(0, &set(&g, &[3, 4])), vec![(3, 4)]);
        let g = z(13);
        for fam in cyclic_families(13).unwrap() {
            for x in g.elements() {
                let r = disjoint_pair_cover(x, &fam);
                assert_eq!(r.len(), brute_pair_cover(x, &fam));
                let mut seen: Vec<Elem> = r.iter().flat_map(|&(a, b)| [a, b]).collect();
                seen.sort_unstable();
                seen.dedup();
                assert_eq!(seen.len(), 2 * r.len());
            }
        }
    }

    #[test]
    fn window_census_z7() {
        let ctx = Ctx::default();
        let w = window_census(&z(7), &ctx).unwrap();
        assert_eq!((w.total, w.covered, w.exceptions, w.windows), (16, 16, 0, 3));
        let seq = window_census(&z(13), &Ctx::sequential()).unwrap();
        assert_eq!(seq, window_census(&z(13), &ctx).unwrap());
        assert!(seq.exception_fraction() <= Ratio::from_integer(1));
    }
}
