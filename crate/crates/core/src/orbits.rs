//! Orbits of `Aut(G)` on extremal sets and of `Aut(H)` on subgroups.

use std::collections::{BTreeMap, HashMap};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::arith::{binomial, factorize, is_prime, is_type_iii_modulus, k_of, units};
use crate::classification::{build_family, cyclic_families, Kind};
use crate::config::{par_map, Ctx};
use crate::error::{Error, Result};
use crate::group::{
    aut_order, automorphism_generators, enumerate_splittings, enumerate_subgroups, Automorphism, FinAbGroup,
    GroupSubset, GroupType,
};
use crate::sumfree::enumerate_extremal;

/// How the acted-on family of extremal sets was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Exhaustive search over sum-free sets.
    Enumerated,
    /// Union of the three families over every splitting and subgroup.
    Constructed,
    /// Subgroup lattice.
    Subgroups,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtremalSource {
    /// Enumerate when the DFS guard allows it, otherwise construct.
    #[default]
    Auto,
    Enumerate,
    Construct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub orbit_count: usize,
    /// Ascending.
    pub orbit_sizes: Vec<usize>,
    /// Lexicographically least member of each orbit, in the order of
    /// `orbit_sizes` (ties broken by representative).
    #[serde(skip)]
    pub representatives: Vec<GroupSubset>,
    pub total: usize,
    pub provenance: Provenance,
}

impl OrbitReport {
    pub fn representative_coords(&self) -> Vec<Vec<Vec<u64>>> {
        self.representatives.iter().map(GroupSubset::coords).collect()
    }
}

/// Orbits of `sets` (sorted, duplicate-free) under the group generated by
/// `gens`. Every image must land back in `sets`.
pub fn orbits_under(
    sets: &[GroupSubset],
    gens: &[Automorphism],
    provenance: Provenance,
    ctx: &Ctx,
) -> Result<OrbitReport> {
    let index: HashMap<&GroupSubset, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    // image edges computed in parallel, merged in a fixed order
    let edges = par_map(ctx.exec, (0..sets.len()).collect(), |i| {
        gens.iter()
            .map(|a| index.get(&a.apply_set(&sets[i])).copied().ok_or(i))
            .collect::<Vec<_>>()
    });
    let mut uf = UnionFind::<usize>::new(sets.len());
    for (i, row) in edges.into_iter().enumerate() {
        for target in row {
            match target {
                Ok(j) => {
                    uf.union(i, j);
                }
                Err(bad) => {
                    return Err(Error::TheoremViolation(format!(
                        "an automorphism maps {:?} outside the acted-on family",
                        sets[bad]
                    )))
                }
            }
        }
    }
    // sets are sorted, so the first member seen in each class is its least
    let mut classes: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for i in 0..sets.len() {
        let root = uf.find(i);
        classes.entry(root).and_modify(|e| e.1 += 1).or_insert((i, 1));
    }
    let mut orbits: Vec<(usize, usize)> = classes.into_values().map(|(rep, size)| (size, rep)).collect();
    orbits.sort_unstable();
    Ok(OrbitReport {
        orbit_count: orbits.len(),
        orbit_sizes: orbits.iter().map(|o| o.0).collect(),
        representatives: orbits.iter().map(|o| sets[o.1].clone()).collect(),
        total: sets.len(),
        provenance,
    })
}

/// `L(G)` built from the three families over every splitting and every
/// subgroup `K ≤ H`, sorted and deduplicated.
pub fn constructed_extremal(g: &FinAbGroup, ctx: &Ctx) -> Result<Vec<GroupSubset>> {
    let splittings = enumerate_splittings(g, &ctx.guards)?;
    let subgroups = enumerate_subgroups(g, &ctx.guards)?;
    let per_split = par_map(ctx.exec, splittings, |s| -> Result<Vec<GroupSubset>> {
        let mut out = vec![build_family(&s, Kind::Zero, None)?];
        for ks in subgroups.iter().filter(|k| k.is_subgroup_of(s.h())) {
            out.push(build_family(&s, Kind::I, Some(ks))?);
            out.push(build_family(&s, Kind::II, Some(ks))?);
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for part in per_split {
        all.extend(part?);
    }
    all.sort();
    all.dedup();
    Ok(all)
}

pub fn extremal_family(g: &FinAbGroup, source: ExtremalSource, ctx: &Ctx) -> Result<(Vec<GroupSubset>, Provenance)> {
    let enumerate = match source {
        ExtremalSource::Enumerate => true,
        ExtremalSource::Construct => false,
        ExtremalSource::Auto => g.order() <= ctx.guards.dfs_order,
    };
    if enumerate {
        Ok((enumerate_extremal(g, ctx)?, Provenance::Enumerated))
    } else {
        if g.group_type() != GroupType::TypeIII {
            return Err(Error::Precondition(format!("{g:?} is not of type III; no construction")));
        }
        Ok((constructed_extremal(g, ctx)?, Provenance::Constructed))
    }
}

/// Orbits of `Aut(G)` on the extremal sum-free sets.
pub fn orbit_count_extremal(g: &FinAbGroup, source: ExtremalSource, ctx: &Ctx) -> Result<OrbitReport> {
    let (sets, provenance) = extremal_family(g, source, ctx)?;
    let gens = automorphism_generators(g, &ctx.guards)?;
    orbits_under(&sets, &gens, provenance, ctx)
}

/// Orbits of `Aut(H)` on the subgroups of `H`.
pub fn orbit_count_subgroups(h: &FinAbGroup, ctx: &Ctx) -> Result<OrbitReport> {
    let mut sets: Vec<GroupSubset> = enumerate_subgroups(h, &ctx.guards)?
        .into_iter()
        .map(|s| s.into_set())
        .collect();
    sets.sort();
    let gens = automorphism_generators(h, &ctx.guards)?;
    orbits_under(&sets, &gens, Provenance::Subgroups, ctx)
}

/// The abstract supplement `H` with `G ≅ H ⊕ Z/mZ`.
pub fn supplement_type(g: &FinAbGroup) -> FinAbGroup {
    let f = g.factors();
    if f.len() <= 1 {
        FinAbGroup::trivial()
    } else {
        FinAbGroup::new(&f[..f.len() - 1]).expect("invariant factors")
    }
}

/// `1` unless `m = 7`.
pub fn orbit_epsilon(m: u64) -> usize {
    usize::from(m != 7)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RorbReport {
    pub extremal_orbits: usize,
    pub subgroup_orbits: usize,
    pub epsilon: usize,
    pub holds: bool,
}

/// `|L(G)/Aut(G)| = 2·|R(H)/Aut(H)| + ε`, both sides computed.
pub fn rorb_check(g: &FinAbGroup, source: ExtremalSource, ctx: &Ctx) -> Result<RorbReport> {
    if g.group_type() != GroupType::TypeIII || k_of(g.exponent()).is_none() {
        return Err(Error::Precondition(format!("{g:?} is not of type III")));
    }
    let extremal_orbits = orbit_count_extremal(g, source, ctx)?.orbit_count;
    let subgroup_orbits = orbit_count_subgroups(&supplement_type(g), ctx)?.orbit_count;
    let epsilon = orbit_epsilon(g.exponent());
    Ok(RorbReport {
        extremal_orbits,
        subgroup_orbits,
        epsilon,
        holds: extremal_orbits == 2 * subgroup_orbits + epsilon,
    })
}

/// `2·∏_{p|m} C(v_p(m) + r, r) + ε(m)`.
pub fn orbi_formula(m: u64, r: u64) -> Result<u128> {
    if m < 7 || !is_type_iii_modulus(m) {
        return Err(Error::InvalidArgument(format!("{m} is not a type III exponent")));
    }
    let prod: u128 = factorize(m).into_iter().map(|(_, v)| binomial(v as u64 + r, r)).product();
    Ok(2 * prod + orbit_epsilon(m) as u128)
}

/// Isomorphism classes of subgroups of `(Z/p^t)^r`: `C(t + r, r)`.
pub fn subgroup_iso_class_count(p: u64, t: u64, r: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(binomial(t + r, r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub orbits: usize,
    pub iso_classes: usize,
    /// Every orbit is one isomorphism class and vice versa.
    pub holds: bool,
}

/// For a homogeneous p-group, check that isomorphic subgroups share an orbit.
pub fn homogeneous_transitivity_check(h: &FinAbGroup, ctx: &Ctx) -> Result<TransitivityReport> {
    let f = h.factors();
    let homogeneous = !f.is_empty() && f.iter().all(|&d| d == f[0]) && factorize(f[0]).len() == 1;
    if !homogeneous {
        return Err(Error::InvalidArgument(format!("{h:?} is not a homogeneous p-group")));
    }
    let report = orbit_count_subgroups(h, ctx)?;
    let subs = enumerate_subgroups(h, &ctx.guards)?;
    let type_of: HashMap<GroupSubset, Vec<u64>> =
        subs.iter().map(|s| (s.set().clone(), s.invariant_factors().to_vec())).collect();
    let mut classes: Vec<Vec<u64>> = type_of.values().cloned().collect();
    classes.sort();
    classes.dedup();
    // orbits never mix types, so equal counts means each class is one orbit
    let rep_types: Vec<&Vec<u64>> = report.representatives.iter().map(|r| &type_of[r]).collect();
    let mut distinct = rep_types.clone();
    distinct.sort();
    distinct.dedup();
    Ok(TransitivityReport {
        orbits: report.orbit_count,
        iso_classes: classes.len(),
        holds: report.orbit_count == classes.len() && distinct.len() == rep_types.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSeparation {
    /// Orbit label (0, 1 or 2) of `C₀ = [2k+1,4k]`, `C₁ = [2k,4k−1]` and
    /// `C₂ = {2k} ∪ [2k+2,4k−1] ∪ {4k+1}` under unit multiplication.
    pub labels: [usize; 3],
    /// Least unit `d` with `d·C₂ = C₀`, if any.
    pub c2_to_c0: Option<u64>,
    pub c0_symmetric: bool,
    pub c1_symmetric: bool,
    pub c2_symmetric: bool,
    /// Three distinct orbits for `m ≠ 7`; `C₀ ~ C₂` and `C₁` apart for `m = 7`.
    pub holds: bool,
}

pub fn cyclic_orbit_separation_check(m: u64) -> Result<CyclicSeparation> {
    let [c0, c2, c1] = cyclic_families(m)?;
    let cs = [c0, c1, c2];
    let us = units(m);
    let same = |a: &GroupSubset, b: &GroupSubset| us.iter().any(|&d| a.dilate(d as i64) == *b);
    let mut labels = [0usize, 1, 2];
    for i in 0..3 {
        for j in 0..i {
            if same(&cs[j], &cs[i]) {
                labels[i] = labels[j];
                break;
            }
        }
    }
    let c2_to_c0 = us.iter().copied().find(|&d| cs[2].dilate(d as i64) == cs[0]);
    let sym = |c: &GroupSubset| c.neg() == *c;
    let holds = if m == 7 {
        labels[0] == labels[2] && labels[1] != labels[0]
    } else {
        labels == [0, 1, 2]
    };
    Ok(CyclicSeparation {
        labels,
        c2_to_c0,
        c0_symmetric: sym(&cs[0]),
        c1_symmetric: sym(&cs[1]),
        c2_symmetric: sym(&cs[2]),
        holds,
    })
}

/// `|orbit|` divides `|Aut(G)|` for every orbit.
pub fn orbit_sizes_divide(report: &OrbitReport, g: &FinAbGroup) -> bool {
    let a = aut_order(g);
    report.orbit_sizes.iter().all(|&s| a.is_multiple_of(s as u128))
}
