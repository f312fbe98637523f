//! Sum-free predicates, extremal densities, Schur/Fourier diagnostics,
//! Kneser checks and the brute-force enumeration oracles.

pub mod dfs;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::arith::{divisors, k_of, mod_inverse};
use crate::config::Ctx;
use crate::error::{guard, Error, Result};
use crate::group::{layers, stabilizer, CyclicHom, FinAbGroup, GroupSubset, GroupType, Subgroup};
pub use dfs::SumFreeSearch;

/// An exact density in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DensityValue(Ratio<u64>);

impl DensityValue {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidArgument(format!("{num}/{den} is not a density")));
        }
        Ok(DensityValue(Ratio::new(num, den)))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }
}

impl std::fmt::Display for DensityValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `μ_G(A) = |A| / |G|`.
pub fn density(a: &GroupSubset) -> DensityValue {
    DensityValue(Ratio::new(a.len() as u64, a.group().order() as u64))
}

pub fn is_sum_free(a: &GroupSubset) -> bool {
    let g = a.group();
    let elems = a.to_vec();
    elems
        .iter()
        .all(|&x| elems.iter().all(|&y| !a.contains(g.add(x, y))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchurReport {
    pub triple_count: u64,
    pub fourier_residual: f64,
}

/// Number of `(x, y, z) ∈ A³` with `x + y = z`.
pub fn schur_triple_count(a: &GroupSubset) -> u64 {
    let g = a.group();
    let elems = a.to_vec();
    elems
        .iter()
        .map(|&x| elems.iter().filter(|&&y| a.contains(g.add(x, y))).count() as u64)
        .sum()
}

/// `|Σ_γ Â(γ)² · conj(Â(γ))| / n`, evaluated in floating point over the full
/// character group.
pub fn fourier_residual(a: &GroupSubset) -> f64 {
    let g = a.group();
    let n = g.order();
    let factors = g.factors();
    let coords: Vec<Vec<u64>> = a.coords();
    let mut total = Complex64::new(0.0, 0.0);
    // characters γ_y(x) = exp(2πi Σ x_i y_i / d_i), indexed by y ∈ G
    for y in g.elements() {
        let yc = g.coords(y);
        let mut hat = Complex64::new(0.0, 0.0);
        for xc in &coords {
            let phase: f64 = xc
                .iter()
                .zip(&yc)
                .zip(factors)
                .map(|((&xi, &yi), &d)| ((xi * yi) % d) as f64 / d as f64)
                .sum();
            hat += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        total += hat * hat * hat.conj();
    }
    total.norm() / n as f64
}

pub fn schur_report(a: &GroupSubset) -> SchurReport {
    SchurReport {
        triple_count: schur_triple_count(a),
        fourier_residual: fourier_residual(a),
    }
}

/// `c(G) = n · max_{d | m} (⌊(d−2)/3⌋ + 1) / d`.
pub fn c_of_g(g: &FinAbGroup) -> u64 {
    c_from_order_exponent(g.order() as u64, g.exponent())
}

/// The same maximum, which only depends on the order and the exponent.
pub fn c_from_order_exponent(n: u64, m: u64) -> u64 {
    divisors(m)
        .into_iter()
        .map(|d| {
            let mu_num = (d as i64 - 2).div_euclid(3) + 1;
            Ratio::new(n * mu_num as u64, d)
        })
        .max()
        .map(|r| r.to_integer())
        .unwrap_or(0)
}

/// `μ(G)` by group type: `1/3 + 1/(3p)` for type I(p), `1/3` for type II,
/// `1/3 − 1/(3m)` for type III.
pub fn mu_of_g(g: &FinAbGroup) -> DensityValue {
    let r = match g.group_type() {
        GroupType::TypeI(p) => Ratio::new(1, 3) + Ratio::new(1, 3 * p),
        GroupType::TypeII => Ratio::new(1, 3),
        GroupType::TypeIII if g.order() == 1 => Ratio::new(0, 1),
        GroupType::TypeIII => Ratio::new(1, 3) - Ratio::new(1, 3 * g.exponent()),
    };
    DensityValue(r)
}

fn dfs_search(g: &FinAbGroup, ctx: &Ctx) -> Result<SumFreeSearch> {
    guard("DFS group order", g.order() as u64, ctx.guards.dfs_order as u64)?;
    SumFreeSearch::new(g)
}

/// Exact maximum size of a sum-free set together with the lexicographically
/// least witness.
pub fn max_sumfree_bruteforce(g: &FinAbGroup, ctx: &Ctx) -> Result<(u64, GroupSubset)> {
    let s = dfs_search(g, ctx)?;
    let (size, mask) = s.max(ctx.exec);
    Ok((size as u64, GroupSubset::from_mask(g, mask)))
}

/// Every sum-free set of size `c(G)`, in lexicographic order.
pub fn enumerate_extremal(g: &FinAbGroup, ctx: &Ctx) -> Result<Vec<GroupSubset>> {
    let s = dfs_search(g, ctx)?;
    let c = c_of_g(g) as u32;
    Ok(s.collect_size(ctx.exec, c)
        .into_iter()
        .map(|m| GroupSubset::from_mask(g, m))
        .collect())
}

/// `|SF(G)|`, the empty set included.
pub fn count_all_sumfree(g: &FinAbGroup, ctx: &Ctx) -> Result<u64> {
    guard("census group order", g.order() as u64, ctx.guards.census_order as u64)?;
    Ok(dfs_search(g, ctx)?.count(ctx.exec))
}

/// Stream every sum-free set once, in lexicographic order.
pub fn for_each_sumfree(g: &FinAbGroup, ctx: &Ctx, mut visit: impl FnMut(&GroupSubset)) -> Result<u64> {
    guard("census group order", g.order() as u64, ctx.guards.census_order as u64)?;
    let s = dfs_search(g, ctx)?;
    let mut count = 0;
    s.for_each(0, |mask, _| {
        count += 1;
        visit(&GroupSubset::from_mask(g, mask));
    });
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KneserReport {
    /// `|B+B| < (3/2)|B|` and `B` nonempty.
    pub applicable: bool,
    pub set_size: usize,
    pub sumset_size: usize,
    pub stabilizer_order: usize,
    /// `B+B` is a single coset of `S(B+B)`.
    pub sumset_is_coset: bool,
    /// `B` lies in a single coset of `S(B+B)`.
    pub set_in_one_coset: bool,
    /// `|B+B| = 2|B+H| − |H|` with `H = S(B+B)` (checked when
    /// `|B+B| ≤ 2|B| − 1`).
    pub kneser_identity: Option<bool>,
}

impl KneserReport {
    /// Passes unless an applicable check failed.
    pub fn passes(&self) -> bool {
        (!self.applicable || (self.sumset_is_coset && self.set_in_one_coset)) && self.kneser_identity != Some(false)
    }
}

fn is_single_coset(a: &GroupSubset, h: &Subgroup) -> bool {
    match a.first() {
        None => false,
        Some(x) => h.set().translate(x) == *a,
    }
}

/// `|B+C| = |B+H| + |C+H| − |H|` for `H = S(B+C)`, when
/// `|B+C| ≤ |B| + |C| − 1`; `None` when not applicable.
pub fn kneser_identity(b: &GroupSubset, c: &GroupSubset) -> Option<bool> {
    if b.is_empty() || c.is_empty() {
        return None;
    }
    let bc = b.sumset(c);
    if bc.len() + 1 > b.len() + c.len() {
        return None;
    }
    let h = stabilizer(&bc);
    let lhs = bc.len();
    let rhs = b.sumset(h.set()).len() + c.sumset(h.set()).len() - h.order();
    Some(lhs == rhs)
}

pub fn kneser_coset_check(b: &GroupSubset) -> KneserReport {
    let bb = b.sumset(b);
    let applicable = !b.is_empty() && 2 * bb.len() < 3 * b.len();
    let stab = stabilizer(&bb);
    let set_in_one_coset = match b.first() {
        None => false,
        Some(x) => b.translate(b.group().neg(x)).is_subset(stab.set()),
    };
    KneserReport {
        applicable,
        set_size: b.len(),
        sumset_size: bb.len(),
        stabilizer_order: stab.order(),
        sumset_is_coset: is_single_coset(&bb, &stab),
        set_in_one_coset,
        kneser_identity: kneser_identity(b, b),
    }
}

/// `|A_i| + |A_{2i}| ≤ n/q` for every `i ∈ Z/qZ`.
pub fn layer_inequality_check(a: &GroupSubset, f: &CyclicHom) -> Result<bool> {
    if !is_sum_free(a) {
        return Err(Error::Precondition("set is not sum-free".into()));
    }
    let ls = layers(a, f)?;
    let q = f.modulus() as usize;
    let cap = a.group().order() / q;
    Ok((0..q).all(|i| {
        let j = 2 * i % q;
        if i == j {
            2 * ls[i].len() <= cap
        } else {
            ls[i].len() + ls[j].len() <= cap
        }
    }))
}

/// The pairs `(y, y/2)` for `y ∈ [2k+1, 4k]_m`, `k = (m−1)/6`.
pub fn pair_partition(m: u64) -> Result<Vec<(u64, u64)>> {
    let k = k_of(m).ok_or_else(|| Error::InvalidArgument(format!("{m} is not ≡ 1 mod 6 (m ≥ 7)")))?;
    let half = mod_inverse(2, m).expect("m is odd");
    Ok((2 * k + 1..=4 * k).map(|y| (y, y * half % m)).collect())
}

/// No solution of `x_1 + … + x_t = y` inside `A`.
pub fn is_t_free(a: &GroupSubset, t: usize) -> Result<bool> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t = {t} must be at least 2")));
    }
    if a.is_empty() {
        return Ok(true);
    }
    Ok(a.iterated_sumset(t).is_disjoint(a))
}

/// `ν_t(G) = n · (⌊(m−2)/(t+1)⌋ + 1) / m`.
pub fn nu_t(g: &FinAbGroup, t: u64) -> Result<u64> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t = {t} must be at least 2")));
    }
    let (n, m) = (g.order() as u64, g.exponent());
    let num = (m as i64 - 2).div_euclid(t as i64 + 1) + 1;
    Ok(n * num as u64 / m)
}
