//! Doubling statistics `S(t,k₁,k₂,H)`, the dyadic weight `a(t,H)`, window
//! counts and the bound calculators.

mod dyadic;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial, interval_mod, omega};
use crate::classification::type_iii_k;
use crate::config::{par_map, Ctx};
use crate::error::{guard, Error, Result};
use crate::group::{FinAbGroup, GroupSubset, Splitting};
use crate::orbits::supplement_type;
use crate::sumfree::{c_from_order_exponent, c_of_g, count_all_sumfree, nu_t, SumFreeSearch};
pub use dyadic::DyadicRational;

/// `S(t,k₁,k₂,H)` for every nonempty `B ⊆ H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingTable {
    pub t: usize,
    pub h_order: usize,
    #[serde(serialize_with = "entries_as_list")]
    pub entries: BTreeMap<(usize, usize), u64>,
}

fn entries_as_list<S: serde::Serializer>(e: &BTreeMap<(usize, usize), u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(e.iter().map(|(&(k1, k2), &c)| (k1, k2, c)))
}

impl DoublingTable {
    pub fn get(&self, k1: usize, k2: usize) -> u64 {
        self.entries.get(&(k1, k2)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `Σ S(t,k₁,k₂,H) / 2^{k₂}`.
    pub fn a(&self) -> DyadicRational {
        self.entries
            .iter()
            .map(|(&(_, k2), &c)| DyadicRational::new(c, k2 as u32))
            .sum()
    }

    /// Rows `t,k1,k2,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,k1,k2,count\n");
        for (&(k1, k2), &c) in &self.entries {
            out.push_str(&format!("{},{k1},{k2},{c}\n", self.t));
        }
        out
    }
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t = {t} must be at least 2")));
    }
    Ok(())
}

/// Mask arithmetic for a group of order at most 64.
struct MaskGroup {
    n: usize,
    add: Vec<u8>,
}

impl MaskGroup {
    fn new(h: &FinAbGroup) -> Self {
        let n = h.order();
        let mut add = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = h.add(a, b) as u8;
            }
        }
        MaskGroup { n, add }
    }

    fn translate(&self, mask: u64, y: usize) -> u64 {
        let mut out = 0;
        let mut c = mask;
        while c != 0 {
            let a = c.trailing_zeros() as usize;
            c &= c - 1;
            out |= 1u64 << self.add[y * self.n + a];
        }
        out
    }
}

/// Depth-first over subsets with the smallest element fixed, keeping
/// `jB` for `j = 1..=t` up to date as elements are added.
fn doubling_walk(mg: &MaskGroup, t: usize, sums: &[u64], start: usize, size: usize, table: &mut BTreeMap<(usize, usize), u64>) {
    for x in start..mg.n {
        // multiples of x: i·x for i = 0..=t
        let mut xs = vec![0usize; t + 1];
        for i in 1..=t {
            xs[i] = mg.add[xs[i - 1] * mg.n + x] as usize;
        }
        let mut next = vec![0u64; t + 1];
        next[0] = 1;
        for j in 1..=t {
            let mut acc = 0u64;
            for i in 0..=j {
                let base = if j - i == 0 { 1 } else { sums[j - i] };
                acc |= mg.translate(base, xs[i]);
            }
            next[j] = acc;
        }
        *table.entry((size + 1, next[t].count_ones() as usize)).or_insert(0) += 1;
        doubling_walk(mg, t, &next, x + 1, size + 1, table);
    }
}

/// Exhaustive table over all `2^{|H|} − 1` nonempty subsets.
pub fn doubling_table(h: &FinAbGroup, t: usize, ctx: &Ctx) -> Result<DoublingTable> {
    check_t(t)?;
    guard("doubling table order", h.order() as u64, ctx.guards.table_order.min(64) as u64)?;
    let mg = MaskGroup::new(h);
    let parts = par_map(ctx.exec, (0..mg.n).collect(), |x| {
        let mut table = BTreeMap::new();
        let mut sums = vec![0u64; t + 1];
        sums[0] = 1;
        let mut y = 0;
        for j in 1..=t {
            y = mg.add[y * mg.n + x] as usize;
            sums[j] = 1u64 << y;
        }
        *table.entry((1, 1)).or_insert(0) += 1;
        doubling_walk(&mg, t, &sums, x + 1, 1, &mut table);
        table
    });
    let mut entries = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *entries.entry(k).or_insert(0) += v;
        }
    }
    Ok(DoublingTable {
        t,
        h_order: h.order(),
        entries,
    })
}

/// `a(t,H)` from the doubling table.
pub fn a_of_h(h: &FinAbGroup, t: usize, ctx: &Ctx) -> Result<DyadicRational> {
    Ok(doubling_table(h, t, ctx)?.a())
}

/// `a(t,H)` by a direct pass over every nonempty subset, summing
/// `2^{|H| − |tB|}` as an integer.
pub fn a_of_h_streaming(h: &FinAbGroup, t: usize, ctx: &Ctx) -> Result<DyadicRational> {
    check_t(t)?;
    let n = h.order();
    guard("doubling table order", n as u64, ctx.guards.table_order.min(30) as u64)?;
    let chunks: Vec<u64> = (0..n as u64).collect();
    let parts = par_map(ctx.exec, chunks, |top| {
        // masks whose highest set bit is `top`
        let lo = 1u64 << top;
        let mut acc: u128 = 0;
        for rest in 0..lo {
            let b = GroupSubset::from_mask(h, (lo | rest) as u128);
            let k2 = b.iterated_sumset(t).len();
            acc += 1u128 << (n - k2);
        }
        acc
    });
    let total: u128 = parts.into_iter().sum();
    Ok(DyadicRational::new(BigInt::from(total), n as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCount {
    pub window_size: usize,
    /// Sum-free subsets of `(H,[2k,4k]_m)` found by DFS over the window.
    pub dfs_count: u64,
    /// `Σ_{B ⊆ H} 2^{c(G) − |B+B|}`, enumerating `A_{2k} = B` inside `G`.
    #[serde(serialize_with = "as_string")]
    pub layered_count: BigInt,
    pub a_h: DyadicRational,
    pub c: u64,
    /// `(1 + a(H))·2^{c(G)}`.
    pub closed_form: DyadicRational,
    /// `a(H)·2^{c(G)}`.
    pub literal: DyadicRational,
}

impl WindowCount {
    pub fn holds(&self) -> bool {
        let n = DyadicRational::from_int(self.dfs_count);
        n == self.closed_form && DyadicRational::from_int(self.layered_count.clone()) == self.closed_form
    }
}

fn window_mask(s: &Splitting, lo: u64, hi: u64) -> Result<u128> {
    let g = s.group();
    let residues = interval_mod(lo as i64, hi as i64, s.m());
    let w = s.lift(s.h().set(), &residues);
    if g.order() > 128 {
        return Err(Error::GuardExceeded {
            what: "DFS group order",
            value: g.order() as u128,
            limit: 128,
        });
    }
    Ok(w.to_mask())
}

/// Count sum-free subsets of `(H,[2k,4k]_m)` three ways.
pub fn window_count_identity(s: &Splitting, ctx: &Ctx) -> Result<WindowCount> {
    let g = s.group();
    let k = type_iii_k(g)?;
    let h = s.h();
    let window_size = (2 * k as usize + 1) * h.order();
    guard("window size", window_size as u64, ctx.guards.window_size as u64)?;
    let dfs_count = SumFreeSearch::restricted(g, window_mask(s, 2 * k, 4 * k)?)?.count(ctx.exec);

    // A_{2k} = B is free, A_{4k} ⊆ H ∖ (B+B), the middle layers are free
    let c = c_of_g(g);
    let members = h.set().to_vec();
    guard("doubling table order", members.len() as u64, ctx.guards.table_order as u64)?;
    let layered_count = (0u64..1 << members.len())
        .map(|bits| {
            let b = GroupSubset::from_elems(g, (0..members.len()).filter(|i| bits >> i & 1 == 1).map(|i| members[i]));
            let k2 = if b.is_empty() { 0 } else { b.sumset(&b).len() as u64 };
            BigInt::from(1) << (c - k2) as usize
        })
        .fold(BigInt::zero(), |a, b| a + b);

    let a_h = a_of_h(&h.abstract_group(), 2, ctx)?;
    let one_plus = &DyadicRational::from_int(1) + &a_h;
    Ok(WindowCount {
        window_size,
        dfs_count,
        layered_count,
        closed_form: one_plus.shl(c as i64),
        literal: a_h.shl(c as i64),
        a_h,
        c,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UbsfReport {
    /// Sum-free subsets of `(H,[2k,4k+1]_m)`.
    pub count: u64,
    /// `a(H)²·2^{c(G)}`.
    pub literal_bound: DyadicRational,
    /// `(1 + a(H))²·2^{c(G)}`, which also counts empty edge layers.
    pub bound: DyadicRational,
}

impl UbsfReport {
    pub fn literal_holds(&self) -> bool {
        DyadicRational::from_int(self.count) <= self.literal_bound
    }

    pub fn holds(&self) -> bool {
        DyadicRational::from_int(self.count) <= self.bound
    }
}

pub fn ubsf_check(s: &Splitting, ctx: &Ctx) -> Result<UbsfReport> {
    let g = s.group();
    let k = type_iii_k(g)?;
    let size = (2 * k as usize + 2) * s.h().order();
    guard("window size", size as u64, ctx.guards.window_size as u64)?;
    let count = SumFreeSearch::restricted(g, window_mask(s, 2 * k, 4 * k + 1)?)?.count(ctx.exec);
    let a_h = a_of_h(&s.h().abstract_group(), 2, ctx)?;
    let c = c_of_g(g) as i64;
    let one_plus = &DyadicRational::from_int(1) + &a_h;
    Ok(UbsfReport {
        count,
        literal_bound: (&a_h * &a_h).shl(c),
        bound: (&one_plus * &one_plus).shl(c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SfBounds {
    pub h: String,
    pub a_h: DyadicRational,
    pub c: u64,
    /// `a(H)·2^{c(G)}`.
    pub lower: DyadicRational,
    /// `n²·a(H)²·2^{c(G)}`, without the unquantified error term.
    pub upper: DyadicRational,
    /// `|SF(G)|` when the census guard allows it.
    pub census: Option<u64>,
}

impl SfBounds {
    pub fn lower_holds(&self) -> Option<bool> {
        self.census.map(|c| self.lower <= DyadicRational::from_int(c))
    }
}

pub fn sf_bounds(g: &FinAbGroup, ctx: &Ctx) -> Result<SfBounds> {
    type_iii_k(g)?;
    let h = supplement_type(g);
    let a_h = a_of_h(&h, 2, ctx)?;
    let c = c_of_g(g);
    let n = g.order() as u64;
    let census = if g.order() <= ctx.guards.census_order {
        Some(count_all_sumfree(g, ctx)?)
    } else {
        None
    };
    Ok(SfBounds {
        h: h.literal(),
        lower: a_h.shl(c as i64),
        upper: (&DyadicRational::from_int(n * n) * &(&a_h * &a_h)).shl(c as i64),
        a_h,
        c,
        census,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TFreeBound {
    pub t: usize,
    pub a: DyadicRational,
    pub nu: u64,
    /// `a(t,H)·2^{ν_t(G)}`.
    pub value: DyadicRational,
}

pub fn t_free_lower_bound(g: &FinAbGroup, t: usize, ctx: &Ctx) -> Result<TFreeBound> {
    check_t(t)?;
    type_iii_k(g)?;
    let a = a_of_h(&supplement_type(g), t, ctx)?;
    let nu = nu_t(g, t as u64)?;
    Ok(TFreeBound {
        t,
        value: a.shl(nu as i64),
        a,
        nu,
    })
}

/// The unspecified constants of the bound calculators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub c: f64,
    pub c_m: f64,
}

impl BoundParams {
    pub fn new(c: f64, c_m: f64) -> Result<Self> {
        if !(c > 0.0 && c_m > 0.0) {
            return Err(Error::InvalidArgument("bound constants must be positive".into()));
        }
        Ok(BoundParams { c, c_m })
    }
}

/// A nonnegative real held as its base-2 logarithm (`-inf` for zero).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct Log2Value(pub f64);

impl Log2Value {
    pub fn value(&self) -> f64 {
        self.0.exp2()
    }
}

/// `n^{4k₂ log₂ k₁ / k₁} · min(k₁^{c ω(n) (k₁k₂ ln k₁)^{1/3}} C(k₂, k₁−1) (k₁³+1), k₁^{4k₁})`.
pub fn small_g_bound(k1: u64, k2: u64, n: u64, params: &BoundParams) -> Result<Log2Value> {
    if k1 == 0 || k2 == 0 || n == 0 {
        return Err(Error::InvalidArgument("k1, k2 and n must be positive".into()));
    }
    let (k1f, k2f, nf) = (k1 as f64, k2 as f64, n as f64);
    let lead = 4.0 * k2f * k1f.log2() / k1f * nf.log2();
    let w = omega(n) as f64;
    let first = params.c * w * (k1f * k2f * k1f.ln()).cbrt() * k1f.log2()
        + (binomial(k2, k1 - 1) as f64).log2()
        + (k1f.powi(3) + 1.0).log2();
    let second = 4.0 * k1f * k1f.log2();
    Ok(Log2Value(lead + first.min(second)))
}

/// `n^{c ω(m) n^{2/3} (ln n)^{1/3}}`.
pub fn bah_bound(n: u64, m: u64, c: f64) -> Result<Log2Value> {
    if n == 0 || m == 0 || c <= 0.0 {
        return Err(Error::InvalidArgument("n, m and c must be positive".into()));
    }
    let nf = n as f64;
    Ok(Log2Value(c * omega(m) as f64 * nf.powf(2.0 / 3.0) * nf.ln().cbrt() * nf.log2()))
}

/// `2^{c(G) + c_m n^{2/3} (ln n)^{4/3}}` with `c(G)` from `n` and `m`.
pub fn coun_bound(n: u64, m: u64, params: &BoundParams) -> Result<Log2Value> {
    if n == 0 || m == 0 || !n.is_multiple_of(m) {
        return Err(Error::InvalidArgument(format!("no group of order {n} with exponent {m}")));
    }
    let nf = n as f64;
    let c = c_from_order_exponent(n, m) as f64;
    Ok(Log2Value(c + params.c_m * nf.powf(2.0 / 3.0) * nf.ln().powf(4.0 / 3.0)))
}

/// `n·m·ln n`, the cap on the number of splittings.
pub fn splitting_count_bound(n: u64, m: u64) -> f64 {
    (n * m) as f64 * (n as f64).ln()
}

/// `3nm ln n · 2^{(ln n)²}` as a base-2 logarithm.
pub fn extremal_count_bound(n: u64, m: u64) -> Log2Value {
    let nf = n as f64;
    Log2Value((3.0 * (n * m) as f64 * nf.ln()).log2() + nf.ln().powi(2))
}
