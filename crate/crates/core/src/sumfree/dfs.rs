//! Bit-mask DFS over sum-free subsets of a group of order at most 128.
//!
//! Elements are added in ascending index order, so a preorder walk visits
//! sets in lexicographic order of their member lists. Each node carries the
//! mask of elements that can no longer be added:
//! `{0} ∪ (A+A) ∪ (A−A) ∪ {y : 2y ∈ A}`.

use crate::config::{par_map, Exec};
use crate::error::{Error, Result};
use crate::group::FinAbGroup;

pub const MAX_DFS_ORDER: usize = 128;

#[inline]
fn bit(x: usize) -> u128 {
    1u128 << x
}

#[inline]
fn below(x: usize) -> u128 {
    // bits 0..=x
    if x >= 127 {
        u128::MAX
    } else {
        (1u128 << (x + 1)) - 1
    }
}

/// Precomputed addition data plus the universe the search is restricted to.
pub struct SumFreeSearch {
    n: usize,
    add: Vec<u8>,
    sub: Vec<u8>,
    halves: Vec<u128>,
    allowed: u128,
}

impl SumFreeSearch {
    /// Search over all of `g`.
    pub fn new(g: &FinAbGroup) -> Result<Self> {
        Self::restricted(g, u128::MAX)
    }

    /// Search over subsets of `allowed` (sum-freeness still judged in `g`).
    pub fn restricted(g: &FinAbGroup, allowed: u128) -> Result<Self> {
        let n = g.order();
        if n > MAX_DFS_ORDER {
            return Err(Error::GuardExceeded {
                what: "DFS group order",
                value: n as u128,
                limit: MAX_DFS_ORDER as u128,
            });
        }
        let mut add = vec![0u8; n * n];
        let mut sub = vec![0u8; n * n];
        let mut halves = vec![0u128; n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = g.add(a, b) as u8;
                sub[a * n + b] = g.sub(a, b) as u8;
            }
            halves[g.add(a, a)] |= bit(a);
        }
        let universe = if n == 128 { u128::MAX } else { bit(n) - 1 };
        Ok(SumFreeSearch {
            n,
            add,
            sub,
            halves,
            allowed: allowed & universe & !1,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn allowed(&self) -> u128 {
        self.allowed
    }

    /// Elements forbidden once `x` joins `chosen`.
    #[inline]
    fn forbidden_by(&self, chosen: u128, x: usize) -> u128 {
        let n = self.n;
        let row = x * n;
        let mut f = bit(self.add[row + x] as usize) | self.halves[x];
        let mut c = chosen;
        while c != 0 {
            let a = c.trailing_zeros() as usize;
            c &= c - 1;
            f |= bit(self.add[row + a] as usize)
                | bit(self.sub[row + a] as usize)
                | bit(self.sub[a * n + x] as usize);
        }
        f
    }

    pub fn is_sum_free_mask(&self, mask: u128) -> bool {
        let mut chosen = 0u128;
        let mut forb = 1u128;
        let mut c = mask;
        while c != 0 {
            let x = c.trailing_zeros() as usize;
            c &= c - 1;
            if forb & bit(x) != 0 {
                return false;
            }
            forb |= self.forbidden_by(chosen, x);
            chosen |= bit(x);
        }
        true
    }

    /// Walk every sum-free subset of size at least `min_size` below the node
    /// `(chosen, forb)` whose remaining candidates are `cand`. Subtrees that
    /// cannot reach `min_size` are pruned.
    fn walk<F: FnMut(u128, u32)>(&self, chosen: u128, size: u32, forb: u128, cand: u128, min_size: u32, visit: &mut F) {
        if size >= min_size {
            visit(chosen, size);
        }
        let mut c = cand;
        while c != 0 {
            if size + c.count_ones() < min_size {
                return;
            }
            let x = c.trailing_zeros() as usize;
            c &= c - 1;
            let nf = forb | self.forbidden_by(chosen, x);
            self.walk(chosen | bit(x), size + 1, nf, c & !nf, min_size, visit);
        }
    }

    /// Top-level subtrees: one per first element.
    fn roots(&self) -> Vec<usize> {
        let mut v = Vec::new();
        let mut c = self.allowed;
        while c != 0 {
            v.push(c.trailing_zeros() as usize);
            c &= c - 1;
        }
        v
    }

    fn subtree<F: FnMut(u128, u32)>(&self, x: usize, min_size: u32, visit: &mut F) {
        let forb = 1 | self.forbidden_by(0, x);
        let cand = self.allowed & !below(x) & !forb;
        self.walk(bit(x), 1, forb, cand, min_size, visit);
    }

    /// Visit all sum-free subsets of size ≥ `min_size` in lexicographic order.
    pub fn for_each<F: FnMut(u128, u32)>(&self, min_size: u32, mut visit: F) {
        if min_size == 0 {
            visit(0, 0);
        }
        for x in self.roots() {
            self.subtree(x, min_size, &mut visit);
        }
    }

    /// Fold every top-level subtree independently (in parallel when allowed)
    /// and return the per-subtree accumulators in lexicographic order. The
    /// empty set is not visited.
    pub fn fold_subtrees<T, I, F>(&self, exec: Exec, min_size: u32, init: I, step: F) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, u128, u32) + Sync + Send,
    {
        par_map(exec, self.roots(), |x| {
            let mut acc = init();
            self.subtree(x, min_size, &mut |mask, size| step(&mut acc, mask, size));
            acc
        })
    }

    /// Number of sum-free subsets of the universe, the empty set included.
    pub fn count(&self, exec: Exec) -> u64 {
        1 + self
            .fold_subtrees(exec, 0, || 0u64, |acc, _, _| *acc += 1)
            .into_iter()
            .sum::<u64>()
    }

    /// All sum-free subsets of exactly `size` elements, lexicographic order.
    pub fn collect_size(&self, exec: Exec, size: u32) -> Vec<u128> {
        if size == 0 {
            return vec![0];
        }
        self.fold_subtrees(
            exec,
            size,
            Vec::new,
            |acc, mask, s| {
                if s == size {
                    acc.push(mask)
                }
            },
        )
        .into_iter()
        .flatten()
        .collect()
    }

    /// Branch and bound for the largest sum-free subset; the witness is the
    /// lexicographically least one of maximum size.
    pub fn max(&self, exec: Exec) -> (u32, u128) {
        let per_root = par_map(exec, self.roots(), |x| {
            let mut best = (0u32, 0u128);
            let forb = 1 | self.forbidden_by(0, x);
            let cand = self.allowed & !below(x) & !forb;
            self.bnb(bit(x), 1, forb, cand, &mut best);
            best
        });
        per_root
            .into_iter()
            .fold((0, 0), |acc, b| if b.0 > acc.0 { b } else { acc })
    }

    fn bnb(&self, chosen: u128, size: u32, forb: u128, cand: u128, best: &mut (u32, u128)) {
        if size > best.0 {
            *best = (size, chosen);
        }
        let mut c = cand;
        while c != 0 {
            // prune: current size + remaining candidates cannot beat best
            if size + c.count_ones() <= best.0 {
                return;
            }
            let x = c.trailing_zeros() as usize;
            c &= c - 1;
            let nf = forb | self.forbidden_by(chosen, x);
            self.bnb(chosen | bit(x), size + 1, nf, c & !nf, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(g: &FinAbGroup) -> u64 {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&mask| {
                let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                elems
                    .iter()
                    .all(|&a| elems.iter().all(|&b| mask >> g.add(a, b) & 1 == 0))
            })
            .count() as u64
    }

    #[test]
    fn counts_match_exhaustive_scan() {
        for m in [5u64, 7, 8, 9, 10, 13] {
            let g = FinAbGroup::cyclic(m).unwrap();
            let s = SumFreeSearch::new(&g).unwrap();
            assert_eq!(s.count(Exec::Sequential), brute_count(&g), "Z/{m}");
            assert_eq!(s.count(Exec::Parallel), brute_count(&g), "Z/{m}");
        }
        let g = FinAbGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(SumFreeSearch::new(&g).unwrap().count(Exec::Sequential), brute_count(&g));
    }

    #[test]
    fn z7_census() {
        let g = FinAbGroup::cyclic(7).unwrap();
        let s = SumFreeSearch::new(&g).unwrap();
        assert_eq!(s.count(Exec::Sequential), 16);
        assert_eq!(s.collect_size(Exec::Sequential, 2).len(), 9);
        // {1, 3} is the lexicographically least maximum
        assert_eq!(s.max(Exec::Sequential), (2, 0b1010));
        assert_eq!(s.max(Exec::Parallel), (2, 0b1010));
    }

    #[test]
    fn visit_order_is_lexicographic() {
        let g = FinAbGroup::cyclic(13).unwrap();
        let s = SumFreeSearch::new(&g).unwrap();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        s.for_each(0, |mask, _| seen.push((0..13).filter(|&i| mask >> i & 1 == 1).collect()));
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn order_guard() {
        let g = FinAbGroup::cyclic(131).unwrap();
        assert!(SumFreeSearch::new(&g).is_err());
    }
}
