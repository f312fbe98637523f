use std::collections::HashSet;

use super::{Elem, FinAbGroup, GroupSubset};
use crate::arith::factorize;
use crate::config::Guards;
use crate::error::{guard, Error, Result};

/// An automorphism, stored as the images of the canonical generators and
/// as a full permutation table of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<Elem>,
    table: Vec<u32>,
}

impl Automorphism {
    /// The endomorphism sending `e_i` to `images[i]`, if it is a
    /// well-defined bijection.
    pub fn from_images(g: &FinAbGroup, images: Vec<Elem>) -> Option<Self> {
        if images.len() != g.rank() {
            return None;
        }
        for (&y, &d) in images.iter().zip(g.factors()) {
            if g.mul(d as i64, y) != 0 {
                return None;
            }
        }
        let n = g.order();
        let mut table = vec![0u32; n];
        let mut hit = vec![false; n];
        for x in g.elements() {
            let mut y = 0;
            for (&c, &img) in g.coords(x).iter().zip(&images) {
                y = g.add(y, g.mul(c as i64, img));
            }
            if hit[y] {
                return None;
            }
            hit[y] = true;
            table[x] = y as u32;
        }
        Some(Automorphism { images, table })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        Automorphism {
            images: (0..g.rank()).map(|i| g.generator(i)).collect(),
            table: g.elements().map(|x| x as u32).collect(),
        }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x] as Elem
    }

    pub fn apply_set(&self, a: &GroupSubset) -> GroupSubset {
        a.map(&self.table)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&y| self.apply(y)).collect(),
            table: other.table.iter().map(|&y| self.table[y as usize]).collect(),
        }
    }
}

/// `|Aut(G)|` from the invariant factors, computed per primary component.
///
/// For a p-group of type `p^{e_1} ≤ … ≤ p^{e_k}`, with `d_j = max{l : e_l = e_j}`
/// and `c_j = min{l : e_l = e_j}`, the order is
/// `∏ (p^{d_j} - p^{j-1}) · ∏ p^{e_j (k - d_j)} · ∏ p^{(e_j - 1)(k - c_j + 1)}`.
pub fn aut_order(g: &FinAbGroup) -> u128 {
    let mut total: u128 = 1;
    for (p, _) in factorize(g.exponent()) {
        let mut e: Vec<u32> = g
            .factors()
            .iter()
            .filter_map(|&d| {
                let v = factorize(d).into_iter().find(|&(q, _)| q == p)?.1;
                Some(v)
            })
            .collect();
        e.sort_unstable();
        let k = e.len();
        let p = p as u128;
        for j in 1..=k {
            let ej = e[j - 1];
            let d = (1..=k).filter(|&l| e[l - 1] == ej).max().unwrap();
            let c = (1..=k).filter(|&l| e[l - 1] == ej).min().unwrap();
            total *= p.pow(d as u32) - p.pow(j as u32 - 1);
            total *= p.pow(ej * (k - d) as u32);
            total *= p.pow((ej - 1) * (k - c + 1) as u32);
        }
    }
    total
}

fn close(gens: &[Automorphism], closure: &mut HashSet<Vec<Elem>>, g: &FinAbGroup) {
    let mut queue: Vec<Vec<Elem>> = closure.iter().cloned().collect();
    while let Some(alpha) = queue.pop() {
        for beta in gens {
            let prod: Vec<Elem> = alpha.iter().map(|&y| beta.apply(y)).collect();
            if closure.insert(prod.clone()) {
                queue.push(prod);
            }
        }
    }
    debug_assert!(closure.iter().all(|im| im.len() == g.rank()));
}

/// A generating set of `Aut(G)`.
///
/// Candidate generator images are scanned in lexicographic order; a
/// candidate is kept when it is a bijective homomorphism outside the span
/// of the generators kept so far. The scan stops once the span reaches
/// `|Aut(G)|`.
pub fn automorphism_generators(g: &FinAbGroup, guards: &Guards) -> Result<Vec<Automorphism>> {
    guard("group order", g.order() as u64, guards.structural_order as u64)?;
    let target = aut_order(g);
    guard("automorphism group order", target, guards.aut_order as u128)?;
    let id = Automorphism::identity(g);
    let mut closure: HashSet<Vec<Elem>> = HashSet::from([id.images.clone()]);
    let mut gens: Vec<Automorphism> = Vec::new();
    if closure.len() as u128 == target {
        return Ok(gens);
    }
    let choices: Vec<Vec<Elem>> = g
        .factors()
        .iter()
        .map(|&d| g.elements().filter(|&y| g.mul(d as i64, y) == 0).collect())
        .collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let images: Vec<Elem> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if !closure.contains(&images) {
            if let Some(a) = Automorphism::from_images(g, images) {
                gens.push(a);
                close(&gens, &mut closure, g);
                if closure.len() as u128 == target {
                    return Ok(gens);
                }
            }
        }
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Err(Error::TheoremViolation(format!(
                    "generated automorphisms of {g:?} span {} elements, expected {target}",
                    closure.len()
                )));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f).unwrap()
    }

    /// Count automorphisms by testing every tuple of generator images.
    fn brute_force_aut_count(g: &FinAbGroup) -> usize {
        let choices: Vec<Vec<Elem>> = g
            .factors()
            .iter()
            .map(|&d| g.elements().filter(|&y| g.mul(d as i64, y) == 0).collect())
            .collect();
        let mut count = 0;
        let mut stack = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == choices.len() {
                count += Automorphism::from_images(g, prefix).is_some() as usize;
                continue;
            }
            for &y in &choices[prefix.len()] {
                let mut p = prefix.clone();
                p.push(y);
                stack.push(p);
            }
        }
        count
    }

    #[test]
    fn aut_order_formula() {
        assert_eq!(aut_order(&grp(&[7])), 6);
        assert_eq!(aut_order(&grp(&[7, 7])), 2016);
        assert_eq!(aut_order(&grp(&[49])), 42);
        assert_eq!(aut_order(&grp(&[91])), 72);
        for f in [&[7, 7][..], &[49], &[7, 49], &[4, 8], &[2, 2, 4], &[3, 9], &[91], &[7, 91]] {
            let g = grp(f);
            if g.order() <= 700 {
                assert_eq!(aut_order(&g), brute_force_aut_count(&g) as u128, "{g:?}");
            }
        }
    }

    #[test]
    fn generators_span_aut() {
        for f in [&[7][..], &[7, 7], &[49], &[7, 49], &[13]] {
            let g = grp(f);
            let gens = automorphism_generators(&g, &Guards::default()).unwrap();
            let mut closure = HashSet::from([Automorphism::identity(&g).images().to_vec()]);
            close(&gens, &mut closure, &g);
            assert_eq!(closure.len() as u128, aut_order(&g));
            assert!(gens.len() <= 8, "{g:?}: {} generators", gens.len());
        }
    }

    #[test]
    fn cyclic_generators_are_unit_multiplications() {
        let g = grp(&[7]);
        let gens = automorphism_generators(&g, &Guards::default()).unwrap();
        for a in &gens {
            let u = a.apply(1);
            for x in g.elements() {
                assert_eq!(a.apply(x), (u * x) % 7);
            }
        }
    }

    #[test]
    fn trivial_group_has_no_generators() {
        let g = FinAbGroup::trivial();
        assert!(automorphism_generators(&g, &Guards::default()).unwrap().is_empty());
        assert_eq!(aut_order(&g), 1);
    }

    #[test]
    fn aut_guard() {
        let guards = Guards {
            aut_order: 100,
            ..Guards::default()
        };
        assert!(automorphism_generators(&grp(&[7, 7]), &guards).unwrap_err().is_guard());
    }
}
