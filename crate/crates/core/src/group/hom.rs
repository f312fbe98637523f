use num_integer::gcd;

use super::{Elem, FinAbGroup, GroupSubset, Subgroup};
use crate::config::Guards;
use crate::error::{guard, Error, Result};

/// A homomorphism `G → Z/qZ`, determined by the images of the canonical
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicHom {
    group: FinAbGroup,
    q: u64,
    images: Vec<u64>,
}

impl CyclicHom {
    pub fn new(group: &FinAbGroup, q: u64, images: Vec<u64>) -> Result<Self> {
        if q == 0 || images.len() != group.rank() {
            return Err(Error::InvalidArgument(format!(
                "homomorphism to Z/{q} needs {} images, got {}",
                group.rank(),
                images.len()
            )));
        }
        let images: Vec<u64> = images.into_iter().map(|g| g % q).collect();
        for (&d, &g) in group.factors().iter().zip(&images) {
            if !(d as u128 * g as u128).is_multiple_of(q as u128) {
                return Err(Error::InvalidArgument(format!(
                    "image {g} of a generator of order {d} is not killed by {d} in Z/{q}"
                )));
            }
        }
        Ok(CyclicHom {
            group: group.clone(),
            q,
            images,
        })
    }

    /// The identity `Z/mZ → Z/mZ`.
    pub fn identity(group: &FinAbGroup) -> Result<Self> {
        if !group.is_cyclic() {
            return Err(Error::InvalidArgument("identity map needs a cyclic group".into()));
        }
        Self::new(group, group.exponent(), vec![1])
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn is_surjective(&self) -> bool {
        self.images.iter().fold(self.q, |acc, &g| gcd(acc, g)) == 1
    }

    pub fn apply(&self, x: Elem) -> u64 {
        let coords = self.group.coords(x);
        coords
            .iter()
            .zip(&self.images)
            .fold(0u128, |acc, (&c, &g)| (acc + c as u128 * g as u128) % self.q as u128) as u64
    }

    /// `f(x)` for every element, by index.
    pub fn values(&self) -> Vec<u64> {
        self.group.elements().map(|x| self.apply(x)).collect()
    }

    pub fn kernel(&self) -> Subgroup {
        let vals = self.values();
        Subgroup::from_closed(GroupSubset::from_elems(
            &self.group,
            self.group.elements().filter(|&x| vals[x] == 0),
        ))
    }

    /// `f^{-1}(S)` for residues `S ⊆ Z/qZ`.
    pub fn preimage(&self, residues: &[u64]) -> GroupSubset {
        let mut want = vec![false; self.q as usize];
        for &r in residues {
            want[(r % self.q) as usize] = true;
        }
        let vals = self.values();
        GroupSubset::from_elems(&self.group, self.group.elements().filter(|&x| want[vals[x] as usize]))
    }

    /// `u·f` for an integer `u`.
    pub fn scale(&self, u: u64) -> CyclicHom {
        CyclicHom {
            group: self.group.clone(),
            q: self.q,
            images: self.images.iter().map(|&g| g * u % self.q).collect(),
        }
    }
}

/// Every surjective homomorphism `G → Z/qZ`, in lexicographic order of the
/// generator images.
pub fn enumerate_surjections_to_cyclic(g: &FinAbGroup, q: u64) -> Result<Vec<CyclicHom>> {
    let m = g.exponent();
    if q == 0 || !m.is_multiple_of(q) {
        return Err(Error::InvalidArgument(format!("{q} does not divide the exponent {m}")));
    }
    // image of a generator of order d must be a multiple of q / gcd(d, q)
    let choices: Vec<Vec<u64>> = g
        .factors()
        .iter()
        .map(|&d| {
            let step = q / gcd(d, q);
            (0..q).step_by(step as usize).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let images: Vec<u64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if images.iter().fold(q, |acc, &x| gcd(acc, x)) == 1 {
            out.push(CyclicHom {
                group: g.clone(),
                q,
                images,
            });
        }
        // odometer, last coordinate fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(out);
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

/// A splitting `G = H ⊕ ⟨gen⟩` with `⟨gen⟩ ≅ Z/mZ`.
///
/// `projection` is the surjection onto `Z/mZ` with kernel `H` sending `gen`
/// to 1; it gives each element its second coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Splitting {
    h: Subgroup,
    gen: Elem,
    projection: CyclicHom,
}

impl Splitting {
    pub fn new(h: Subgroup, gen: Elem) -> Result<Self> {
        let g = h.set().group().clone();
        let m = g.exponent();
        if g.element_order(gen) != m {
            return Err(Error::InvalidArgument(format!(
                "generator {:?} does not have order {m}",
                g.coords(gen)
            )));
        }
        if h.order() as u64 * m != g.order() as u64 {
            return Err(Error::InvalidArgument("|H|·m differs from |G|".into()));
        }
        let mut y = gen;
        for _ in 1..m {
            if h.contains(y) {
                return Err(Error::InvalidArgument("⟨gen⟩ meets H nontrivially".into()));
            }
            y = g.add(y, gen);
        }
        // second coordinate of each canonical generator
        let images = (0..g.rank())
            .map(|i| {
                let e = g.generator(i);
                (0..m)
                    .find(|&c| h.contains(g.sub(e, g.mul(c as i64, gen))))
                    .expect("H + ⟨gen⟩ = G")
            })
            .collect();
        let projection = CyclicHom::new(&g, m, images)?;
        Ok(Splitting { h, gen, projection })
    }

    pub(crate) fn from_parts(h: Subgroup, gen: Elem, projection: CyclicHom) -> Self {
        Splitting { h, gen, projection }
    }

    pub fn group(&self) -> &FinAbGroup {
        self.h.set().group()
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn gen(&self) -> Elem {
        self.gen
    }

    pub fn projection(&self) -> &CyclicHom {
        &self.projection
    }

    pub fn m(&self) -> u64 {
        self.group().exponent()
    }

    /// The element `(h, c) = h + c·gen`.
    pub fn element(&self, h: Elem, c: i64) -> Elem {
        let g = self.group();
        g.add(h, g.mul(c, self.gen))
    }

    /// Unique `(h, c)` with `x = h + c·gen`, `h ∈ H`, `0 ≤ c < m`.
    pub fn decompose(&self, x: Elem) -> (Elem, u64) {
        let c = self.projection.apply(x);
        (self.group().sub(x, self.group().mul(c as i64, self.gen)), c)
    }

    /// `(B, C) = B + gen·C` for `B ⊆ H` and residues `C`.
    pub fn lift(&self, b: &GroupSubset, residues: &[u64]) -> GroupSubset {
        let mut out = GroupSubset::empty(self.group());
        for &c in residues {
            for h in b.iter() {
                out.insert(self.element(h, c as i64));
            }
        }
        out
    }

    /// `{h ∈ H : h + c·gen ∈ A}`.
    pub fn layer(&self, a: &GroupSubset, c: i64) -> GroupSubset {
        let shift = self.group().mul(c, self.gen);
        GroupSubset::from_elems(
            self.group(),
            self.h.set().iter().filter(|&h| a.contains(self.group().add(h, shift))),
        )
    }

    /// Same `H`, generator replaced by `gen'`; `gen' - gen` must lie in `H`
    /// for the projection to be unchanged, otherwise it is recomputed.
    pub fn with_gen(&self, gen: Elem) -> Result<Splitting> {
        if self.h.contains(self.group().sub(gen, self.gen)) {
            return Ok(Splitting {
                h: self.h.clone(),
                gen,
                projection: self.projection.clone(),
            });
        }
        Splitting::new(self.h.clone(), gen)
    }

    /// `(H, -gen)`.
    pub fn negated(&self) -> Splitting {
        Splitting {
            h: self.h.clone(),
            gen: self.group().neg(self.gen),
            projection: self.projection.scale(self.m() - 1),
        }
    }
}

/// All splittings of `G` by `Z/mZ`.
///
/// Each surjection `φ: G → Z/mZ` contributes one splitting per element `x`
/// with `φ(x) = 1`, taking `H = ker φ`. Order: surjections lexicographically,
/// then generator index.
pub fn enumerate_splittings(g: &FinAbGroup, guards: &Guards) -> Result<Vec<Splitting>> {
    guard("group order", g.order() as u64, guards.structural_order as u64)?;
    let mut out = Vec::new();
    for phi in enumerate_surjections_to_cyclic(g, g.exponent())? {
        let vals = phi.values();
        let h = Subgroup::from_closed(GroupSubset::from_elems(g, g.elements().filter(|&x| vals[x] == 0)));
        for gen in g.elements().filter(|&x| vals[x] == 1) {
            out.push(Splitting::from_parts(h.clone(), gen, phi.clone()));
        }
    }
    Ok(out)
}

/// `A_i = f^{-1}{i} ∩ A` for `i ∈ Z/qZ`, indexed by `i`.
pub fn layers(a: &GroupSubset, f: &CyclicHom) -> Result<Vec<GroupSubset>> {
    if !f.is_surjective() {
        return Err(Error::Precondition("layers need a surjective homomorphism".into()));
    }
    let mut out = vec![GroupSubset::empty(a.group()); f.modulus() as usize];
    for x in a.iter() {
        out[f.apply(x) as usize].insert(x);
    }
    Ok(out)
}
