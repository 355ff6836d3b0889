//! Automorphism groups of small presented groups and their action on structures.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::search::TupleSet;
use crate::structures::{DDKStructure, StructureError};
use crate::symplectic::SymplecticSpace;
use crate::word::{Presentation, Word};

/// Largest order for which automorphisms are enumerated.
pub const MAX_AUT_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("group order {order} exceeds the automorphism cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("presentation has {rank} generators but the group records {recorded}")]
    PresentationMismatch { rank: usize, recorded: usize },
    #[error("automorphism list is not closed under composition")]
    NotClosed,
    #[error("{structures} structures are not divisible by {automorphisms} automorphisms")]
    NotDivisible { structures: u64, automorphisms: u64 },
    #[error("structure {index} is fixed by a non-identity automorphism")]
    FixedPoint { index: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A bijective multiplicative self-map, stored as an element table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    perm: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn identity(order: usize) -> Self {
        GroupAutomorphism {
            perm: (0..order).collect(),
        }
    }

    /// Wraps a table after checking bijectivity and multiplicativity.
    pub fn from_table(g: &FiniteGroup, perm: Vec<usize>) -> Option<Self> {
        let n = g.order();
        if perm.len() != n {
            return None;
        }
        let mut seen = vec![false; n];
        for &x in &perm {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if perm[g.mul(x, y)] != g.mul(perm[x], perm[y]) {
                    return None;
                }
            }
        }
        Some(GroupAutomorphism { perm })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.perm
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut perm = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y] = x;
        }
        GroupAutomorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Greedy irredundant generating subset of the recorded generators, as indices.
pub fn irredundant_generators(g: &FiniteGroup) -> Vec<usize> {
    let gens = g.generator_elements();
    let mut keep: Vec<usize> = (0..gens.len()).filter(|&i| gens[i] != 0).collect();
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let trial: Vec<usize> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &k)| gens[k])
            .collect();
        if g.generates(&trial) {
            keep.remove(i);
        }
    }
    keep
}

/// Words in the kept generators for every element, from a breadth-first tree.
fn element_words(g: &FiniteGroup, kept: &[usize]) -> Vec<Word> {
    let gens = g.generator_elements();
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[0] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (slot, &k) in kept.iter().enumerate() {
            let b = g.mul(a, gens[k]);
            if words[b].is_none() {
                let mut w = words[a].clone().unwrap();
                w.push(slot as i32 + 1);
                words[b] = Some(w);
                queue.push_back(b);
            }
        }
    }
    words.into_iter().map(|w| w.expect("kept generators generate")).collect()
}

fn substitute(w: &Word, images: &[Word]) -> Word {
    let mut out = Word::identity();
    for &l in w.letters() {
        let img = &images[l.unsigned_abs() as usize - 1];
        out = if l > 0 { out.mul(img) } else { out.mul(&img.inverse()) };
    }
    out
}

/// `Aut(G)` by exhaustive search over images of an irredundant generating
/// subset, with every relator checked as soon as its variables are assigned.
pub fn automorphism_group(g: &FiniteGroup, p: &Presentation) -> Result<Vec<GroupAutomorphism>, AutError> {
    let n = g.order();
    if n > MAX_AUT_ORDER {
        return Err(AutError::CapExceeded {
            order: n,
            cap: MAX_AUT_ORDER,
        });
    }
    let gens = g.generator_elements();
    if gens.len() != p.rank() {
        return Err(AutError::PresentationMismatch {
            rank: p.rank(),
            recorded: gens.len(),
        });
    }
    if n == 1 {
        return Ok(vec![GroupAutomorphism::identity(1)]);
    }
    let kept = irredundant_generators(g);
    let words = element_words(g, &kept);
    let gen_words: Vec<Word> = gens.iter().map(|&x| words[x].clone()).collect();
    let relators: Vec<Word> = p.relators().iter().map(|r| substitute(r, &gen_words)).collect();
    let k = kept.len();
    let mut checks: Vec<Vec<Word>> = vec![Vec::new(); k];
    for r in relators {
        let depth = r.max_generator().unwrap_or(0);
        checks[depth].push(r);
    }
    let domains: Vec<Vec<usize>> = kept
        .iter()
        .map(|&i| {
            let o = g.element_order(gens[i]);
            (1..n).filter(|&x| g.element_order(x) == o).collect()
        })
        .collect();

    fn dfs(
        g: &FiniteGroup,
        depth: usize,
        images: &mut Vec<usize>,
        domains: &[Vec<usize>],
        checks: &[Vec<Word>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == domains.len() {
            if g.generates(images) {
                out.push(images.clone());
            }
            return;
        }
        for &x in &domains[depth] {
            images.push(x);
            if checks[depth]
                .iter()
                .all(|r| g.evaluate_word(r, images).is_ok_and(|v| v == 0))
            {
                dfs(g, depth + 1, images, domains, checks, out);
            }
            images.pop();
        }
    }

    let tuples: Vec<Vec<usize>> = domains[0]
        .par_iter()
        .flat_map_iter(|&x| {
            let mut images = vec![x];
            let mut out = Vec::new();
            if checks[0]
                .iter()
                .all(|r| g.evaluate_word(r, &images).is_ok_and(|v| v == 0))
            {
                dfs(g, 1, &mut images, &domains, &checks, &mut out);
            }
            out
        })
        .collect();
    let mut auts: Vec<GroupAutomorphism> = tuples
        .par_iter()
        .map(|imgs| {
            let perm: Vec<usize> = words
                .iter()
                .map(|w| g.evaluate_word(w, imgs).expect("word over kept generators"))
                .collect();
            GroupAutomorphism::from_table(g, perm)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or(AutError::NotClosed)?;
    auts.sort();
    check_closure(&auts)?;
    Ok(auts)
}

fn check_closure(auts: &[GroupAutomorphism]) -> Result<(), AutError> {
    let set: HashSet<&[usize]> = auts.iter().map(|a| a.table()).collect();
    let closed = auts.par_iter().all(|a| {
        auts.iter()
            .all(|b| set.contains(a.compose(b).table()))
    });
    if closed {
        Ok(())
    } else {
        Err(AutError::NotClosed)
    }
}

/// Conjugations `x ↦ g x g⁻¹`, one per coset of the centre.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<GroupAutomorphism> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..g.order() {
        let ai = g.inv(a);
        let perm: Vec<usize> = (0..g.order()).map(|x| g.mul(g.mul(a, x), ai)).collect();
        if seen.insert(perm.clone()) {
            out.push(GroupAutomorphism { perm });
        }
    }
    out.sort();
    out
}

/// `|Aut(G)| / |Inn(G)|`.
pub fn out_order(g: &FiniteGroup, p: &Presentation) -> Result<usize, AutError> {
    Ok(automorphism_group(g, p)?.len() / inner_automorphisms(g).len())
}

/// A generating subset of a list of automorphisms, chosen greedily.
pub fn generating_automorphisms(auts: &[GroupAutomorphism]) -> Vec<GroupAutomorphism> {
    let Some(first) = auts.first() else {
        return Vec::new();
    };
    let mut closure: HashSet<GroupAutomorphism> = HashSet::from([GroupAutomorphism::identity(first.perm.len())]);
    let mut gens: Vec<GroupAutomorphism> = Vec::new();
    for a in auts {
        if closure.contains(a) {
            continue;
        }
        gens.push(a.clone());
        let mut frontier: Vec<GroupAutomorphism> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = s.compose(&x);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Applies `φ` componentwise and re-verifies the image.
pub fn act<'g>(phi: &GroupAutomorphism, s: &DDKStructure<'g>) -> Result<DDKStructure<'g>, AutError> {
    let image = s.elements().iter().map(|&x| phi.apply(x)).collect();
    Ok(DDKStructure::new(s.ambient(), image, s.stype())?)
}

fn act_tuple(phi: &GroupAutomorphism, t: &[usize]) -> Vec<usize> {
    t.iter().map(|&x| phi.apply(x)).collect()
}

/// Which structures are tested for freeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Freeness {
    /// A seeded sample of the given size.
    Sample(usize),
    All,
}

impl Default for Freeness {
    fn default() -> Self {
        Freeness::Sample(1000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub structures: u64,
    pub automorphisms: u64,
    pub orbits: u64,
    pub freeness_checked: u64,
}

/// Seed of the freeness sample.
pub const FREENESS_SEED: u64 = 0x5eed;

/// Checks that no non-identity automorphism fixes a sampled structure and
/// returns `|structures| / |Aut(G)|`.
pub fn orbit_count(
    structures: &TupleSet,
    auts: &[GroupAutomorphism],
    freeness: Freeness,
) -> Result<OrbitReport, AutError> {
    let total = structures.len();
    let indices: Vec<usize> = match freeness {
        Freeness::All => (0..total).collect(),
        Freeness::Sample(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(FREENESS_SEED);
            let mut v = sample(&mut rng, total, k.min(total)).into_vec();
            v.sort_unstable();
            v
        }
    };
    let nontrivial: Vec<&GroupAutomorphism> = auts.iter().filter(|a| !a.is_identity()).collect();
    let fixed = indices.par_iter().find_first(|&&i| {
        let t = structures.get(i);
        nontrivial.iter().any(|a| act_tuple(a, &t) == t)
    });
    if let Some(&index) = fixed {
        return Err(AutError::FixedPoint { index });
    }
    let (s, a) = (total as u64, auts.len() as u64);
    if a == 0 || s % a != 0 {
        return Err(AutError::NotDivisible {
            structures: s,
            automorphisms: a,
        });
    }
    Ok(OrbitReport {
        structures: s,
        automorphisms: a,
        orbits: s / a,
        freeness_checked: indices.len() as u64,
    })
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Orbits computed directly by union-find over a generating set of `Aut(G)`.
/// Images outside the set are reported as an error.
pub fn orbit_count_union_find(structures: &TupleSet, auts: &[GroupAutomorphism]) -> Result<u64, AutError> {
    let gens = generating_automorphisms(auts);
    let n = structures.len();
    let images: Vec<Vec<u32>> = gens
        .iter()
        .map(|phi| {
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let img = act_tuple(phi, &structures.get(i));
                    structures.position(&img).map(|j| j as u32)
                })
                .collect::<Option<Vec<u32>>>()
                .ok_or(AutError::NotClosed)
        })
        .collect::<Result<_, _>>()?;
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for img in &images {
        for (i, &j) in img.iter().enumerate() {
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    Ok((0..n as u32).filter(|&i| find(&mut parent, i) == i).count() as u64)
}

/// Whether `φ` preserves the pairing and the quadratic form on `V`.
pub fn preserves_form(space: &SymplecticSpace, phi: &GroupAutomorphism) -> bool {
    let n = phi.perm.len();
    (0..n).all(|x| space.q(space.project(phi.apply(x))) == space.q(space.project(x)))
        && (0..n).all(|x| {
            (0..n).all(|y| {
                space.pair(space.project(phi.apply(x)), space.project(phi.apply(y)))
                    == space.pair(space.project(x), space.project(y))
            })
        })
}
