//! The symplectic space `V = G/Z(G)` of an extra-special 2-group and the
//! constructive count of genus-2 structures through reduced structures.

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::search::TupleSet;
use crate::structures::{Failure, StructureError, StructureType, StructureVerifier};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("group is not extra-special with p = 2: {0}")]
    NotExtraSpecial(String),
    #[error("operation needs dimension 4, space has dimension {0}")]
    Dimension(usize),
    #[error("quadratic form has {zeros} zeros, matching neither form type")]
    CorruptedForm { zeros: usize },
    #[error("section entry for vector {0} does not project to it")]
    BadSection(usize),
    #[error("lift of a reduced structure fails verification: {0}")]
    LiftFailed(Failure),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A vector of `V` as a bitmask over the basis `(r̄1, t̄1, …, r̄b, t̄b)`.
pub type F2Vector = u32;

/// `V` with its pairing, quadratic form, projection and section.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    b: usize,
    z: usize,
    basis_lifts: Vec<usize>,
    gram: Vec<F2Vector>,
    q: Vec<u8>,
    projection: Vec<F2Vector>,
    section: Vec<usize>,
}

fn parity(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

impl SymplecticSpace {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn dim(&self) -> usize {
        2 * self.b
    }

    pub fn size(&self) -> usize {
        1 << self.dim()
    }

    /// The central element of order 2.
    pub fn z(&self) -> usize {
        self.z
    }

    /// Group elements lifting the basis vectors.
    pub fn basis_lifts(&self) -> &[usize] {
        &self.basis_lifts
    }

    /// Gram matrix rows.
    pub fn gram(&self) -> &[F2Vector] {
        &self.gram
    }

    pub fn pair(&self, u: F2Vector, v: F2Vector) -> u8 {
        let mut acc = 0u32;
        for (i, row) in self.gram.iter().enumerate() {
            if u >> i & 1 == 1 {
                acc ^= row & v;
            }
        }
        parity(acc)
    }

    pub fn q(&self, u: F2Vector) -> u8 {
        self.q[u as usize]
    }

    pub fn project(&self, x: usize) -> F2Vector {
        self.projection[x]
    }

    pub fn section(&self, v: F2Vector) -> usize {
        self.section[v as usize]
    }

    /// Replaces the section, checking that each entry projects to its vector.
    pub fn with_section(mut self, section: Vec<usize>) -> Result<Self, SymplecticError> {
        if section.len() != self.size() {
            return Err(SymplecticError::BadSection(section.len()));
        }
        for (v, &x) in section.iter().enumerate() {
            if x >= self.projection.len() || self.projection[x] != v as F2Vector {
                return Err(SymplecticError::BadSection(v));
            }
        }
        self.section = section;
        Ok(self)
    }

    /// The section choosing the largest element of each coset.
    pub fn max_section(&self) -> Vec<usize> {
        let mut s = vec![0; self.size()];
        for (x, &v) in self.projection.iter().enumerate() {
            s[v as usize] = s[v as usize].max(x);
        }
        s
    }
}

fn pair_in_group(g: &FiniteGroup, z: usize, x: usize, y: usize) -> Result<u8, SymplecticError> {
    match g.commutator(x, y) {
        0 => Ok(0),
        c if c == z => Ok(1),
        _ => Err(SymplecticError::NotExtraSpecial(
            "a commutator lies outside the centre".into(),
        )),
    }
}

/// Builds `V = G/Z(G)` for an extra-special 2-group. The symplectic basis is
/// taken greedily, trying the group's generator images first, so for the
/// standard presentations it is `(r̄1, t̄1, …, r̄b, t̄b)`.
pub fn induced_space(g: &FiniteGroup) -> Result<SymplecticSpace, SymplecticError> {
    let center = g.center();
    if center.len() != 2 {
        return Err(SymplecticError::NotExtraSpecial(format!(
            "centre has order {}",
            center.len()
        )));
    }
    let z = center.members()[1];
    let n = g.order();
    let dim = (n / 2).trailing_zeros() as usize;
    if n != 1 << (dim + 1) || !dim.is_multiple_of(2) || dim == 0 || dim > 30 {
        return Err(SymplecticError::NotExtraSpecial(format!("order {n} is not 2^(2b+1)")));
    }
    for x in 0..n {
        let s = g.mul(x, x);
        if s != 0 && s != z {
            return Err(SymplecticError::NotExtraSpecial(
                "a square lies outside the centre".into(),
            ));
        }
    }
    let perp_of = |basis: &[usize], x: usize| -> Result<bool, SymplecticError> {
        for &e in basis {
            if pair_in_group(g, z, e, x)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let candidates: Vec<usize> = g
        .generator_elements()
        .iter()
        .copied()
        .chain(0..n)
        .filter(|&x| !center.contains(x))
        .collect();
    let mut basis: Vec<usize> = Vec::new();
    while basis.len() < dim {
        let mut e = None;
        for &x in &candidates {
            if perp_of(&basis, x)? {
                e = Some(x);
                break;
            }
        }
        let e = e.ok_or_else(|| SymplecticError::NotExtraSpecial("pairing is degenerate".into()))?;
        let mut f = None;
        for &y in &candidates {
            if perp_of(&basis, y)? && pair_in_group(g, z, e, y)? == 1 {
                f = Some(y);
                break;
            }
        }
        let f = f.ok_or_else(|| SymplecticError::NotExtraSpecial("pairing is degenerate".into()))?;
        basis.push(e);
        basis.push(f);
    }
    let b = dim / 2;
    let mut projection = vec![0 as F2Vector; n];
    for (x, slot) in projection.iter_mut().enumerate() {
        let mut v = 0;
        for j in 0..b {
            let (e, f) = (basis[2 * j], basis[2 * j + 1]);
            if pair_in_group(g, z, x, f)? == 1 {
                v |= 1 << (2 * j);
            }
            if pair_in_group(g, z, e, x)? == 1 {
                v |= 1 << (2 * j + 1);
            }
        }
        *slot = v;
    }
    for x in 0..n {
        if (projection[x] == 0) != center.contains(x) {
            return Err(SymplecticError::NotExtraSpecial("projection kernel is not the centre".into()));
        }
        for y in 0..n {
            if projection[g.mul(x, y)] != projection[x] ^ projection[y] {
                return Err(SymplecticError::NotExtraSpecial("projection is not a homomorphism".into()));
            }
        }
    }
    let size = 1usize << dim;
    let mut section = vec![usize::MAX; size];
    for (x, &v) in projection.iter().enumerate() {
        let s = &mut section[v as usize];
        *s = (*s).min(x);
    }
    let mut q = vec![0u8; size];
    for (v, &x) in section.iter().enumerate() {
        q[v] = u8::from(g.mul(x, x) == z);
    }
    let gram = (0..dim)
        .map(|i| (0..dim).fold(0, |acc, k| acc | (u32::from(i / 2 == k / 2 && i != k)) << k))
        .collect();
    let space = SymplecticSpace {
        b,
        z,
        basis_lifts: basis,
        gram,
        q,
        projection,
        section,
    };
    for x in 0..n {
        for y in 0..n {
            if space.pair(space.project(x), space.project(y)) != pair_in_group(g, z, x, y)? {
                return Err(SymplecticError::NotExtraSpecial("pairing mismatch".into()));
            }
        }
    }
    for u in 0..size as F2Vector {
        for v in 0..size as F2Vector {
            if space.q(u ^ v) != space.q(u) ^ space.q(v) ^ space.pair(u, v) {
                return Err(SymplecticError::NotExtraSpecial("q is not a quadratic refinement".into()));
            }
        }
    }
    Ok(space)
}

/// Number of zeros of `q`, the zero vector included.
pub fn zero_count(space: &SymplecticSpace) -> usize {
    (0..space.size() as F2Vector).filter(|&v| space.q(v) == 0).count()
}

/// `+1` or `-1` according to the number of zeros `2^(2b-1) + ε 2^(b-1)`.
pub fn form_type(space: &SymplecticSpace) -> Result<i8, SymplecticError> {
    let zeros = zero_count(space);
    let b = space.b as u32;
    let base = 1usize << (2 * b - 1);
    let step = 1usize << (b - 1);
    if zeros == base + step {
        Ok(1)
    } else if zeros == base - step {
        Ok(-1)
    } else {
        Err(SymplecticError::CorruptedForm { zeros })
    }
}

fn big_pow2(k: usize) -> BigUint {
    BigUint::from(1u32) << k
}

fn odd_product(upto: usize) -> BigUint {
    (1..=upto).fold(BigUint::from(1u32), |acc, i| acc * (big_pow2(2 * i) - 1u32))
}

fn two_b_minus_eps(b: usize, eps: i8) -> BigUint {
    if eps > 0 {
        big_pow2(b) - 1u32
    } else {
        big_pow2(b) + 1u32
    }
}

/// `|O_ε(2b, Z_2)| = 2^(b(b-1)+1) (2^b - ε) ∏_{i<b} (2^(2i) - 1)`.
pub fn orthogonal_order(b: usize, eps: i8) -> BigUint {
    big_pow2(b * (b - 1) + 1) * two_b_minus_eps(b, eps) * odd_product(b - 1)
}

/// `|Sp(2b, Z_2)| = 2^(b²) ∏_{i≤b} (2^(2i) - 1)`.
pub fn sp_order(b: usize) -> BigUint {
    big_pow2(b * b) * odd_product(b)
}

/// `|Aut(G)| = 2^(2b) |O_ε(2b, Z_2)|` for the extra-special group of order `2^(2b+1)`.
pub fn aut_order(b: usize, eps: i8) -> BigUint {
    big_pow2(b * (b + 1) + 1) * two_b_minus_eps(b, eps) * odd_product(b - 1)
}

fn require_dim4(space: &SymplecticSpace) -> Result<(), SymplecticError> {
    if space.dim() != 4 {
        return Err(SymplecticError::Dimension(space.dim()));
    }
    Ok(())
}

/// All ordered symplectic bases `(e1, f1, e2, f2)` of a 4-dimensional space.
pub fn enumerate_symplectic_bases(space: &SymplecticSpace) -> Result<Vec<[F2Vector; 4]>, SymplecticError> {
    require_dim4(space)?;
    let vs: Vec<F2Vector> = (1..16).collect();
    let p = |u, v| space.pair(u, v);
    let mut out = Vec::new();
    for &e1 in &vs {
        for &f1 in &vs {
            if p(e1, f1) != 1 {
                continue;
            }
            for &e2 in &vs {
                if p(e1, e2) != 0 || p(f1, e2) != 0 {
                    continue;
                }
                for &f2 in &vs {
                    if p(e2, f2) == 1 && p(e1, f2) == 0 && p(f1, f2) == 0 {
                        out.push([e1, f1, e2, f2]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Which of the four pairing patterns a reduced structure follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    A,
    B,
    C,
    D,
}

/// Eight vectors `(r̄11, t̄11, r̄12, t̄12, r̄21, t̄21, r̄22, t̄22)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedStructure {
    pub vectors: [F2Vector; 8],
}

const R11: usize = 0;
const T11: usize = 1;
const R12: usize = 2;
const T12: usize = 3;
const R21: usize = 4;
const T21: usize = 5;
const R22: usize = 6;
const T22: usize = 7;

fn r1(j: usize) -> usize {
    2 * (j - 1)
}
fn t1(j: usize) -> usize {
    2 * (j - 1) + 1
}
fn r2(j: usize) -> usize {
    4 + 2 * (j - 1)
}
fn t2(j: usize) -> usize {
    4 + 2 * (j - 1) + 1
}

/// Checks the symplectic relations and that the eight vectors span `V`.
pub fn is_reduced_structure(space: &SymplecticSpace, v: &[F2Vector; 8]) -> bool {
    let p = |a: usize, b: usize| space.pair(v[a], v[b]);
    if p(R12, T12) ^ p(R11, T11) != 1 || p(R21, T21) ^ p(R22, T22) != 1 {
        return false;
    }
    for j in 1..=2 {
        for k in 1..=2 {
            let d = u8::from(j == k);
            if p(r1(j), t2(k)) != d || p(r1(j), r2(k)) != 0 || p(t1(j), r2(k)) != d || p(t1(j), t2(k)) != 0 {
                return false;
            }
        }
    }
    span_dimension(v) == space.dim()
}

/// Dimension of the span of a list of vectors.
pub fn span_dimension(vs: &[F2Vector]) -> usize {
    let mut rows: Vec<F2Vector> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &r in &rows {
            x = x.min(x ^ r);
        }
        if x != 0 {
            rows.push(x);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rows.len()
}

impl ReducedStructure {
    pub fn case(&self, space: &SymplecticSpace) -> Case {
        let p = |a: usize, b: usize| space.pair(self.vectors[a], self.vectors[b]);
        match (p(R12, T12), p(R11, T11), p(R21, T21), p(R22, T22)) {
            (0, 1, 0, 1) => Case::A,
            (1, 0, 1, 0) => Case::B,
            (0, 1, 1, 0) => Case::C,
            _ => Case::D,
        }
    }

    /// Exchanges the roles of the indices 1 and 2 in both halves.
    pub fn swap_indices(&self) -> ReducedStructure {
        let v = self.vectors;
        ReducedStructure {
            vectors: [v[R12], v[T12], v[R11], v[T11], v[R22], v[T22], v[R21], v[T21]],
        }
    }
}

/// The 2×2 matrices over `Z_2` with `ad + bc = 1`, as `(a, b, c, d)`.
pub fn gl2_parameters() -> Vec<(u8, u8, u8, u8)> {
    let mut out = Vec::new();
    for m in 0..16u8 {
        let (a, b, c, d) = (m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1);
        if (a * d + b * c) % 2 == 1 {
            out.push((a, b, c, d));
        }
    }
    out
}

fn scale(bit: u8, v: F2Vector) -> F2Vector {
    if bit == 1 {
        v
    } else {
        0
    }
}

/// The reduced structures of case (a), parametrized by a symplectic basis
/// `(r̄11, t̄11, r̄22, t̄22)` and `(a, b, c, d)` with `ad + bc = 1`, followed by
/// those of case (b) obtained by exchanging indices. Every output is checked
/// against the symplectic relations.
pub fn enumerate_reduced_structures(space: &SymplecticSpace) -> Result<Vec<ReducedStructure>, SymplecticError> {
    let bases = enumerate_symplectic_bases(space)?;
    let params = gl2_parameters();
    let mut case_a = Vec::with_capacity(bases.len() * params.len());
    for [r11, t11, r22, t22] in bases {
        for &(a, b, c, d) in &params {
            let r12 = scale(c, r11) ^ scale(a, t11) ^ r22;
            let t12 = scale(d, r11) ^ scale(b, t11) ^ t22;
            let r21 = r11 ^ scale(b, r22) ^ scale(a, t22);
            let t21 = t11 ^ scale(d, r22) ^ scale(c, t22);
            case_a.push(ReducedStructure {
                vectors: [r11, t11, r12, t12, r21, t21, r22, t22],
            });
        }
    }
    let case_b: Vec<ReducedStructure> = case_a.iter().map(|r| r.swap_indices()).collect();
    let out: Vec<ReducedStructure> = case_a.into_iter().chain(case_b).collect();
    for r in &out {
        if !is_reduced_structure(space, &r.vectors) {
            return Err(SymplecticError::NotExtraSpecial(format!(
                "parametrized tuple {:?} violates the symplectic relations",
                r.vectors
            )));
        }
    }
    Ok(out)
}

/// The 256 lifts `(r11 z^a11, t11 z^b11, …, t22 z^b22, z)` of a reduced
/// structure, each verified as a structure of type (2, 2).
pub fn lift_reduced(
    space: &SymplecticSpace,
    r: &ReducedStructure,
    g: &FiniteGroup,
) -> Result<Vec<Vec<usize>>, SymplecticError> {
    lift_with(&StructureVerifier::new(StructureType::new(2, 2)?), space, r, g)
}

fn lift_with(
    verifier: &StructureVerifier,
    space: &SymplecticSpace,
    r: &ReducedStructure,
    g: &FiniteGroup,
) -> Result<Vec<Vec<usize>>, SymplecticError> {
    let z = space.z();
    let base: Vec<usize> = r.vectors.iter().map(|&v| space.section(v)).collect();
    let mut out = Vec::with_capacity(256);
    for signs in 0..256u32 {
        let mut tuple: Vec<usize> = base
            .iter()
            .enumerate()
            .map(|(i, &x)| if signs >> (7 - i) & 1 == 1 { g.mul(x, z) } else { x })
            .collect();
        tuple.push(z);
        if let Some(f) = verifier.check(g, &tuple)? {
            return Err(SymplecticError::LiftFailed(f));
        }
        out.push(tuple);
    }
    Ok(out)
}

/// The projection of a genus-2 tuple to `V`.
pub fn reduce(space: &SymplecticSpace, tuple: &[usize]) -> ReducedStructure {
    let mut vectors = [0; 8];
    for (i, v) in vectors.iter_mut().enumerate() {
        *v = space.project(tuple[i]);
    }
    ReducedStructure { vectors }
}

/// Every structure of type (2, 2) on an extra-special group of order 32,
/// built from reduced structures and lifts, sorted lexicographically.
pub fn symplectic_structures(g: &FiniteGroup) -> Result<TupleSet, SymplecticError> {
    let space = induced_space(g)?;
    let reduced = enumerate_reduced_structures(&space)?;
    let verifier = StructureVerifier::new(StructureType::new(2, 2)?);
    let lifted: Result<Vec<Vec<Vec<usize>>>, SymplecticError> =
        reduced.par_iter().map(|r| lift_with(&verifier, &space, r, g)).collect();
    let rows: Vec<u8> = lifted?
        .into_iter()
        .flatten()
        .flat_map(|t| t.into_iter().map(|x| x as u8))
        .collect();
    Ok(TupleSet::from_rows(9, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::DEFAULT_COSET_CAP;
    use crate::extra_special::{extra_special, Variant};

    #[test]
    fn closed_formulas() {
        assert_eq!(aut_order(2, 1), BigUint::from(1152u32));
        assert_eq!(aut_order(2, -1), BigUint::from(1920u32));
        assert_eq!(sp_order(2), BigUint::from(720u32));
        assert_eq!(sp_order(1), BigUint::from(6u32));
        assert_eq!(orthogonal_order(2, 1), BigUint::from(72u32));
        assert_eq!(orthogonal_order(2, -1), BigUint::from(120u32));
    }

    #[test]
    fn form_types() {
        let h = extra_special(2, 2, Variant::H, DEFAULT_COSET_CAP).unwrap();
        let g = extra_special(2, 2, Variant::G, DEFAULT_COSET_CAP).unwrap();
        let sh = induced_space(&h).unwrap();
        let sg = induced_space(&g).unwrap();
        assert_eq!((form_type(&sh).unwrap(), zero_count(&sh)), (1, 10));
        assert_eq!((form_type(&sg).unwrap(), zero_count(&sg)), (-1, 6));
        for v in 0..16u32 {
            let (x1, y1, x2, y2) = ((v & 1) as u8, (v >> 1 & 1) as u8, (v >> 2 & 1) as u8, (v >> 3 & 1) as u8);
            assert_eq!(sh.q(v), (x1 * y1 + x2 * y2) % 2);
            assert_eq!(sg.q(v), (x1 * y1 + x2 * y2 + x2 + y2) % 2);
        }
        let d8 = extra_special(1, 2, Variant::H, DEFAULT_COSET_CAP).unwrap();
        let s = induced_space(&d8).unwrap();
        assert_eq!((form_type(&s).unwrap(), zero_count(&s)), (1, 3));
    }

    #[test]
    fn bases_and_reduced() {
        let h = extra_special(2, 2, Variant::H, DEFAULT_COSET_CAP).unwrap();
        let s = induced_space(&h).unwrap();
        let bases = enumerate_symplectic_bases(&s).unwrap();
        assert_eq!(bases.len(), 720);
        assert!(bases.contains(&[1, 2, 4, 8]));
        assert_eq!(gl2_parameters().len(), 6);
        let reduced = enumerate_reduced_structures(&s).unwrap();
        assert_eq!(reduced.len(), 8640);
        let mut distinct = reduced.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 8640);
        assert_eq!(reduced.iter().filter(|r| r.case(&s) == Case::A).count(), 4320);
        assert_eq!(reduced.iter().filter(|r| r.case(&s) == Case::B).count(), 4320);
    }

    #[test]
    fn rejects_non_extra_special() {
        assert!(induced_space(&FiniteGroup::cyclic(8)).is_err());
    }
}
