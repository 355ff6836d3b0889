//! Relation systems of diagonal double Kodaira structures and their verifiers.
//!
//! Generators of type `(b, n)` are ordered
//! `r11 t11 … r1b t1b r21 t21 … r2b t2b z`; a relation `L = R` is stored as
//! the relator `L R^-1` under the label used for it in the genus-2 list
//! (`S1`, `S2`, `R1`…, `T1`…).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{ElementSet, FiniteGroup, GroupError};
use crate::hom::{HomError, Homomorphism};
use crate::word::{parse_word, ParseError, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("type (b, n) = ({b}, {n}) is invalid: both must be at least 2")]
    InvalidType { b: usize, n: usize },
    #[error("tuple has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("structure fails verification: {0}")]
    NotAStructure(Failure),
    #[error("group order {order} exceeds the search cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("enumeration is implemented for b = 2 only (got b = {0})")]
    UnsupportedGenus(usize),
    #[error("homomorphism check failed: {0}")]
    Hom(#[from] HomError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("malformed structure file: {0}")]
    Malformed(String),
    #[error("word parse error: {0}")]
    Word(#[from] ParseError),
}

/// The type `(b, n)`: genus of the base and order of `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureType {
    pub b: usize,
    pub n: usize,
}

impl StructureType {
    pub fn new(b: usize, n: usize) -> Result<Self, StructureError> {
        if b < 2 || n < 2 {
            return Err(StructureError::InvalidType { b, n });
        }
        Ok(StructureType { b, n })
    }

    /// `4b + 1`.
    pub fn len(&self) -> usize {
        4 * self.b + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A relator together with its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledRelator {
    pub label: String,
    pub word: Word,
}

/// Why a tuple is not a (pre)structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// `z` is the identity.
    ZTrivial,
    /// `o(z)` differs from the required `n`.
    ZOrder { expected: usize, actual: usize },
    /// The first relation (in list order) that does not hold.
    Relation(String),
    /// The tuple does not generate the group.
    Generation,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::ZTrivial => write!(f, "o(z) ≥ 2 violated"),
            Failure::ZOrder { expected, actual } => {
                write!(f, "o(z) = {expected} violated (o(z) = {actual})")
            }
            Failure::Relation(l) => write!(f, "relation {l} fails"),
            Failure::Generation => write!(f, "tuple does not generate the group"),
        }
    }
}

/// Generator names `r11 t11 … t2b z`.
pub fn generator_names(b: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(4 * b + 1);
    for i in 1..=2 {
        for j in 1..=b {
            names.push(format!("r{i}{j}"));
            names.push(format!("t{i}{j}"));
        }
    }
    names.push("z".into());
    names
}

struct Gens {
    b: usize,
}

impl Gens {
    fn r(&self, i: usize, j: usize) -> Word {
        Word::gen((i - 1) * 2 * self.b + 2 * (j - 1))
    }
    fn t(&self, i: usize, j: usize) -> Word {
        Word::gen((i - 1) * 2 * self.b + 2 * (j - 1) + 1)
    }
    fn z(&self) -> Word {
        Word::gen(4 * self.b)
    }
}

fn comm(a: &Word, b: &Word) -> Word {
    Word::commutator(a, b)
}

fn rel(label: String, lhs: Word, rhs: Word) -> LabeledRelator {
    LabeledRelator {
        label,
        word: lhs.mul(&rhs.inverse()),
    }
}

fn product(words: impl IntoIterator<Item = Word>) -> Word {
    words.into_iter().fold(Word::identity(), |acc, w| acc.mul(&w))
}

fn surface_relations(g: &Gens) -> Vec<LabeledRelator> {
    let b = g.b;
    let zi = g.z().inverse();
    let lhs1 = product((1..=b).rev().map(|j| {
        comm(&g.r(1, j).inverse(), &g.t(1, j).inverse()).mul(&g.t(1, j).inverse())
    }))
    .mul(&product((1..=b).map(|j| g.t(1, j))));
    let lhs2 = product((1..=b).map(|j| comm(&g.r(2, j).inverse(), &g.t(2, j)).mul(&g.t(2, j))))
        .mul(&product((1..=b).rev().map(|j| g.t(2, j).inverse())));
    vec![rel("S1".into(), lhs1, g.z()), rel("S2".into(), lhs2, zi)]
}

/// The full relation list of type `(b, n)`: `4b² + 2b + 2` relators.
pub fn relations_for_type(t: StructureType) -> Vec<LabeledRelator> {
    let g = Gens { b: t.b };
    let b = t.b;
    let z = g.z();
    let zi = z.inverse();
    let one = Word::identity();
    let mut out = surface_relations(&g);
    let mut label = 0;
    let mut next = |prefix: &str| {
        label += 1;
        format!("{prefix}{label}")
    };
    for j in 1..=b {
        for k in (1..=b).rev() {
            let rhs = if j <= k {
                one.clone()
            } else {
                product([
                    zi.clone(),
                    g.r(2, k),
                    g.r(2, j).inverse(),
                    z.clone(),
                    g.r(2, j),
                    g.r(2, k).inverse(),
                ])
            };
            out.push(rel(next("R"), comm(&g.r(1, j), &g.r(2, k)), rhs));
        }
        for k in (1..=b).rev() {
            let rhs = match j.cmp(&k) {
                std::cmp::Ordering::Less => one.clone(),
                std::cmp::Ordering::Equal => zi.clone(),
                std::cmp::Ordering::Greater => comm(&zi, &g.t(2, k)),
            };
            out.push(rel(next("R"), comm(&g.r(1, j), &g.t(2, k)), rhs));
        }
        out.push(rel(
            next("R"),
            comm(&g.r(1, j), &z),
            comm(&g.r(2, j).inverse(), &z),
        ));
    }
    let mut label = 0;
    let mut next = |prefix: &str| {
        label += 1;
        format!("{prefix}{label}")
    };
    for j in 1..=b {
        let t2j = g.t(2, j);
        let t2ji = t2j.inverse();
        for k in (1..=b).rev() {
            let rhs = match j.cmp(&k) {
                std::cmp::Ordering::Less => one.clone(),
                std::cmp::Ordering::Equal => product([t2ji.clone(), z.clone(), t2j.clone()]),
                std::cmp::Ordering::Greater => comm(&t2ji, &z),
            };
            out.push(rel(next("T"), comm(&g.t(1, j), &g.r(2, k)), rhs));
        }
        for k in (1..=b).rev() {
            let rhs = match j.cmp(&k) {
                std::cmp::Ordering::Less => one.clone(),
                std::cmp::Ordering::Equal => comm(&t2ji, &z),
                std::cmp::Ordering::Greater => product([
                    t2ji.clone(),
                    z.clone(),
                    t2j.clone(),
                    zi.clone(),
                    g.t(2, k),
                    z.clone(),
                    t2ji.clone(),
                    zi.clone(),
                    t2j.clone(),
                    g.t(2, k).inverse(),
                ]),
            };
            out.push(rel(next("T"), comm(&g.t(1, j), &g.t(2, k)), rhs));
        }
        out.push(rel(next("T"), comm(&g.t(1, j), &z), comm(&t2ji, &z)));
    }
    out
}

/// The simplified list valid when `[G, G] ⊆ Z(G)`: the surface relations as
/// products of commutators, the `R'`/`T'` relations (same numbering as the full
/// list, without the `z` relations) and the centrality of `z`.
pub fn simplified_relations_for_type(t: StructureType) -> Vec<LabeledRelator> {
    let g = Gens { b: t.b };
    let b = t.b;
    let z = g.z();
    let zi = z.inverse();
    let one = Word::identity();
    let mut out = vec![
        rel(
            "S1'".into(),
            product((1..=b).rev().map(|j| comm(&g.r(1, j).inverse(), &g.t(1, j).inverse()))),
            z.clone(),
        ),
        rel(
            "S2'".into(),
            product((1..=b).map(|j| comm(&g.r(2, j).inverse(), &g.t(2, j)))),
            zi.clone(),
        ),
    ];
    let mut label = 0;
    for j in 1..=b {
        for k in (1..=b).rev() {
            label += 1;
            out.push(rel(format!("R{label}'"), comm(&g.r(1, j), &g.r(2, k)), one.clone()));
        }
        for k in (1..=b).rev() {
            label += 1;
            let rhs = if j == k { zi.clone() } else { one.clone() };
            out.push(rel(format!("R{label}'"), comm(&g.r(1, j), &g.t(2, k)), rhs));
        }
        label += 1;
    }
    let mut label = 0;
    for j in 1..=b {
        for k in (1..=b).rev() {
            label += 1;
            let rhs = if j == k { z.clone() } else { one.clone() };
            out.push(rel(format!("T{label}'"), comm(&g.t(1, j), &g.r(2, k)), rhs));
        }
        for k in (1..=b).rev() {
            label += 1;
            out.push(rel(format!("T{label}'"), comm(&g.t(1, j), &g.t(2, k)), one.clone()));
        }
        label += 1;
    }
    let names = generator_names(b);
    for (x, name) in names.iter().enumerate().take(4 * b) {
        out.push(rel(format!("Z({name})"), comm(&Word::gen(x), &z), one.clone()));
    }
    out
}

/// The twenty genus-2 relations `R1…R10, T1…T10` defining a prestructure.
pub fn prestructure_relations() -> Vec<LabeledRelator> {
    relations_for_type(StructureType { b: 2, n: 2 })
        .into_iter()
        .filter(|r| !r.label.starts_with('S'))
        .collect()
}

fn check_elements(g: &FiniteGroup, tuple: &[usize]) -> Result<(), StructureError> {
    match tuple.iter().find(|&&x| x >= g.order()) {
        Some(&x) => Err(StructureError::ElementOutOfRange(x)),
        None => Ok(()),
    }
}

fn first_failed(
    g: &FiniteGroup,
    tuple: &[usize],
    rels: &[LabeledRelator],
) -> Result<Option<String>, StructureError> {
    for r in rels {
        if g.evaluate_word(&r.word, tuple)? != 0 {
            return Ok(Some(r.label.clone()));
        }
    }
    Ok(None)
}

/// Checks `o(z) = n`, every relation of type `t` and generation, in that order.
pub fn verify_structure(
    g: &FiniteGroup,
    tuple: &[usize],
    t: StructureType,
) -> Result<Option<Failure>, StructureError> {
    StructureVerifier::new(t).check(g, tuple)
}

/// [`verify_structure`] with the relation list built once for repeated use.
#[derive(Clone, Debug)]
pub struct StructureVerifier {
    stype: StructureType,
    relations: Vec<LabeledRelator>,
}

impl StructureVerifier {
    pub fn new(stype: StructureType) -> Self {
        StructureVerifier {
            stype,
            relations: relations_for_type(stype),
        }
    }

    pub fn check(&self, g: &FiniteGroup, tuple: &[usize]) -> Result<Option<Failure>, StructureError> {
        let t = self.stype;
        if tuple.len() != t.len() {
            return Err(StructureError::Length {
                expected: t.len(),
                got: tuple.len(),
            });
        }
        check_elements(g, tuple)?;
        let z = tuple[4 * t.b];
        let oz = g.element_order(z);
        if oz < 2 {
            return Ok(Some(Failure::ZTrivial));
        }
        if oz != t.n {
            return Ok(Some(Failure::ZOrder {
                expected: t.n,
                actual: oz,
            }));
        }
        if let Some(l) = first_failed(g, tuple, &self.relations)? {
            return Ok(Some(Failure::Relation(l)));
        }
        if !g.generates(tuple) {
            return Ok(Some(Failure::Generation));
        }
        Ok(None)
    }
}

/// Checks `o(z) ≥ 2` and the relations `R1…R10, T1…T10`.
pub fn verify_prestructure(g: &FiniteGroup, tuple: &[usize]) -> Result<Option<Failure>, StructureError> {
    if tuple.len() != 9 {
        return Err(StructureError::Length {
            expected: 9,
            got: tuple.len(),
        });
    }
    check_elements(g, tuple)?;
    if tuple[8] == 0 {
        return Ok(Some(Failure::ZTrivial));
    }
    Ok(first_failed(g, tuple, &prestructure_relations())?.map(Failure::Relation))
}

/// Labels of every relator in `rels` that the tuple violates.
pub fn failed_relations(
    g: &FiniteGroup,
    tuple: &[usize],
    rels: &[LabeledRelator],
) -> Result<Vec<String>, StructureError> {
    check_elements(g, tuple)?;
    let mut out = Vec::new();
    for r in rels {
        if g.evaluate_word(&r.word, tuple)? != 0 {
            out.push(r.label.clone());
        }
    }
    Ok(out)
}

/// A verified diagonal double Kodaira structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDKStructure<'g> {
    ambient: &'g FiniteGroup,
    elements: Vec<usize>,
    stype: StructureType,
}

impl<'g> DDKStructure<'g> {
    pub fn new(
        ambient: &'g FiniteGroup,
        elements: Vec<usize>,
        stype: StructureType,
    ) -> Result<Self, StructureError> {
        if let Some(f) = verify_structure(ambient, &elements, stype)? {
            return Err(StructureError::NotAStructure(f));
        }
        Ok(DDKStructure {
            ambient,
            elements,
            stype,
        })
    }

    pub fn ambient(&self) -> &'g FiniteGroup {
        self.ambient
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn stype(&self) -> StructureType {
        self.stype
    }

    pub fn z(&self) -> usize {
        self.elements[4 * self.stype.b]
    }

    /// The first nine entries of a genus-2 structure.
    pub fn as_prestructure(&self) -> Option<Prestructure<'g>> {
        if self.stype.b != 2 {
            return None;
        }
        Prestructure::new(self.ambient, self.elements.clone()).ok()
    }
}

/// A verified prestructure (nine elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prestructure<'g> {
    ambient: &'g FiniteGroup,
    elements: Vec<usize>,
}

impl<'g> Prestructure<'g> {
    pub fn new(ambient: &'g FiniteGroup, elements: Vec<usize>) -> Result<Self, StructureError> {
        if let Some(f) = verify_prestructure(ambient, &elements)? {
            return Err(StructureError::NotAStructure(f));
        }
        Ok(Prestructure { ambient, elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn ambient(&self) -> &'g FiniteGroup {
        self.ambient
    }
}

/// The subgroups generated by each half of the structure together with `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSubgroupData {
    pub k1: ElementSet,
    pub k2: ElementSet,
    pub m1: usize,
    pub m2: usize,
    pub strong: bool,
}

pub fn k_subgroups(s: &DDKStructure<'_>) -> KSubgroupData {
    let g = s.ambient;
    let b = s.stype.b;
    let e = &s.elements;
    let mut h1: Vec<usize> = e[..2 * b].to_vec();
    h1.push(s.z());
    let mut h2: Vec<usize> = e[2 * b..4 * b].to_vec();
    h2.push(s.z());
    let k1 = g.subgroup_generated(&h1);
    let k2 = g.subgroup_generated(&h2);
    let m1 = g.order() / k1.len();
    let m2 = g.order() / k2.len();
    KSubgroupData {
        k1,
        k2,
        m1,
        m2,
        strong: m1 == 1 && m2 == 1,
    }
}

/// Generator names of `P_2(Σ_b)`: `r11 … t2b A12`.
pub fn braid_generator_names(b: usize) -> Vec<String> {
    let mut names = generator_names(b);
    *names.last_mut().unwrap() = "A12".into();
    names
}

/// The presentation of `P_2(Σ_b)` with the full relation list.
pub fn surface_braid_presentation(b: usize) -> Presentation {
    let t = StructureType { b, n: 2 };
    Presentation::new(
        braid_generator_names(b),
        relations_for_type(t).into_iter().map(|r| r.word).collect(),
    )
    .expect("well-formed presentation")
}

/// `P_2(Σ_b)` with the extra relator `A12^n`.
pub fn orbifold_presentation(t: StructureType) -> Presentation {
    let p = surface_braid_presentation(t.b);
    p.with_relator(Word::gen(4 * t.b).pow(t.n as i64))
        .expect("well-formed presentation")
}

/// The surjection `P_2(Σ_b) → G` sending `ρ_ij ↦ r_ij, τ_ij ↦ t_ij, A12 ↦ z`.
pub fn structure_to_hom<'g>(s: &DDKStructure<'g>) -> Result<Homomorphism<'g>, StructureError> {
    let h = Homomorphism::new(
        surface_braid_presentation(s.stype.b),
        s.ambient,
        s.elements.clone(),
    )?;
    if !h.is_surjective() {
        return Err(StructureError::NotAStructure(Failure::Generation));
    }
    Ok(h)
}

/// Accept/reject through the homomorphism pathway: `o(z) = n`, relators of
/// `P_2(Σ_b)` trivial and surjectivity.
pub fn accepts_via_hom(g: &FiniteGroup, tuple: &[usize], t: StructureType) -> bool {
    if tuple.len() != t.len() || tuple.iter().any(|&x| x >= g.order()) {
        return false;
    }
    if g.element_order(tuple[4 * t.b]) != t.n {
        return false;
    }
    match Homomorphism::new(surface_braid_presentation(t.b), g, tuple.to_vec()) {
        Ok(h) => h.is_surjective(),
        Err(_) => false,
    }
}

/// JSON form of a structure: the group label, the type and element indices,
/// optionally with each element written as a word in the group's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub group: String,
    pub b: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
}

impl StructureFile {
    pub fn from_structure(label: &str, s: &DDKStructure<'_>) -> Self {
        let words = s.ambient.word_representatives().zip(s.ambient.generator_names()).map(
            |(reps, names)| {
                s.elements
                    .iter()
                    .map(|&e| reps[e].display_with(names).to_string())
                    .collect()
            },
        );
        StructureFile {
            group: label.to_string(),
            b: s.stype.b,
            n: s.stype.n,
            elements: s.elements.clone(),
            words,
        }
    }

    pub fn stype(&self) -> Result<StructureType, StructureError> {
        StructureType::new(self.b, self.n)
    }

    /// Resolves the element indices, from `elements` or else from `words`.
    /// When both are present they must agree.
    pub fn resolve(&self, g: &FiniteGroup) -> Result<Vec<usize>, StructureError> {
        let from_words = match &self.words {
            None => None,
            Some(ws) => {
                let names = g.generator_names().ok_or_else(|| {
                    StructureError::Malformed("group has no generator names for words".into())
                })?;
                let mut out = Vec::with_capacity(ws.len());
                for w in ws {
                    let word = parse_word(w, names)?;
                    out.push(g.evaluate_word(&word, g.generator_elements())?);
                }
                Some(out)
            }
        };
        match (self.elements.is_empty(), from_words) {
            (true, None) => Err(StructureError::Malformed("neither elements nor words given".into())),
            (true, Some(w)) => Ok(w),
            (false, None) => Ok(self.elements.clone()),
            (false, Some(w)) => {
                if w != self.elements {
                    return Err(StructureError::Malformed(
                        "elements and words disagree".into(),
                    ));
                }
                Ok(w)
            }
        }
    }

    /// One `name = word` line per generator, when words are available.
    pub fn to_text(&self) -> String {
        let names = generator_names(self.b);
        let mut out = format!("# {} type ({}, {})\n", self.group, self.b, self.n);
        for (i, name) in names.iter().enumerate() {
            let value = match &self.words {
                Some(ws) => ws[i].clone(),
                None => format!("#{}", self.elements[i]),
            };
            out.push_str(&format!("{name} = {value}\n"));
        }
        out
    }
}

/// The explicit genus-2 structure on the extra-special groups of order 32,
/// as words in `r1 t1 r2 t2 z`.
pub const EXAMPLE_WORDS: [&str; 9] = ["r1", "t1", "r2 t1", "r1 t2", "r1 t2", "r2 t1", "r2", "t2", "z"];

/// The example structure as a [`StructureFile`] for the given group label.
pub fn example_structure_file(label: &str) -> StructureFile {
    StructureFile {
        group: label.to_string(),
        b: 2,
        n: 2,
        elements: Vec::new(),
        words: Some(EXAMPLE_WORDS.iter().map(|s| s.to_string()).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts() {
        for b in 2..=4 {
            let t = StructureType::new(b, 2).unwrap();
            assert_eq!(relations_for_type(t).len(), 4 * b * b + 2 * b + 2);
        }
        let labels: Vec<String> = relations_for_type(StructureType::new(2, 3).unwrap())
            .into_iter()
            .map(|r| r.label)
            .collect();
        let mut expect = vec!["S1".to_string(), "S2".to_string()];
        expect.extend((1..=10).map(|i| format!("R{i}")));
        expect.extend((1..=10).map(|i| format!("T{i}")));
        assert_eq!(labels, expect);
    }

    #[test]
    fn simplified_labels() {
        let labels: Vec<String> = simplified_relations_for_type(StructureType::new(2, 2).unwrap())
            .into_iter()
            .map(|r| r.label)
            .collect();
        assert_eq!(labels.len(), 26);
        assert!(labels.contains(&"R9'".to_string()));
        assert!(!labels.contains(&"R5'".to_string()));
        assert!(!labels.contains(&"T10'".to_string()));
    }

    #[test]
    fn genus_two_relators_written_out() {
        let names = generator_names(2);
        let rels = relations_for_type(StructureType::new(2, 2).unwrap());
        let find = |l: &str| rels.iter().find(|r| r.label == l).unwrap().word.clone();
        let w = |s: &str| parse_word(s, &names).unwrap();
        assert_eq!(find("S1"), w("[r12^-1,t12^-1] t12^-1 [r11^-1,t11^-1] t12 z^-1"));
        assert_eq!(find("S2"), w("[r21^-1,t21] t21 [r22^-1,t22] t21^-1 z"));
        assert_eq!(find("R4"), w("[r11,t21] z"));
        assert_eq!(find("R7"), w("[r12,r21] r21 r22^-1 z^-1 r22 r21^-1 z"));
        assert_eq!(find("R9"), w("[r12,t21] [t21,z^-1]"));
        assert_eq!(find("T2"), w("[t11,r21] t21^-1 z^-1 t21"));
        assert_eq!(
            find("T9"),
            w("[t12,t21] t21 t22^-1 z t22 z^-1 t21^-1 z t22^-1 z^-1 t22")
        );
        assert_eq!(find("T10"), w("[t12,z] [z,t22^-1]"));
    }

    #[test]
    fn invalid_type() {
        assert!(StructureType::new(1, 2).is_err());
        assert!(StructureType::new(2, 1).is_err());
    }

    #[test]
    fn braid_presentations() {
        let p = orbifold_presentation(StructureType::new(2, 2).unwrap());
        assert_eq!(p.rank(), 9);
        assert_eq!(p.relators().len(), 23);
        assert_eq!(p.generator_names()[8], "A12");
    }
}
