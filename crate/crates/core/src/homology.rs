//! First homology of the surface of a structure: Reidemeister–Schreier
//! rewriting of the orbifold presentation over the kernel of `φ^orb`,
//! abelianized, followed by an integer Smith normal form.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hom::{HomError, Homomorphism};
use crate::structures::{k_subgroups, orbifold_presentation, DDKStructure};
use crate::word::{Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("structure is not strong (indices m1 = {m1}, m2 = {m2})")]
    NotStrong { m1: usize, m2: usize },
    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionOverflow(String),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Schreier representatives: one word per target element, prefix-closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    words: Vec<Word>,
    /// `tree[g] = (parent, generator)` for every non-identity element.
    tree: Vec<Option<(usize, usize)>>,
}

impl Transversal {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Whether `(g, x)` is an edge of the spanning tree.
    pub fn is_tree_edge(&self, child: usize, g: usize, x: usize) -> bool {
        self.tree[child] == Some((g, x))
    }
}

/// Breadth-first search on the Cayley graph of the generator images,
/// smallest generator first.
pub fn schreier_transversal(hom: &Homomorphism<'_>) -> Result<Transversal, HomologyError> {
    let g = hom.target();
    let n = g.order();
    let images = hom.images();
    let mut words: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![None; n];
    words[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (x, &img) in images.iter().enumerate() {
            let b = g.mul(a, img);
            if words[b].is_none() {
                let mut w = words[a].clone().unwrap();
                w.push(x as i32 + 1);
                words[b] = Some(w);
                tree[b] = Some((a, x));
                queue.push_back(b);
            }
        }
    }
    let words = words
        .into_iter()
        .collect::<Option<Vec<Word>>>()
        .ok_or(HomologyError::NotSurjective)?;
    Ok(Transversal { words, tree })
}

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Columns of the relator matrix: one per Schreier generator `(g, x)` off the tree.
fn schreier_columns(t: &Transversal, hom: &Homomorphism<'_>) -> Vec<Option<usize>> {
    let g = hom.target();
    let rank = hom.images().len();
    let mut col = vec![None; g.order() * rank];
    let mut next = 0;
    for a in 0..g.order() {
        for (x, &img) in hom.images().iter().enumerate() {
            if !t.is_tree_edge(g.mul(a, img), a, x) {
                col[a * rank + x] = Some(next);
                next += 1;
            }
        }
    }
    col
}

/// `index · (rank - 1) + 1`.
pub fn schreier_generator_count(index: usize, rank: usize) -> usize {
    index * rank - index + 1
}

/// Rows indexed by (coset, relator), columns by Schreier generators; each
/// entry is the exponent sum of the generator in the rewritten conjugate.
pub fn abelianized_relator_matrix(
    p: &Presentation,
    hom: &Homomorphism<'_>,
    t: &Transversal,
) -> IntegerMatrix {
    let g = hom.target();
    let rank = p.rank();
    let n = g.order();
    let columns = schreier_columns(t, hom);
    let cols = schreier_generator_count(n, rank);
    let images = hom.images();
    let rels = p.relators();
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|start| {
            let columns = &columns;
            rels.iter().map(move |r| {
                let mut row = vec![0i64; cols];
                let mut cur = start;
                for &l in r.letters() {
                    let x = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        if let Some(c) = columns[cur * rank + x] {
                            row[c] += 1;
                        }
                        cur = g.mul(cur, images[x]);
                    } else {
                        cur = g.mul(cur, g.inv(images[x]));
                        if let Some(c) = columns[cur * rank + x] {
                            row[c] -= 1;
                        }
                    }
                }
                row
            })
        })
        .collect();
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, cols);
    }
    IntegerMatrix::from_rows(&rows)
}

/// Invariant factors `d1 | d2 | …` (nonzero diagonal entries) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

/// Integer operations the elimination needs, with overflow reported as `None`.
trait SnfInt: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl SnfInt for i128 {}
impl SnfInt for BigInt {}

struct Dense<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: SnfInt> Dense<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }

    /// `row_i -= q row_k`.
    fn row_axpy(&mut self, i: usize, k: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let v = self.a[k * self.cols + j].clone();
            if v.is_zero() {
                continue;
            }
            let d = q.checked_mul(&v)?;
            let cell = &mut self.a[i * self.cols + j];
            *cell = cell.checked_sub(&d)?;
        }
        Some(())
    }

    /// `col_j -= q col_k`.
    fn col_axpy(&mut self, j: usize, k: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let v = self.a[i * self.cols + k].clone();
            if v.is_zero() {
                continue;
            }
            let d = q.checked_mul(&v)?;
            let cell = &mut self.a[i * self.cols + j];
            *cell = cell.checked_sub(&d)?;
        }
        Some(())
    }
}

/// Row and column operations recorded as `U M V = D`.
struct Transforms<T> {
    u: Dense<T>,
    v: Dense<T>,
}

fn identity_dense<T: SnfInt>(n: usize) -> Dense<T> {
    let mut a = vec![T::zero(); n * n];
    for i in 0..n {
        a[i * n + i] = T::one();
    }
    Dense { rows: n, cols: n, a }
}

fn smallest_nonzero<T: SnfInt>(m: &Dense<T>, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in cells {
        let x = m.at(i, j);
        if x.is_zero() {
            continue;
        }
        match best {
            None => best = Some((i, j)),
            Some((bi, bj)) => {
                if x.abs().cmp(&m.at(bi, bj).abs()) == Ordering::Less {
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

fn snf_core<T: SnfInt>(mut m: Dense<T>, mut tr: Option<&mut Transforms<T>>) -> Option<(Vec<T>, Dense<T>)> {
    let (r, c) = (m.rows, m.cols);
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&m, (t..r).flat_map(|i| (t..c).map(move |j| (i, j)))) else {
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(tr) = tr.as_deref_mut() {
            tr.u.swap_rows(t, pi);
            tr.v.swap_cols(t, pj);
        }
        loop {
            let p = m.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if m.at(i, t).is_zero() {
                    continue;
                }
                let q = m.at(i, t).div_floor(&p);
                m.row_axpy(i, t, &q, t)?;
                if let Some(tr) = tr.as_deref_mut() {
                    tr.u.row_axpy(i, t, &q, 0)?;
                }
                clean &= m.at(i, t).is_zero();
            }
            for j in t + 1..c {
                if m.at(t, j).is_zero() {
                    continue;
                }
                let q = m.at(t, j).div_floor(&p);
                m.col_axpy(j, t, &q, t)?;
                if let Some(tr) = tr.as_deref_mut() {
                    tr.v.col_axpy(j, t, &q, 0)?;
                }
                clean &= m.at(t, j).is_zero();
            }
            if !clean {
                let cells = (t..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
                let (pi, pj) = smallest_nonzero(&m, cells).expect("pivot is nonzero");
                m.swap_rows(t, pi);
                m.swap_cols(t, pj);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.u.swap_rows(t, pi);
                    tr.v.swap_cols(t, pj);
                }
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !m.at(i, j).mod_floor(&p).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = T::zero() - T::one();
                    m.row_axpy(t, i, &minus_one, t)?;
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.u.row_axpy(t, i, &minus_one, 0)?;
                    }
                }
                None => break,
            }
        }
        if m.at(t, t).is_negative() {
            let two = T::one() + T::one();
            m.row_axpy(t, t, &two, t)?;
            if let Some(tr) = tr.as_deref_mut() {
                tr.u.row_axpy(t, t, &two, 0)?;
            }
        }
        diag.push(m.at(t, t).clone());
    }
    Some((diag, m))
}

fn to_dense_i128(m: &IntegerMatrix) -> Option<Dense<i128>> {
    let a = m.data.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>()?;
    Some(Dense {
        rows: m.rows,
        cols: m.cols,
        a,
    })
}

fn to_dense_big(m: &IntegerMatrix) -> Dense<BigInt> {
    Dense {
        rows: m.rows,
        cols: m.cols,
        a: m.data.clone(),
    }
}

fn from_dense(d: Dense<BigInt>) -> IntegerMatrix {
    IntegerMatrix {
        rows: d.rows,
        cols: d.cols,
        data: d.a,
    }
}

/// Smith normal form with deterministic pivoting (smallest absolute value,
/// then row-major position). Runs on checked 128-bit arithmetic and repeats
/// the computation with arbitrary precision if any step would overflow.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let diag: Vec<BigInt> = match to_dense_i128(m).and_then(|d| snf_core(d, None)) {
        Some((d, _)) => d.into_iter().map(BigInt::from).collect(),
        None => snf_core(to_dense_big(m), None).expect("arbitrary precision").0,
    };
    SmithForm {
        rank: diag.len(),
        diagonal: diag,
    }
}

/// Smith normal form together with unimodular `U`, `V` and `D = U M V`.
pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> (SmithForm, IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let mut tr = Transforms {
        u: identity_dense::<BigInt>(m.rows),
        v: identity_dense::<BigInt>(m.cols),
    };
    let (diag, d) = snf_core(to_dense_big(m), Some(&mut tr)).expect("arbitrary precision");
    (
        SmithForm {
            rank: diag.len(),
            diagonal: diag,
        },
        from_dense(tr.u),
        from_dense(tr.v),
        from_dense(d),
    )
}

/// `H₁ ≅ Z^free_rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// The abelian invariants of the cokernel of a relation matrix.
pub fn cokernel_invariants(m: &IntegerMatrix) -> Result<HomologyInvariants, HomologyError> {
    let snf = smith_normal_form(m);
    let torsion = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().ok_or_else(|| HomologyError::TorsionOverflow(d.to_string())))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(HomologyInvariants {
        free_rank: m.cols() - snf.rank,
        torsion,
    })
}

/// `H₁` of the kernel of a surjection from a finitely presented group.
pub fn first_homology(p: &Presentation, hom: &Homomorphism<'_>) -> Result<HomologyInvariants, HomologyError> {
    let t = schreier_transversal(hom)?;
    cokernel_invariants(&abelianized_relator_matrix(p, hom, &t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceHomology {
    #[serde(flatten)]
    pub invariants: HomologyInvariants,
    pub maximal: bool,
}

/// `H₁(S, Z)` for a strong structure, from `P₂(Σ_b)^orb → G`, and whether
/// the first Betti number equals `4b`.
pub fn h1_of_surface(s: &DDKStructure<'_>) -> Result<SurfaceHomology, HomologyError> {
    let k = k_subgroups(s);
    if !k.strong {
        return Err(HomologyError::NotStrong { m1: k.m1, m2: k.m2 });
    }
    let p = orbifold_presentation(s.stype());
    let hom = Homomorphism::new(p.clone(), s.ambient(), s.elements().to_vec())?;
    let invariants = first_homology(&p, &hom)?;
    let maximal = invariants.free_rank == 4 * s.stype().b;
    Ok(SurfaceHomology { invariants, maximal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::structures::StructureType;
    use crate::word::parse_presentation;

    fn invariants(rows: &[Vec<i64>]) -> Vec<BigInt> {
        smith_normal_form(&IntegerMatrix::from_rows(rows)).diagonal
    }

    #[test]
    fn small_smith_forms() {
        assert_eq!(invariants(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
        let f = smith_normal_form(&IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 0]]));
        assert_eq!((f.diagonal, f.rank), (vec![BigInt::from(1)], 1));
        assert_eq!(invariants(&[vec![0, 0]]), Vec::<BigInt>::new());
        assert_eq!(
            invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn transforms_reproduce_input() {
        let m = IntegerMatrix::from_rows(&[vec![4, 6, -2], vec![2, 8, 10], vec![0, 3, 9], vec![7, 1, 1]]);
        let (f, u, v, d) = smith_normal_form_with_transforms(&m);
        assert_eq!(u.mul(&m).mul(&v), d);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j && i < f.rank { f.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn transversals() {
        let trivial = FiniteGroup::cyclic(1);
        let p = parse_presentation("gens: x").unwrap();
        let h = Homomorphism::new(p.clone(), &trivial, vec![0]).unwrap();
        assert_eq!(schreier_transversal(&h).unwrap().words(), &[Word::identity()]);
        let z2 = FiniteGroup::cyclic(2);
        let h = Homomorphism::new(p, &z2, vec![1]).unwrap();
        assert_eq!(schreier_transversal(&h).unwrap().words(), &[Word::identity(), Word::gen(0)]);
        let p = parse_presentation("gens: x y").unwrap();
        let h = Homomorphism::new(p, &z2, vec![0, 0]).unwrap();
        assert_eq!(schreier_transversal(&h), Err(HomologyError::NotSurjective));
    }

    #[test]
    fn surface_groups_over_trivial_target() {
        let trivial = FiniteGroup::cyclic(1);
        let p = parse_presentation("gens: a1 b1 a2 b2\nrel: [a1,b1] [a2,b2]").unwrap();
        let h = Homomorphism::new(p.clone(), &trivial, vec![0; 4]).unwrap();
        let t = schreier_transversal(&h).unwrap();
        let m = abelianized_relator_matrix(&p, &h, &t);
        assert_eq!((m.rows(), m.cols()), (1, 4));
        assert!((0..4).all(|j| m.get(0, j).is_zero()));
        assert_eq!(
            first_homology(&p, &h).unwrap(),
            HomologyInvariants {
                free_rank: 4,
                torsion: vec![]
            }
        );
        let orb = orbifold_presentation(StructureType::new(2, 2).unwrap());
        let h = Homomorphism::new(orb.clone(), &trivial, vec![0; 9]).unwrap();
        assert_eq!(
            first_homology(&orb, &h).unwrap(),
            HomologyInvariants {
                free_rank: 8,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn cyclic_cover_of_a_circle() {
        let p = parse_presentation("gens: x\nrel: x^6").unwrap();
        let z3 = FiniteGroup::cyclic(3);
        let h = Homomorphism::new(p.clone(), &z3, vec![1]).unwrap();
        assert_eq!(
            first_homology(&p, &h).unwrap(),
            HomologyInvariants {
                free_rank: 0,
                torsion: vec![2]
            }
        );
    }
}
