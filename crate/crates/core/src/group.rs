//! Cayley-table groups and the subgroup machinery built on them.

use std::collections::VecDeque;

use thiserror::Error;

use crate::coset::{enumerate_cosets, CosetError};
use crate::word::{Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Cosets(#[from] CosetError),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("word uses generator index {index} but the assignment has {len} entries")]
    LetterOutOfRange { index: usize, len: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("socle is undefined for the trivial group")]
    TrivialGroup,
    #[error("CCT is undefined for abelian groups")]
    Abelian,
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
}

/// A sorted set of element indices of some ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    members: Vec<usize>,
    ambient_order: usize,
}

impl ElementSet {
    pub fn new(ambient_order: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        assert!(members.last().is_none_or(|&m| m < ambient_order));
        ElementSet {
            members,
            ambient_order,
        }
    }

    fn from_mask(mask: &[bool]) -> Self {
        ElementSet {
            members: (0..mask.len()).filter(|&i| mask[i]).collect(),
            ambient_order: mask.len(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn ambient_order(&self) -> usize {
        self.ambient_order
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.ambient_order];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
            ambient_order: self.ambient_order,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn is_subgroup(&self, g: &FiniteGroup) -> bool {
        if !self.contains(0) {
            return false;
        }
        self.members.iter().all(|&a| {
            self.contains(g.inv(a)) && self.members.iter().all(|&b| self.contains(g.mul(a, b)))
        })
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.is_subgroup(g)
            && (0..g.order()).all(|x| self.members.iter().all(|&a| self.contains(g.conj(a, x))))
    }
}

/// A finite group given by its multiplication table; the identity is element 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<u32>,
    inverse: Vec<u32>,
    element_order: Vec<u32>,
    generator_elements: Vec<usize>,
    generator_names: Option<Vec<String>>,
    word_reps: Option<Vec<Word>>,
}

/// A quotient group together with the projection from the ambient group.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset of `x`.
    pub projection: Vec<usize>,
    /// Minimal element of each coset.
    pub representatives: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the identity,
    /// Latin-square and inverse laws. Associativity is checked separately.
    pub fn from_cayley(
        table: Vec<Vec<usize>>,
        generator_elements: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut cayley = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has wrong length")));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n || seen[v] {
                    return Err(GroupError::InvalidTable(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
                cayley.push(v as u32);
            }
        }
        for x in 0..n {
            if cayley[x] as usize != x || cayley[x * n] as usize != x {
                return Err(GroupError::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for &g in &generator_elements {
            if g >= n {
                return Err(GroupError::ElementOutOfRange(g));
            }
        }
        Self::from_raw(n, cayley, generator_elements)
    }

    fn from_raw(
        n: usize,
        cayley: Vec<u32>,
        generator_elements: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let mut inverse = vec![u32::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if cayley[x * n + y] == 0 {
                    inverse[x] = y as u32;
                    break;
                }
            }
        }
        for x in 0..n {
            let y = inverse[x] as usize;
            if inverse[x] == u32::MAX || cayley[y * n + x] != 0 {
                return Err(GroupError::InvalidTable(format!("element {x} has no two-sided inverse")));
            }
        }
        let mut element_order = vec![0u32; n];
        for x in 0..n {
            let mut k = 1u32;
            let mut cur = x;
            while cur != 0 {
                cur = cayley[cur * n + x] as usize;
                k += 1;
                if k as usize > n {
                    return Err(GroupError::InvalidTable(format!("element {x} has no finite order")));
                }
            }
            element_order[x] = k;
        }
        Ok(FiniteGroup {
            order: n,
            cayley,
            inverse,
            element_order,
            generator_elements,
            generator_names: None,
            word_reps: None,
        })
    }

    /// The group generated by permutations of `0..degree`, composed right to left:
    /// `(p q)(i) = p(q(i))`. Elements are numbered in breadth-first order.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Self {
        let degree = gens.first().map_or(0, |g| g.len());
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut elems = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            for g in gens {
                let next = compose(&cur, g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            head += 1;
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let gen_elems = gens.iter().map(|g| index[g]).collect();
        Self::from_cayley(table, gen_elems).expect("permutation groups are groups")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { vec![0] };
        Self::from_cayley(table, gens).expect("cyclic group")
    }

    /// `a × b` with element `(x, y)` numbered `x * |b| + y`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|i| {
                (0..na * nb)
                    .map(|j| a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb))
                    .collect()
            })
            .collect();
        let mut gens: Vec<usize> = a.generator_elements.iter().map(|&g| g * nb).collect();
        gens.extend(b.generator_elements.iter().copied());
        Self::from_cayley(table, gens).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a] as usize
    }

    /// `x^-1 a x`.
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let m = self.element_order(a) as i64;
        let e = k.rem_euclid(m);
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn cayley_row(&self, a: usize) -> &[u32] {
        &self.cayley[a * self.order..(a + 1) * self.order]
    }

    pub fn generator_elements(&self) -> &[usize] {
        &self.generator_elements
    }

    pub fn generator_names(&self) -> Option<&[String]> {
        self.generator_names.as_deref()
    }

    /// Shortest words in the presentation generators, when realized from one.
    pub fn word_representatives(&self) -> Option<&[Word]> {
        self.word_reps.as_deref()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        let gcd = |mut a: usize, mut b: usize| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        self.element_order
            .iter()
            .fold(1, |l, &o| l / gcd(l, o as usize) * o as usize)
    }

    /// Evaluates `w` left to right with generator `i` mapped to `assignment[i]`.
    pub fn evaluate_word(&self, w: &Word, assignment: &[usize]) -> Result<usize, GroupError> {
        let mut cur = 0;
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let &x = assignment.get(i).ok_or(GroupError::LetterOutOfRange {
                index: i,
                len: assignment.len(),
            })?;
            if x >= self.order {
                return Err(GroupError::ElementOutOfRange(x));
            }
            cur = self.mul(cur, if l > 0 { x } else { self.inv(x) });
        }
        Ok(cur)
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::new(self.order, 0..self.order)
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::new(self.order, [0])
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::new(
            self.order,
            (0..self.order).filter(|&g| (0..self.order).all(|x| self.mul(g, x) == self.mul(x, g))),
        )
    }

    pub fn centralizer(&self, x: usize) -> ElementSet {
        ElementSet::new(
            self.order,
            (0..self.order).filter(|&g| self.mul(g, x) == self.mul(x, g)),
        )
    }

    /// Closure of `gens` under multiplication (finite, so inverses come for free).
    pub fn subgroup_generated(&self, gens: &[usize]) -> ElementSet {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !mask[b] {
                    mask[b] = true;
                    queue.push_back(b);
                }
            }
        }
        ElementSet::from_mask(&mask)
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_generated(gens).len() == self.order
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &[usize]) -> ElementSet {
        let mut mask = vec![false; self.order];
        let mut gens = Vec::new();
        for &a in s {
            for x in 0..self.order {
                let c = self.conj(a, x);
                if !mask[c] {
                    mask[c] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    pub fn derived_subgroup(&self) -> ElementSet {
        let mut mask = vec![false; self.order];
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.commutator(a, b);
                if !mask[c] {
                    mask[c] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_generated(&comms)
    }

    /// `[A, G]`, the subgroup generated by commutators `[a, g]`.
    pub fn commutator_with_group(&self, a_set: &ElementSet) -> ElementSet {
        let mut mask = vec![false; self.order];
        let mut comms = Vec::new();
        for &a in a_set.members() {
            for g in 0..self.order {
                let c = self.commutator(a, g);
                if !mask[c] {
                    mask[c] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_generated(&comms)
    }

    /// `G = γ₁ ⊇ γ₂ ⊇ …` until it stabilizes; the last entry repeats no earlier one.
    pub fn lower_central_series(&self) -> Vec<ElementSet> {
        let mut series = vec![self.all()];
        loop {
            let next = self.commutator_with_group(series.last().unwrap());
            if next == *series.last().unwrap() {
                return series;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    /// Nilpotency class, `None` if the group is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .filter(|s| s.is_trivial())
            .map(|_| series.len() - 1)
    }

    pub fn quotient(&self, n: &ElementSet) -> Result<Quotient, GroupError> {
        if !n.is_normal(self) {
            return Err(GroupError::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut representatives = Vec::new();
        for x in 0..self.order {
            if projection[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(x);
            for &m in n.members() {
                projection[self.mul(x, m)] = c;
            }
        }
        let k = representatives.len();
        let table = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| projection[self.mul(representatives[i], representatives[j])])
                    .collect()
            })
            .collect();
        let gens = self.generator_elements.iter().map(|&g| projection[g]).collect();
        let group = FiniteGroup::from_cayley(table, gens)?;
        Ok(Quotient {
            group,
            projection,
            representatives,
        })
    }

    /// Intersection of the normal closures of all non-identity elements.
    pub fn socle(&self) -> Result<ElementSet, GroupError> {
        if self.order == 1 {
            return Err(GroupError::TrivialGroup);
        }
        let mut acc = self.all();
        for g in 1..self.order {
            if acc.is_trivial() {
                break;
            }
            acc = acc.intersection(&self.normal_closure(&[g]));
        }
        Ok(acc)
    }

    pub fn is_monolithic(&self) -> Result<bool, GroupError> {
        Ok(!self.socle()?.is_trivial())
    }

    /// Distinct normal closures of single non-identity elements.
    pub fn minimal_normal_closures(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = Vec::new();
        for g in 1..self.order {
            let n = self.normal_closure(&[g]);
            if !out.contains(&n) {
                out.push(n);
            }
        }
        out
    }

    /// Whether every non-central element has an abelian centralizer.
    pub fn is_cct(&self) -> Result<bool, GroupError> {
        if self.is_abelian() {
            return Err(GroupError::Abelian);
        }
        let z = self.center();
        for x in 0..self.order {
            if z.contains(x) {
                continue;
            }
            let c = self.centralizer(x);
            let m = c.members();
            let abelian = m
                .iter()
                .all(|&a| m.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
            if !abelian {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn with_presentation_data(mut self, names: Vec<String>, reps: Vec<Word>) -> Self {
        self.generator_names = Some(names);
        self.word_reps = Some(reps);
        self
    }
}

/// Realizes a finite presentation as a Cayley table by coset enumeration.
pub fn realize(p: &Presentation, max_cosets: usize) -> Result<FiniteGroup, GroupError> {
    let t = enumerate_cosets(p, max_cosets)?;
    let n = t.len();
    let mut cayley = vec![0u32; n * n];
    for i in 0..n {
        cayley[i * n] = i as u32;
    }
    for j in 1..n {
        let (par, col) = t.tree[j].expect("non-root coset has a parent");
        for i in 0..n {
            let v = cayley[i * n + par as usize] as usize;
            cayley[i * n + j] = t.act(v, col as usize) as u32;
        }
    }
    let mut reps = vec![Word::identity(); n];
    for j in 1..n {
        let (par, col) = t.tree[j].unwrap();
        let g = col as i32 / 2 + 1;
        let letter = if col % 2 == 0 { g } else { -g };
        let mut w = reps[par as usize].clone();
        w.push(letter);
        reps[j] = w;
    }
    let gens = (0..p.rank()).map(|g| t.act(0, 2 * g)).collect();
    let group = FiniteGroup::from_raw(n, cayley, gens)?;
    Ok(group.with_presentation_data(p.generator_names().to_vec(), reps))
}
