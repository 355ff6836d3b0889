//! Parallel backtracking enumeration of prestructures and structures.
//!
//! Tuples are assigned one variable at a time in a fixed order; each relator
//! is evaluated on byte Cayley tables as soon as its last variable is set.
//! The domain of `z` may be narrowed to a certified subset: if `G/N` admits no
//! prestructure then `z` lies in `N` for every prestructure of `G`.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::group::{ElementSet, FiniteGroup};
use crate::structures::{
    prestructure_relations, relations_for_type, LabeledRelator, StructureError, StructureType,
};
use crate::word::Word;

/// Largest group order the byte-table engine accepts.
pub const MAX_SEARCH_ORDER: usize = 64;

/// Assignment order for genus-2 tuples (indices into `r11 t11 r12 t12 r21 t21 r22 t22 z`).
pub const GENUS_TWO_ORDER: [usize; 9] = [8, 0, 5, 2, 7, 4, 6, 1, 3];

/// How the domain of `z` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ZMode {
    /// Every non-identity element.
    Full,
    /// The intersection of the normal closures certified by quotient searches.
    Certified,
    /// `Full` for groups of order at most 24, `Certified` otherwise.
    #[default]
    Auto,
}

impl ZMode {
    fn resolve(self, order: usize) -> ZMode {
        match self {
            ZMode::Auto if order <= 24 => ZMode::Full,
            ZMode::Auto => ZMode::Certified,
            m => m,
        }
    }
}

/// Why a quotient admits no prestructure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientReason {
    /// Abelian quotients violate `[r11, t21] = z^-1` with `z ≠ 1`.
    Abelian,
    /// An exhaustive search of the quotient found nothing.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub normal_subgroup: ElementSet,
    pub quotient_order: usize,
    pub reason: QuotientReason,
}

/// The admissible values of `z`, with the certificates that justify them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZDomain {
    pub elements: Vec<usize>,
    pub certificates: Vec<QuotientCertificate>,
}

/// Sorted tuples stored contiguously.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TupleSet {
    stride: usize,
    data: Vec<u8>,
}

impl TupleSet {
    /// Sorts and deduplicates rows of `stride` bytes.
    pub fn from_rows(stride: usize, data: Vec<u8>) -> TupleSet {
        let mut set = sort_tuples(data, stride);
        let mut rows: Vec<&[u8]> = set.data.chunks_exact(stride).collect();
        rows.dedup();
        set.data = rows.concat();
        set
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.stride).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> Vec<usize> {
        self.data[i * self.stride..(i + 1) * self.stride]
            .iter()
            .map(|&x| x as usize)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.data
            .chunks_exact(self.stride.max(1))
            .map(|c| c.iter().map(|&x| x as usize).collect())
    }

    pub fn raw(&self, i: usize) -> &[u8] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.position(tuple).is_some()
    }

    /// Index of `tuple` in the sorted set.
    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.stride || tuple.iter().any(|&x| x > u8::MAX as usize) {
            return None;
        }
        let key: Vec<u8> = tuple.iter().map(|&x| x as u8).collect();
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.raw(mid).cmp(&key[..]) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A search problem over `vars` unknowns.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub vars: usize,
    pub relators: Vec<Word>,
    /// The variable playing the role of `z`.
    pub z_var: usize,
    pub z_domain: Vec<usize>,
    /// Required order of `z`, if any.
    pub z_order: Option<usize>,
    pub require_generation: bool,
    /// Assignment order; defaults to the identity order.
    pub order: Option<Vec<usize>>,
}

enum Mode {
    Count,
    Collect(Option<usize>),
    Exists,
}

struct Engine<'a> {
    n: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    vars: usize,
    order: Vec<usize>,
    domains: Vec<Vec<u8>>,
    checks: Vec<Vec<Vec<u8>>>,
    generation: bool,
    stop: &'a AtomicBool,
}

struct Partial {
    count: u64,
    tuples: Vec<u8>,
}

impl Engine<'_> {
    fn eval(&self, slots: &[u8], vals: &[u8]) -> u8 {
        let mut x = 0u8;
        for &s in slots {
            x = self.mul[x as usize * self.n + vals[s as usize] as usize];
        }
        x
    }

    fn generates(&self, vals: &[u8]) -> bool {
        let mut seen = [0u64; 4];
        seen[0] = 1;
        let mut queue = Vec::with_capacity(self.n);
        queue.push(0u8);
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head] as usize;
            head += 1;
            for v in 0..self.vars {
                let b = self.mul[a * self.n + vals[2 * v] as usize];
                let (w, bit) = (b as usize / 64, b as usize % 64);
                if seen[w] >> bit & 1 == 0 {
                    seen[w] |= 1 << bit;
                    queue.push(b);
                    if queue.len() == self.n {
                        return true;
                    }
                }
            }
        }
        queue.len() == self.n
    }

    fn dfs(&self, depth: usize, vals: &mut [u8], mode: &Mode, out: &mut Partial) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if let Mode::Collect(Some(l)) = mode {
            if out.count as usize >= *l {
                return;
            }
        }
        if depth == self.vars {
            if self.generation && !self.generates(vals) {
                return;
            }
            out.count += 1;
            match mode {
                Mode::Count => {}
                Mode::Collect(_) => out.tuples.extend((0..self.vars).map(|v| vals[2 * v])),
                Mode::Exists => self.stop.store(true, Ordering::Relaxed),
            }
            return;
        }
        let var = self.order[depth];
        for &x in &self.domains[var] {
            vals[2 * var] = x;
            vals[2 * var + 1] = self.inv[x as usize];
            if self.checks[depth].iter().all(|r| self.eval(r, vals) == 0) {
                self.dfs(depth + 1, vals, mode, out);
            }
        }
    }
}

fn byte_tables(g: &FiniteGroup) -> Result<(Vec<u8>, Vec<u8>), StructureError> {
    let n = g.order();
    if n > MAX_SEARCH_ORDER {
        return Err(StructureError::CapExceeded {
            order: n,
            cap: MAX_SEARCH_ORDER,
        });
    }
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        mul.extend(g.cayley_row(a).iter().map(|&x| x as u8));
    }
    let inv = (0..n).map(|a| g.inv(a) as u8).collect();
    Ok((mul, inv))
}

fn run(g: &FiniteGroup, spec: &SearchSpec, mode: Mode) -> Result<Partial, StructureError> {
    let (mul, inv) = byte_tables(g)?;
    let n = g.order();
    let vars = spec.vars;
    let order = spec.order.clone().unwrap_or_else(|| (0..vars).collect());
    assert_eq!(order.len(), vars, "assignment order must list every variable");
    let mut domains: Vec<Vec<u8>> = vec![(0..n).map(|x| x as u8).collect(); vars];
    domains[spec.z_var] = spec
        .z_domain
        .iter()
        .filter(|&&z| z < n && spec.z_order.is_none_or(|o| g.element_order(z) == o))
        .map(|&z| z as u8)
        .collect();
    let mut position = vec![0; vars];
    for (d, &v) in order.iter().enumerate() {
        position[v] = d;
    }
    let mut checks = vec![Vec::new(); vars];
    for r in &spec.relators {
        let slots: Vec<u8> = r
            .letters()
            .iter()
            .map(|&l| {
                let v = l.unsigned_abs() as usize - 1;
                assert!(v < vars, "relator uses an undeclared variable");
                (2 * v + usize::from(l < 0)) as u8
            })
            .collect();
        let depth = slots.iter().map(|&s| position[s as usize / 2]).max().unwrap_or(0);
        checks[depth].push(slots);
    }
    let stop = AtomicBool::new(false);
    let engine = Engine {
        n,
        mul,
        inv,
        vars,
        order,
        domains,
        checks,
        generation: spec.require_generation,
        stop: &stop,
    };
    let v0 = engine.order[0];
    let v1 = engine.order.get(1).copied();
    let mut roots: Vec<(u8, Option<u8>)> = Vec::new();
    for &a in &engine.domains[v0] {
        match v1 {
            Some(v1) => roots.extend(engine.domains[v1].iter().map(|&b| (a, Some(b)))),
            None => roots.push((a, None)),
        }
    }
    let parts: Vec<Partial> = roots
        .par_iter()
        .map(|&(a, b)| {
            let mut vals = vec![0u8; 2 * vars];
            let mut out = Partial {
                count: 0,
                tuples: Vec::new(),
            };
            vals[2 * v0] = a;
            vals[2 * v0 + 1] = engine.inv[a as usize];
            if !engine.checks[0].iter().all(|r| engine.eval(r, &vals) == 0) {
                return out;
            }
            match (v1, b) {
                (Some(v1), Some(b)) => {
                    vals[2 * v1] = b;
                    vals[2 * v1 + 1] = engine.inv[b as usize];
                    if engine.checks[1].iter().all(|r| engine.eval(r, &vals) == 0) {
                        engine.dfs(2, &mut vals, &mode, &mut out);
                    }
                }
                _ => engine.dfs(1, &mut vals, &mode, &mut out),
            }
            out
        })
        .collect();
    let mut total = Partial {
        count: 0,
        tuples: Vec::new(),
    };
    for p in parts {
        total.count += p.count;
        total.tuples.extend(p.tuples);
    }
    if let Mode::Collect(Some(l)) = mode {
        total.tuples.truncate(l * vars);
        total.count = total.count.min(l as u64);
    }
    Ok(total)
}

fn sort_tuples(data: Vec<u8>, stride: usize) -> TupleSet {
    let mut rows: Vec<&[u8]> = data.chunks_exact(stride).collect();
    rows.par_sort_unstable();
    TupleSet {
        stride,
        data: rows.concat(),
    }
}

/// Number of tuples satisfying `spec`.
pub fn search_count(g: &FiniteGroup, spec: &SearchSpec) -> Result<u64, StructureError> {
    Ok(run(g, spec, Mode::Count)?.count)
}

/// The tuples satisfying `spec`, sorted lexicographically. With a limit, the
/// first `limit` tuples in partition order are kept, so the result does not
/// depend on the number of worker threads.
pub fn search_collect(
    g: &FiniteGroup,
    spec: &SearchSpec,
    limit: Option<usize>,
) -> Result<TupleSet, StructureError> {
    let p = run(g, spec, Mode::Collect(limit))?;
    Ok(sort_tuples(p.tuples, spec.vars))
}

pub fn search_exists(g: &FiniteGroup, spec: &SearchSpec) -> Result<bool, StructureError> {
    Ok(run(g, spec, Mode::Exists)?.count > 0)
}

fn words(rels: Vec<LabeledRelator>) -> Vec<Word> {
    rels.into_iter().map(|r| r.word).collect()
}

fn prestructure_spec(z_domain: Vec<usize>) -> SearchSpec {
    SearchSpec {
        vars: 9,
        relators: words(prestructure_relations()),
        z_var: 8,
        z_domain,
        z_order: None,
        require_generation: false,
        order: Some(GENUS_TWO_ORDER.to_vec()),
    }
}

fn structure_spec(n: usize, z_domain: Vec<usize>) -> SearchSpec {
    SearchSpec {
        vars: 9,
        relators: words(relations_for_type(StructureType { b: 2, n })),
        z_var: 8,
        z_domain,
        z_order: Some(n),
        require_generation: true,
        order: Some(GENUS_TWO_ORDER.to_vec()),
    }
}

/// The admissible `z` values for prestructures (and hence structures) of `g`.
pub fn z_domain(g: &FiniteGroup, mode: ZMode) -> Result<ZDomain, StructureError> {
    let full: Vec<usize> = (1..g.order()).collect();
    if mode.resolve(g.order()) == ZMode::Full {
        return Ok(ZDomain {
            elements: full,
            certificates: Vec::new(),
        });
    }
    let mut acc = g.all();
    let mut certificates = Vec::new();
    for nsub in g.minimal_normal_closures() {
        if nsub.len() == g.order() || acc.intersection(&nsub) == acc {
            continue;
        }
        let q = g.quotient(&nsub)?;
        let reason = if q.group.is_abelian() {
            Some(QuotientReason::Abelian)
        } else if !has_prestructure(&q.group, ZMode::Auto)? {
            Some(QuotientReason::Search)
        } else {
            None
        };
        if let Some(reason) = reason {
            acc = acc.intersection(&nsub);
            certificates.push(QuotientCertificate {
                normal_subgroup: nsub,
                quotient_order: q.group.order(),
                reason,
            });
        }
    }
    Ok(ZDomain {
        elements: acc.members().iter().copied().filter(|&x| x != 0).collect(),
        certificates,
    })
}

pub fn count_prestructures(g: &FiniteGroup, mode: ZMode) -> Result<u64, StructureError> {
    let d = z_domain(g, mode)?;
    search_count(g, &prestructure_spec(d.elements))
}

pub fn enumerate_prestructures(
    g: &FiniteGroup,
    mode: ZMode,
    limit: Option<usize>,
) -> Result<TupleSet, StructureError> {
    let d = z_domain(g, mode)?;
    search_collect(g, &prestructure_spec(d.elements), limit)
}

pub fn has_prestructure(g: &FiniteGroup, mode: ZMode) -> Result<bool, StructureError> {
    if g.is_abelian() {
        return Ok(false);
    }
    let d = z_domain(g, mode)?;
    if d.elements.is_empty() {
        return Ok(false);
    }
    search_exists(g, &prestructure_spec(d.elements))
}

fn genus_two(t: StructureType) -> Result<(), StructureError> {
    if t.b != 2 {
        return Err(StructureError::UnsupportedGenus(t.b));
    }
    Ok(())
}

pub fn count_structures(g: &FiniteGroup, t: StructureType, mode: ZMode) -> Result<u64, StructureError> {
    genus_two(t)?;
    let d = z_domain(g, mode)?;
    search_count(g, &structure_spec(t.n, d.elements))
}

pub fn enumerate_structures(
    g: &FiniteGroup,
    t: StructureType,
    mode: ZMode,
    limit: Option<usize>,
) -> Result<TupleSet, StructureError> {
    genus_two(t)?;
    let d = z_domain(g, mode)?;
    search_collect(g, &structure_spec(t.n, d.elements), limit)
}

pub fn has_structure(g: &FiniteGroup, t: StructureType, mode: ZMode) -> Result<bool, StructureError> {
    genus_two(t)?;
    let d = z_domain(g, mode)?;
    search_exists(g, &structure_spec(t.n, d.elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn d8() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    #[test]
    fn generic_engine_matches_naive_loop() {
        let g = d8();
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let spec = SearchSpec {
            vars: 3,
            relators: vec![parse_word("[a,b] c", &names).unwrap()],
            z_var: 2,
            z_domain: (1..8).collect(),
            z_order: None,
            require_generation: false,
            order: Some(vec![2, 0, 1]),
        };
        let mut naive = Vec::new();
        for a in 0..8 {
            for b in 0..8 {
                for c in 1..8 {
                    if g.mul(g.commutator(a, b), c) == 0 {
                        naive.push(vec![a, b, c]);
                    }
                }
            }
        }
        let found = search_collect(&g, &spec, None).unwrap();
        assert_eq!(found.iter().collect::<Vec<_>>(), naive);
        assert_eq!(search_count(&g, &spec).unwrap(), naive.len() as u64);
        assert!(search_exists(&g, &spec).unwrap());
        assert!(found.contains(&naive[3]));
        assert_eq!(search_collect(&g, &spec, Some(5)).unwrap().len(), 5);
    }

    #[test]
    fn small_groups_have_none() {
        assert!(!has_prestructure(&d8(), ZMode::Full).unwrap());
        assert_eq!(count_prestructures(&FiniteGroup::cyclic(6), ZMode::Full).unwrap(), 0);
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            count_prestructures(&FiniteGroup::cyclic(65), ZMode::Full),
            Err(StructureError::CapExceeded { .. })
        ));
    }
}
