//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy).
//!
//! Columns come in pairs: column `2g` is generator `g`, column `2g + 1` its
//! inverse. Coincidences are resolved with a union-find and a queue; once
//! the table closes, live cosets are renumbered in breadth-first order so
//! identical presentations always give identical tables.

use thiserror::Error;

use crate::word::Presentation;

/// Default upper bound on the number of cosets defined during enumeration.
pub const DEFAULT_COSET_CAP: usize = 4096;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("coset enumeration exceeded {cap} cosets (group possibly infinite or cap too small)")]
    CapExceeded { cap: usize },
}

/// The cap from the `DDK_COSETS` environment variable, or the default.
pub fn coset_cap_from_env() -> usize {
    std::env::var("DDK_COSETS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_COSET_CAP)
}

/// A complete, standardized coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// Number of columns (twice the number of generators).
    pub cols: usize,
    /// Row-major action table: `table[c * cols + x]`.
    pub table: Vec<u32>,
    /// Breadth-first spanning tree: parent coset and column, `None` for coset 0.
    pub tree: Vec<Option<(u32, u32)>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.table.len() / self.cols.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn act(&self, coset: usize, col: usize) -> usize {
        self.table[coset * self.cols + col] as usize
    }
}

fn letter_col(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    if l > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    cap: usize,
}

impl Enumerator {
    fn new(cols: usize, cap: usize) -> Self {
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: Vec::new(),
            cap,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), CosetError> {
        let n = self.parent.len();
        if n >= self.cap {
            return Err(CosetError::CapExceeded { cap: self.cap });
        }
        let b = n as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(b);
        self.set(c, x, b);
        self.set(b, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mux = self.get(mu, x);
                if mux != NONE {
                    self.merge(nu, mux);
                } else {
                    let nuxi = self.get(nu, x ^ 1);
                    if nuxi != NONE {
                        self.merge(mu, nuxi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: u32, rel: &[usize]) -> Result<(), CosetError> {
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = rel.len();
        loop {
            while i < j {
                let v = self.get(f, rel[i]);
                if v == NONE {
                    break;
                }
                f = v;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let v = self.get(b, rel[j - 1] ^ 1);
                if v == NONE {
                    break;
                }
                b = v;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, rel[i], b);
                self.set(b, rel[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    fn run(&mut self, rels: &[Vec<usize>]) -> Result<(), CosetError> {
        let mut a: usize = 0;
        while a < self.parent.len() {
            let c = a as u32;
            for r in rels {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.is_live(c) {
                for x in 0..self.cols {
                    if !self.is_live(c) {
                        break;
                    }
                    if self.get(c, x) == NONE {
                        self.define(c, x)?;
                    }
                }
            }
            a += 1;
        }
        Ok(())
    }
}

/// Enumerates the cosets of the trivial subgroup, i.e. the elements of the group.
pub fn enumerate_cosets(p: &Presentation, cap: usize) -> Result<CosetTable, CosetError> {
    let cols = 2 * p.rank();
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.letters().iter().map(|&l| letter_col(l)).collect())
        .collect();
    let mut e = Enumerator::new(cols, cap.max(1));
    e.run(&rels)?;

    // Standardize: breadth-first renumbering of live cosets from coset 0.
    let n_old = e.parent.len();
    let mut new_index = vec![NONE; n_old];
    let mut order: Vec<u32> = vec![0];
    let mut tree: Vec<Option<(u32, u32)>> = vec![None];
    new_index[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        for x in 0..cols {
            let d = e.rep(e.get(c, x));
            if new_index[d as usize] == NONE {
                new_index[d as usize] = order.len() as u32;
                order.push(d);
                tree.push(Some((head as u32, x as u32)));
            }
        }
        head += 1;
    }
    let n = order.len();
    let mut table = vec![0u32; n * cols];
    for (i, &c) in order.iter().enumerate() {
        for x in 0..cols {
            let d = e.rep(e.get(c, x));
            table[i * cols + x] = new_index[d as usize];
        }
    }
    let out = CosetTable { cols, table, tree };
    assert!(relators_close(&out, &rels), "coset table does not satisfy the relators");
    Ok(out)
}

fn relators_close(t: &CosetTable, rels: &[Vec<usize>]) -> bool {
    let n = t.len();
    for c in 0..n {
        for x in 0..t.cols {
            if t.act(t.act(c, x), x ^ 1) != c {
                return false;
            }
        }
        for r in rels {
            let mut cur = c;
            for &x in r {
                cur = t.act(cur, x);
            }
            if cur != c {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_presentation;

    fn order(text: &str) -> usize {
        enumerate_cosets(&parse_presentation(text).unwrap(), DEFAULT_COSET_CAP)
            .unwrap()
            .len()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order("gens: x y\nrel: x^2\nrel: y^2\nrel: [x,y]"), 4);
        assert_eq!(order("gens: x y\nrel: x^2\nrel: y^3\nrel: x y x y"), 6);
        assert_eq!(order("gens: x y\nrel: x^2\nrel: y^4\nrel: x y x y x y"), 24);
        assert_eq!(order("gens: x\nrel: x"), 1);
        assert_eq!(order("gens: a b\nrel: a^4\nrel: a^2 b^-2\nrel: b a b^-1 a"), 8);
    }

    #[test]
    fn cap_is_reported() {
        let p = parse_presentation("gens: x y\nrel: [x,y]").unwrap();
        assert_eq!(
            enumerate_cosets(&p, 100),
            Err(CosetError::CapExceeded { cap: 100 })
        );
    }

    #[test]
    fn deterministic() {
        let p = parse_presentation("gens: x y\nrel: x^2\nrel: y^4\nrel: x y x y x y").unwrap();
        let a = enumerate_cosets(&p, 4096).unwrap();
        let b = enumerate_cosets(&p, 4096).unwrap();
        assert_eq!(a, b);
    }
}
