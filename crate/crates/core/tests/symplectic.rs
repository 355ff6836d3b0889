use std::collections::{BTreeMap, BTreeSet};

use ddk_core::catalog::lookup;
use ddk_core::search::{enumerate_structures, ZMode};
use ddk_core::structures::{relations_for_type, StructureType};
use ddk_core::symplectic::{
    aut_order, enumerate_reduced_structures, enumerate_symplectic_bases, form_type, induced_space,
    is_reduced_structure, lift_reduced, orthogonal_order, reduce, sp_order, symplectic_structures,
    zero_count, Case, ReducedStructure, SymplecticSpace,
};
use ddk_core::FiniteGroup;
use num_bigint::BigUint;

const T22: StructureType = StructureType { b: 2, n: 2 };

fn realize(label: &str) -> FiniteGroup {
    lookup(label).unwrap().realize().unwrap()
}

fn spaces() -> Vec<(&'static str, FiniteGroup, SymplecticSpace)> {
    ["G(32,49)", "G(32,50)"]
        .into_iter()
        .map(|l| {
            let g = realize(l);
            let s = induced_space(&g).unwrap();
            (l, g, s)
        })
        .collect()
}

#[test]
fn closed_form_orders() {
    assert_eq!(sp_order(2), BigUint::from(720u32));
    assert_eq!(orthogonal_order(2, 1), BigUint::from(72u32));
    assert_eq!(orthogonal_order(2, -1), BigUint::from(120u32));
    assert_eq!(aut_order(2, 1), BigUint::from(1152u32));
    assert_eq!(aut_order(2, -1), BigUint::from(1920u32));
    assert_eq!(sp_order(1), BigUint::from(6u32));
}

#[test]
fn form_is_alternating_nondegenerate_and_quadratic() {
    for (label, g, s) in spaces() {
        assert_eq!(s.dim(), 4);
        let z = s.z();
        for u in 0..16 {
            assert_eq!(s.pair(u, u), 0, "{label}");
            let x = s.section(u);
            assert_eq!(u8::from(g.mul(x, x) == z), s.q(u));
            if u != 0 {
                assert!((0..16).any(|v| s.pair(u, v) == 1), "{label}: radical");
            }
            for v in 0..16 {
                assert_eq!(s.pair(u, v), s.pair(v, u));
                let y = s.section(v);
                assert_eq!(u8::from(g.commutator(x, y) == z), s.pair(u, v));
                let xy = g.mul(x, y);
                let q_group = u8::from(g.mul(xy, xy) == z);
                assert_eq!(q_group, (s.q(u) + s.q(v) + s.pair(u, v)) % 2, "{label} {u} {v}");
                for w in 0..16 {
                    assert_eq!(s.pair(u ^ v, w), s.pair(u, w) ^ s.pair(v, w));
                }
            }
        }
        for v in 0..16 {
            assert_eq!(s.project(s.section(v)), v);
        }
        for x in 0..32 {
            for y in 0..32 {
                assert_eq!(s.project(g.mul(x, y)), s.project(x) ^ s.project(y));
            }
        }
    }
}

#[test]
fn witt_type_and_isotropic_counts() {
    for (label, g, s) in spaces() {
        let involutions = (0..32).filter(|&x| g.mul(x, x) == 0).count();
        assert_eq!(zero_count(&s), involutions / 2, "{label}");
        let eps = form_type(&s).unwrap();
        assert_eq!(zero_count(&s) as i32, 8 + 2 * i32::from(eps), "{label}");
    }
    assert_eq!(form_type(&spaces()[0].2).unwrap(), 1);
    assert_eq!(form_type(&spaces()[1].2).unwrap(), -1);
    let d8 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]);
    let s = induced_space(&d8).unwrap();
    assert_eq!(zero_count(&s), 3);
    assert!(induced_space(&realize("S4")).is_err());
}

#[test]
fn symplectic_bases_count_sp4() {
    for (_, _, s) in spaces() {
        let bases = enumerate_symplectic_bases(&s).unwrap();
        assert_eq!(bases.len(), 720);
        let distinct: BTreeSet<[u32; 4]> = bases.iter().copied().collect();
        assert_eq!(distinct.len(), 720);
        for [e1, f1, e2, f2] in bases {
            assert_eq!((s.pair(e1, f1), s.pair(e2, f2)), (1, 1));
            assert_eq!((s.pair(e1, e2), s.pair(e1, f2), s.pair(f1, e2), s.pair(f1, f2)), (0, 0, 0, 0));
        }
    }
}

/// Assigns the eight vectors in index order with section lifts, keeping a
/// partial assignment only when every relator over assigned variables holds.
fn staged_filter(g: &FiniteGroup, s: &SymplecticSpace) -> BTreeSet<[u32; 8]> {
    let rels = relations_for_type(T22);
    let vars: Vec<u32> = rels
        .iter()
        .map(|r| {
            r.word
                .letters()
                .iter()
                .map(|l| l.unsigned_abs() - 1)
                .filter(|&v| v < 8)
                .fold(0, |m, v| m.max(v))
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut tuple = vec![0usize; 9];
    tuple[8] = s.z();
    let mut vecs = [0u32; 8];
    struct Ctx<'a> {
        g: &'a FiniteGroup,
        s: &'a SymplecticSpace,
        rels: &'a [ddk_core::structures::LabeledRelator],
        vars: &'a [u32],
    }
    fn rec(depth: usize, c: &Ctx, tuple: &mut Vec<usize>, vecs: &mut [u32; 8], out: &mut BTreeSet<[u32; 8]>) {
        if depth == 8 {
            if c.g.generates(tuple) {
                out.insert(*vecs);
            }
            return;
        }
        for v in 0..16u32 {
            vecs[depth] = v;
            tuple[depth] = c.s.section(v);
            let ok = c
                .rels
                .iter()
                .zip(c.vars)
                .filter(|(_, &m)| m as usize == depth)
                .all(|(r, _)| c.g.evaluate_word(&r.word, tuple).unwrap() == 0);
            if ok {
                rec(depth + 1, c, tuple, vecs, out);
            }
        }
    }
    let ctx = Ctx { g, s, rels: &rels, vars: &vars };
    rec(0, &ctx, &mut tuple, &mut vecs, &mut out);
    out
}

#[test]
fn reduced_structures_match_staged_brute_force() {
    for (label, g, s) in spaces() {
        let reduced = enumerate_reduced_structures(&s).unwrap();
        assert_eq!(reduced.len(), 8640, "{label}");
        let got: BTreeSet<[u32; 8]> = reduced.iter().map(|r| r.vectors).collect();
        assert_eq!(got.len(), 8640);
        assert_eq!(got, staged_filter(&g, &s), "{label}");
        let mut cases = BTreeMap::new();
        for r in &reduced {
            assert!(is_reduced_structure(&s, &r.vectors));
            *cases.entry(format!("{:?}", r.case(&s))).or_insert(0) += 1;
            assert!(matches!(r.case(&s), Case::A | Case::B));
            assert_eq!(r.swap_indices().swap_indices(), *r);
        }
        assert_eq!(cases.values().copied().collect::<Vec<_>>(), vec![4320, 4320]);
    }
}

#[test]
fn backtracking_structures_project_onto_reduced_with_fibres_of_256() {
    for (label, g, s) in spaces() {
        let bt = enumerate_structures(&g, T22, ZMode::Auto, None).unwrap();
        let mut fibres: BTreeMap<[u32; 8], usize> = BTreeMap::new();
        for t in bt.iter() {
            *fibres.entry(reduce(&s, &t).vectors).or_insert(0) += 1;
        }
        assert_eq!(fibres.len(), 8640, "{label}");
        assert!(fibres.values().all(|&c| c == 256), "{label}");
        let reduced: BTreeSet<[u32; 8]> =
            enumerate_reduced_structures(&s).unwrap().iter().map(|r| r.vectors).collect();
        assert_eq!(fibres.keys().copied().collect::<BTreeSet<_>>(), reduced);
        assert_eq!(symplectic_structures(&g).unwrap(), bt, "{label}");
    }
}

#[test]
fn lifts_do_not_depend_on_the_section() {
    for (label, g, s) in spaces() {
        let other = s.clone().with_section(s.max_section()).unwrap();
        assert_ne!(other.section(1), s.section(1));
        let reduced = enumerate_reduced_structures(&s).unwrap();
        for r in reduced.iter().step_by(97) {
            let a: BTreeSet<Vec<usize>> = lift_reduced(&s, r, &g).unwrap().into_iter().collect();
            let b: BTreeSet<Vec<usize>> = lift_reduced(&other, r, &g).unwrap().into_iter().collect();
            assert_eq!(a.len(), 256);
            assert_eq!(a, b, "{label}");
        }
        let bad = ReducedStructure { vectors: [0; 8] };
        assert!(lift_reduced(&s, &bad, &g).is_err());
        assert!(!is_reduced_structure(&s, &bad.vectors));
    }
}
