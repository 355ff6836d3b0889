use ddk_core::catalog::lookup;
use ddk_core::search::{
    enumerate_prestructures, enumerate_structures, has_prestructure, search_collect, search_count,
    SearchSpec, TupleSet, ZMode,
};
use ddk_core::structures::{
    accepts_via_hom, example_structure_file, failed_relations, k_subgroups, prestructure_relations,
    relations_for_type, simplified_relations_for_type, structure_to_hom, verify_prestructure,
    verify_structure, DDKStructure, Failure, StructureError, StructureFile, StructureType,
};
use ddk_core::verify::{brute_force_prestructures, small_groups};
use ddk_core::{parse_word, FiniteGroup, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const T22: StructureType = StructureType { b: 2, n: 2 };

fn realize(label: &str) -> FiniteGroup {
    lookup(label).unwrap().realize().unwrap()
}

fn names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("x{i}")).collect()
}

/// All assignments of `vars` elements satisfying the relators, with the
/// constraints on the `z` variable, by nested enumeration.
fn naive(g: &FiniteGroup, spec: &SearchSpec) -> TupleSet {
    let n = g.order();
    let mut rows = Vec::new();
    let total = n.pow(spec.vars as u32);
    for code in 0..total {
        let mut t = vec![0usize; spec.vars];
        let mut c = code;
        for slot in t.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        let z = t[spec.z_var];
        if !spec.z_domain.contains(&z) {
            continue;
        }
        if spec.z_order.is_some_and(|o| g.element_order(z) != o) {
            continue;
        }
        if !spec.relators.iter().all(|r| g.evaluate_word(r, &t).unwrap() == 0) {
            continue;
        }
        if spec.require_generation && !g.generates(&t) {
            continue;
        }
        rows.extend(t.iter().map(|&x| x as u8));
    }
    TupleSet::from_rows(spec.vars, rows)
}

fn spec(vars: usize, rels: &[&str], z_domain: Vec<usize>, z_order: Option<usize>, gen: bool) -> SearchSpec {
    let ns = names(vars);
    SearchSpec {
        vars,
        relators: rels.iter().map(|r| parse_word(r, &ns).unwrap()).collect(),
        z_var: vars - 1,
        z_domain,
        z_order,
        require_generation: gen,
        order: None,
    }
}

#[test]
fn generic_search_matches_nested_loops() {
    let s3 = &small_groups()[7].1;
    let d8 = &small_groups()[12].1;
    let q8 = &small_groups()[13].1;
    let a4 = realize("A4");
    let cases: Vec<(&FiniteGroup, SearchSpec)> = vec![
        (d8, spec(3, &["[x0,x1] x2"], (1..8).collect(), None, false)),
        (d8, spec(3, &["[x0,x1] x2", "x0^2"], (1..8).collect(), Some(2), true)),
        (q8, spec(4, &["[x0,x1] x3", "[x1,x2]", "x2 x0 x2^-1 x0^-1 x3^-1"], (1..8).collect(), None, false)),
        (s3, spec(4, &["x0 x1 x2 x3^-1", "x3^2", "[x0,x2]"], (1..6).collect(), Some(2), false)),
        (&a4, spec(3, &["[x0,x1] x2", "x2^2"], (1..12).collect(), None, true)),
    ];
    for (g, sp) in cases {
        let want = naive(g, &sp);
        assert_eq!(search_collect(g, &sp, None).unwrap(), want);
        assert_eq!(search_count(g, &sp).unwrap(), want.len() as u64);
        let mut reordered = sp.clone();
        reordered.order = Some((0..sp.vars).rev().collect());
        assert_eq!(search_collect(g, &reordered, None).unwrap(), want);
    }
}

#[test]
fn limited_collection_is_a_subset() {
    let d8 = &small_groups()[12].1;
    let sp = spec(3, &["[x0,x1] x2"], (1..8).collect(), None, false);
    let all = search_collect(d8, &sp, None).unwrap();
    let some = search_collect(d8, &sp, Some(5)).unwrap();
    assert_eq!(some.len(), 5.min(all.len()));
    assert!(some.iter().all(|t| all.contains(&t)));
}

#[test]
fn prestructures_on_small_groups_match_brute_force() {
    for (name, g) in small_groups().into_iter().filter(|(n, _)| ["S3", "D8", "Q8", "C4xC2"].contains(n)) {
        let oracle = brute_force_prestructures(&g);
        assert_eq!(enumerate_prestructures(&g, ZMode::Full, None).unwrap(), oracle, "{name}");
        assert_eq!(enumerate_prestructures(&g, ZMode::Auto, None).unwrap(), oracle, "{name}");
        for t in oracle.iter() {
            assert_eq!(verify_prestructure(&g, &t).unwrap(), None);
        }
    }
}

#[test]
fn cct_groups_admit_no_prestructures() {
    for label in ["Q8", "A4", "G(24,3)", "G(32,2)", "G(32,9)"] {
        let Some(e) = lookup(label) else { continue };
        let g = e.realize().unwrap();
        if g.is_abelian() || !g.is_cct().unwrap() {
            continue;
        }
        assert!(!has_prestructure(&g, ZMode::Full).unwrap(), "{label}");
    }
}

#[test]
fn search_cap() {
    let g = FiniteGroup::cyclic(65);
    assert!(matches!(
        enumerate_prestructures(&g, ZMode::Full, None),
        Err(StructureError::CapExceeded { order: 65, cap: 64 })
    ));
    assert!(matches!(
        enumerate_structures(&realize("G(32,49)"), StructureType { b: 3, n: 2 }, ZMode::Auto, None),
        Err(StructureError::UnsupportedGenus(3))
    ));
}

fn random_tuple(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

/// Structures, one-coordinate perturbations of structures and uniform tuples.
fn test_tuples(g: &FiniteGroup, structures: &TupleSet, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let mut t = if structures.is_empty() || i % 3 == 2 {
            random_tuple(&mut rng, g.order(), 9)
        } else {
            structures.get(rng.gen_range(0..structures.len()))
        };
        if i % 3 == 1 {
            let k = rng.gen_range(0..9);
            t[k] = rng.gen_range(0..g.order());
        }
        out.push(t);
    }
    out
}

#[test]
fn hom_pathway_agrees_with_relation_check() {
    for label in ["G(32,49)", "G(32,50)", "S4", "G(32,6)"] {
        let g = realize(label);
        let structures = enumerate_structures(&g, T22, ZMode::Auto, Some(3000)).unwrap();
        for t in test_tuples(&g, &structures, 1000, 7) {
            let direct = verify_structure(&g, &t, T22).unwrap().is_none();
            assert_eq!(direct, accepts_via_hom(&g, &t, T22), "{label} {t:?}");
        }
    }
}

#[test]
fn hom_pathway_exhaustive_on_tiny_groups() {
    for n in [2, 3] {
        let g = FiniteGroup::cyclic(n);
        for code in 0..n.pow(9) {
            let mut t = vec![0; 9];
            let mut c = code;
            for slot in t.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let t2 = StructureType { b: 2, n };
            assert_eq!(verify_structure(&g, &t, t2).unwrap().is_none(), accepts_via_hom(&g, &t, t2));
        }
    }
}

#[test]
fn full_and_simplified_relations_agree_on_class_two_groups() {
    let full = relations_for_type(T22);
    let simple = simplified_relations_for_type(T22);
    for label in ["G(32,49)", "G(32,50)", "G(32,2)", "G(32,22)"] {
        let Some(e) = lookup(label) else { continue };
        let g = e.realize().unwrap();
        if g.nilpotency_class() != Some(2) {
            continue;
        }
        let structures = enumerate_structures(&g, T22, ZMode::Auto, Some(2000)).unwrap();
        for t in test_tuples(&g, &structures, 1500, 11) {
            let a = failed_relations(&g, &t, &full).unwrap().is_empty();
            let b = failed_relations(&g, &t, &simple).unwrap().is_empty();
            assert_eq!(a, b, "{label} {t:?}");
        }
    }
    let d8 = &small_groups()[12].1;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20000 {
        let t = random_tuple(&mut rng, 8, 9);
        let a = failed_relations(d8, &t, &full).unwrap().is_empty();
        let b = failed_relations(d8, &t, &simple).unwrap().is_empty();
        assert_eq!(a, b, "{t:?}");
    }
}

#[test]
fn structures_project_to_prestructures_with_central_z() {
    for label in ["G(32,49)", "G(32,50)"] {
        let g = realize(label);
        let center = g.center();
        let z = center.members().iter().copied().find(|&x| x != 0).unwrap();
        let structures = enumerate_structures(&g, T22, ZMode::Full, Some(4000)).unwrap();
        assert!(!structures.is_empty());
        for t in structures.iter() {
            assert_eq!(verify_prestructure(&g, &t[..9]).unwrap(), None);
            assert_eq!(t[8], z);
            let s = DDKStructure::new(&g, t, T22).unwrap();
            assert!(k_subgroups(&s).strong);
        }
    }
}

#[test]
fn example_structure() {
    for label in ["G(32,49)", "G(32,50)"] {
        let g = realize(label);
        let t = example_structure_file(label).resolve(&g).unwrap();
        let s = DDKStructure::new(&g, t.clone(), T22).unwrap();
        let k = k_subgroups(&s);
        assert_eq!((k.m1, k.m2, k.strong), (1, 1, true));
        let hom = structure_to_hom(&s).unwrap();
        assert!(hom.is_surjective());
        assert_eq!(g.element_order(hom.images()[8]), 2);
        let names = g.generator_names().unwrap().to_vec();
        let r11 = parse_word("r1", &names).unwrap();
        let t21 = parse_word("r2 t1", &names).unwrap();
        let c = g.evaluate_word(&Word::commutator(&r11, &t21), g.generator_elements()).unwrap();
        assert_eq!(c, g.inv(t[8]));
        let file = StructureFile::from_structure(label, &s);
        let back: StructureFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back.resolve(&g).unwrap(), t);
        assert_eq!(file.to_text().lines().count(), 10);
    }
}

#[test]
fn diagnostics() {
    let g = realize("G(32,49)");
    let mut t = example_structure_file("G(32,49)").resolve(&g).unwrap();
    t[5] = 0;
    assert_eq!(
        verify_structure(&g, &t, T22).unwrap(),
        Some(Failure::Relation("R4".into()))
    );
    assert_eq!(verify_structure(&g, &[0; 9], T22).unwrap(), Some(Failure::ZTrivial));
    assert_eq!(Failure::ZTrivial.to_string(), "o(z) ≥ 2 violated");
    assert_eq!(verify_prestructure(&g, &[0; 9]).unwrap(), Some(Failure::ZTrivial));
    assert!(matches!(
        verify_structure(&g, &[0; 8], T22),
        Err(StructureError::Length { expected: 9, got: 8 })
    ));
    assert!(matches!(verify_structure(&g, &[40; 9], T22), Err(StructureError::ElementOutOfRange(40))));
    let bad = StructureFile {
        group: "G(32,49)".into(),
        b: 2,
        n: 2,
        elements: vec![1; 9],
        words: Some(vec!["r1".into(); 9]),
    };
    assert!(bad.resolve(&g).is_ok());
    let bad = StructureFile { elements: vec![2; 9], ..bad };
    assert!(matches!(bad.resolve(&g), Err(StructureError::Malformed(_))));
}

/// In S4, a tuple whose r12 and t22 commute while z is non-trivial breaks
/// `[r12, t22] = z^-1`.
#[test]
fn s4_commuting_pair_breaks_r8() {
    let g = realize("S4");
    let rels = prestructure_relations();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 500 {
        let mut t = random_tuple(&mut rng, 24, 9);
        if t[8] == 0 || g.mul(t[2], t[7]) != g.mul(t[7], t[2]) {
            continue;
        }
        t[8] = t[8].max(1);
        let failed = failed_relations(&g, &t, &rels).unwrap();
        assert!(failed.contains(&"R8".to_string()), "{t:?}");
        assert!(verify_prestructure(&g, &t).unwrap().is_some());
        checked += 1;
    }
}
