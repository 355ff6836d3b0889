use ddk_core::catalog::{catalog, lookup};
use ddk_core::extra_special::{extra_special, Variant};
use ddk_core::FiniteGroup;

fn realize(label: &str) -> FiniteGroup {
    lookup(label).unwrap().realize().unwrap()
}

fn commute(g: &FiniteGroup, a: usize, b: usize) -> bool {
    g.mul(a, b) == g.mul(b, a)
}

/// Commuting is transitive on non-central elements, checked on all triples.
fn cct_by_definition(g: &FiniteGroup) -> bool {
    let n = g.order();
    let central: Vec<bool> = (0..n).map(|x| (0..n).all(|y| commute(g, x, y))).collect();
    let nc: Vec<usize> = (0..n).filter(|&x| !central[x]).collect();
    nc.iter().all(|&x| {
        nc.iter()
            .filter(|&&y| commute(g, x, y))
            .all(|&y| nc.iter().filter(|&&w| commute(g, y, w)).all(|&w| commute(g, x, w)))
    })
}

#[test]
fn every_entry_realizes_with_its_order() {
    let mut by_order = std::collections::BTreeMap::new();
    for e in catalog() {
        let g = e.realize().unwrap_or_else(|err| panic!("{}: {err}", e.label));
        assert_eq!(g.order(), e.order, "{}", e.label);
        assert!(g.is_associative(), "{}", e.label);
        if e.tabulated {
            *by_order.entry(e.order).or_insert(0) += 1;
            assert!(!g.is_abelian(), "{} is tabulated but abelian", e.label);
        }
    }
    assert_eq!(by_order[&24], 12);
    assert_eq!(by_order[&32], 44);
}

#[test]
fn tabulated_labels_encode_orders_and_are_distinct() {
    let mut seen = std::collections::HashSet::new();
    for e in catalog().into_iter().filter(|e| e.tabulated) {
        let inner = e.label.trim_start_matches("G(").trim_end_matches(')');
        let order: usize = inner.split(',').next().unwrap().parse().unwrap();
        assert_eq!(order, e.order);
        assert!(seen.insert(e.label));
    }
}

#[test]
fn quoted_center_orders() {
    for (label, size) in [("S4", 1), ("SL(2,3)", 2), ("G(32,6)", 2), ("G(32,49)", 2), ("G(32,50)", 2)] {
        let g = realize(label);
        let direct = (0..g.order())
            .filter(|&x| (0..g.order()).all(|y| commute(&g, x, y)))
            .count();
        assert_eq!(g.center().len(), direct, "{label}");
        assert_eq!(direct, size, "{label}");
    }
}

#[test]
fn cct_agrees_with_the_definition_on_every_tabulated_group() {
    let mut non_cct = Vec::new();
    for e in catalog().into_iter().filter(|e| e.tabulated) {
        let g = e.realize().unwrap();
        let cct = g.is_cct().unwrap();
        assert_eq!(cct, cct_by_definition(&g), "{}", e.label);
        if !cct {
            non_cct.push(e.display_name());
        }
    }
    assert_eq!(
        non_cct,
        ["S4", "G(32,6)", "G(32,7)", "G(32,8)", "G(32,43)", "G(32,44)", "G(32,49)", "G(32,50)"]
    );
}

#[test]
fn sl23_centralizers_are_abelian() {
    let g = realize("SL(2,3)");
    let z = g.center();
    for x in (0..g.order()).filter(|&x| !z.contains(x)) {
        let c = g.centralizer(x);
        assert!(c.members().iter().all(|&a| c.members().iter().all(|&b| commute(&g, a, b))));
    }
}

#[test]
fn cyclic_central_quotient_forces_abelian() {
    for e in catalog() {
        let g = e.realize().unwrap();
        let q = g.quotient(&g.center()).unwrap().group;
        let cyclic = (0..q.order()).any(|x| q.element_order(x) == q.order());
        assert!(!cyclic || g.is_abelian(), "{}", e.label);
    }
}

#[test]
fn extra_special_groups_match_their_rows() {
    for (variant, label) in [(Variant::H, "G(32,49)"), (Variant::G, "G(32,50)")] {
        let g = extra_special(2, 2, variant, 4096).unwrap();
        assert_eq!(g.order(), 32);
        assert_eq!(g.center().len(), 2);
        assert_eq!(g.socle().unwrap(), g.center());
        assert_eq!(g.derived_subgroup(), g.center());
        let q = g.quotient(&g.center()).unwrap().group;
        assert!(q.is_abelian() && q.exponent() == 2);
        let row = realize(label);
        let squares = |h: &FiniteGroup| (0..32).filter(|&x| h.mul(x, x) == 0).count();
        assert_eq!(squares(&g), squares(&row), "{label}");
    }
}
