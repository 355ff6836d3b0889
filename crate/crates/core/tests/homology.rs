use ddk_core::catalog::lookup;
use ddk_core::hom::Homomorphism;
use ddk_core::homology::{
    abelianized_relator_matrix, cokernel_invariants, first_homology, h1_of_surface,
    schreier_generator_count, schreier_transversal, smith_normal_form, smith_normal_form_with_transforms,
    HomologyInvariants, IntegerMatrix,
};
use ddk_core::structures::{example_structure_file, orbifold_presentation, DDKStructure, StructureType};
use ddk_core::symplectic::symplectic_structures;
use ddk_core::verify::{invariant_factors_by_minors, sorted_sample};
use ddk_core::{parse_presentation, FiniteGroup};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const T22: StructureType = StructureType { b: 2, n: 2 };

fn to_i64(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| i64::try_from(m.get(i, j)).unwrap()).collect())
        .collect()
}

fn determinant(m: &IntegerMatrix) -> BigInt {
    let rows: Vec<Vec<i64>> = to_i64(m);
    let f = invariant_factors_by_minors(&rows);
    if f.len() < m.rows() {
        return BigInt::zero();
    }
    f.iter().product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_matches_gcds_of_minors(
        (rows, cols, entries) in (1usize..=6, 1usize..=6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-20i64..=20, r * c)))
    ) {
        let m: Vec<Vec<i64>> = entries.chunks(cols).map(|c| c.to_vec()).collect();
        prop_assert_eq!(m.len(), rows);
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&m));
        prop_assert_eq!(&snf.diagonal, &invariant_factors_by_minors(&m));
        for w in snf.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.diagonal.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn transforms_are_unimodular_and_diagonalize(
        (cols, entries) in (1usize..=5).prop_flat_map(|c| (Just(c), prop::collection::vec(-9i64..=9, 4 * c)))
    ) {
        let m = IntegerMatrix::from_rows(&entries.chunks(cols).map(|c| c.to_vec()).collect::<Vec<_>>());
        let (snf, u, v, d) = smith_normal_form_with_transforms(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        prop_assert!(determinant(&u).is_one());
        prop_assert!(determinant(&v).is_one());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < snf.rank { snf.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &want);
            }
        }
    }
}

#[test]
fn eight_by_eight_matrices() {
    let m: Vec<Vec<i64>> = (0..8)
        .map(|i| (0..8).map(|j| ((i * 7 + j * 3) % 11) as i64 - 5 + if i == j { 2 } else { 0 }).collect())
        .collect();
    assert_eq!(smith_normal_form(&IntegerMatrix::from_rows(&m)).diagonal, invariant_factors_by_minors(&m));
    let mut diag = vec![vec![0i64; 8]; 8];
    for (i, row) in diag.iter_mut().enumerate() {
        row[i] = [4, 6, 0, 10, 1, 15, 0, 2][i];
    }
    let f = smith_normal_form(&IntegerMatrix::from_rows(&diag)).diagonal;
    assert_eq!(f, [1, 1, 2, 2, 30, 60].map(BigInt::from).to_vec());
}

#[test]
fn large_entries_fall_back_to_arbitrary_precision() {
    let big = i64::MAX / 3;
    let m = IntegerMatrix::from_rows(&[vec![big, big - 1], vec![big - 2, big - 7]]);
    let f = smith_normal_form(&m).diagonal;
    let det = BigInt::from(big) * BigInt::from(big - 7) - BigInt::from(big - 1) * BigInt::from(big - 2);
    assert_eq!(f.iter().product::<BigInt>(), det.abs());
}

#[test]
fn cokernels() {
    let inv = |rows: &[Vec<i64>]| cokernel_invariants(&IntegerMatrix::from_rows(rows)).unwrap();
    assert_eq!(inv(&[vec![2, 0], vec![0, 3]]), HomologyInvariants { free_rank: 0, torsion: vec![6] });
    assert_eq!(inv(&[vec![0, 0, 0]]), HomologyInvariants { free_rank: 3, torsion: vec![] });
    assert_eq!(inv(&[vec![2, 4]]), HomologyInvariants { free_rank: 1, torsion: vec![2] });
}

fn surface_group() -> ddk_core::Presentation {
    parse_presentation("gens: a1 b1 a2 b2\nrel: [a1,b1] [a2,b2]").unwrap()
}

/// Index-k covers of the genus-2 surface have genus k + 1.
#[test]
fn surface_covers_follow_riemann_hurwitz() {
    for k in 1..=4 {
        let g = FiniteGroup::cyclic(k);
        let gen = if k > 1 { 1 } else { 0 };
        let hom = Homomorphism::new(surface_group(), &g, vec![gen, 0, 0, 0]).unwrap();
        let h = first_homology(&surface_group(), &hom).unwrap();
        assert_eq!(h, HomologyInvariants { free_rank: 2 * (k + 1), torsion: vec![] }, "k = {k}");
    }
}

/// Index-k subgroups of a free group of rank 2 are free of rank k + 1.
#[test]
fn free_group_subgroups_follow_schreier() {
    let f2 = parse_presentation("gens: x y").unwrap();
    for k in 1..=6 {
        let g = FiniteGroup::cyclic(k);
        let gen = if k > 1 { 1 } else { 0 };
        let hom = Homomorphism::new(f2.clone(), &g, vec![gen, gen]).unwrap();
        let t = schreier_transversal(&hom).unwrap();
        assert_eq!(t.len(), k);
        let h = first_homology(&f2, &hom).unwrap();
        assert_eq!(h.free_rank, schreier_generator_count(k, 2));
        assert_eq!(h.free_rank, k + 1);
    }
}

#[test]
fn relation_matrix_dimensions() {
    let e = lookup("G(32,49)").unwrap();
    let g = e.realize().unwrap();
    let tuple = example_structure_file("G(32,49)").resolve(&g).unwrap();
    let p = orbifold_presentation(T22);
    assert_eq!(p.relators().len(), 23);
    let hom = Homomorphism::new(p.clone(), &g, tuple).unwrap();
    let t = schreier_transversal(&hom).unwrap();
    let m = abelianized_relator_matrix(&p, &hom, &t);
    assert_eq!((m.rows(), m.cols()), (736, 257));
}

#[test]
fn surface_homology_on_both_groups() {
    for label in ["G(32,49)", "G(32,50)"] {
        let g = lookup(label).unwrap().realize().unwrap();
        let example = example_structure_file(label).resolve(&g).unwrap();
        let set = symplectic_structures(&g).unwrap();
        let mut tuples = vec![example];
        tuples.extend(sorted_sample(set.len(), 3, 99).into_iter().map(|i| set.get(i)));
        for t in tuples {
            let s = DDKStructure::new(&g, t, T22).unwrap();
            let h = h1_of_surface(&s).unwrap();
            assert_eq!(h.invariants.free_rank, 8, "{label}");
            assert_eq!(h.invariants.torsion, vec![2, 2, 2, 2], "{label}");
            assert!(h.maximal);
        }
    }
}
