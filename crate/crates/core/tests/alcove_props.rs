//! Alcove geometry: folding, point stabilizers and the orbit complexes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use weylk::alcove::{
    build_equivariant_complex, fold_into_alcove, fundamental_alcove, omega_action, vertex_permutation, Variant,
};
use weylk::finitegroup::{point_stabilizer, weyl_group_coweight, DEFAULT_GROUP_CAP};
use weylk::rootdata::{build_root_datum, CartanType, Isogeny, RootDatum, Series};

fn rd(s: Series, n: usize, iso: Isogeny) -> RootDatum {
    build_root_datum(CartanType::new(s, n).unwrap(), iso).unwrap()
}

fn small_types() -> Vec<(Series, usize)> {
    vec![
        (Series::A, 1),
        (Series::A, 2),
        (Series::B, 2),
        (Series::C, 2),
        (Series::G, 2),
        (Series::A, 3),
        (Series::B, 3),
        (Series::C, 3),
    ]
}

fn qv(v: &[i64], d: i64) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(d))).collect()
}

#[test]
fn point_stabilizers_in_a2() {
    let sc = rd(Series::A, 2, Isogeny::SimplyConnected);
    let adj = rd(Series::A, 2, Isogeny::Adjoint);
    let w = weyl_group_coweight(&sc, DEFAULT_GROUP_CAP).unwrap();
    let q = sc.coroot_lattice();
    let p = adj.cochar_lattice().clone();
    let orders = |gamma: &weylk::rootdata::Lattice, x: Vec<BigRational>| point_stabilizer(&w, gamma, &x).order();
    // origin and the special vertex ω₁∨
    assert_eq!(orders(&q, qv(&[0, 0], 1)), 6);
    assert_eq!(orders(&q, qv(&[1, 0], 1)), 6);
    // midpoint of an edge of the alcove
    assert_eq!(orders(&q, qv(&[1, 0], 2)), 2);
    // barycenter: free for Q∨, rotation of order 3 for P∨
    assert_eq!(orders(&q, qv(&[1, 1], 3)), 1);
    assert_eq!(orders(&p, qv(&[1, 1], 3)), 3);
    // generic point
    assert_eq!(orders(&p, qv(&[1, 2], 7)), 1);
}

#[test]
fn omega_is_the_fundamental_group() {
    for (s, n) in small_types() {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let g = rd(s, n, iso);
            let omega = omega_action(&g);
            assert_eq!(omega.len() as u64, g.fundamental_group_and_center().0.order());
            assert!(omega[0].is_identity());
            let alcove = fundamental_alcove(&g);
            for o in &omega {
                let perm = vertex_permutation(&alcove, o).unwrap();
                let mut sorted = perm.clone();
                sorted.sort();
                assert_eq!(sorted, (0..=n).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn complexes_are_consistent() {
    for (s, n) in small_types() {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let g = rd(s, n, iso);
            for v in [Variant::Affine, Variant::Extended] {
                let x = build_equivariant_complex(&g, v).unwrap();
                x.check_rigidity().unwrap();
                x.check_faces().unwrap();
                x.check_euler().unwrap();
                // a crystallographic group has Euler characteristic zero
                assert!(x.orbifold_euler().is_zero(), "{s:?}{n} {v}");
                assert_eq!(x.dim(), n);
                let json = serde_json::to_string(&x.to_json()).unwrap();
                assert_eq!(json, serde_json::to_string(&x.to_json()).unwrap());
            }
        }
    }
}

#[test]
fn affine_cell_counts_are_faces_of_the_alcove() {
    // orbit cells of W_a are the faces of one alcove
    for (s, n) in small_types() {
        let x = build_equivariant_complex(&rd(s, n, Isogeny::SimplyConnected), Variant::Affine).unwrap();
        let binom = |k: usize| (0..k).fold(1usize, |acc, i| acc * (n + 1 - i) / (i + 1));
        let expected: Vec<usize> = (1..=n + 1).map(binom).collect();
        assert_eq!(x.cell_counts(), expected);
    }
}

fn point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((-40i64..=40, 1i64..=12), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Every point folds into the alcove by an element of the affine Weyl group.
    #[test]
    fn folding_lands_in_alcove(which in 0usize..8, y in point(3)) {
        let (s, n) = small_types()[which];
        let g = rd(s, n, Isogeny::SimplyConnected);
        let x = build_equivariant_complex(&g, Variant::Affine).unwrap();
        let y = &y[..n];
        let (w, image) = fold_into_alcove(&g, y);
        prop_assert!(x.alcove.contains(&image));
        prop_assert_eq!(w.apply(y), image.clone());
        prop_assert!(x.is_group_element(&w));
        // folding is idempotent
        let (_, again) = fold_into_alcove(&g, &image);
        prop_assert_eq!(again, image);
    }
}
