//! Root data, isogenies and Langlands duality for every type up to rank 8.

use proptest::prelude::*;

use weylk::finitegroup::weyl_group;
use weylk::linalg::integer_determinant;
use weylk::rootdata::{
    build_root_datum, cartan_matrix, connection_index, langlands_dual, CartanType, Isogeny, Lattice, RootDatum,
    Series,
};

fn all_types() -> Vec<CartanType> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(CartanType::new(Series::A, n).unwrap());
    }
    for n in 2..=8 {
        out.push(CartanType::new(Series::B, n).unwrap());
        out.push(CartanType::new(Series::C, n).unwrap());
    }
    for n in 3..=8 {
        out.push(CartanType::new(Series::D, n).unwrap());
    }
    for n in 6..=8 {
        out.push(CartanType::new(Series::E, n).unwrap());
    }
    out.push(CartanType::new(Series::F, 4).unwrap());
    out.push(CartanType::new(Series::G, 2).unwrap());
    out
}

/// Classical connection indices.
fn expected_f(t: CartanType) -> u64 {
    match t.series {
        Series::A => t.rank as u64 + 1,
        Series::B | Series::C => 2,
        Series::D => 4,
        Series::E => match t.rank {
            6 => 3,
            7 => 2,
            _ => 1,
        },
        Series::F | Series::G => 1,
    }
}

/// Every lattice strictly between `Q∨` and `P∨`, as isogenies.
fn intermediate_isogenies(t: CartanType) -> Vec<Isogeny> {
    let a = cartan_matrix(t).unwrap();
    let n = t.rank;
    let f = expected_f(t) as i64;
    let q = Lattice::generated_by(n, &(0..n).map(|i| a.row(i)).collect::<Vec<_>>()).unwrap();
    let p = Lattice::standard(n);
    // P∨/Q∨ needs at most two generators; multiples of coordinate vectors suffice.
    let mut candidates = Vec::new();
    for i in 0..n {
        for k in 1..f {
            let mut v = vec![0; n];
            v[i] = k;
            candidates.push(v);
        }
    }
    let mut seen: Vec<Lattice> = vec![q.clone(), p.clone()];
    let mut out = Vec::new();
    for i in 0..candidates.len() {
        for j in i..candidates.len() {
            let gens = vec![candidates[i].clone(), candidates[j].clone()];
            let mut all: Vec<Vec<i64>> = (0..n).map(|r| a.row(r)).collect();
            all.extend(gens.iter().cloned());
            let l = Lattice::generated_by(n, &all).unwrap();
            if !seen.contains(&l) {
                seen.push(l);
                out.push(Isogeny::Intermediate(gens));
            }
        }
    }
    out
}

fn isogenies(t: CartanType) -> Vec<Isogeny> {
    let mut v = vec![Isogeny::SimplyConnected, Isogeny::Adjoint];
    if t.series != Series::E || t.rank != 8 {
        v.extend(intermediate_isogenies(t));
    }
    v
}

#[test]
fn cartan_determinant_is_connection_index() {
    for t in all_types() {
        let a = cartan_matrix(t).unwrap();
        let det = integer_determinant(&a.to_z());
        assert_eq!(det, expected_f(t).into(), "{t}");
        assert_eq!(connection_index(t).unwrap(), expected_f(t));
    }
}

#[test]
fn pi1_times_center_is_f_for_every_isogeny() {
    let mut intermediate = 0;
    for t in all_types() {
        for iso in isogenies(t) {
            if matches!(iso, Isogeny::Intermediate(_)) {
                intermediate += 1;
            }
            let rd = build_root_datum(t, iso.clone()).unwrap();
            rd.validate().unwrap();
            let (pi1, z) = rd.fundamental_group_and_center();
            assert_eq!(pi1.order() * z.order(), expected_f(t), "{t} {}", iso.short_name());
            let dual = langlands_dual(&rd);
            let (dpi1, dz) = dual.fundamental_group_and_center();
            // duality swaps fundamental group and center
            assert_eq!(dpi1, z, "{t} {}", iso.short_name());
            assert_eq!(dz, pi1, "{t} {}", iso.short_name());
            assert_eq!(dual.cartan_type(), t.dual());
            assert!(langlands_dual(&dual).is_isomorphic(&rd), "{t} {}", iso.short_name());
        }
    }
    // A_3, A_5, A_7, D_n and E_6 all have proper intermediate lattices
    assert!(intermediate >= 10);
}

fn rd(s: Series, n: usize, iso: Isogeny) -> RootDatum {
    build_root_datum(CartanType::new(s, n).unwrap(), iso).unwrap()
}

#[test]
fn duality_table() {
    for n in 1..=8 {
        let g = rd(Series::A, n, Isogeny::SimplyConnected);
        assert!(langlands_dual(&g).is_isomorphic(&rd(Series::A, n, Isogeny::Adjoint)));
    }
    for n in 2..=8 {
        let b_adj = rd(Series::B, n, Isogeny::Adjoint);
        let c_sc = rd(Series::C, n, Isogeny::SimplyConnected);
        assert!(langlands_dual(&b_adj).is_isomorphic(&c_sc));
        assert!(langlands_dual(&c_sc).is_isomorphic(&b_adj));
    }
    for n in 3..=8 {
        // SO(2n): the vector representation's coweight
        let mut v = vec![0; n];
        v[0] = 1;
        let so = rd(Series::D, n, Isogeny::Intermediate(vec![v]));
        assert!(langlands_dual(&so).is_isomorphic(&so), "D{n}");
        assert_eq!(so.fundamental_group_and_center().0.order(), 2);
    }
    for n in [6, 7] {
        let sc = rd(Series::E, n, Isogeny::SimplyConnected);
        assert!(langlands_dual(&sc).is_isomorphic(&rd(Series::E, n, Isogeny::Adjoint)));
        assert!(!langlands_dual(&sc).is_isomorphic(&sc));
    }
    for (s, n) in [(Series::E, 8), (Series::F, 4), (Series::G, 2)] {
        let g = rd(s, n, Isogeny::SimplyConnected);
        assert!(langlands_dual(&g).is_isomorphic(&g));
        assert!(g.is_isomorphic(&rd(s, n, Isogeny::Adjoint)));
    }
}

#[test]
fn weyl_group_orders_by_enumeration() {
    for t in all_types() {
        if t.weyl_group_order() > 60_000 {
            continue;
        }
        let g = weyl_group(&rd(t.series, t.rank, Isogeny::Adjoint)).unwrap();
        assert_eq!(g.order() as u128, t.weyl_group_order(), "{t}");
    }
}

#[test]
fn json_round_trip() {
    for t in all_types() {
        for iso in isogenies(t) {
            let g = build_root_datum(t, iso).unwrap();
            let j = g.to_json();
            let text = serde_json::to_string(&j).unwrap();
            let back = RootDatum::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.to_json(), j);
            assert!(back.is_isomorphic(&g));
        }
    }
}

fn type_strategy() -> impl Strategy<Value = CartanType> {
    proptest::sample::select(all_types())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Pairing, reflections and root counts.
    #[test]
    fn root_datum_invariants(t in type_strategy(), adj in any::<bool>()) {
        let iso = if adj { Isogeny::Adjoint } else { Isogeny::SimplyConnected };
        let g = build_root_datum(t, iso).unwrap();
        prop_assert_eq!(g.roots().len(), g.coroots().len());
        prop_assert_eq!(g.roots().len(), 2 * g.num_positive_roots());
        for (r, c) in g.roots().iter().zip(g.coroots()) {
            prop_assert_eq!(g.pair(r, c), num_rational::BigRational::from_integer(2.into()));
            prop_assert!(g.char_lattice().contains_int(r));
            prop_assert!(g.cochar_lattice().contains_int(c));
            let s = g.reflection_for(r, c);
            prop_assert!(s.mul(&s).is_identity());
        }
        let dual = langlands_dual(&g);
        prop_assert_eq!(dual.roots().len(), g.roots().len());
        prop_assert_eq!(dual.num_positive_roots(), g.num_positive_roots());
    }
}
