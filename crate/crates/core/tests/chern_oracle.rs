//! Fixed-point data and rational ranks from the oracle.

use weylk::alcove::Variant;
use weylk::chernoracle::{dual_torus_action, fixed_subgroup, rational_k_ranks, translation_lattice, verify_duality};
use weylk::finitegroup::{weyl_group_coweight, DEFAULT_GROUP_CAP};
use weylk::linalg::{integer_determinant, IMatrix};
use weylk::rootdata::{build_root_datum, CartanType, Isogeny, Series};

/// Points of `(ℤ/N)ⁿ` fixed by `m`.
fn torsion_fixed_points(m: &IMatrix, big_n: i64) -> u64 {
    let n = m.rows();
    let total = (big_n as usize).pow(n as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut x = vec![0i64; n];
        let mut t = idx;
        for xi in x.iter_mut() {
            *xi = (t % big_n as usize) as i64;
            t /= big_n as usize;
        }
        let mx = m.mul_vec(&x);
        if mx.iter().zip(&x).all(|(a, b)| (a - b).rem_euclid(big_n) == 0) {
            count += 1;
        }
    }
    count
}

#[test]
fn fixed_components_by_counting_torsion_points() {
    const N: i64 = 12;
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::A, 3), (Series::C, 3)] {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let rd = build_root_datum(CartanType::new(s, n).unwrap(), iso).unwrap();
            let w = weyl_group_coweight(&rd, DEFAULT_GROUP_CAP).unwrap();
            for v in [Variant::Affine, Variant::Extended] {
                let lattice = translation_lattice(&rd, v);
                for g in w.elements() {
                    let m = dual_torus_action(&lattice, g);
                    let fs = fixed_subgroup(&m);
                    let expected = fs.component_count * (N as u64).pow(fs.fixed_dim as u32);
                    assert_eq!(torsion_fixed_points(&m, N), expected, "{s:?}{n} {v}");
                    if fs.fixed_dim == 0 {
                        let det = integer_determinant(&m.minus_identity().to_z());
                        assert_eq!(det.magnitude().to_string(), fs.component_count.to_string());
                    }
                }
            }
        }
    }
}

#[test]
fn circle_and_infinite_dihedral() {
    let a1 = build_root_datum(CartanType::new(Series::A, 1).unwrap(), Isogeny::SimplyConnected).unwrap();
    let r = rational_k_ranks(&a1, Variant::Affine, false).unwrap();
    // ℤ/2 * ℤ/2: three from the two vertex groups, minus the trivial edge
    assert_eq!((r.even, r.odd), (3, 0));
}

#[test]
fn desk_scale_duality() {
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::C, 2), (Series::G, 2)] {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let report = verify_duality(CartanType::new(s, n).unwrap(), iso, false).unwrap();
            assert!(report.all_hold(), "{}", report.group);
            let even: u64 = report.per_class.iter().map(|c| c.even).sum();
            let odd: u64 = report.per_class.iter().map(|c| c.odd).sum();
            assert_eq!((even, odd), (report.ranks.even, report.ranks.odd));
        }
    }
}

#[test]
fn parallel_matches_serial() {
    let rd = build_root_datum(CartanType::new(Series::B, 3).unwrap(), Isogeny::Adjoint).unwrap();
    for v in [Variant::Affine, Variant::Extended] {
        let a = rational_k_ranks(&rd, v, false).unwrap();
        let b = rational_k_ranks(&rd, v, true).unwrap();
        assert_eq!(serde_json::to_string(&a.per_class).unwrap(), serde_json::to_string(&b.per_class).unwrap());
        assert_eq!((a.even, a.odd), (b.even, b.odd));
    }
}
