//! Character tables of cell stabilizers, restriction maps between them and
//! the Bredon complex under other choices of carriers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylk::alcove::{build_equivariant_complex, EquivariantComplex, Variant};
use weylk::bredon::{assemble_k_groups, bredon_chain_complex, bredon_chain_complex_with_carriers, homology, stabilizer_tables};
use weylk::finitegroup::{restriction_map, restriction_map_along, CharacterTable, MatrixGroup};
use weylk::linalg::IMatrix;
use weylk::rootdata::{build_root_datum, CartanType, Isogeny, Series};

fn complexes() -> Vec<EquivariantComplex> {
    let mut out = Vec::new();
    for (s, n) in [
        (Series::A, 1),
        (Series::A, 2),
        (Series::B, 2),
        (Series::C, 2),
        (Series::G, 2),
        (Series::A, 3),
        (Series::B, 3),
        (Series::C, 3),
    ] {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let rd = build_root_datum(CartanType::new(s, n).unwrap(), iso).unwrap();
            for v in [Variant::Affine, Variant::Extended] {
                out.push(build_equivariant_complex(&rd, v).unwrap());
            }
        }
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Character of `irrep` at group element `g`, mod p.
fn chi(t: &CharacterTable, irrep: usize, elt: usize) -> u64 {
    t.value_mod_p(irrep, t.classes().class_of[elt])
}

/// Multiplicity of each big irreducible in the induced character of each
/// small irreducible, straight from the induced character formula.
fn induction_by_formula(
    big: &MatrixGroup,
    bt: &CharacterTable,
    small: &MatrixGroup,
    st: &CharacterTable,
    w: &IMatrix,
    w_inv: &IMatrix,
) -> Vec<Vec<i64>> {
    let p = bt.prime();
    // small element h sits in big as w⁻¹ h w
    let pull = |y: &IMatrix| small.index_of(&w.mul(y).mul(w_inv));
    let ord_g = big.order() as u64;
    let ord_h = small.order() as u64;
    let mut out = vec![vec![0i64; bt.num_irreps()]; st.num_irreps()];
    for (psi, row) in out.iter_mut().enumerate() {
        let induced: Vec<u64> = (0..big.order())
            .map(|g| {
                let mut acc = 0u64;
                for x in 0..big.order() {
                    let y = big.mul(big.mul(x, g), big.inverse(x));
                    if let Some(h) = pull(big.element(y)) {
                        acc = (acc + chi(st, psi, h)) % p;
                    }
                }
                mulp(acc, inv(ord_h % p, p), p)
            })
            .collect();
        for (c, slot) in row.iter_mut().enumerate() {
            let mut acc = 0u64;
            for g in 0..big.order() {
                acc = (acc + mulp(induced[g], chi(bt, c, big.inverse(g)), p)) % p;
            }
            let m = mulp(acc, inv(ord_g % p, p), p);
            *slot = if m > p / 2 { m as i64 - p as i64 } else { m as i64 };
        }
    }
    out
}

#[test]
fn stabilizer_tables_are_orthogonal() {
    for x in complexes() {
        for (d, tables) in stabilizer_tables(&x, false).unwrap().iter().enumerate() {
            for (c, t) in tables.iter().enumerate() {
                t.check_orthogonality().unwrap();
                let sq: usize = t.irrep_dims().iter().map(|d| d * d).sum();
                assert_eq!(sq, x.cells[d][c].stabilizer.order());
                assert_eq!(t.num_irreps(), t.classes().len());
            }
        }
    }
}

#[test]
fn frobenius_reciprocity_on_every_face() {
    let mut pairs = 0;
    for x in complexes() {
        let tables = stabilizer_tables(&x, false).unwrap();
        for p in 1..x.cells.len() {
            for (c, cell) in x.cells[p].iter().enumerate() {
                for face in &cell.faces {
                    let target = &x.cells[p - 1][face.target];
                    let w = &face.carrier.linear;
                    let w_inv = face.carrier.inverse().linear;
                    let res = restriction_map_along(
                        &target.stabilizer,
                        &tables[p - 1][face.target],
                        &cell.stabilizer,
                        &tables[p][c],
                        |h| w_inv.mul(h).mul(w),
                    )
                    .unwrap();
                    let ind = induction_by_formula(
                        &target.stabilizer,
                        &tables[p - 1][face.target],
                        &cell.stabilizer,
                        &tables[p][c],
                        w,
                        &w_inv,
                    );
                    assert_eq!(res.matrix.to_rows(), ind);
                    // dimensions are preserved by restriction
                    let dims: Vec<i64> = tables[p - 1][face.target].irrep_dims().iter().map(|&d| d as i64).collect();
                    let small_dims = tables[p][c].irrep_dims();
                    for (chi, &d) in dims.iter().enumerate() {
                        let s: i64 = (0..small_dims.len()).map(|psi| res.matrix[(psi, chi)] * small_dims[psi] as i64).sum();
                        assert_eq!(s, d);
                    }
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 100);
}

#[test]
fn restriction_is_functorial() {
    let mut checked = 0;
    for x in complexes().into_iter().filter(|x| x.variant == Variant::Affine) {
        let tables = stabilizer_tables(&x, false).unwrap();
        for p in 2..x.cells.len() {
            for (c, cell) in x.cells[p].iter().enumerate() {
                for f in &cell.faces {
                    let mid = &x.cells[p - 1][f.target];
                    for g in &mid.faces {
                        let low = &x.cells[p - 2][g.target];
                        let r1 = restriction_map(&low.stabilizer, &tables[p - 2][g.target], &mid.stabilizer, &tables[p - 1][f.target]).unwrap();
                        let r2 = restriction_map(&mid.stabilizer, &tables[p - 1][f.target], &cell.stabilizer, &tables[p][c]).unwrap();
                        let direct = restriction_map(&low.stabilizer, &tables[p - 2][g.target], &cell.stabilizer, &tables[p][c]).unwrap();
                        assert_eq!(r2.matrix.mul(&r1.matrix), direct.matrix);
                        assert_eq!(r2.compose(&r1).matrix, direct.matrix);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn homology_does_not_depend_on_carriers() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for x in complexes() {
        let reference = assemble_k_groups(&homology(&bredon_chain_complex(&x).unwrap()), x.dim());
        for _ in 0..3 {
            // choose a random stabilizer element of every face target up front
            let picks: Vec<Vec<Vec<usize>>> = x
                .cells
                .iter()
                .map(|cells| {
                    cells
                        .iter()
                        .map(|cell| {
                            cell.faces
                                .iter()
                                .map(|f| {
                                    let target = &x.cells[cell.dim - 1][f.target];
                                    rng.gen_range(0..target.stabilizer.order())
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let carrier = |d: usize, c: usize, f: usize| {
                let face = &x.cells[d][c].faces[f];
                let h = &x.cells[d - 1][face.target].stabilizer_isometries()[picks[d][c][f]];
                face.carrier.compose(h)
            };
            let c = bredon_chain_complex_with_carriers(&x, &carrier).unwrap();
            assert!(c.is_complex());
            assert_eq!(assemble_k_groups(&homology(&c), x.dim()), reference);
        }
    }
}
