//! Small groups with known tables, and conjugation invariance of restriction.

use weylk::alcove::{build_equivariant_complex, Variant};
use weylk::bredon::stabilizer_tables;
use weylk::finitegroup::{
    character_table, character_table_mod, conjugacy_classes, induction_map, restriction_map, restriction_map_along,
    MatrixGroup,
};
use weylk::linalg::IMatrix;
use weylk::rootdata::{build_root_datum, CartanType, Isogeny, Series};

fn s3() -> MatrixGroup {
    let s1 = IMatrix::from_rows(&[vec![-1, 0], vec![1, 1]]);
    let s2 = IMatrix::from_rows(&[vec![1, 1], vec![0, -1]]);
    MatrixGroup::from_generators(2, vec![s1, s2], 100).unwrap()
}

fn subgroup(g: &MatrixGroup, keep: impl Fn(usize) -> bool) -> MatrixGroup {
    let els = (0..g.order()).filter(|&i| keep(i)).map(|i| g.element(i).clone()).collect();
    MatrixGroup::from_elements(g.dim(), els).unwrap()
}

#[test]
fn class_counts() {
    let trivial = MatrixGroup::from_elements(2, vec![IMatrix::identity(2)]).unwrap();
    assert_eq!(conjugacy_classes(&trivial).len(), 1);
    let klein = MatrixGroup::from_generators(
        2,
        vec![IMatrix::from_rows(&[vec![-1, 0], vec![0, 1]]), IMatrix::from_rows(&[vec![1, 0], vec![0, -1]])],
        10,
    )
    .unwrap();
    assert_eq!(conjugacy_classes(&klein).len(), 4);
    let mut sizes = conjugacy_classes(&s3()).class_sizes;
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3]);
}

#[test]
fn s3_to_rotations() {
    let g = s3();
    let c3 = subgroup(&g, |i| g.element_order(i) != 2);
    assert_eq!(c3.order(), 3);
    let p = character_table(&g).unwrap().prime();
    let (gt, ht) = (character_table_mod(&g, p).unwrap(), character_table_mod(&c3, p).unwrap());
    assert_eq!(gt.irrep_dims(), vec![1, 1, 2]);
    assert!(!ht.is_integer_valued());
    // trivial and sign restrict to the trivial character, the 2-dimensional
    // one to the sum of the two faithful characters
    let res = restriction_map(&g, &gt, &c3, &ht).unwrap();
    assert_eq!(res.matrix.to_rows(), vec![vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]);
    let ind = induction_map(&c3, &ht, &g, &gt).unwrap();
    assert_eq!(ind.matrix.col(0), vec![1, 1, 0]);
    assert_eq!(ind.apply(&[1, 0, 0]), vec![1, 1, 0]);
}

#[test]
fn s3_from_a_reflection() {
    let g = s3();
    let s1 = g.index_of(&IMatrix::from_rows(&[vec![-1, 0], vec![1, 1]])).unwrap();
    let h = subgroup(&g, |i| i == 0 || i == s1);
    let gt = character_table(&g).unwrap();
    let ht = character_table_mod(&h, gt.prime()).unwrap();
    let ind = induction_map(&h, &ht, &g, &gt).unwrap();
    // trivial of ⟨s₁⟩ induces to trivial + 2-dimensional
    assert_eq!(ind.matrix.col(0), vec![1, 0, 1]);
    assert_eq!(ind.matrix.col(1), vec![0, 1, 1]);
    // from the trivial group: the regular representation
    let one = MatrixGroup::from_elements(2, vec![IMatrix::identity(2)]).unwrap();
    let ot = character_table_mod(&one, gt.prime()).unwrap();
    assert_eq!(induction_map(&one, &ot, &g, &gt).unwrap().matrix.col(0), vec![1, 1, 2]);
}

/// Restricting along conjugation by an element of the big group changes nothing.
#[test]
fn restriction_is_conjugation_invariant() {
    for (s, n) in [(Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::B, 3)] {
        let rd = build_root_datum(CartanType::new(s, n).unwrap(), Isogeny::Adjoint).unwrap();
        let x = build_equivariant_complex(&rd, Variant::Extended).unwrap();
        let tables = stabilizer_tables(&x, false).unwrap();
        let w = &x.weyl;
        let wt = character_table_mod(w, tables[0][0].prime()).unwrap();
        for (d, cells) in x.cells.iter().enumerate() {
            for (c, cell) in cells.iter().enumerate() {
                let h = &cell.stabilizer;
                let plain = restriction_map(w, &wt, h, &tables[d][c]).unwrap();
                for g in (0..w.order()).step_by(5) {
                    let (gm, gi) = (w.element(g), w.element(w.inverse(g)));
                    let moved = restriction_map_along(w, &wt, h, &tables[d][c], |y| gm.mul(y).mul(gi)).unwrap();
                    assert_eq!(moved, plain);
                    // the conjugate subgroup has the same table up to class order
                    let hc = h.conjugate_by(gm, gi).unwrap();
                    let mut a = character_table_mod(&hc, wt.prime()).unwrap().irrep_dims();
                    let mut b = tables[d][c].irrep_dims();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                }
            }
        }
    }
}
