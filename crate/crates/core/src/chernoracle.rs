//! Rational K-theory of `C(T∨) ⋊ W` by the delocalized decomposition: a sum
//! over conjugacy classes `[w]` of the centralizer-invariant cohomology of
//! the fixed set `(T∨)^w`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::Variant;
use crate::error::{Error, Result};
use crate::finitegroup::{
    conjugacy_classes, weyl_group_coweight, MatrixGroup, DEFAULT_GROUP_CAP,
};
use crate::linalg::{determinant, inverse, kernel, q, IMatrix, QMatrix};
use crate::rootdata::{build_root_datum, langlands_dual, CartanType, Isogeny, Lattice, RootDatum, Series};
use crate::snf::smith_normal_form;

/// Fixed points of a set of integer matrices acting on `ℝⁿ/ℤⁿ`.
#[derive(Clone, Debug)]
pub struct FixedSetData {
    pub w_class: usize,
    pub fixed_dim: usize,
    /// One rational point on each connected component.
    pub components: Vec<Vec<BigRational>>,
    pub component_count: u64,
    /// Inverse of the right SNF transform; component membership is read off
    /// the first `relation_rank` coordinates.
    right_inv: QMatrix,
    relation_rank: usize,
    /// Basis of the fixed subspace (columns).
    fixed_space: QMatrix,
}

impl FixedSetData {
    /// Whether two fixed points lie on the same component.
    pub fn same_component(&self, a: &[BigRational], b: &[BigRational]) -> bool {
        let d: Vec<BigRational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.right_inv
            .mul_vec(&d)
            .iter()
            .take(self.relation_rank)
            .all(|x| x.is_integer())
    }

    /// Number of components mapped to themselves by `m` (which must
    /// preserve the fixed set).
    pub fn fixed_components(&self, m: &IMatrix) -> usize {
        let mq = m.to_q();
        self.components
            .iter()
            .filter(|z| self.same_component(&mq.mul_vec(z), z))
            .count()
    }

    /// Matrix of `m` restricted to the fixed subspace, in its basis.
    pub fn restrict(&self, m: &IMatrix) -> Result<QMatrix> {
        let k = &self.fixed_space;
        let d = k.cols();
        let image = m.to_q().mul(k);
        let gram = k.transpose().mul(k);
        let g_inv = inverse(&gram).ok_or_else(|| Error::Inconsistent("degenerate fixed space".into()))?;
        let r = g_inv.mul(&k.transpose()).mul(&image);
        if k.mul(&r) != image {
            return Err(Error::Inconsistent("matrix does not preserve the fixed space".into()));
        }
        debug_assert_eq!(r.rows(), d);
        Ok(r)
    }
}

/// Common fixed set of `ms` on `ℝⁿ/ℤⁿ`: SNF of the stacked `(M − I)`.
pub fn common_fixed_set(n: usize, ms: &[IMatrix]) -> FixedSetData {
    let mut stacked = IMatrix::zeros(0, n);
    for m in ms {
        stacked = stacked.vstack(&m.minus_identity());
    }
    let snf = smith_normal_form(&stacked.to_z());
    let divisors: Vec<BigInt> = snf.invariant_factors();
    let r = divisors.len();
    let v = snf.right.to_q();
    let right_inv = inverse(&v).expect("unimodular");
    let ds: Vec<u64> = divisors.iter().map(|d| d.to_u64().expect("small divisor")).collect();
    let count: u64 = ds.iter().product();
    // All k with 0 ≤ kᵢ < dᵢ, in lexicographic order.
    let components = (0..count)
        .map(|mut idx| {
            let mut zp = vec![BigRational::zero(); n];
            for i in (0..r).rev() {
                zp[i] = BigRational::new(BigInt::from(idx % ds[i]), BigInt::from(ds[i]));
                idx /= ds[i];
            }
            v.mul_vec(&zp)
        })
        .collect();
    let fixed_space = kernel(&stacked.to_q());
    FixedSetData {
        w_class: 0,
        fixed_dim: n - r,
        components,
        component_count: count,
        right_inv,
        relation_rank: r,
        fixed_space,
    }
}

/// Fixed set of a single matrix acting on `ℝⁿ/ℤⁿ`.
pub fn fixed_subgroup(m: &IMatrix) -> FixedSetData {
    common_fixed_set(m.rows(), std::slice::from_ref(m))
}

/// `(1/|C|) Σ_c #FixComp(c) · ½(det(I + c|_V) ± det(I − c|_V))`.
pub fn class_contribution(centralizer: &[IMatrix], fs: &FixedSetData) -> Result<(u64, u64)> {
    let d = fs.fixed_dim;
    let mut even = BigRational::zero();
    let mut odd = BigRational::zero();
    for c in centralizer {
        let fixed = fs.fixed_components(c);
        if fixed == 0 {
            continue;
        }
        let (plus, minus) = if d == 0 {
            (q(1), q(1))
        } else {
            let r = fs.restrict(c)?;
            let id = QMatrix::identity(d);
            (determinant(&id.add(&r)), determinant(&id.sub(&r)))
        };
        let f = q(fixed as i64);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        even += &f * &half * (&plus + &minus);
        odd += &f * &half * (&plus - &minus);
    }
    let size = q(centralizer.len() as i64);
    let (even, odd) = (even / &size, odd / &size);
    let lift = |x: BigRational| -> Result<u64> {
        if !x.is_integer() || x.is_negative() {
            return Err(Error::Inconsistent(format!(
                "class contribution {x} is not a nonnegative integer"
            )));
        }
        Ok(x.to_integer().to_u64().expect("small"))
    };
    Ok((lift(even)?, lift(odd)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassContribution {
    pub class: usize,
    pub rep_word: Vec<usize>,
    pub class_size: usize,
    pub fixed_dim: usize,
    pub components: u64,
    pub even: u64,
    pub odd: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalKRanks {
    pub even: u64,
    pub odd: u64,
    pub per_class: Vec<ClassContribution>,
}

/// Translation lattice for the variant: `X_*` or `Q∨`.
pub fn translation_lattice(rd: &RootDatum, variant: Variant) -> Lattice {
    match variant {
        Variant::Affine => rd.coroot_lattice(),
        Variant::Extended => rd.cochar_lattice().clone(),
    }
}

/// Action of `w` (coweight coordinates) on the torus dual to `lattice`,
/// i.e. `(B⁻¹ w B)⁻ᵀ` on `ℝⁿ/ℤⁿ`.
pub fn dual_torus_action(lattice: &Lattice, w: &IMatrix) -> IMatrix {
    let b = lattice.basis().to_q();
    let b_inv = inverse(&b).expect("nonsingular basis");
    let m = b_inv.mul(&w.to_q()).mul(&b);
    inverse(&m)
        .expect("invertible")
        .transpose()
        .to_integer()
        .expect("W preserves the lattice")
}

/// Action of `w` on the torus `𝔱/lattice`: `B⁻¹ w B`.
pub fn torus_action(lattice: &Lattice, w: &IMatrix) -> IMatrix {
    let b = lattice.basis().to_q();
    let b_inv = inverse(&b).expect("nonsingular basis");
    b_inv
        .mul(&w.to_q())
        .mul(&b)
        .to_integer()
        .expect("W preserves the lattice")
}

pub fn rational_k_ranks(rd: &RootDatum, variant: Variant, parallel: bool) -> Result<RationalKRanks> {
    let weyl = weyl_group_coweight(rd, DEFAULT_GROUP_CAP)?;
    let lattice = translation_lattice(rd, variant);
    rational_k_ranks_for(&weyl, &lattice, parallel)
}

/// Ranks of `K_*(C(L̂) ⋊ W) ⊗ ℚ` for a W-stable lattice `L`.
pub fn rational_k_ranks_for(weyl: &MatrixGroup, lattice: &Lattice, parallel: bool) -> Result<RationalKRanks> {
    let n = weyl.dim();
    let classes = conjugacy_classes(weyl);
    let actions: Vec<IMatrix> = weyl
        .elements()
        .iter()
        .map(|w| dual_torus_action(lattice, w))
        .collect();
    let one = |c: usize| -> Result<ClassContribution> {
        let rep = classes.class_reps[c];
        let mut fs = common_fixed_set(n, std::slice::from_ref(&actions[rep]));
        fs.w_class = c;
        let centralizer: Vec<IMatrix> = weyl
            .centralizer(rep)
            .into_iter()
            .map(|i| actions[i].clone())
            .collect();
        let (even, odd) = class_contribution(&centralizer, &fs)?;
        Ok(ClassContribution {
            class: c,
            rep_word: weyl.word(rep).to_vec(),
            class_size: classes.class_sizes[c],
            fixed_dim: fs.fixed_dim,
            components: fs.component_count,
            even,
            odd,
        })
    };
    let per_class: Vec<ClassContribution> = if parallel {
        (0..classes.len()).into_par_iter().map(one).collect::<Result<_>>()?
    } else {
        (0..classes.len()).map(one).collect::<Result<_>>()?
    };
    Ok(RationalKRanks {
        even: per_class.iter().map(|c| c.even).sum(),
        odd: per_class.iter().map(|c| c.odd).sum(),
        per_class,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankPair {
    pub even: u64,
    pub odd: u64,
}

impl From<&RationalKRanks> for RankPair {
    fn from(r: &RationalKRanks) -> Self {
        RankPair {
            even: r.even,
            odd: r.odd,
        }
    }
}

/// Comparison for groups of adjoint type: `W′ₐ(G)` against `Wₐ(G∨)`, and
/// against `Wₐ(G)` when `G∨` is the universal cover of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineComparison {
    pub dual_affine_ranks: RankPair,
    pub dual_affine_holds: bool,
    pub affine_ranks: Option<RankPair>,
    pub affine_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub group: String,
    pub dual_group: String,
    pub ranks: RankPair,
    pub dual_ranks: RankPair,
    pub per_class: Vec<ClassContribution>,
    pub dual_per_class: Vec<ClassContribution>,
    pub duality_holds: bool,
    pub affine_comparison: Option<AffineComparison>,
}

pub fn group_label(rd: &RootDatum) -> String {
    format!("{} {}", rd.cartan_type(), rd.isogeny().short_name())
}

fn self_dual_series(s: Series) -> bool {
    !matches!(s, Series::B | Series::C)
}

pub fn verify_duality(t: CartanType, iso: Isogeny, parallel: bool) -> Result<DualityReport> {
    let rd = build_root_datum(t, iso.clone())?;
    let dual = langlands_dual(&rd);
    let mine = rational_k_ranks(&rd, Variant::Extended, parallel)?;
    let theirs = rational_k_ranks(&dual, Variant::Extended, parallel)?;
    let ranks = RankPair::from(&mine);
    let dual_ranks = RankPair::from(&theirs);
    let affine_comparison = if matches!(iso, Isogeny::Adjoint) {
        let dual_affine = RankPair::from(&rational_k_ranks(&dual, Variant::Affine, parallel)?);
        let affine = if self_dual_series(t.series) {
            Some(RankPair::from(&rational_k_ranks(&rd, Variant::Affine, parallel)?))
        } else {
            None
        };
        Some(AffineComparison {
            dual_affine_ranks: dual_affine,
            dual_affine_holds: dual_affine == ranks,
            affine_ranks: affine,
            affine_holds: affine.map(|a| a == ranks),
        })
    } else {
        None
    };
    Ok(DualityReport {
        group: group_label(&rd),
        dual_group: group_label(&dual),
        ranks,
        dual_ranks,
        per_class: mine.per_class,
        dual_per_class: theirs.per_class,
        duality_holds: ranks == dual_ranks,
        affine_comparison,
    })
}

impl DualityReport {
    /// Every comparison in the report holds.
    pub fn all_hold(&self) -> bool {
        self.duality_holds
            && self.affine_comparison.as_ref().is_none_or(|a| {
                a.dual_affine_holds && a.affine_holds.unwrap_or(true)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: Series, n: usize, iso: Isogeny) -> RootDatum {
        build_root_datum(CartanType::new(s, n).unwrap(), iso).unwrap()
    }

    #[test]
    fn identity_and_minus_one() {
        let id = fixed_subgroup(&IMatrix::identity(3));
        assert_eq!((id.component_count, id.fixed_dim), (1, 3));
        let m = IMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]);
        let f = fixed_subgroup(&m);
        assert_eq!((f.component_count, f.fixed_dim), (4, 0));
        assert_eq!(f.components.len(), 4);
    }

    #[test]
    fn circle_with_trivial_group() {
        let fs = fixed_subgroup(&IMatrix::identity(1));
        assert_eq!(class_contribution(&[IMatrix::identity(1)], &fs).unwrap(), (1, 1));
    }

    #[test]
    fn su3_and_psu3() {
        let su3 = rd(Series::A, 2, Isogeny::SimplyConnected);
        let r = rational_k_ranks(&su3, Variant::Extended, false).unwrap();
        assert_eq!((r.even, r.odd), (5, 1));
        assert_eq!((r.per_class[0].even, r.per_class[0].odd), (1, 0));
        let psu3 = rd(Series::A, 2, Isogeny::Adjoint);
        let r = rational_k_ranks(&psu3, Variant::Extended, false).unwrap();
        assert_eq!((r.even, r.odd), (5, 1));
    }

    #[test]
    fn su2() {
        let r = rational_k_ranks(&rd(Series::A, 1, Isogeny::SimplyConnected), Variant::Extended, false)
            .unwrap();
        assert_eq!((r.even, r.odd), (3, 0));
    }

    #[test]
    fn su3_torus_has_three_w_fixed_points() {
        let su3 = rd(Series::A, 2, Isogeny::SimplyConnected);
        let w = weyl_group_coweight(&su3, 100).unwrap();
        let on_t: Vec<IMatrix> = w
            .generators()
            .iter()
            .map(|s| torus_action(su3.cochar_lattice(), s))
            .collect();
        assert_eq!(common_fixed_set(2, &on_t).component_count, 3);
        let on_dual: Vec<IMatrix> = w
            .generators()
            .iter()
            .map(|s| dual_torus_action(su3.cochar_lattice(), s))
            .collect();
        assert_eq!(common_fixed_set(2, &on_dual).component_count, 1);
    }
}
