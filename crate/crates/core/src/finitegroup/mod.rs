//! Finite matrix groups, conjugacy classes and character tables.

mod characters;
mod group;
pub mod modp;

pub use characters::{
    character_table, character_table_mod, induction_map, restriction_map, restriction_map_along,
    CharValue, CharacterTable, CharacterTableJson, CyclotomicValue, RepRingMap,
};
pub use group::{conjugacy_classes, ConjugacyClasses, MatrixGroup, DEFAULT_GROUP_CAP};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{inverse, IMatrix};
use crate::rootdata::{Lattice, RootDatum};

/// The Weyl group generated by simple reflections, written in the basis of
/// the cocharacter lattice.
pub fn weyl_group(rd: &RootDatum) -> Result<MatrixGroup> {
    weyl_group_with_cap(rd, DEFAULT_GROUP_CAP)
}

pub fn weyl_group_with_cap(rd: &RootDatum, cap: usize) -> Result<MatrixGroup> {
    let b = rd.cochar_lattice().basis().to_q();
    let b_inv = inverse(&b).ok_or_else(|| Error::Inconsistent("singular cochar basis".into()))?;
    let gens = rd
        .simple_reflections()
        .iter()
        .map(|s| {
            b_inv
                .mul(&s.to_q())
                .mul(&b)
                .to_integer()
                .ok_or_else(|| Error::Inconsistent("reflection does not preserve X_*".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    checked_weyl(rd, gens, cap)
}

/// The Weyl group acting on 𝔱 in fundamental coweight coordinates.
pub fn weyl_group_coweight(rd: &RootDatum, cap: usize) -> Result<MatrixGroup> {
    checked_weyl(rd, rd.simple_reflections(), cap)
}

fn checked_weyl(rd: &RootDatum, gens: Vec<IMatrix>, cap: usize) -> Result<MatrixGroup> {
    let expected = rd.cartan_type().weyl_group_order();
    if expected > cap as u128 {
        return Err(Error::ResourceCap(format!(
            "|W({})| = {expected} exceeds the enumeration cap {cap}",
            rd.cartan_type()
        )));
    }
    let g = MatrixGroup::from_generators(rd.rank(), gens, cap)?;
    if g.order() as u128 != expected {
        return Err(Error::Inconsistent(format!(
            "enumerated {} Weyl group elements, expected {expected}",
            g.order()
        )));
    }
    Ok(g)
}

/// `{w ∈ W : x − w·x ∈ Γ}`: the linear parts of the stabilizer of `x` in
/// `Γ ⋊ W`. Everything is in the coordinates of `w_group`.
pub fn point_stabilizer(w_group: &MatrixGroup, gamma: &Lattice, x: &[BigRational]) -> MatrixGroup {
    let elements: Vec<IMatrix> = w_group
        .elements()
        .iter()
        .filter(|w| {
            let wx = w.to_q().mul_vec(x);
            let diff: Vec<BigRational> = x.iter().zip(&wx).map(|(a, b)| a - b).collect();
            gamma.contains(&diff)
        })
        .cloned()
        .collect();
    MatrixGroup::from_elements(w_group.dim(), elements).expect("stabilizers are subgroups")
}
