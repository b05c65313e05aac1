//! Bredon chain complexes with representation-ring coefficients, their
//! integral homology, and the assembled K-groups.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub use crate::snf::{smith_normal_form, SmithForm};

use crate::alcove::{AffineIsometry, EquivariantComplex};
use crate::error::{Error, Result};
use crate::finitegroup::{
    character_table_mod, modp, restriction_map_along, CharacterTable, MatrixGroup,
};
use crate::linalg::{IMatrix, ZMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainComplex {
    /// `ranks[p] = rank C_p`.
    pub ranks: Vec<usize>,
    /// `differentials[p - 1] = d_p : C_p → C_{p-1}`, of shape `ranks[p-1] × ranks[p]`.
    pub differentials: Vec<IMatrix>,
    /// `(cell, irreducible)` for each basis element of each `C_p`.
    pub basis_labels: Vec<Vec<(usize, usize)>>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, differentials: Vec<IMatrix>) -> Result<Self> {
        if differentials.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidInput("need one differential per positive degree".into()));
        }
        for (p, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[p] || d.cols() != ranks[p + 1] {
                return Err(Error::InvalidInput(format!("d_{} has the wrong shape", p + 1)));
            }
        }
        let basis_labels = ranks.iter().map(|&r| (0..r).map(|i| (i, 0)).collect()).collect();
        Ok(ChainComplex {
            ranks,
            differentials,
            basis_labels,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// `d_p`, with `d_0` and `d_{top+1}` the zero maps.
    pub fn differential(&self, p: usize) -> IMatrix {
        if p == 0 {
            IMatrix::zeros(0, self.ranks[0])
        } else if p < self.ranks.len() {
            self.differentials[p - 1].clone()
        } else {
            IMatrix::zeros(self.ranks[self.ranks.len() - 1], 0)
        }
    }

    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(p, &r)| if p % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// A finitely generated abelian group `ℤ^rank ⊕ ⊕ ℤ/dᵢ` with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Canonical form of `ℤ^rank ⊕ ⊕ ℤ/aᵢ` for arbitrary `aᵢ ≥ 1`.
    pub fn from_orders(rank: usize, orders: &[u64]) -> Self {
        let n = orders.len();
        let diag = ZMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::from(orders[r])
            } else {
                BigInt::zero()
            }
        });
        let torsion = smith_normal_form(&diag)
            .torsion()
            .iter()
            .map(|d| d.to_u64().expect("small torsion"))
            .collect();
        AbelianGroup { rank, torsion }
    }

    pub fn direct_sum(groups: &[&AbelianGroup]) -> AbelianGroup {
        let rank = groups.iter().map(|g| g.rank).sum();
        let orders: Vec<u64> = groups.iter().flat_map(|g| g.torsion.iter().copied()).collect();
        AbelianGroup::from_orders(rank, &orders)
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Torsion of a K-group, or a marker that only the rank is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Torsion {
    Certified(Vec<u64>),
    Uncertified,
}

impl Serialize for Torsion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Torsion::Certified(v) => v.serialize(s),
            Torsion::Uncertified => s.serialize_str("uncertified"),
        }
    }
}

impl<'de> Deserialize<'de> for Torsion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            List(Vec<u64>),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::List(v) => Ok(Torsion::Certified(v)),
            Raw::Text(t) if t == "uncertified" => Ok(Torsion::Uncertified),
            Raw::Text(t) => Err(de::Error::custom(format!("unexpected torsion '{t}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroup {
    pub rank: usize,
    pub torsion: Torsion,
}

impl std::fmt::Display for KGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.torsion {
            Torsion::Certified(t) => write!(
                f,
                "{}",
                AbelianGroup {
                    rank: self.rank,
                    torsion: t.clone()
                }
            ),
            Torsion::Uncertified => write!(
                f,
                "{} (torsion uncertified)",
                AbelianGroup::free(self.rank)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroups {
    pub k0: KGroup,
    pub k1: KGroup,
    pub integral: bool,
    #[serde(rename = "homology")]
    pub bredon_homology: Vec<AbelianGroup>,
}

/// Integral homology of a chain complex via Smith normal forms.
pub fn homology(c: &ChainComplex) -> Vec<AbelianGroup> {
    homology_opts(c, false)
}

pub fn homology_opts(c: &ChainComplex, parallel: bool) -> Vec<AbelianGroup> {
    let snfs: Vec<SmithForm> = if parallel {
        (0..=c.ranks.len())
            .into_par_iter()
            .map(|p| smith_normal_form(&c.differential(p).to_z()))
            .collect()
    } else {
        (0..=c.ranks.len())
            .map(|p| smith_normal_form(&c.differential(p).to_z()))
            .collect()
    };
    (0..c.ranks.len())
        .map(|p| {
            let kernel_dim = c.ranks[p] - snfs[p].rank();
            let image = &snfs[p + 1];
            let torsion = image
                .torsion()
                .iter()
                .map(|d| d.to_u64().expect("small torsion"))
                .collect();
            AbelianGroup {
                rank: kernel_dim - image.rank(),
                torsion,
            }
        })
        .collect()
}

/// `K₀ = ⊕_{p even} H_p`, `K₁ = ⊕_{p odd} H_p`. Torsion is only certified
/// when `dim ≤ 2`.
pub fn assemble_k_groups(h: &[AbelianGroup], dim: usize) -> KGroups {
    let integral = dim <= 2;
    let part = |parity: usize| {
        let groups: Vec<&AbelianGroup> = h.iter().skip(parity).step_by(2).collect();
        let sum = AbelianGroup::direct_sum(&groups);
        KGroup {
            rank: sum.rank,
            torsion: if integral {
                Torsion::Certified(sum.torsion)
            } else {
                Torsion::Uncertified
            },
        }
    };
    KGroups {
        k0: part(0),
        k1: part(1),
        integral,
        bredon_homology: h.to_vec(),
    }
}

/// Character tables of all stabilizers, reduced modulo a prime that splits
/// the whole Weyl group (so every restriction map is defined).
pub fn stabilizer_tables(x: &EquivariantComplex, parallel: bool) -> Result<Vec<Vec<CharacterTable>>> {
    let p = modp::splitting_prime(x.weyl.order() as u64, x.weyl.exponent() as u64);
    let table = |g: &MatrixGroup| character_table_mod(g, p);
    x.cells
        .iter()
        .map(|cells| {
            if parallel {
                cells.par_iter().map(|c| table(&c.stabilizer)).collect()
            } else {
                cells.iter().map(|c| table(&c.stabilizer)).collect()
            }
        })
        .collect()
}

pub fn bredon_chain_complex(x: &EquivariantComplex) -> Result<ChainComplex> {
    bredon_chain_complex_opts(x, false)
}

pub fn bredon_chain_complex_opts(x: &EquivariantComplex, parallel: bool) -> Result<ChainComplex> {
    let tables = stabilizer_tables(x, parallel)?;
    assemble(x, &tables, &|d, c, f| x.cells[d][c].faces[f].carrier.clone())
}

/// Same complex, but each boundary entry uses the carrier returned by
/// `carrier(dim, cell, face)`, which must map the face's target
/// representative onto that face.
pub fn bredon_chain_complex_with_carriers(
    x: &EquivariantComplex,
    carrier: &dyn Fn(usize, usize, usize) -> AffineIsometry,
) -> Result<ChainComplex> {
    let tables = stabilizer_tables(x, false)?;
    assemble(x, &tables, carrier)
}

fn assemble(
    x: &EquivariantComplex,
    tables: &[Vec<CharacterTable>],
    carrier: &dyn Fn(usize, usize, usize) -> AffineIsometry,
) -> Result<ChainComplex> {
    let top = x.cells.len();
    // Offsets of each cell's block in C_p.
    let offsets: Vec<Vec<usize>> = tables
        .iter()
        .map(|ts| {
            ts.iter()
                .scan(0, |acc, t| {
                    let o = *acc;
                    *acc += t.num_irreps();
                    Some(o)
                })
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = tables
        .iter()
        .map(|ts| ts.iter().map(CharacterTable::num_irreps).sum())
        .collect();
    let basis_labels = tables
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .flat_map(|(c, t)| (0..t.num_irreps()).map(move |i| (c, i)))
                .collect()
        })
        .collect();

    let mut differentials = Vec::new();
    for p in 1..top {
        let mut d = IMatrix::zeros(ranks[p - 1], ranks[p]);
        for (c, cell) in x.cells[p].iter().enumerate() {
            for (f, face) in cell.faces.iter().enumerate() {
                let g = carrier(p, c, f);
                if !x.is_group_element(&g) {
                    return Err(Error::Inconsistent("carrier is not a group element".into()));
                }
                let sign = x.incidence_sign_with_carrier(p, c, f, &g)?;
                let target = &x.cells[p - 1][face.target];
                let w = &g.linear;
                let w_inv = g.inverse().linear;
                let res = restriction_map_along(
                    &target.stabilizer,
                    &tables[p - 1][face.target],
                    &cell.stabilizer,
                    &tables[p][c],
                    |h| w_inv.mul(h).mul(w),
                )?;
                // Induction is the transpose of restriction.
                let ind = res.matrix.transpose();
                let (r0, c0) = (offsets[p - 1][face.target], offsets[p][c]);
                for i in 0..ind.rows() {
                    for j in 0..ind.cols() {
                        d[(r0 + i, c0 + j)] += i64::from(sign) * ind[(i, j)];
                    }
                }
            }
        }
        differentials.push(d);
    }
    let complex = ChainComplex {
        ranks,
        differentials,
        basis_labels,
    };
    if !complex.is_complex() {
        return Err(Error::Inconsistent("Bredon boundary does not square to zero".into()));
    }
    Ok(complex)
}

/// Cellular chains of the orbit space with integer coefficients (stabilizers
/// forgotten).
pub fn orbit_chain_complex(x: &EquivariantComplex) -> ChainComplex {
    let ranks: Vec<usize> = x.cells.iter().map(Vec::len).collect();
    let differentials = (1..ranks.len())
        .map(|p| {
            let mut d = IMatrix::zeros(ranks[p - 1], ranks[p]);
            for (c, cell) in x.cells[p].iter().enumerate() {
                for face in &cell.faces {
                    d[(face.target, c)] += i64::from(face.sign);
                }
            }
            d
        })
        .collect();
    ChainComplex::new(ranks, differentials).expect("shapes match by construction")
}

pub fn k_groups(x: &EquivariantComplex, parallel: bool) -> Result<KGroups> {
    let c = bredon_chain_complex_opts(x, parallel)?;
    Ok(assemble_k_groups(&homology_opts(&c, parallel), x.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::{build_equivariant_complex, Variant};
    use crate::rootdata::{build_root_datum, CartanType, Isogeny, Series};

    fn complex(s: Series, n: usize, iso: Isogeny, v: Variant) -> EquivariantComplex {
        let rd = build_root_datum(CartanType::new(s, n).unwrap(), iso).unwrap();
        build_equivariant_complex(&rd, v).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::new(vec![1, 1], vec![IMatrix::from_rows(&[vec![2]])]).unwrap();
        let h = homology(&c);
        assert_eq!(h[0], AbelianGroup { rank: 0, torsion: vec![2] });
        assert_eq!(h[1], AbelianGroup::free(0));
    }

    #[test]
    fn circle() {
        let c = ChainComplex::new(vec![1, 1], vec![IMatrix::zeros(1, 1)]).unwrap();
        assert_eq!(homology(&c), vec![AbelianGroup::free(1), AbelianGroup::free(1)]);
    }

    #[test]
    fn canonical_torsion() {
        let g = AbelianGroup::from_orders(1, &[2, 3, 1]);
        assert_eq!(g.torsion, vec![6]);
        assert_eq!(g.to_string(), "Z + Z/6");
    }

    #[test]
    fn a1_affine() {
        let x = complex(Series::A, 1, Isogeny::SimplyConnected, Variant::Affine);
        let c = bredon_chain_complex(&x).unwrap();
        assert_eq!(c.ranks, vec![4, 1]);
        let h = homology(&c);
        assert_eq!(h, vec![AbelianGroup::free(3), AbelianGroup::free(0)]);
    }

    #[test]
    fn a2_affine_ranks() {
        let x = complex(Series::A, 2, Isogeny::SimplyConnected, Variant::Affine);
        let c = bredon_chain_complex(&x).unwrap();
        assert_eq!(c.ranks, vec![9, 6, 1]);
        let k = assemble_k_groups(&homology(&c), 2);
        assert_eq!((k.k0.rank, k.k1.rank), (5, 1));
    }

    #[test]
    fn uncertified_above_dimension_two() {
        let k = assemble_k_groups(&vec![AbelianGroup::free(1); 4], 3);
        assert!(!k.integral);
        let json = serde_json::to_string(&k).unwrap();
        assert!(json.contains("\"uncertified\""));
        let back: KGroups = serde_json::from_str(&json).unwrap();
        assert_eq!(back, k);
    }
}
