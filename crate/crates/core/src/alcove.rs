//! Affine Weyl groups acting on 𝔱, the fundamental alcove and rigid
//! equivariant cell structures.
//!
//! Points of 𝔱 are written in fundamental coweight coordinates, so
//! `⟨αᵢ, y⟩ = yᵢ` and the coweight lattice is `ℤⁿ`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finitegroup::{point_stabilizer, weyl_group_coweight, MatrixGroup, DEFAULT_GROUP_CAP};
use crate::linalg::{inverse, q, IMatrix};
use crate::rootdata::{Lattice, RootDatum};

/// Largest rank for which cell complexes are built by default.
pub const DEFAULT_GEOMETRIC_RANK_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `Wₐ = Q∨ ⋊ W`.
    Affine,
    /// `W′ₐ = X_* ⋊ W`.
    Extended,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine" => Ok(Variant::Affine),
            "extended" => Ok(Variant::Extended),
            _ => Err(Error::InvalidInput(format!("unknown variant '{s}'"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Affine => "affine",
            Variant::Extended => "extended",
        })
    }
}

/// `y ↦ linear·y + translation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineIsometry {
    pub linear: IMatrix,
    pub translation: Vec<i64>,
}

impl AffineIsometry {
    pub fn identity(n: usize) -> Self {
        AffineIsometry {
            linear: IMatrix::identity(n),
            translation: vec![0; n],
        }
    }

    pub fn translation(v: Vec<i64>) -> Self {
        AffineIsometry {
            linear: IMatrix::identity(v.len()),
            translation: v,
        }
    }

    /// `self ∘ other`: `(γ₁, w₁)(γ₂, w₂) = (γ₁ + w₁γ₂, w₁w₂)`.
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        let wg = self.linear.mul_vec(&other.translation);
        AffineIsometry {
            linear: self.linear.mul(&other.linear),
            translation: self.translation.iter().zip(&wg).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> AffineIsometry {
        let inv = inverse(&self.linear.to_q())
            .and_then(|m| m.to_integer())
            .expect("isometries have unimodular linear part");
        let t = inv.mul_vec(&self.translation);
        AffineIsometry {
            linear: inv,
            translation: t.into_iter().map(|x| -x).collect(),
        }
    }

    pub fn apply(&self, y: &[BigRational]) -> Vec<BigRational> {
        self.linear
            .to_q()
            .mul_vec(y)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, &b)| a + q(b))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|&x| x == 0)
    }
}

/// A wall `{y : ⟨root, y⟩ = level}`; `functional` is `⟨root, ·⟩` on
/// coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub root: Vec<i64>,
    pub functional: Vec<i64>,
    pub level: i64,
}

/// The closed simplex `{⟨αᵢ, y⟩ ≥ 0, ⟨θ, y⟩ ≤ 1}`.
///
/// Vertex `k` is opposite wall `k`; wall 0 is the affine wall of the highest
/// root and wall `i + 1` belongs to the simple root `αᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alcove {
    pub vertices: Vec<Vec<BigRational>>,
    pub walls: Vec<Wall>,
}

impl Alcove {
    pub fn rank(&self) -> usize {
        self.walls.len() - 1
    }

    pub fn contains(&self, y: &[BigRational]) -> bool {
        let theta = &self.walls[0].functional;
        let t: BigRational = theta.iter().zip(y).map(|(&m, x)| q(m) * x).sum();
        y.iter().all(|x| !x.is_negative()) && t <= q(1)
    }

    /// Barycenter of the face spanned by the vertices in `subset`.
    pub fn face_barycenter(&self, subset: &[usize]) -> Vec<BigRational> {
        barycenter(&subset.iter().map(|&k| self.vertices[k].clone()).collect::<Vec<_>>())
    }

    pub fn barycenter(&self) -> Vec<BigRational> {
        barycenter(&self.vertices)
    }
}

pub fn barycenter(points: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = points[0].len();
    let k = q(points.len() as i64);
    (0..n)
        .map(|i| points.iter().map(|p| p[i].clone()).sum::<BigRational>() / &k)
        .collect()
}

pub fn fundamental_alcove(rd: &RootDatum) -> Alcove {
    let n = rd.rank();
    let marks = rd.highest_root_coefficients();
    let (theta, _) = rd.highest_root();
    let mut vertices = vec![vec![BigRational::zero(); n]];
    for i in 0..n {
        let mut v = vec![BigRational::zero(); n];
        v[i] = BigRational::new(1.into(), marks[i].into());
        vertices.push(v);
    }
    let mut walls = vec![Wall {
        root: theta,
        functional: marks,
        level: 1,
    }];
    for i in 0..n {
        walls.push(Wall {
            root: rd.cartan().col(i),
            functional: (0..n).map(|k| i64::from(k == i)).collect(),
            level: 0,
        });
    }
    Alcove { vertices, walls }
}

/// Reflections in the alcove walls, indexed like the walls: `s₀` first.
pub fn affine_reflections(rd: &RootDatum) -> Vec<AffineIsometry> {
    let n = rd.rank();
    let (_, h_theta) = rd.highest_root();
    let marks = rd.highest_root_coefficients();
    // s₀(y) = y − (⟨θ, y⟩ − 1) h_θ
    let s0 = AffineIsometry {
        linear: IMatrix::from_fn(n, n, |r, c| i64::from(r == c) - h_theta[r] * marks[c]),
        translation: h_theta,
    };
    let mut out = vec![s0];
    out.extend(
        rd.simple_reflections()
            .into_iter()
            .map(|s| AffineIsometry {
                linear: s,
                translation: vec![0; n],
            }),
    );
    out
}

/// Moves `y` into the closed fundamental alcove by wall reflections.
/// Returns the accumulated element `g` (so `g·y` is the result) and `g·y`.
pub fn fold_into_alcove(rd: &RootDatum, y: &[BigRational]) -> (AffineIsometry, Vec<BigRational>) {
    let n = rd.rank();
    let refl = affine_reflections(rd);
    let marks = rd.highest_root_coefficients();
    let mut g = AffineIsometry::identity(n);
    let mut x = y.to_vec();
    loop {
        let wall = if let Some(i) = (0..n).find(|&i| x[i].is_negative()) {
            i + 1
        } else {
            let t: BigRational = marks.iter().zip(&x).map(|(&m, v)| q(m) * v).sum();
            if t > q(1) {
                0
            } else {
                return (g, x);
            }
        };
        x = refl[wall].apply(&x);
        g = refl[wall].compose(&g);
    }
}

/// Coset representatives of `Γ/Q∨` as integer vectors, starting with 0.
fn coset_representatives(rd: &RootDatum) -> Vec<Vec<i64>> {
    let n = rd.rank();
    let qinv = inverse(&rd.coroot_lattice().basis().to_q()).expect("nonsingular");
    let key = |v: &[i64]| -> Vec<BigRational> {
        qinv.mul_vec(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())
            .into_iter()
            .map(|c| &c - c.floor())
            .collect()
    };
    let gens: Vec<Vec<i64>> = (0..n).map(|c| rd.cochar_lattice().basis().col(c)).collect();
    let mut seen = HashMap::new();
    let mut reps = vec![vec![0; n]];
    seen.insert(key(&reps[0]), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let v: Vec<i64> = reps[i].iter().zip(g).map(|(a, b)| a + b).collect();
            let k = key(&v);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                e.insert(reps.len());
                queue.push_back(reps.len());
                reps.push(v);
            }
        }
    }
    reps
}

/// Representatives in `W′ₐ` of `Ω = W′ₐ/Wₐ ≅ π₁`, each preserving the
/// fundamental alcove. The identity comes first.
pub fn omega_action(rd: &RootDatum) -> Vec<AffineIsometry> {
    let alcove = fundamental_alcove(rd);
    let b = alcove.barycenter();
    coset_representatives(rd)
        .into_iter()
        .map(|gamma| {
            let t = AffineIsometry::translation(gamma);
            let (g, _) = fold_into_alcove(rd, &t.apply(&b));
            g.compose(&t)
        })
        .collect()
}

/// Permutation of alcove vertices induced by an alcove symmetry.
pub fn vertex_permutation(alcove: &Alcove, g: &AffineIsometry) -> Result<Vec<usize>> {
    alcove
        .vertices
        .iter()
        .map(|v| {
            let image = g.apply(v);
            alcove
                .vertices
                .iter()
                .position(|w| *w == image)
                .ok_or_else(|| Error::Inconsistent("isometry does not preserve the alcove".into()))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Position of the omitted vertex in the parent's vertex list.
    pub face_index: usize,
    /// Index of the target orbit cell in dimension `dim − 1`.
    pub target: usize,
    /// Maps the target's representative onto this face.
    pub carrier: AffineIsometry,
    pub sign: i32,
}

#[derive(Clone, Debug)]
pub struct OrbitCell {
    pub dim: usize,
    /// Ordered vertices; the order fixes the orientation.
    pub vertices: Vec<Vec<BigRational>>,
    /// Linear parts of the stabilizer in `Γ ⋊ W`.
    pub stabilizer: MatrixGroup,
    pub faces: Vec<Face>,
}

impl OrbitCell {
    pub fn barycenter(&self) -> Vec<BigRational> {
        barycenter(&self.vertices)
    }

    /// Full stabilizer elements `(x − w x, w)` for the barycenter `x`.
    pub fn stabilizer_isometries(&self) -> Vec<AffineIsometry> {
        let x = self.barycenter();
        self.stabilizer
            .elements()
            .iter()
            .map(|w| {
                let wx = w.to_q().mul_vec(&x);
                let t = x
                    .iter()
                    .zip(&wx)
                    .map(|(a, b)| {
                        let d = a - b;
                        assert!(d.is_integer());
                        i64::try_from(d.to_integer()).expect("small translation")
                    })
                    .collect();
                AffineIsometry {
                    linear: w.clone(),
                    translation: t,
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    pub variant: Variant,
    pub rank: usize,
    /// Weyl group on coweight coordinates.
    pub weyl: MatrixGroup,
    /// Translation lattice: `Q∨` or `X_*`.
    pub translations: Lattice,
    pub coroots: Lattice,
    pub alcove: Alcove,
    pub omega: Vec<AffineIsometry>,
    pub cells: Vec<Vec<OrbitCell>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FaceJson {
    pub target: usize,
    pub sign: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub stab_order: usize,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub group_variant: Variant,
    pub cells: Vec<CellJson>,
}

pub fn build_equivariant_complex(rd: &RootDatum, variant: Variant) -> Result<EquivariantComplex> {
    build_equivariant_complex_with_cap(rd, variant, DEFAULT_GEOMETRIC_RANK_CAP)
}

pub fn build_equivariant_complex_with_cap(
    rd: &RootDatum,
    variant: Variant,
    rank_cap: usize,
) -> Result<EquivariantComplex> {
    let n = rd.rank();
    if n > rank_cap {
        return Err(Error::ResourceCap(format!(
            "rank {n} exceeds the geometric rank cap {rank_cap}"
        )));
    }
    let weyl = weyl_group_coweight(rd, DEFAULT_GROUP_CAP)?;
    let alcove = fundamental_alcove(rd);
    let (translations, omega) = match variant {
        Variant::Affine => (rd.coroot_lattice(), vec![AffineIsometry::identity(n)]),
        Variant::Extended => (rd.cochar_lattice().clone(), omega_action(rd)),
    };
    let cells = if omega.len() == 1 {
        alcove_faces(rd, &weyl, &translations, &alcove)?
    } else {
        subdivided_orbits(&weyl, &translations, &alcove, &omega)?
    };
    let complex = EquivariantComplex {
        variant,
        rank: n,
        weyl,
        translations,
        coroots: rd.coroot_lattice(),
        alcove,
        omega,
        cells,
    };
    complex.check_rigidity()?;
    complex.check_faces()?;
    complex.check_euler()?;
    Ok(complex)
}

fn subsets_by_size(n_vertices: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n_vertices))
        .map(|mask| (0..n_vertices).filter(|&k| mask & (1 << k) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Faces of the alcove with their parabolic stabilizers (trivial `Ω`).
fn alcove_faces(
    rd: &RootDatum,
    weyl: &MatrixGroup,
    translations: &Lattice,
    alcove: &Alcove,
) -> Result<Vec<Vec<OrbitCell>>> {
    let n = rd.rank();
    let refl = affine_reflections(rd);
    let subsets = subsets_by_size(n + 1);
    let mut cells: Vec<Vec<OrbitCell>> = vec![Vec::new(); n + 1];
    let mut position: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in &subsets {
        let dim = s.len() - 1;
        let gens: Vec<IMatrix> = (0..=n)
            .filter(|k| !s.contains(k))
            .map(|k| refl[k].linear.clone())
            .collect();
        let parabolic = MatrixGroup::from_generators(n, gens, weyl.order())?;
        let x = alcove.face_barycenter(s);
        let geometric = point_stabilizer(weyl, translations, &x);
        if geometric.order() != parabolic.order() || !geometric.is_subgroup_of(&parabolic) {
            return Err(Error::Inconsistent(format!(
                "parabolic subgroup for face {s:?} differs from the point stabilizer"
            )));
        }
        let faces = if dim == 0 {
            Vec::new()
        } else {
            (0..s.len())
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    Face {
                        face_index: i,
                        target: position[&t],
                        carrier: AffineIsometry::identity(n),
                        sign: if i % 2 == 0 { 1 } else { -1 },
                    }
                })
                .collect()
        };
        position.insert(s.clone(), cells[dim].len());
        cells[dim].push(OrbitCell {
            dim,
            vertices: s.iter().map(|&k| alcove.vertices[k].clone()).collect(),
            stabilizer: parabolic,
            faces,
        });
    }
    Ok(cells)
}

/// Ω-orbits of simplices in the barycentric subdivision of the alcove.
/// A simplex is a strictly increasing chain of vertex subsets (bitmasks).
fn subdivided_orbits(
    weyl: &MatrixGroup,
    translations: &Lattice,
    alcove: &Alcove,
    omega: &[AffineIsometry],
) -> Result<Vec<Vec<OrbitCell>>> {
    let n = alcove.rank();
    let perms: Vec<Vec<usize>> = omega
        .iter()
        .map(|g| vertex_permutation(alcove, g))
        .collect::<Result<_>>()?;
    let act = |perm: &[usize], mask: u32| -> u32 {
        (0..=n).filter(|&k| mask & (1 << k) != 0).map(|k| 1u32 << perm[k]).sum()
    };
    let act_chain =
        |perm: &[usize], chain: &[u32]| -> Vec<u32> { chain.iter().map(|&m| act(perm, m)).collect() };

    // All chains, grouped by length.
    let full: u32 = (1 << (n + 1)) - 1;
    let mut chains: Vec<Vec<Vec<u32>>> = vec![(1..=full).map(|m| vec![m]).collect()];
    for p in 1..=n {
        let mut next = Vec::new();
        for c in &chains[p - 1] {
            let last = *c.last().expect("nonempty chain");
            for m in 1..=full {
                if m != last && m & last == last {
                    let mut d = c.clone();
                    d.push(m);
                    next.push(d);
                }
            }
        }
        chains.push(next);
    }

    let canonical = |c: &[u32]| -> (Vec<u32>, usize) {
        perms
            .iter()
            .enumerate()
            .map(|(i, p)| (act_chain(p, c), i))
            .min()
            .expect("Ω is nonempty")
    };
    let vertex_of = |mask: u32| -> Vec<BigRational> {
        let s: Vec<usize> = (0..=n).filter(|&k| mask & (1 << k) != 0).collect();
        alcove.face_barycenter(&s)
    };

    let mut cells: Vec<Vec<OrbitCell>> = vec![Vec::new(); n + 1];
    let mut reps: Vec<BTreeMap<Vec<u32>, usize>> = vec![BTreeMap::new(); n + 1];
    for p in 0..=n {
        let mut orbit_reps: Vec<Vec<u32>> = chains[p].iter().map(|c| canonical(c).0).collect();
        orbit_reps.sort();
        orbit_reps.dedup();
        for rep in orbit_reps {
            let vertices: Vec<Vec<BigRational>> = rep.iter().map(|&m| vertex_of(m)).collect();
            let stabilizer = point_stabilizer(weyl, translations, &barycenter(&vertices));
            let mut faces = Vec::new();
            if p > 0 {
                for i in 0..rep.len() {
                    let mut face = rep.clone();
                    face.remove(i);
                    // ω maps the face to its canonical form; the carrier is ω⁻¹.
                    let (canon, w) = canonical(&face);
                    let carrier = omega[w].inverse();
                    let target = reps[p - 1][&canon];
                    faces.push(Face {
                        face_index: i,
                        target,
                        carrier,
                        sign: 0,
                    });
                }
            }
            reps[p].insert(rep, cells[p].len());
            cells[p].push(OrbitCell {
                dim: p,
                vertices,
                stabilizer,
                faces,
            });
        }
    }
    // Signs: vertex-omission sign times the orientation of the carried target.
    for p in 1..=n {
        for c in 0..cells[p].len() {
            for f in 0..cells[p][c].faces.len() {
                let s = incidence_sign_raw(&cells[p][c], &cells[p - 1], f)?;
                cells[p][c].faces[f].sign = s;
            }
        }
    }
    Ok(cells)
}

/// Sign of a permutation given as the image list of `0..k`.
fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn incidence_sign_raw(parent: &OrbitCell, lower: &[OrbitCell], face: usize) -> Result<i32> {
    let f = &parent.faces[face];
    incidence_sign_with(parent, lower, f.face_index, f.target, &f.carrier)
}

fn incidence_sign_with(
    parent: &OrbitCell,
    lower: &[OrbitCell],
    face_index: usize,
    target: usize,
    carrier: &AffineIsometry,
) -> Result<i32> {
    let mut face_vertices = parent.vertices.clone();
    face_vertices.remove(face_index);
    let carried: Vec<Vec<BigRational>> =
        lower[target].vertices.iter().map(|v| carrier.apply(v)).collect();
    let perm: Vec<usize> = carried
        .iter()
        .map(|v| face_vertices.iter().position(|w| w == v))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Inconsistent("carrier does not map the target onto the face".into()))?;
    let omission = if face_index.is_multiple_of(2) { 1 } else { -1 };
    Ok(omission * permutation_sign(&perm))
}

impl EquivariantComplex {
    pub fn dim(&self) -> usize {
        self.rank
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Oriented incidence of face `face` of cell `cell` in dimension `dim`.
    pub fn incidence_sign(&self, dim: usize, cell: usize, face: usize) -> Result<i32> {
        incidence_sign_raw(&self.cells[dim][cell], &self.cells[dim - 1], face)
    }

    /// As [`incidence_sign`](Self::incidence_sign) but with a caller-supplied carrier.
    pub fn incidence_sign_with_carrier(
        &self,
        dim: usize,
        cell: usize,
        face: usize,
        carrier: &AffineIsometry,
    ) -> Result<i32> {
        let parent = &self.cells[dim][cell];
        let f = &parent.faces[face];
        incidence_sign_with(parent, &self.cells[dim - 1], f.face_index, f.target, carrier)
    }

    /// Every stabilizer element fixes every vertex of its representative.
    pub fn check_rigidity(&self) -> Result<()> {
        for cell in self.cells.iter().flatten() {
            for g in cell.stabilizer_isometries() {
                if !self.translations.contains_int(&g.translation) {
                    return Err(Error::Inconsistent("stabilizer translation outside Γ".into()));
                }
                for v in &cell.vertices {
                    if g.apply(v) != *v {
                        return Err(Error::Inconsistent(format!(
                            "stabilizer of a {}-cell moves a vertex",
                            cell.dim
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Each face is listed once, with a valid carrier and sign.
    pub fn check_faces(&self) -> Result<()> {
        for p in 1..self.cells.len() {
            for (c, cell) in self.cells[p].iter().enumerate() {
                if cell.faces.len() != p + 1 {
                    return Err(Error::Inconsistent("wrong number of faces".into()));
                }
                for (f, face) in cell.faces.iter().enumerate() {
                    if face.face_index != f || self.incidence_sign(p, c, f)? != face.sign {
                        return Err(Error::Inconsistent("face data disagree".into()));
                    }
                    if !self.is_group_element(&face.carrier) {
                        return Err(Error::Inconsistent("carrier is not in the group".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_group_element(&self, g: &AffineIsometry) -> bool {
        self.weyl.contains(&g.linear) && self.translations.contains_int(&g.translation)
    }

    /// Orbifold Euler characteristic `Σ (−1)^dim / |stab|` over orbit cells.
    pub fn orbifold_euler(&self) -> BigRational {
        self.cells
            .iter()
            .flatten()
            .map(|c| {
                let s = if c.dim % 2 == 0 { 1 } else { -1 };
                BigRational::new(s.into(), (c.stabilizer.order() as i64).into())
            })
            .sum()
    }

    /// Compares the orbifold Euler characteristic with the one computed from
    /// the unsubdivided alcove and its parabolic stabilizers, divided by
    /// `|Ω|`; also checks that the quotient has Euler characteristic 1.
    pub fn check_euler(&self) -> Result<()> {
        let n = self.rank;
        let mut expected = BigRational::zero();
        for s in subsets_by_size(n + 1) {
            let x = self.alcove.face_barycenter(&s);
            let order = point_stabilizer(&self.weyl, &self.coroots, &x).order();
            let sign = if s.len() % 2 == 1 { 1 } else { -1 };
            expected += BigRational::new(sign.into(), (order as i64).into());
        }
        expected /= q(self.omega.len() as i64);
        if self.orbifold_euler() != expected {
            return Err(Error::Inconsistent(format!(
                "orbifold Euler characteristic {} differs from {}",
                self.orbifold_euler(),
                expected
            )));
        }
        let chi: i64 = self
            .cells
            .iter()
            .enumerate()
            .map(|(p, c)| if p % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum();
        if chi != 1 {
            return Err(Error::Inconsistent(format!("quotient Euler characteristic {chi} ≠ 1")));
        }
        Ok(())
    }

    pub fn to_json(&self) -> ComplexJson {
        let fmt_q = |x: &BigRational| {
            if x.is_integer() {
                x.to_integer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        };
        ComplexJson {
            group_variant: self.variant,
            cells: self
                .cells
                .iter()
                .flatten()
                .map(|c| CellJson {
                    dim: c.dim,
                    vertices: c.vertices.iter().map(|v| v.iter().map(fmt_q).collect()).collect(),
                    stab_order: c.stabilizer.order(),
                    faces: c
                        .faces
                        .iter()
                        .map(|f| FaceJson {
                            target: f.target,
                            sign: f.sign,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
