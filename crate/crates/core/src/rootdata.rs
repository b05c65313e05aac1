//! Root data of compact semisimple Lie types and their Langlands duals.
//!
//! Coordinates: the Lie algebra 𝔱 is written in the basis of fundamental
//! coweights ω∨ᵢ and its dual 𝔱* in the basis of fundamental weights ωⱼ.
//! In these coordinates the coweight lattice P∨ and the weight lattice P are
//! both `ℤⁿ`, so every cocharacter and character lattice has an integer
//! basis; simple roots are the columns of the Cartan matrix `A` and simple
//! coroots are its rows. The pairing between the two ambient spaces is the
//! rational matrix `A⁻ᵀ`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{column_hnf, integer_coordinates, inverse, q, IMatrix, QMatrix};
use crate::snf::smith_normal_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::InvalidInput(format!("unknown series `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            let reason = match series {
                Series::A => "A requires rank >= 1",
                Series::B => "B requires rank >= 2",
                Series::C => "C requires rank >= 2",
                Series::D => "D requires rank >= 3",
                Series::E => "E requires rank 6, 7 or 8",
                Series::F => "F requires rank 4",
                Series::G => "G requires rank 2",
            };
            Err(Error::InvalidCartanType {
                series: series.letter(),
                rank,
                reason,
            })
        }
    }

    /// The type of the dual root system (B and C swap).
    pub fn dual(self) -> Self {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        CartanType { series, ..self }
    }

    /// Order of the Weyl group by the classical formulas.
    pub fn weyl_group_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Node permutations preserving the Cartan matrix that we recognise:
    /// the identity and the standard Dynkin diagram symmetries.
    pub fn diagram_symmetries(self) -> Vec<Vec<usize>> {
        let n = self.rank;
        let id: Vec<usize> = (0..n).collect();
        let mut out = vec![id.clone()];
        match self.series {
            Series::A if n > 1 => out.push((0..n).rev().collect()),
            Series::D if n == 4 => {
                // Triality permutes the three outer nodes 0, 2, 3.
                for p in [[0, 3, 2], [2, 0, 3], [2, 3, 0], [3, 0, 2], [3, 2, 0]] {
                    out.push(vec![p[0], 1, p[1], p[2]]);
                }
            }
            Series::D => {
                let mut s = id;
                s.swap(n - 2, n - 1);
                out.push(s);
            }
            Series::E if n == 6 => out.push(vec![5, 1, 4, 3, 2, 0]),
            _ => {}
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// Cartan matrix with `A[i][j] = ⟨αⱼ, hᵢ⟩`, Bourbaki node labelling.
pub fn cartan_matrix(t: CartanType) -> Result<IMatrix> {
    let t = CartanType::new(t.series, t.rank)?;
    let n = t.rank;
    let mut a = IMatrix::identity(n).map(|&x| 2 * x);
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[(i, j)] = aij;
        a[(j, i)] = aji;
    };
    match t.series {
        Series::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // αₙ short
            link(n - 2, n - 1, -1, -2);
        }
        Series::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // αₙ long
            link(n - 2, n - 1, -2, -1);
        }
        Series::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            // 1-3-4-5-6-7-8 with 2 attached to 4 (Bourbaki), zero-based.
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => link(0, 1, -3, -1),
    }
    Ok(a)
}

/// Connection index `|P/Q| = det A`.
pub fn connection_index(t: CartanType) -> Result<u64> {
    let a = cartan_matrix(t)?;
    let det = crate::linalg::integer_determinant(&a.to_z());
    det.to_u64()
        .ok_or_else(|| Error::Inconsistent("Cartan determinant not positive".into()))
}

// ---------------------------------------------------------------------------

/// A full-rank lattice in ℚⁿ given by an integer basis (columns).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lattice {
    basis: IMatrix,
}

impl Lattice {
    pub fn new(basis: IMatrix) -> Result<Self> {
        if !basis.is_square() || crate::linalg::integer_determinant(&basis.to_z()) == BigInt::from(0) {
            return Err(Error::InvalidInput("lattice basis must be square and nonsingular".into()));
        }
        Ok(Lattice { basis })
    }

    /// Lattice generated by arbitrary integer vectors (must have full rank).
    pub fn generated_by(dim: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let m = IMatrix::from_cols(dim, gens).to_z();
        let h = column_hnf(&m);
        if h.cols() != dim {
            return Err(Error::InvalidInput("generators do not span a full-rank lattice".into()));
        }
        Lattice::new(h.to_i64().ok_or_else(|| Error::Inconsistent("lattice overflow".into()))?)
    }

    pub fn standard(dim: usize) -> Self {
        Lattice {
            basis: IMatrix::identity(dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IMatrix {
        &self.basis
    }

    /// Canonical (Hermite) basis; two lattices are equal iff these agree.
    pub fn canonical_basis(&self) -> IMatrix {
        column_hnf(&self.basis.to_z()).to_i64().expect("HNF of small basis fits i64")
    }

    pub fn contains(&self, v: &[num_rational::BigRational]) -> bool {
        integer_coordinates(&self.basis, v).is_some()
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        let vq: Vec<_> = v.iter().map(|&x| q(x)).collect();
        self.contains(&vq)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        (0..self.basis.cols()).all(|c| other.contains_int(&self.basis.col(c)))
    }

    /// `[other : self]` as a finite abelian group, for `self ⊆ other`.
    pub fn quotient_of(&self, other: &Lattice) -> Result<FiniteAbelianGroup> {
        let coords: Vec<Vec<i64>> = (0..self.basis.cols())
            .map(|c| {
                integer_coordinates(&other.basis, &self.basis.col(c).iter().map(|&x| q(x)).collect::<Vec<_>>())
                    .ok_or_else(|| Error::InvalidInput("not a sublattice".into()))
            })
            .collect::<Result<_>>()?;
        let m = IMatrix::from_cols(self.ambient_dim(), &coords);
        Ok(FiniteAbelianGroup::from_relations(&m))
    }

    pub fn permuted(&self, perm: &[usize]) -> Lattice {
        // Coordinate i moves to position perm[i].
        let n = self.ambient_dim();
        let mut b = IMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                b[(perm[r], c)] = self.basis[(r, c)];
            }
        }
        Lattice { basis: b }
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.canonical_basis() == other.canonical_basis()
    }
}

impl Eq for Lattice {}

/// Finite abelian group in invariant-factor form `ℤ/d₁ × ℤ/d₂ × …`, `d₁ | d₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub elementary_divisors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            elementary_divisors: vec![],
        }
    }

    /// Cokernel of a nonsingular square integer matrix.
    pub fn from_relations(m: &IMatrix) -> Self {
        let s = smith_normal_form(&m.to_z());
        FiniteAbelianGroup {
            elementary_divisors: s
                .torsion()
                .iter()
                .map(|d| d.to_u64().expect("small divisor"))
                .collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.elementary_divisors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Isogeny class, i.e. the choice of cocharacter lattice `Q∨ ⊆ X_* ⊆ P∨`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Generators of the subgroup of `P∨/Q∨`, in fundamental coweight coordinates.
    Intermediate(Vec<Vec<i64>>),
}

impl Isogeny {
    pub fn short_name(&self) -> String {
        match self {
            Isogeny::SimplyConnected => "sc".into(),
            Isogeny::Adjoint => "adj".into(),
            Isogeny::Intermediate(g) => {
                let gens: Vec<String> = g
                    .iter()
                    .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                format!("custom:{}", gens.join(";"))
            }
        }
    }
}

impl FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply_connected" => Ok(Isogeny::SimplyConnected),
            "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            _ => {
                let body = s
                    .strip_prefix("custom:")
                    .ok_or_else(|| Error::InvalidIsogeny(format!("expected sc, adj or custom:<gens>, got `{s}`")))?;
                let gens = body
                    .split(';')
                    .filter(|g| !g.trim().is_empty())
                    .map(|g| {
                        g.split(',')
                            .map(|x| {
                                x.trim()
                                    .parse::<i64>()
                                    .map_err(|_| Error::InvalidIsogeny(format!("bad generator entry `{x}`")))
                            })
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Isogeny::Intermediate(gens))
            }
        }
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::SimplyConnected => write!(f, "simply connected"),
            Isogeny::Adjoint => write!(f, "adjoint"),
            Isogeny::Intermediate(_) => write!(f, "intermediate ({})", self.short_name()),
        }
    }
}

// ---------------------------------------------------------------------------

/// `(X*, R, X_*, R∨)` together with its Cartan type.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: IMatrix,
    isogeny: Isogeny,
    /// X* in fundamental weight coordinates.
    char_lattice: Lattice,
    /// X_* in fundamental coweight coordinates.
    cochar_lattice: Lattice,
    /// Roots in fundamental weight coordinates; `roots[i]` pairs with `coroots[i]`.
    roots: Vec<Vec<i64>>,
    /// Roots in the basis of simple roots.
    root_heights: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    /// ⟨u, y⟩ = uᵀ·pairing·y for u ∈ 𝔱*, y ∈ 𝔱 in ambient coordinates.
    pairing: QMatrix,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type
            && self.cartan == other.cartan
            && self.cochar_lattice == other.cochar_lattice
    }
}

pub fn coroot_lattice(a: &IMatrix) -> Lattice {
    // Simple coroots are the rows of A in coweight coordinates.
    Lattice::new(a.transpose()).expect("Cartan matrix is nonsingular")
}

pub fn root_lattice(a: &IMatrix) -> Lattice {
    Lattice::new(a.clone()).expect("Cartan matrix is nonsingular")
}

fn cochar_lattice_for(t: CartanType, a: &IMatrix, iso: &Isogeny) -> Result<Lattice> {
    let n = t.rank;
    match iso {
        Isogeny::SimplyConnected => Ok(coroot_lattice(a)),
        Isogeny::Adjoint => Ok(Lattice::standard(n)),
        Isogeny::Intermediate(gens) => {
            if gens.iter().any(|g| g.len() != n) {
                return Err(Error::InvalidIsogeny(format!(
                    "subgroup generators must have {n} coweight coordinates"
                )));
            }
            let mut all: Vec<Vec<i64>> = (0..n).map(|i| a.row(i)).collect();
            all.extend(gens.iter().cloned());
            let l = Lattice::generated_by(n, &all)?;
            if l == coroot_lattice(a) || l == Lattice::standard(n) {
                return Err(Error::InvalidIsogeny(
                    "generators give the simply connected or adjoint lattice; use sc or adj".into(),
                ));
            }
            Ok(l)
        }
    }
}

/// Closure of the simple roots under simple reflections. Returns pairs
/// (root in simple-root coordinates, coroot in simple-coroot coordinates).
fn enumerate_roots(a: &IMatrix) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = a.rows();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        seen.insert(unit(i), unit(i));
        queue.push_back((unit(i), unit(i)));
    }
    while let Some((r, c)) = queue.pop_front() {
        for j in 0..n {
            // ⟨α, hⱼ⟩ = Σᵢ rᵢ A[j][i];  ⟨αⱼ, h⟩ = Σᵢ cᵢ A[i][j]
            let pair_r: i64 = (0..n).map(|i| r[i] * a[(j, i)]).sum();
            let pair_c: i64 = (0..n).map(|i| c[i] * a[(i, j)]).sum();
            let mut r2 = r.clone();
            r2[j] -= pair_r;
            let mut c2 = c.clone();
            c2[j] -= pair_c;
            if !seen.contains_key(&r2) {
                seen.insert(r2.clone(), c2.clone());
                queue.push_back((r2, c2));
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    // Positive roots by height, then negatives in the mirrored order.
    let key = |r: &Vec<i64>| {
        let h: i64 = r.iter().sum();
        (h < 0, h.abs(), r.iter().map(|x| -x.abs()).collect::<Vec<_>>())
    };
    out.sort_by_key(|(r, _)| key(r));
    out
}

pub fn build_root_datum(t: CartanType, iso: Isogeny) -> Result<RootDatum> {
    let a = cartan_matrix(t)?;
    let cochar = cochar_lattice_for(t, &a, &iso)?;
    RootDatum::from_parts(t, a, iso, cochar)
}

impl RootDatum {
    fn from_parts(t: CartanType, a: IMatrix, iso: Isogeny, cochar: Lattice) -> Result<Self> {
        let n = t.rank;
        let aq = a.to_q();
        let a_inv = inverse(&aq).ok_or_else(|| Error::Inconsistent("singular Cartan matrix".into()))?;
        let pairing = a_inv.transpose();
        // X* = { u : ⟨u, X_*⟩ ⊆ ℤ } has basis A·B⁻ᵀ.
        let b_inv_t = inverse(&cochar.basis().to_q())
            .ok_or_else(|| Error::Inconsistent("singular cochar basis".into()))?
            .transpose();
        let char_basis = aq
            .mul(&b_inv_t)
            .to_integer()
            .ok_or_else(|| Error::Inconsistent("character lattice not contained in P".into()))?;
        let char_lattice = Lattice::new(char_basis)?;

        let pairs = enumerate_roots(&a);
        let at = a.transpose();
        let roots = pairs.iter().map(|(r, _)| a.mul_vec(r)).collect();
        let coroots = pairs.iter().map(|(_, c)| at.mul_vec(c)).collect();
        let root_heights = pairs.iter().map(|(r, _)| r.clone()).collect();
        let rd = RootDatum {
            cartan_type: t,
            cartan: a,
            isogeny: iso,
            char_lattice,
            cochar_lattice: cochar,
            roots,
            root_heights,
            coroots,
            pairing,
        };
        debug_assert_eq!(rd.cartan.rows(), n);
        rd.validate()?;
        Ok(rd)
    }

    /// Check every root datum invariant.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Inconsistent(m.to_string()));
        // ⟨α, h_α⟩ = 2, in integers after clearing denominators
        let den = self.pairing.common_denominator();
        let scaled = self
            .pairing
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .to_i64();
        let (Some(scaled), Some(den)) = (scaled, den.to_i64()) else {
            return fail("pairing too large");
        };
        for (r, c) in self.roots.iter().zip(&self.coroots) {
            let pc = scaled.mul_vec(c);
            if r.iter().zip(&pc).map(|(a, b)| a * b).sum::<i64>() != 2 * den {
                return fail("⟨α, h_α⟩ ≠ 2");
            }
        }
        let cb = self.char_lattice.basis();
        let xb = self.cochar_lattice.basis();
        let gram = cb.to_q().transpose().mul(&self.pairing).mul(&xb.to_q());
        if gram.to_integer().is_none() {
            return fail("pairing not integral on lattice bases");
        }
        let q_dual = coroot_lattice(&self.cartan);
        if !q_dual.is_sublattice_of(&self.cochar_lattice) {
            return fail("Q∨ not contained in X_*");
        }
        if !root_lattice(&self.cartan).is_sublattice_of(&self.char_lattice) {
            return fail("Q not contained in X*");
        }
        // X_* ⊆ P∨ and X* ⊆ P hold automatically: both bases are integral.
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan(&self) -> &IMatrix {
        &self.cartan
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    pub fn char_lattice(&self) -> &Lattice {
        &self.char_lattice
    }

    pub fn cochar_lattice(&self) -> &Lattice {
        &self.cochar_lattice
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn pairing(&self) -> &QMatrix {
        &self.pairing
    }

    pub fn pair(&self, u: &[i64], y: &[i64]) -> num_rational::BigRational {
        let uq: Vec<_> = u.iter().map(|&x| q(x)).collect();
        let yq: Vec<_> = y.iter().map(|&x| q(x)).collect();
        let py = self.pairing.mul_vec(&yq);
        uq.iter().zip(&py).map(|(a, b)| a * b).sum()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len() / 2
    }

    /// Coefficients of the highest root in the basis of simple roots.
    pub fn highest_root_coefficients(&self) -> Vec<i64> {
        self.root_heights
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system")
    }

    /// Highest root in fundamental weight coordinates, and its coroot.
    pub fn highest_root(&self) -> (Vec<i64>, Vec<i64>) {
        let (i, _) = self
            .root_heights
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.iter().sum::<i64>())
            .expect("nonempty root system");
        (self.roots[i].clone(), self.coroots[i].clone())
    }

    /// Simple reflections acting on 𝔱 in coweight coordinates:
    /// `sᵢ(y) = y − yᵢ hᵢ`.
    pub fn simple_reflections(&self) -> Vec<IMatrix> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let h = self.cartan.row(i);
                IMatrix::from_fn(n, n, |r, c| i64::from(r == c) - if c == i { h[r] } else { 0 })
            })
            .collect()
    }

    /// Reflection of 𝔱 in the hyperplane of a root: `y ↦ y − ⟨α, y⟩ h_α`.
    pub fn reflection_for(&self, root: &[i64], coroot: &[i64]) -> IMatrix {
        let n = self.rank();
        // ⟨α, eₖ⟩ = (A⁻¹ α)ₖ ... computed through the pairing.
        let row: Vec<i64> = (0..n)
            .map(|k| {
                let mut e = vec![0; n];
                e[k] = 1;
                let p = self.pair(root, &e);
                assert!(p.is_integer());
                p.to_integer().to_i64().expect("small")
            })
            .collect();
        IMatrix::from_fn(n, n, |r, c| i64::from(r == c) - coroot[r] * row[c])
    }

    pub fn coroot_lattice(&self) -> Lattice {
        coroot_lattice(&self.cartan)
    }

    pub fn coweight_lattice(&self) -> Lattice {
        Lattice::standard(self.rank())
    }

    /// Recompute the isogeny label from the cocharacter lattice.
    fn classify(a: &IMatrix, cochar: &Lattice) -> Isogeny {
        let n = a.rows();
        if *cochar == coroot_lattice(a) {
            Isogeny::SimplyConnected
        } else if *cochar == Lattice::standard(n) {
            Isogeny::Adjoint
        } else {
            let b = cochar.canonical_basis();
            Isogeny::Intermediate((0..n).map(|c| b.col(c)).collect())
        }
    }

    /// Isomorphism up to the standard diagram symmetries.
    pub fn is_isomorphic(&self, other: &RootDatum) -> bool {
        if self.cartan_type != other.cartan_type || self.cartan != other.cartan {
            return false;
        }
        self.cartan_type
            .diagram_symmetries()
            .iter()
            .any(|p| self.cochar_lattice.permuted(p) == other.cochar_lattice)
    }

    pub fn to_json(&self) -> RootDatumJson {
        let n = self.rank();
        let cb = self.char_lattice.basis();
        let xb = self.cochar_lattice.basis();
        let to_coords = |basis: &IMatrix, v: &[i64]| {
            integer_coordinates(basis, &v.iter().map(|&x| q(x)).collect::<Vec<_>>())
                .expect("roots lie in the lattice")
        };
        let gram = cb.to_q().transpose().mul(&self.pairing).mul(&xb.to_q());
        RootDatumJson {
            series: self.cartan_type.series,
            rank: n,
            isogeny: self.isogeny.clone(),
            char_basis: cb.to_rows(),
            cochar_basis: xb.to_rows(),
            roots: self.roots.iter().map(|r| to_coords(cb, r)).collect(),
            coroots: self.coroots.iter().map(|c| to_coords(xb, c)).collect(),
            pairing: gram.to_integer().expect("integral pairing").to_rows(),
        }
    }

    pub fn from_json(j: &RootDatumJson) -> Result<Self> {
        let t = CartanType::new(j.series, j.rank)?;
        let a = cartan_matrix(t)?;
        if j.cochar_basis.len() != t.rank {
            return Err(Error::InvalidInput("cochar_basis has wrong size".into()));
        }
        let cochar = Lattice::new(IMatrix::from_rows(&j.cochar_basis))?;
        let rd = RootDatum::from_parts(t, a, j.isogeny.clone(), cochar)?;
        if RootDatum::classify(&rd.cartan, &rd.cochar_lattice) != RootDatum::classify(&rd.cartan, &cochar_lattice_for(t, &rd.cartan, &j.isogeny)?) {
            return Err(Error::InvalidInput("isogeny label does not match cochar_basis".into()));
        }
        if rd.to_json() != *j {
            return Err(Error::InvalidInput("root datum JSON is not self-consistent".into()));
        }
        Ok(rd)
    }
}

/// Interchange format. Basis matrices are written row by row, so
/// `char_basis[i][j]` is coordinate `i` of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub series: Series,
    pub rank: usize,
    pub isogeny: Isogeny,
    /// X* basis in fundamental weight coordinates.
    pub char_basis: Vec<Vec<i64>>,
    /// X_* basis in fundamental coweight coordinates.
    pub cochar_basis: Vec<Vec<i64>>,
    /// Roots in the X* basis.
    pub roots: Vec<Vec<i64>>,
    /// Coroots in the X_* basis.
    pub coroots: Vec<Vec<i64>>,
    /// ⟨c_i, b_j⟩ on the two lattice bases.
    pub pairing: Vec<Vec<i64>>,
}

/// The Langlands dual `(X_*, R∨, X*, R)`.
pub fn langlands_dual(rd: &RootDatum) -> RootDatum {
    let t = rd.cartan_type;
    let n = t.rank;
    let dual_t = t.dual();
    let at = rd.cartan.transpose();
    let standard = cartan_matrix(dual_t).expect("dual type is valid");
    // For G₂ and F₄ the transpose is the standard matrix with nodes reversed.
    let perm: Vec<usize> = if at == standard {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };
    let permute_vec = |v: &[i64]| {
        let mut w = vec![0; n];
        for (i, &x) in v.iter().enumerate() {
            w[perm[i]] = x;
        }
        w
    };
    let permuted_a = IMatrix::from_fn(n, n, |r, c| {
        let inv = |k: usize| perm.iter().position(|&p| p == k).unwrap();
        at[(inv(r), inv(c))]
    });
    assert_eq!(permuted_a, standard, "dual Cartan matrix must be standard");

    let cochar = rd.char_lattice.permuted(&perm);
    let isogeny = RootDatum::classify(&standard, &cochar);
    let dual = RootDatum::from_parts(dual_t, standard, isogeny, cochar).expect("dual datum is valid");

    // The regenerated roots must be the old coroots and vice versa.
    debug_assert!({
        let mut a: Vec<Vec<i64>> = rd.coroots.iter().map(|v| permute_vec(v)).collect();
        let mut b = dual.roots.clone();
        a.sort();
        b.sort();
        a == b
    });
    dual
}

pub fn fundamental_group_and_center(
    t: CartanType,
    iso: &Isogeny,
) -> Result<(FiniteAbelianGroup, FiniteAbelianGroup)> {
    let rd = build_root_datum(t, iso.clone())?;
    Ok(rd.fundamental_group_and_center())
}

impl RootDatum {
    /// π₁ = X_*/Q∨ and 𝒵 ≅ P∨/X_*.
    pub fn fundamental_group_and_center(&self) -> (FiniteAbelianGroup, FiniteAbelianGroup) {
        let pi1 = self
            .coroot_lattice()
            .quotient_of(&self.cochar_lattice)
            .expect("Q∨ ⊆ X_*");
        let center = FiniteAbelianGroup::from_relations(self.cochar_lattice.basis());
        (pi1, center)
    }
}

/// `(N, Γ)`: the coroot lattice and the nodal lattice `Γ = X_*`.
pub fn translation_lattices(t: CartanType, iso: &Isogeny) -> Result<(Lattice, Lattice)> {
    let rd = build_root_datum(t, iso.clone())?;
    Ok((rd.coroot_lattice(), rd.cochar_lattice.clone()))
}

/// Index `[Γ : N]`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<u64> {
    Ok(sub.quotient_of(sup)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: Series, n: usize) -> CartanType {
        CartanType::new(s, n).unwrap()
    }

    #[test]
    fn cartan_a2_and_a1() {
        assert_eq!(cartan_matrix(ct(Series::A, 2)).unwrap(), IMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]));
        assert_eq!(cartan_matrix(ct(Series::A, 1)).unwrap(), IMatrix::from_rows(&[vec![2]]));
    }

    #[test]
    fn cartan_b_is_transpose_of_c() {
        for n in 2..6 {
            let b = cartan_matrix(ct(Series::B, n)).unwrap();
            let c = cartan_matrix(ct(Series::C, n)).unwrap();
            assert_eq!(b.transpose(), c);
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(CartanType::new(Series::A, 0).is_err());
        assert!(CartanType::new(Series::B, 1).is_err());
        assert!(CartanType::new(Series::D, 2).is_err());
        assert!(CartanType::new(Series::E, 5).is_err());
        assert!(CartanType::new(Series::F, 3).is_err());
        assert!(CartanType::new(Series::G, 3).is_err());
    }

    #[test]
    fn root_counts() {
        let cases = [
            (Series::A, 2, 6),
            (Series::B, 3, 18),
            (Series::C, 3, 18),
            (Series::D, 4, 24),
            (Series::G, 2, 12),
            (Series::F, 4, 48),
            (Series::E, 6, 72),
            (Series::E, 8, 240),
        ];
        for (s, n, count) in cases {
            let rd = build_root_datum(ct(s, n), Isogeny::SimplyConnected).unwrap();
            assert_eq!(rd.roots().len(), count, "{s:?}{n}");
        }
    }

    #[test]
    fn highest_root_of_g2() {
        let rd = build_root_datum(ct(Series::G, 2), Isogeny::Adjoint).unwrap();
        assert_eq!(rd.highest_root_coefficients(), vec![3, 2]);
    }

    #[test]
    fn a2_lattices() {
        let sc = build_root_datum(ct(Series::A, 2), Isogeny::SimplyConnected).unwrap();
        assert_eq!(*sc.cochar_lattice(), sc.coroot_lattice());
        let (pi1, z) = sc.fundamental_group_and_center();
        assert!(pi1.is_trivial());
        assert_eq!(z.elementary_divisors, vec![3]);

        let adj = build_root_datum(ct(Series::A, 2), Isogeny::Adjoint).unwrap();
        let (pi1, z) = adj.fundamental_group_and_center();
        assert_eq!(pi1.elementary_divisors, vec![3]);
        assert!(z.is_trivial());
    }

    #[test]
    fn a1_adjoint_index_two() {
        let (n, g) = translation_lattices(ct(Series::A, 1), &Isogeny::Adjoint).unwrap();
        assert_eq!(lattice_index(&n, &g).unwrap(), 2);
    }

    #[test]
    fn so8_intermediate() {
        // SO(8): X_* = Q∨ + ℤ ω∨₁.
        let iso: Isogeny = "custom:1,0,0,0".parse().unwrap();
        let rd = build_root_datum(ct(Series::D, 4), iso).unwrap();
        let (pi1, z) = rd.fundamental_group_and_center();
        assert_eq!(pi1.order(), 2);
        assert_eq!(z.order(), 2);
        let dual = langlands_dual(&rd);
        assert!(matches!(dual.isogeny(), Isogeny::Intermediate(_)));
        assert!(langlands_dual(&dual).is_isomorphic(&rd));
    }

    #[test]
    fn intermediate_rejections() {
        let bad: Isogeny = "custom:1,0".parse().unwrap();
        assert!(build_root_datum(ct(Series::D, 4), bad).is_err());
        let trivial: Isogeny = "custom:0,0,0,0".parse().unwrap();
        assert!(build_root_datum(ct(Series::D, 4), trivial).is_err());
        assert!("custom:x".parse::<Isogeny>().is_err());
        assert!("weird".parse::<Isogeny>().is_err());
    }

    #[test]
    fn dual_swaps_types() {
        let b2adj = build_root_datum(ct(Series::B, 2), Isogeny::Adjoint).unwrap();
        let d = langlands_dual(&b2adj);
        assert_eq!(d.cartan_type(), ct(Series::C, 2));
        assert_eq!(*d.isogeny(), Isogeny::SimplyConnected);
        let g2 = build_root_datum(ct(Series::G, 2), Isogeny::SimplyConnected).unwrap();
        let gd = langlands_dual(&g2);
        assert_eq!(gd.cartan_type(), ct(Series::G, 2));
        assert!(langlands_dual(&gd).is_isomorphic(&g2));
    }

    #[test]
    fn json_round_trip() {
        let rd = build_root_datum(ct(Series::B, 3), Isogeny::Adjoint).unwrap();
        let j = rd.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let back: RootDatumJson = serde_json::from_str(&s).unwrap();
        let rd2 = RootDatum::from_json(&back).unwrap();
        assert_eq!(rd, rd2);
        assert!(j.pairing.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(k, &x)| x == i64::from(i == k))));
    }
}
