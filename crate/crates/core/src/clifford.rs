//! The Clifford algebra `Cℓ(𝔱 × 𝔱*)` with Gaussian rational coefficients.
//!
//! Generators `e₁…eₙ` occupy bits `0..n` of a monomial mask and `ε¹…εⁿ`
//! bits `n..2n`. Every generator squares to `+1` and distinct generators
//! anticommute, so a monomial is determined by its set of generators.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, rank, Matrix, QMatrix};

/// Gaussian rationals.
pub type GaussianRational = Complex<BigRational>;

fn c(re: BigRational) -> GaussianRational {
    Complex::new(re, BigRational::zero())
}

fn imag_unit() -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Sign of the product of monomials `a·b` after sorting generators.
pub fn monomial_sign(a: u32, b: u32) -> i32 {
    let mut swaps = 0;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        // generators of a with larger index must pass over generator j
        swaps += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliffordAlgebra {
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    pub n: usize,
    /// Coefficient of each monomial, indexed by mask.
    pub coeffs: Vec<GaussianRational>,
}

impl CliffordAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n <= 8, "Clifford algebras are dense; keep n small");
        CliffordAlgebra { n }
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.n)
    }

    pub fn zero(&self) -> CliffordElement {
        CliffordElement {
            n: self.n,
            coeffs: vec![GaussianRational::zero(); self.dim()],
        }
    }

    pub fn scalar(&self, x: GaussianRational) -> CliffordElement {
        self.monomial(0, x)
    }

    pub fn one(&self) -> CliffordElement {
        self.scalar(GaussianRational::one())
    }

    pub fn monomial(&self, mask: u32, x: GaussianRational) -> CliffordElement {
        let mut z = self.zero();
        z.coeffs[mask as usize] = x;
        z
    }

    /// `e_j`, 0-based.
    pub fn e(&self, j: usize) -> CliffordElement {
        self.monomial(1 << j, GaussianRational::one())
    }

    /// `ε^j`, 0-based.
    pub fn eps(&self, j: usize) -> CliffordElement {
        self.monomial(1 << (self.n + j), GaussianRational::one())
    }

    /// `P = ∏ⱼ ½(1 − i eⱼ εʲ)`.
    pub fn projection_p(&self) -> CliffordElement {
        self.product_of_factors(|j| self.e(j).mul(&self.eps(j)))
    }

    /// `P∨ = ∏ⱼ ½(1 − i εʲ eⱼ)`.
    pub fn projection_p_dual(&self) -> CliffordElement {
        self.product_of_factors(|j| self.eps(j).mul(&self.e(j)))
    }

    fn product_of_factors(&self, x: impl Fn(usize) -> CliffordElement) -> CliffordElement {
        let half = c(BigRational::new(BigInt::one(), BigInt::from(2)));
        let mut p = self.one();
        for j in 0..self.n {
            let factor = self
                .one()
                .sub(&x(j).scale(&imag_unit()))
                .scale(&half);
            p = p.mul(&factor);
        }
        p
    }

    /// `ε¹⋯εⁿ` for even `n`, `e₁⋯eₙ` for odd `n`.
    pub fn u(&self) -> CliffordElement {
        let mut u = self.one();
        for j in 0..self.n {
            u = u.mul(&if self.n.is_multiple_of(2) { self.eps(j) } else { self.e(j) });
        }
        u
    }

    /// Matrix of left multiplication by `x` in the monomial basis.
    pub fn left_regular(&self, x: &CliffordElement) -> Matrix<GaussianRational> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            let image = x.mul(&self.monomial(b as u32, GaussianRational::one()));
            for a in 0..d {
                m[(a, b)] = image.coeffs[a].clone();
            }
        }
        m
    }

    /// `dim Cℓ·P`.
    pub fn left_ideal_dimension(&self) -> usize {
        rank(&self.left_regular(&self.projection_p()))
    }

    /// `dim P·Cℓ·P`.
    pub fn corner_dimension(&self) -> usize {
        let p = self.projection_p();
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            let image = p.mul(&self.monomial(b as u32, GaussianRational::one())).mul(&p);
            for a in 0..d {
                m[(a, b)] = image.coeffs[a].clone();
            }
        }
        rank(&m)
    }

    /// `xⱼ = eⱼ εʲ`.
    pub fn x(&self, j: usize) -> CliffordElement {
        self.e(j).mul(&self.eps(j))
    }

    /// Power sum `p_k(x₁, …, xₙ)`.
    pub fn power_sum(&self, k: usize) -> CliffordElement {
        let mut s = self.zero();
        for j in 0..self.n {
            s = s.add(&self.x(j).pow(k));
        }
        s
    }

    pub fn evaluate(&self, p: &SymmetricPolynomial) -> CliffordElement {
        let mut out = self.zero();
        for (coeff, parts) in &p.terms {
            let mut t = self.scalar(c(coeff.clone()));
            for &k in parts {
                t = t.mul(&self.power_sum(k));
            }
            out = out.add(&t);
        }
        out
    }

    /// The automorphism induced by `w ∈ O(n)` acting diagonally on `𝔱 × 𝔱*`.
    pub fn orthogonal_action(&self, w: &QMatrix, x: &CliffordElement) -> Result<CliffordElement> {
        check_orthogonal(w, self.n)?;
        let image_of = |g: usize| -> CliffordElement {
            let (base, j) = if g < self.n { (0, g) } else { (self.n, g - self.n) };
            let mut out = self.zero();
            for i in 0..self.n {
                let mut v = self.zero();
                v.coeffs[1 << (base + i)] = c(w[(i, j)].clone());
                out = out.add(&v);
            }
            out
        };
        let images: Vec<CliffordElement> = (0..2 * self.n).map(image_of).collect();
        let mut out = self.zero();
        for (mask, coeff) in x.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut t = self.scalar(coeff.clone());
            for g in 0..2 * self.n {
                if mask & (1 << g) != 0 {
                    t = t.mul(&images[g]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

impl CliffordElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        CliffordElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CliffordElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, x: &GaussianRational) -> Self {
        CliffordElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * x).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&c(q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![GaussianRational::zero(); self.coeffs.len()];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = x * y;
                let slot = &mut out[a ^ b];
                if monomial_sign(a as u32, b as u32) > 0 {
                    *slot = &*slot + t;
                } else {
                    *slot = &*slot - t;
                }
            }
        }
        CliffordElement { n: self.n, coeffs: out }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = CliffordAlgebra::new(self.n).one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Conjugate-linear anti-involution fixing every generator.
    pub fn star(&self) -> Self {
        CliffordElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(mask, x)| {
                    let k = (mask as u32).count_ones();
                    let conj = x.conj();
                    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                        conj
                    } else {
                        -conj
                    }
                })
                .collect(),
        }
    }
}

/// `Σ coeff · p_{k₁} p_{k₂} ⋯` over the listed terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    pub terms: Vec<(BigRational, Vec<usize>)>,
}

impl SymmetricPolynomial {
    pub fn power_sum(k: usize) -> Self {
        SymmetricPolynomial {
            terms: vec![(q(1), vec![k])],
        }
    }

    /// `e₂ = ½(p₁² − p₂)`.
    pub fn elementary_two() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        SymmetricPolynomial {
            terms: vec![(half.clone(), vec![1, 1]), (-half, vec![2])],
        }
    }
}

fn check_orthogonal(w: &QMatrix, n: usize) -> Result<()> {
    if w.rows() != n || w.cols() != n || !w.transpose().mul(w).is_identity() {
        return Err(Error::NotOrthogonal);
    }
    Ok(())
}

pub fn projection_p(n: usize) -> CliffordElement {
    CliffordAlgebra::new(n).projection_p()
}

/// `dim P·Cℓ·P`, which has to be 1.
pub fn corner_dimension(n: usize) -> Result<usize> {
    let d = CliffordAlgebra::new(n).corner_dimension();
    if d != 1 {
        return Err(Error::Inconsistent(format!("corner of Cl({n}) has dimension {d}")));
    }
    Ok(d)
}

/// Whether `p(e₁ε¹, …, eₙεⁿ)` is fixed by `w`.
pub fn symmetric_invariance_check(n: usize, w: &QMatrix, p: &SymmetricPolynomial) -> Result<bool> {
    let alg = CliffordAlgebra::new(n);
    let x = alg.evaluate(p);
    Ok(alg.orthogonal_action(w, &x)? == x)
}

/// Checks `u eⱼ u* = eⱼ`, `u εʲ u* = −εʲ` and `u P u* = P∨`.
pub fn u_conjugation_check(n: usize) -> bool {
    let alg = CliffordAlgebra::new(n);
    let u = alg.u();
    let us = u.star();
    let conj = |x: &CliffordElement| u.mul(x).mul(&us);
    (0..n).all(|j| conj(&alg.e(j)) == alg.e(j) && conj(&alg.eps(j)) == alg.eps(j).neg())
        && conj(&alg.projection_p()) == alg.projection_p_dual()
}

/// Weyl groups with rational orthogonal realizations, as generator lists:
/// `A_r` by permutations of `ℝ^{r+1}`, `B_r`/`C_r` by signed permutations
/// of `ℝ^r`, `D_r` by evenly signed permutations and `G₂` by permutations
/// and `−1` on `ℝ³`.
pub fn orthogonal_weyl_generators(series: crate::rootdata::Series, rank: usize) -> (usize, Vec<QMatrix>) {
    use crate::rootdata::Series;
    let swap = |dim: usize, i: usize| -> QMatrix {
        QMatrix::from_fn(dim, dim, |r, c| {
            let target = if c == i {
                i + 1
            } else if c == i + 1 {
                i
            } else {
                c
            };
            if r == target {
                q(1)
            } else {
                q(0)
            }
        })
    };
    let flip_last = |dim: usize| -> QMatrix {
        QMatrix::from_fn(dim, dim, |r, c| {
            if r != c {
                q(0)
            } else if r == dim - 1 {
                q(-1)
            } else {
                q(1)
            }
        })
    };
    match series {
        Series::A => {
            let d = rank + 1;
            (d, (0..rank).map(|i| swap(d, i)).collect())
        }
        Series::B | Series::C => {
            let mut g: Vec<QMatrix> = (0..rank - 1).map(|i| swap(rank, i)).collect();
            g.push(flip_last(rank));
            (rank, g)
        }
        Series::D => {
            let mut g: Vec<QMatrix> = (0..rank - 1).map(|i| swap(rank, i)).collect();
            // reflection in e_{r-1} + e_r
            g.push(QMatrix::from_fn(rank, rank, |r, c| {
                if r >= rank - 2 && c >= rank - 2 {
                    if r == c {
                        q(0)
                    } else {
                        q(-1)
                    }
                } else if r == c {
                    q(1)
                } else {
                    q(0)
                }
            }));
            (rank, g)
        }
        Series::G => {
            let minus = QMatrix::from_fn(3, 3, |r, c| if r == c { q(-1) } else { q(0) });
            (3, vec![swap(3, 0), swap(3, 1), minus])
        }
        Series::E | Series::F => (0, Vec::new()),
    }
}

/// Closure of a set of rational matrices under multiplication.
pub fn matrix_closure(gens: &[QMatrix], dim: usize) -> Vec<QMatrix> {
    let mut out = vec![QMatrix::identity(dim)];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let x = out[i].mul(g);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        i += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
}

/// Every identity of the suite for a given `n`.
pub fn clifford_suite(n: usize) -> Vec<CheckOutcome> {
    let alg = CliffordAlgebra::new(n);
    let p = alg.projection_p();
    let mut out = Vec::new();
    let mut push = |name: String, passed: bool| out.push(CheckOutcome { name, passed });
    push("generators square to 1".into(), (0..2 * n).all(|g| {
        let x = alg.monomial(1 << g, GaussianRational::one());
        x.mul(&x) == alg.one()
    }));
    push("distinct generators anticommute".into(), (0..2 * n).all(|a| {
        (0..2 * n).filter(|&b| b != a).all(|b| {
            let x = alg.monomial(1 << a, GaussianRational::one());
            let y = alg.monomial(1 << b, GaussianRational::one());
            x.mul(&y) == y.mul(&x).neg()
        })
    }));
    push("(e_j eps^j)^2 = -1".into(), (0..n).all(|j| alg.x(j).mul(&alg.x(j)) == alg.one().neg()));
    push("P^2 = P".into(), p.mul(&p) == p);
    push("P* = P".into(), p.star() == p);
    push(format!("dim Cl.P = {}", 1 << n), alg.left_ideal_dimension() == 1 << n);
    push("dim P.Cl.P = 1".into(), alg.corner_dimension() == 1);
    push("u-conjugation identities".into(), u_conjugation_check(n));

    if n == 2 {
        let rot = QMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => q(-1),
            (1, 0) => q(1),
            _ => q(0),
        });
        push(
            "x1 x2 invariant under rotation".into(),
            symmetric_invariance_check(2, &rot, &SymmetricPolynomial::elementary_two()).unwrap_or(false),
        );
    }
    let groups = invariance_groups(n);
    for (label, elements) in groups {
        for k in 1..=4 {
            let poly = SymmetricPolynomial::power_sum(k);
            let ok = elements
                .iter()
                .all(|w| symmetric_invariance_check(n, w, &poly).unwrap_or(false));
            push(format!("p_{k} invariant under {label}"), ok);
        }
    }
    out
}

/// Orthogonal Weyl group actions used for the invariance checks in
/// dimension `n`.
pub fn invariance_groups(n: usize) -> Vec<(String, Vec<QMatrix>)> {
    use crate::rootdata::Series;
    let mut out = Vec::new();
    let add = |out: &mut Vec<(String, Vec<QMatrix>)>, label: &str, s: Series, r: usize| {
        let (d, gens) = orthogonal_weyl_generators(s, r);
        if d == n && !gens.is_empty() {
            out.push((label.to_string(), matrix_closure(&gens, d)));
        }
    };
    match n {
        1 => add(&mut out, "W(A1)", Series::B, 1),
        2 => {
            // s₁ of W(A₂) with α₁ along the first axis.
            let s1 = QMatrix::from_fn(2, 2, |r, c| {
                if r != c {
                    q(0)
                } else if r == 0 {
                    q(-1)
                } else {
                    q(1)
                }
            });
            out.push(("s1 of W(A2)".to_string(), vec![QMatrix::identity(2), s1]));
            add(&mut out, "W(B2)", Series::B, 2);
        }
        3 => {
            add(&mut out, "W(A2)", Series::A, 2);
            add(&mut out, "W(B3)", Series::B, 3);
            add(&mut out, "W(G2)", Series::G, 2);
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_rule() {
        // e1·e0 = −e0·e1
        assert_eq!(monomial_sign(0b10, 0b01), -1);
        assert_eq!(monomial_sign(0b01, 0b10), 1);
        assert_eq!(monomial_sign(0b11, 0b11), -1);
    }

    #[test]
    fn n1_projection() {
        let alg = CliffordAlgebra::new(1);
        let p = alg.projection_p();
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.star(), p);
        assert_eq!(alg.left_ideal_dimension(), 2);
        assert_eq!(alg.corner_dimension(), 1);
    }

    #[test]
    fn u_conjugation() {
        assert!(u_conjugation_check(1));
        assert!(u_conjugation_check(2));
    }

    #[test]
    fn non_orthogonal_rejected() {
        let w = QMatrix::from_fn(2, 2, |r, c| if r == c { q(2) } else { q(0) });
        assert!(matches!(
            symmetric_invariance_check(2, &w, &SymmetricPolynomial::power_sum(1)),
            Err(Error::NotOrthogonal)
        ));
    }

    #[test]
    fn elementary_two_under_rotation() {
        let rot = QMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => q(-1),
            (1, 0) => q(1),
            _ => q(0),
        });
        assert!(symmetric_invariance_check(2, &rot, &SymmetricPolynomial::elementary_two()).unwrap());
    }

    #[test]
    fn suite_small() {
        for n in 1..=3 {
            for c in clifford_suite(n) {
                assert!(c.passed, "n = {n}: {}", c.name);
            }
        }
    }
}
