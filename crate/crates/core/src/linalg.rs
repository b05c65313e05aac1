//! Dense exact matrices over integers, rationals and Gaussian rationals.
//!
//! Everything here is exact: integer matrices use `i64` (the small matrices
//! of Weyl group elements and lattice bases) or [`BigInt`] (chain complex
//! differentials), rational matrices use [`BigRational`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IMatrix = Matrix<i64>;
pub type ZMatrix = Matrix<BigInt>;
pub type QMatrix = Matrix<BigRational>;

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_cols(dim: usize, cols: &[Vec<T>]) -> Self
    where
        T: Zero,
    {
        let mut m = Matrix::from_fn(dim, cols.len(), |_, _| T::zero());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), dim);
            for (r, x) in v.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Submatrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }
}

impl<T: Clone + Zero + One + PartialEq> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out: Self = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| {
                    acc + self[(r, c)].clone() * v[c].clone()
                })
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + rhs[(r, c)].clone()
        })
    }
}

impl<T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T>> Matrix<T> {
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - rhs[(r, c)].clone()
        })
    }

    pub fn minus_identity(&self) -> Self {
        self.sub(&Matrix::identity(self.rows))
    }
}

// ---------------------------------------------------------------------------
// Conversions

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl IMatrix {
    pub fn to_z(&self) -> ZMatrix {
        self.map(|&x| BigInt::from(x))
    }

    pub fn to_q(&self) -> QMatrix {
        self.map(|&x| q(x))
    }
}

impl ZMatrix {
    pub fn to_q(&self) -> QMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Narrow to `i64`; `None` if any entry overflows.
    pub fn to_i64(&self) -> Option<IMatrix> {
        let data: Option<Vec<i64>> = self.data.iter().map(|x| i64::try_from(x).ok()).collect();
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }
}

impl QMatrix {
    /// Integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IMatrix> {
        let data: Option<Vec<i64>> = self
            .data
            .iter()
            .map(|x| {
                if x.is_integer() {
                    i64::try_from(x.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect();
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

// ---------------------------------------------------------------------------
// Field linear algebra (generic over any exact field type)

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T>(m: &mut Matrix<T>) -> Vec<usize>
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T>,
{
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = T::one() / m[(row, col)].clone();
        for c in col..m.cols {
            m[(row, c)] = m[(row, c)].clone() * inv.clone();
        }
        for r in 0..m.rows {
            if r != row && !m[(r, col)].is_zero() {
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = m[(row, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<T>(m: &Matrix<T>) -> usize
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T>,
{
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of the right kernel, as columns of the returned matrix.
pub fn kernel<T>(m: &Matrix<T>) -> Matrix<T>
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T>,
{
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(m.cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k[(f, j)] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            k[(p, j)] = T::zero() - w[(i, f)].clone();
        }
    }
    k
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<T>(m: &Matrix<T>) -> Option<Matrix<T>>
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T>,
{
    assert!(m.is_square());
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else if c - n == r {
            T::one()
        } else {
            T::zero()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
}

/// Solve `m x = b` for a matrix `m` with linearly independent columns.
/// Returns `None` when `b` is not in the column span.
pub fn solve<T>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>>
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T>,
{
    let n = m.cols;
    let mut aug = Matrix::from_fn(m.rows, n + 1, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    assert_eq!(pivots.len(), n, "columns are not independent");
    Some((0..n).map(|i| aug[(i, n)].clone()).collect())
}

pub fn determinant<T>(m: &Matrix<T>) -> T
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T>,
{
    assert!(m.is_square());
    let n = m.rows;
    let mut w = m.clone();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !w[(r, col)].is_zero()) else {
            return T::zero();
        };
        if p != col {
            w.swap_rows(p, col);
            det = T::zero() - det;
        }
        let pivot = w[(col, col)].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if !w[(r, col)].is_zero() {
                let f = w[(r, col)].clone() / pivot.clone();
                for c in col..n {
                    let v = w[(col, c)].clone();
                    w[(r, c)] = w[(r, c)].clone() - f.clone() * v;
                }
            }
        }
    }
    det
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_determinant(m: &ZMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut w = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if w[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !w[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            w.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &w[(i, j)] * &w[(k, k)] - &w[(i, k)] * &w[(k, j)];
                w[(i, j)] = v / &prev;
            }
        }
        prev = w[(k, k)].clone();
    }
    sign * w[(n - 1, n - 1)].clone()
}

// ---------------------------------------------------------------------------
// Integer lattices

/// Column Hermite normal form of an integer matrix: a lower-triangular basis
/// of the column lattice with positive pivots and reduced off-pivot entries.
/// Zero columns are dropped.
pub fn column_hnf(m: &ZMatrix) -> ZMatrix {
    let mut w = m.clone();
    let rows = w.rows;
    let cols = w.cols;
    let mut pivot_col = 0;
    let mut pivot_rows = Vec::new();
    for r in 0..rows {
        if pivot_col == cols {
            break;
        }
        // Euclid across columns pivot_col.. on row r.
        loop {
            let nonzero: Vec<usize> = (pivot_col..cols).filter(|&c| !w[(r, c)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by_key(|&&c| w[(r, c)].abs())
                .expect("nonempty");
            w.swap_cols(pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..cols {
                if !w[(r, c)].is_zero() {
                    let f = w[(r, c)].div_floor(&w[(r, pivot_col)]);
                    for rr in 0..rows {
                        let v = &w[(rr, c)] - &f * &w[(rr, pivot_col)];
                        w[(rr, c)] = v;
                    }
                    if !w[(r, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if w[(r, pivot_col)].is_zero() {
            continue;
        }
        if w[(r, pivot_col)].is_negative() {
            for rr in 0..rows {
                w[(rr, pivot_col)] = -w[(rr, pivot_col)].clone();
            }
        }
        pivot_rows.push(r);
        pivot_col += 1;
    }
    // Reduce entries left of each pivot.
    for (k, &r) in pivot_rows.iter().enumerate() {
        for c in 0..k {
            let f = w[(r, c)].div_floor(&w[(r, k)]);
            if !f.is_zero() {
                for rr in 0..rows {
                    let v = &w[(rr, c)] - &f * &w[(rr, k)];
                    w[(rr, c)] = v;
                }
            }
        }
    }
    let keep: Vec<usize> = (0..pivot_col).collect();
    let all_rows: Vec<usize> = (0..rows).collect();
    w.select(&all_rows, &keep)
}

/// Coordinates of `v` in the basis given by the columns of `basis`, if integral.
pub fn integer_coordinates(basis: &IMatrix, v: &[BigRational]) -> Option<Vec<i64>> {
    let coords = solve(&basis.to_q(), v)?;
    coords
        .into_iter()
        .map(|x| {
            if x.is_integer() {
                i64::try_from(x.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}
