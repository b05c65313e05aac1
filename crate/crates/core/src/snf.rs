//! Smith normal form over the integers.
//!
//! For an integer matrix `M` we compute unimodular `U`, `V` with `U M V = D`,
//! `D` diagonal and `d_1 | d_2 | ... | d_r`, all with big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Matrix, ZMatrix};

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: ZMatrix,
    pub diagonal: ZMatrix,
    pub right: ZMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n)
            .map(|i| self.diagonal[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Invariant factors that are not units (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }
}

struct Work {
    a: ZMatrix,
    u: ZMatrix,
    v: ZMatrix,
}

impl Work {
    // row_i -= f * row_j
    fn row_axpy(&mut self, i: usize, j: usize, f: &BigInt) {
        for c in 0..self.a.cols() {
            let t = &self.a[(j, c)] * f;
            self.a[(i, c)] -= t;
        }
        for c in 0..self.u.cols() {
            let t = &self.u[(j, c)] * f;
            self.u[(i, c)] -= t;
        }
    }

    // col_i -= f * col_j
    fn col_axpy(&mut self, i: usize, j: usize, f: &BigInt) {
        for r in 0..self.a.rows() {
            let t = &self.a[(r, j)] * f;
            self.a[(r, i)] -= t;
        }
        for r in 0..self.v.rows() {
            let t = &self.v[(r, j)] * f;
            self.v[(r, i)] -= t;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            self.a[(i, c)] = -self.a[(i, c)].clone();
        }
        for c in 0..self.u.cols() {
            self.u[(i, c)] = -self.u[(i, c)].clone();
        }
    }
}

pub fn smith_normal_form(m: &ZMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        a: m.clone(),
        u: Matrix::identity(rows),
        v: Matrix::identity(cols),
    };

    for k in 0..rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                let x = &w.a[(r, c)];
                if !x.is_zero()
                    && best.is_none_or(|(br, bc)| x.abs() < w.a[(br, bc)].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        w.swap_rows(k, pr);
        w.swap_cols(k, pc);

        loop {
            // Clear column k below the pivot.
            let mut dirty = false;
            for r in k + 1..rows {
                if !w.a[(r, k)].is_zero() {
                    let f = w.a[(r, k)].div_floor(&w.a[(k, k)]);
                    w.row_axpy(r, k, &f);
                    if !w.a[(r, k)].is_zero() {
                        dirty = true;
                    }
                }
            }
            // Clear row k right of the pivot.
            for c in k + 1..cols {
                if !w.a[(k, c)].is_zero() {
                    let f = w.a[(k, c)].div_floor(&w.a[(k, k)]);
                    w.col_axpy(c, k, &f);
                    if !w.a[(k, c)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; move it in.
                let mut best = (k, k);
                for r in k..rows {
                    if !w.a[(r, k)].is_zero() && w.a[(r, k)].abs() < w.a[best].abs() {
                        best = (r, k);
                    }
                }
                for c in k..cols {
                    if !w.a[(k, c)].is_zero() && w.a[(k, c)].abs() < w.a[best].abs() {
                        best = (k, c);
                    }
                }
                w.swap_rows(k, best.0);
                w.swap_cols(k, best.1);
                continue;
            }
            // Divisibility: every trailing entry must be a multiple of the pivot.
            let offender = (k + 1..rows)
                .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !w.a[(r, c)].is_multiple_of(&w.a[(k, k)]));
            match offender {
                Some((r, _)) => {
                    // row_k += row_r brings the offender into row k.
                    w.row_axpy(k, r, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if w.a[(k, k)].is_negative() {
            w.negate_row(k);
        }
    }

    SmithForm {
        left: w.u,
        diagonal: w.a,
        right: w.v,
    }
}
