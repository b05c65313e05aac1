//! Character tables by simultaneous diagonalisation of the class-sum
//! matrices over a prime field that splits every character.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{conjugacy_classes, ConjugacyClasses, MatrixGroup};
use super::modp;
use crate::error::{Error, Result};
use crate::linalg::{IMatrix, Matrix};

/// A character value as a sum of roots of unity: `Σ_k coeffs[k] ζ_n^k`.
///
/// `coeffs[k]` is the multiplicity of the eigenvalue `ζ_n^k`, so the
/// representation is canonical for a fixed element order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicValue {
    pub order: usize,
    pub coeffs: Vec<u64>,
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let root = match (self.order, k) {
                (_, 0) => String::new(),
                (n, 1) => format!("E({n})"),
                (n, k) => format!("E({n})^{k}"),
            };
            terms.push(match (a, root.is_empty()) {
                (a, true) => a.to_string(),
                (1, false) => root,
                (a, false) => format!("{a}*{root}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// One entry of the table as exposed to callers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharValue {
    Integer(i64),
    /// Sum of roots of unity in GAP's `E(n)` notation.
    Cyclotomic(String),
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    prime: u64,
    order: usize,
    classes: ConjugacyClasses,
    class_rep_words: Vec<Vec<usize>>,
    class_orders: Vec<usize>,
    inverse_class: Vec<usize>,
    /// `values[i][c] = χ_i(g_c) mod p`.
    values: Vec<Vec<u64>>,
    exact: Vec<Vec<CyclotomicValue>>,
}

/// JSON form: class data plus the table with integers or `E(n)` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterTableJson {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub class_rep_words: Vec<Vec<usize>>,
    pub table: Vec<Vec<CharValue>>,
}

pub fn character_table(g: &MatrixGroup) -> Result<CharacterTable> {
    let p = modp::splitting_prime(g.order() as u64, g.exponent() as u64);
    character_table_mod(g, p)
}

/// Character table computed modulo a caller-chosen prime, which must satisfy
/// `p ≡ 1 (mod exp G)` and `p > 2|G|`. Tables that will be compared by
/// restriction or induction must share the prime.
pub fn character_table_mod(g: &MatrixGroup, p: u64) -> Result<CharacterTable> {
    let n = g.order();
    let exp = g.exponent();
    if !modp::is_prime(p) || !(p - 1).is_multiple_of(exp as u64) || p <= 2 * n as u64 {
        return Err(Error::InvalidInput(format!(
            "prime {p} does not split a group of order {n} and exponent {exp}"
        )));
    }
    let classes = conjugacy_classes(g);
    let r = classes.len();
    let members: Vec<Vec<usize>> = (0..r).map(|c| classes.members(c).collect()).collect();
    let inverse_class: Vec<usize> = classes
        .class_reps
        .iter()
        .map(|&x| classes.class_of[g.inverse(x)])
        .collect();

    // Class matrices: (N_i)[k][j] = #{x ∈ K_i : x⁻¹ z_j ∈ K_k}.
    let class_matrix = |i: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; r]; r];
        for &x in &members[i] {
            let xi = g.inverse(x);
            for (j, &z) in classes.class_reps.iter().enumerate() {
                let k = classes.class_of[g.mul(xi, z)];
                m[k][j] += 1;
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                *v %= p;
            }
        }
        m
    };

    // Split F_p^r into common eigenspaces, one class matrix at a time.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut e = vec![0u64; r];
            e[i] = 1;
            e
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(i);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&m, &space, p)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(Error::Inconsistent(
            "class matrices did not separate the characters".into(),
        ));
    }

    let order_mod = n as u64 % p;
    let mut values = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        let inv0 = modp::inv(v[0], p);
        let w: Vec<u64> = v.iter().map(|&x| modp::mul(x, inv0, p)).collect();
        // Σ ω_k ω_{k'}/|K_k| = |G|/χ(1)²
        let mut s = 0;
        for k in 0..r {
            let t = modp::mul(w[k], w[inverse_class[k]], p);
            s = modp::add(s, modp::mul(t, modp::inv(classes.class_sizes[k] as u64 % p, p), p), p);
        }
        let d2 = modp::mul(order_mod, modp::inv(s, p), p);
        let d = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|&d| d * d == d2)
            .ok_or_else(|| Error::Inconsistent("character degree not found".into()))?;
        let row: Vec<u64> = (0..r)
            .map(|k| {
                let t = modp::mul(d, w[k], p);
                modp::mul(t, modp::inv(classes.class_sizes[k] as u64 % p, p), p)
            })
            .collect();
        values.push(row);
    }

    let class_orders: Vec<usize> = classes.class_reps.iter().map(|&x| g.element_order(x)).collect();
    // power_class[c][j] = class of g_c^j
    let power_class: Vec<Vec<usize>> = classes
        .class_reps
        .iter()
        .zip(&class_orders)
        .map(|(&x, &o)| {
            let mut out = Vec::with_capacity(o);
            let mut y = 0;
            for _ in 0..o {
                out.push(classes.class_of[y]);
                y = g.mul(y, x);
            }
            out
        })
        .collect();
    let zeta = modp::pow(modp::primitive_root(p), (p - 1) / exp as u64, p);

    let exact_row = |row: &[u64]| -> Result<Vec<CyclotomicValue>> {
        (0..r)
            .map(|c| {
                let o = class_orders[c];
                let zeta_o = modp::pow(zeta, (exp / o) as u64, p);
                let inv_o = modp::inv(o as u64 % p, p);
                let coeffs = (0..o)
                    .map(|k| {
                        let mut acc = 0;
                        for j in 0..o {
                            let e = ((o - (j * k) % o) % o) as u64;
                            let t = modp::mul(row[power_class[c][j]], modp::pow(zeta_o, e, p), p);
                            acc = modp::add(acc, t, p);
                        }
                        let a = modp::mul(acc, inv_o, p);
                        if a > row[0] {
                            Err(Error::Inconsistent("eigenvalue multiplicity out of range".into()))
                        } else {
                            Ok(a)
                        }
                    })
                    .collect::<Result<Vec<u64>>>()?;
                Ok(CyclotomicValue { order: o, coeffs })
            })
            .collect()
    };
    let mut rows: Vec<(Vec<u64>, Vec<CyclotomicValue>)> = values
        .into_iter()
        .map(|row| exact_row(&row).map(|e| (row, e)))
        .collect::<Result<_>>()?;

    let rational = |row: &[u64]| -> bool {
        (0..r).all(|c| {
            let o = class_orders[c];
            (1..o)
                .filter(|k| num_integer::gcd(*k, o) == 1)
                .all(|k| row[power_class[c][k]] == row[c])
        })
    };
    rows.sort_by(|(a, _), (b, _)| {
        a[0].cmp(&b[0])
            .then_with(|| rational(b).cmp(&rational(a)))
            .then_with(|| {
                for c in 0..r {
                    match modp::symmetric(b[c], p).cmp(&modp::symmetric(a[c], p)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    });

    let class_rep_words = classes.class_reps.iter().map(|&x| g.word(x).to_vec()).collect();
    let table = CharacterTable {
        prime: p,
        order: n,
        classes,
        class_rep_words,
        class_orders,
        inverse_class,
        values: rows.iter().map(|(v, _)| v.clone()).collect(),
        exact: rows.into_iter().map(|(_, e)| e).collect(),
    };
    table.check_orthogonality()?;
    Ok(table)
}

/// Splits `space` (a list of basis vectors, invariant under `m`) into the
/// eigenspaces of `m`.
fn split_space(m: &[Vec<u64>], space: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = m.len();
    let d = space.len();
    // Bring the basis to reduced echelon form so coordinates are read off
    // the pivot positions.
    let basis = echelon(space, p);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|v| v.iter().position(|&x| x != 0).expect("nonzero basis vector"))
        .collect();
    // restricted[a][b] = coordinate a of m·basis[b]
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|v| {
            (0..r)
                .map(|i| (0..r).fold(0, |acc, j| modp::add(acc, modp::mul(m[i][j], v[j], p), p)))
                .collect()
        })
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|a| (0..d).map(|b| images[b][pivots[a]]).collect())
        .collect();
    let poly = modp::charpoly(&restricted, p);
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        if found == d {
            break;
        }
        if modp::eval_poly(&poly, lambda, p) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        if a == b {
                            modp::sub(restricted[a][b], lambda, p)
                        } else {
                            restricted[a][b]
                        }
                    })
                    .collect()
            })
            .collect();
        let ker = modp::kernel(&shifted, d, p);
        found += ker.len();
        out.push(
            ker.iter()
                .map(|c| {
                    (0..r)
                        .map(|i| {
                            (0..d).fold(0, |acc, b| modp::add(acc, modp::mul(c[b], basis[b][i], p), p))
                        })
                        .collect()
                })
                .collect(),
        );
    }
    if found != d {
        return Err(Error::Inconsistent(
            "class matrix is not diagonalisable over the chosen prime".into(),
        ));
    }
    Ok(out)
}

fn echelon(space: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut w = space.to_vec();
    let cols = w.first().map_or(0, |v| v.len());
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..w.len()).find(|&i| w[i][col] != 0) else {
            continue;
        };
        w.swap(row, pr);
        let iv = modp::inv(w[row][col], p);
        for x in w[row].iter_mut() {
            *x = modp::mul(*x, iv, p);
        }
        for i in 0..w.len() {
            if i != row && w[i][col] != 0 {
                let f = w[i][col];
                for c in 0..cols {
                    let t = modp::mul(f, w[row][c], p);
                    w[i][c] = modp::sub(w[i][c], t, p);
                }
            }
        }
        row += 1;
    }
    w.truncate(row);
    w
}

impl CharacterTable {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn num_irreps(&self) -> usize {
        self.values.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.classes.class_sizes
    }

    pub fn class_orders(&self) -> &[usize] {
        &self.class_orders
    }

    pub fn irrep_dims(&self) -> Vec<usize> {
        self.values.iter().map(|row| row[0] as usize).collect()
    }

    /// `χ_i(g_c) mod p`.
    pub fn value_mod_p(&self, irrep: usize, class: usize) -> u64 {
        self.values[irrep][class]
    }

    pub fn exact_value(&self, irrep: usize, class: usize) -> &CyclotomicValue {
        &self.exact[irrep][class]
    }

    pub fn is_rational(&self, irrep: usize, class: usize) -> bool {
        // Galois-stable iff every primitive eigenvalue power appears equally.
        let v = &self.exact[irrep][class];
        let n = v.order;
        (1..n)
            .filter(|&k| num_integer::gcd(k, n) == 1)
            .all(|k| (0..n).all(|j| v.coeffs[j] == v.coeffs[(j * k) % n]))
    }

    pub fn value(&self, irrep: usize, class: usize) -> CharValue {
        if self.is_rational(irrep, class) {
            CharValue::Integer(modp::symmetric(self.values[irrep][class], self.prime))
        } else {
            CharValue::Cyclotomic(self.exact[irrep][class].to_string())
        }
    }

    /// The table as integers; fails if any character takes a non-rational value.
    pub fn integer_table(&self) -> Result<IMatrix> {
        let r = self.classes.len();
        for i in 0..r {
            for c in 0..r {
                if !self.is_rational(i, c) {
                    return Err(Error::NonRationalCharacter(format!(
                        "χ_{i} takes value {} on class {c}",
                        self.exact[i][c]
                    )));
                }
            }
        }
        Ok(Matrix::from_fn(r, r, |i, c| {
            modp::symmetric(self.values[i][c], self.prime)
        }))
    }

    pub fn is_integer_valued(&self) -> bool {
        self.integer_table().is_ok()
    }

    /// Inner product `⟨χ_i, χ_j⟩ = (1/|G|) Σ |K| χ_i(g) χ_j(g⁻¹)`, lifted.
    pub fn inner_product(&self, i: usize, j: usize) -> i64 {
        let p = self.prime;
        let mut acc = 0;
        for c in 0..self.classes.len() {
            let t = modp::mul(self.values[i][c], self.values[j][self.inverse_class[c]], p);
            acc = modp::add(acc, modp::mul(t, self.classes.class_sizes[c] as u64 % p, p), p);
        }
        modp::symmetric(modp::mul(acc, modp::inv(self.order as u64 % p, p), p), p)
    }

    /// First and second orthogonality relations and `Σ dim² = |G|`.
    pub fn check_orthogonality(&self) -> Result<()> {
        let r = self.classes.len();
        let p = self.prime;
        if self.values.len() != r {
            return Err(Error::Inconsistent("table is not square".into()));
        }
        let dims = self.irrep_dims();
        if dims.iter().map(|d| d * d).sum::<usize>() != self.order {
            return Err(Error::Inconsistent("squared degrees do not sum to |G|".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if self.inner_product(i, j) != (i == j) as i64 {
                    return Err(Error::Inconsistent(format!(
                        "row orthogonality fails for ({i}, {j})"
                    )));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                let mut acc = 0;
                for i in 0..r {
                    let t = modp::mul(self.values[i][a], self.values[i][self.inverse_class[b]], p);
                    acc = modp::add(acc, t, p);
                }
                let expected = if a == b {
                    (self.order / self.classes.class_sizes[a]) as u64 % p
                } else {
                    0
                };
                if acc != expected {
                    return Err(Error::Inconsistent(format!(
                        "column orthogonality fails for ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> CharacterTableJson {
        let r = self.classes.len();
        CharacterTableJson {
            order: self.order,
            class_sizes: self.classes.class_sizes.clone(),
            class_rep_words: self.class_rep_words.clone(),
            table: (0..r)
                .map(|i| (0..r).map(|c| self.value(i, c)).collect())
                .collect(),
        }
    }
}

/// A homomorphism of representation rings in irreducible bases.
///
/// `matrix[(a, b)]` is the coefficient of target irrep `a` in the image of
/// source irrep `b`, so the matrix acts on coefficient column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepRingMap {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub matrix: IMatrix,
}

impl RepRingMap {
    pub fn transpose(&self) -> RepRingMap {
        RepRingMap {
            source_dims: self.target_dims.clone(),
            target_dims: self.source_dims.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn compose(&self, first: &RepRingMap) -> RepRingMap {
        RepRingMap {
            source_dims: first.source_dims.clone(),
            target_dims: self.target_dims.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.mul_vec(v)
    }
}

/// Restriction `R(big) → R(small)` along the embedding `h ↦ embed(h)`.
///
/// `embed` must send every element of `small` into `big` and be an injective
/// homomorphism (typically the identity or a conjugation).
pub fn restriction_map_along(
    big: &MatrixGroup,
    big_table: &CharacterTable,
    small: &MatrixGroup,
    small_table: &CharacterTable,
    embed: impl Fn(&IMatrix) -> IMatrix,
) -> Result<RepRingMap> {
    if big_table.prime != small_table.prime {
        return Err(Error::IncompatiblePrimes(big_table.prime, small_table.prime));
    }
    let p = big_table.prime;
    let sc = small_table.classes();
    // Big class of each small class representative.
    let image_class: Vec<usize> = sc
        .class_reps
        .iter()
        .map(|&h| {
            big.index_of(&embed(small.element(h)))
                .map(|x| big_table.classes().class_of[x])
                .ok_or_else(|| Error::NotSubgroup("element not in the larger group".into()))
        })
        .collect::<Result<_>>()?;
    let rb = big_table.num_irreps();
    let rs = small_table.num_irreps();
    let inv_h = modp::inv(small.order() as u64 % p, p);
    let mut m = IMatrix::zeros(rs, rb);
    for chi in 0..rb {
        for psi in 0..rs {
            let mut acc = 0;
            for c in 0..sc.len() {
                let t = modp::mul(
                    big_table.values[chi][image_class[c]],
                    small_table.values[psi][small_table.inverse_class[c]],
                    p,
                );
                acc = modp::add(acc, modp::mul(t, sc.class_sizes[c] as u64 % p, p), p);
            }
            let mult = modp::symmetric(modp::mul(acc, inv_h, p), p);
            if mult < 0 || mult as u64 > big_table.values[chi][0] {
                return Err(Error::Inconsistent("restriction multiplicity out of range".into()));
            }
            m[(psi, chi)] = mult;
        }
    }
    Ok(RepRingMap {
        source_dims: big_table.irrep_dims(),
        target_dims: small_table.irrep_dims(),
        matrix: m,
    })
}

pub fn restriction_map(
    big: &MatrixGroup,
    big_table: &CharacterTable,
    small: &MatrixGroup,
    small_table: &CharacterTable,
) -> Result<RepRingMap> {
    if !small.is_subgroup_of(big) {
        return Err(Error::NotSubgroup("matrix sets are not nested".into()));
    }
    restriction_map_along(big, big_table, small, small_table, |h| h.clone())
}

/// Induction `R(small) → R(big)`, the transpose of restriction.
pub fn induction_map(
    small: &MatrixGroup,
    small_table: &CharacterTable,
    big: &MatrixGroup,
    big_table: &CharacterTable,
) -> Result<RepRingMap> {
    Ok(restriction_map(big, big_table, small, small_table)?.transpose())
}
