//! Arithmetic in prime fields `F_p` with `p < 2^62`.

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow(a, p - 2, p)
}

pub fn from_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Representative in `(-p/2, p/2]`.
pub fn symmetric(x: u64, p: u64) -> i64 {
    if x > p / 2 {
        x as i64 - p as i64
    } else {
        x as i64
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2·order`.
pub fn splitting_prime(order: u64, exponent: u64) -> u64 {
    let e = exponent.max(1);
    let k = ((2 * order).div_ceil(e)).max(1);
    let mut p = k * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

/// Smallest generator of `F_p^×`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow(g, (p - 1) / f, p) != 1))
        .expect("prime field has a generator")
}

/// Characteristic polynomial coefficients `[c_0, …, c_{d-1}, 1]` of a square
/// matrix over `F_p` (Faddeev–LeVerrier; requires `d < p`).
pub fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let d = m.len();
    let mut coeffs = vec![0u64; d + 1];
    coeffs[d] = 1;
    let mut mk = vec![vec![0u64; d]; d];
    for k in 1..=d {
        // M_k = A·M_{k-1} + c_{d-k+1} I
        let mut next = vec![vec![0u64; d]; d];
        for i in 0..d {
            for l in 0..d {
                if mk[l].iter().all(|&x| x == 0) || m[i][l] == 0 {
                    continue;
                }
                for j in 0..d {
                    next[i][j] = add(next[i][j], mul(m[i][l], mk[l][j], p), p);
                }
            }
            next[i][i] = add(next[i][i], coeffs[d - k + 1], p);
        }
        mk = next;
        // c_{d-k} = -tr(A M_k)/k
        let mut tr = 0;
        for i in 0..d {
            for l in 0..d {
                tr = add(tr, mul(m[i][l], mk[l][i], p), p);
            }
        }
        coeffs[d - k] = sub(0, mul(tr, inv(k as u64 % p, p), p), p);
    }
    coeffs
}

pub fn eval_poly(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

/// Right kernel over `F_p`; basis vectors returned as columns-as-vectors.
pub fn kernel(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut w: Vec<Vec<u64>> = m.to_vec();
    let rows = w.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| w[r][col] != 0) else {
            continue;
        };
        w.swap(row, pr);
        let iv = inv(w[row][col], p);
        for c in 0..cols {
            w[row][c] = mul(w[row][c], iv, p);
        }
        for r in 0..rows {
            if r != row && w[r][col] != 0 {
                let f = w[r][col];
                for c in 0..cols {
                    let t = mul(f, w[row][c], p);
                    w[r][c] = sub(w[r][c], t, p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, w[i][f], p);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        let p = splitting_prime(6, 6);
        assert!(is_prime(p) && p % 6 == 1 && p > 12);
        assert_eq!(p, 13);
        let g = primitive_root(13);
        assert_eq!(g, 2);
    }

    #[test]
    fn charpoly_of_small_matrix() {
        // [[0,1],[1,0]] has x^2 - 1.
        let p = 13;
        let c = charpoly(&[vec![0, 1], vec![1, 0]], p);
        assert_eq!(c, vec![p - 1, 0, 1]);
        assert_eq!(eval_poly(&c, 1, p), 0);
        assert_eq!(eval_poly(&c, p - 1, p), 0);
    }
}
