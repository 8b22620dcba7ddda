//! Exact dense linear algebra over Q(√2).
//!
//! Rank and determinant use fraction-free (Bareiss) elimination; null spaces
//! come from a separate Gauss–Jordan reduction so the two routes can be
//! checked against each other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::{denom_lcm, Rational, RealScalar};

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<RealScalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![RealScalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = RealScalar::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix product shape mismatch");
            (0..cols).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[RealScalar]) -> Vec<RealScalar> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Scales a row by the lcm of its denominators so every entry lies in Z[√2].
/// Row scaling by a nonzero constant preserves rank and null space.
fn clear_denominators(row: &mut [RealScalar]) {
    let l = row.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(&denom_lcm(x)));
    if !l.is_one() {
        let r = Rational::from_integer(l);
        for x in row.iter_mut() {
            *x = x.scale(&r);
        }
    }
}

/// Fraction-free elimination. Returns the rank and the sign-adjusted last
/// pivot, which equals the determinant when the matrix is square and full rank.
fn bareiss(mut m: Matrix) -> (usize, RealScalar) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = RealScalar::one();
    let mut sign_flip = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign_flip = !sign_flip;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let num = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                row[j] = &num / &prev;
            }
            row[c] = RealScalar::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    if sign_flip {
        prev = -prev;
    }
    (r, prev)
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    let full = m.len().min(m.first().map_or(0, Vec::len));
    if full > 0 && modular_rank(m) == Some(full) {
        return full;
    }
    let mut m = m.clone();
    for row in m.iter_mut() {
        clear_denominators(row);
    }
    // Work on the wider orientation so that elimination runs over fewer rows.
    let cols = m.first().map_or(0, Vec::len);
    if cols < m.len() {
        m = transpose(&m);
    }
    echelon_rank(m)
}

// Forward elimination that only touches nonzero entries; cheaper than Bareiss
// on the sparse systems that reach the exact path.
fn echelon_rank(mut m: Matrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let inv = pivot_row[c].inverse().expect("nonzero pivot");
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for &j in &support {
                row[j] -= &(&f * &pivot_row[j]);
            }
            row[c] = RealScalar::zero();
        }
        r += 1;
    }
    r
}

// Rank over F_p with p = 2^61 - 1, where 2^31 is a square root of 2. Reduction
// mod p is a ring map on entries whose denominators are prime to p, so the
// result never exceeds the exact rank; a full-rank image certifies full rank.
const MODULUS: u64 = (1 << 61) - 1;
const SQRT2_MOD: u64 = 1 << 31;

fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a);
        }
        a = mod_mul(a, a);
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64) -> u64 {
    mod_pow(a, MODULUS - 2)
}

fn reduce_rational(q: &Rational) -> Option<u64> {
    let p = BigInt::from(MODULUS);
    let reduce = |n: &BigInt| -> u64 { n.mod_floor(&p).try_into().expect("reduced below modulus") };
    let d = reduce(q.denom());
    if d == 0 {
        return None;
    }
    Some(mod_mul(reduce(q.numer()), mod_inv(d)))
}

fn reduce_scalar(x: &RealScalar) -> Option<u64> {
    let a = reduce_rational(x.rational_part())?;
    let b = reduce_rational(x.sqrt2_part())?;
    Some((a + mod_mul(b, SQRT2_MOD)) % MODULUS)
}

fn modular_rank(m: &Matrix) -> Option<usize> {
    let mut rows: Vec<Vec<u64>> =
        m.iter().map(|r| r.iter().map(reduce_scalar).collect::<Option<_>>()).collect::<Option<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = mod_inv(rows[rank][c]);
        for r in rank + 1..rows.len() {
            if rows[r][c] == 0 {
                continue;
            }
            let f = mod_mul(rows[r][c], inv);
            for k in c..cols {
                let t = mod_mul(f, rows[rank][k]);
                rows[r][k] = (rows[r][k] + MODULUS - t) % MODULUS;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &Matrix) -> RealScalar {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return RealScalar::one();
    }
    let (r, last) = bareiss(m.clone());
    if r < n {
        RealScalar::zero()
    } else {
        last
    }
}

/// Reduced row echelon form by Gauss–Jordan elimination; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        for x in m[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : m x = 0}`, one vector per free column, with a 1 in that column.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<RealScalar>> {
    let mut a = m.clone();
    for row in a.iter_mut() {
        assert_eq!(row.len(), cols, "nullspace: ragged matrix");
        clear_denominators(row);
    }
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RealScalar::zero(); cols];
            v[f] = RealScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`; errors if `a` is singular.
pub fn solve(a: &Matrix, b: &[RealScalar]) -> Result<Vec<RealScalar>, Error> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::InvalidInput("singular linear system".into()));
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix by congruence
/// diagonalization (Sylvester's law of inertia).
pub fn inertia(m: &Matrix) -> Result<(usize, usize, usize), Error> {
    if !is_symmetric(m) {
        return Err(Error::NotSymmetric);
    }
    let n = m.len();
    let mut a = m.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish. Find a nonzero a[i][j] and
                // replace e_i by e_i + e_j, making the new diagonal entry 2 a[i][j].
                let Some((i, j)) =
                    (k..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    diag.extend((k..n).map(|_| RealScalar::zero()));
                    break;
                };
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += &v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += &v;
                }
                i
            }
        };
        if p != k {
            a.swap(p, k);
            for row in a.iter_mut() {
                row.swap(p, k);
            }
        }
        let d = a[k][k].clone();
        let inv = d.inverse()?;
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= &v;
            }
        }
        // The matching column step leaves the trailing block (already the
        // symmetric Schur complement) untouched and only clears row k.
        for x in a[k].iter_mut().skip(k + 1) {
            *x = RealScalar::zero();
        }
        diag.push(d);
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    Ok((pos, neg, n - pos - neg))
}
