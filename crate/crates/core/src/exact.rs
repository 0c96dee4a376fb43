//! Exact integer linear algebra on small dense matrices.
//!
//! Everything here runs on `BigInt` so intermediate minors never overflow.
//! Callers keep `i64` storage and convert at the boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type BigMatrix = Vec<Vec<BigInt>>;

pub(crate) fn to_big(m: &[Vec<i64>]) -> BigMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub(crate) fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub(crate) fn determinant(m: &BigMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
pub(crate) fn leading_minors(m: &BigMatrix) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let block: BigMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&block)
        })
        .collect()
}

/// Sylvester test on 128-bit integers by Bareiss elimination without
/// pivoting, where the `k`-th pivot is the `k`-th leading minor. `None` on
/// overflow.
pub(crate) fn sylvester_negative_i128(m: &[Vec<i64>]) -> Option<bool> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        let d = a[k][k];
        if d == 0 || (d < 0) != (k % 2 == 0) {
            return Some(false);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(d)?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = d;
    }
    Some(true)
}

/// Rank over the rationals (fraction-free elimination, any shape).
pub(crate) fn rank(m: &BigMatrix) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let g = a[r][c].clone();
            for j in c..cols {
                a[i][j] = &a[i][j] * &g - &a[r][j] * &f;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Characteristic polynomial `det(t·I − A)`, coefficients from `t^0` up to `t^n`.
///
/// Faddeev–LeVerrier; for an integer matrix every division is exact.
pub(crate) fn charpoly(m: &BigMatrix) -> Vec<BigInt> {
    let n = m.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut acc: BigMatrix = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // acc <- A·acc + c_{n-k+1}·I
        let mut next = mat_mul(m, &acc);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        acc = next;
        let prod = mat_mul(m, &acc);
        let trace: BigInt = (0..n).map(|i| prod[i][i].clone()).sum();
        let (q, rem) = trace.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero());
        coeffs[n - k] = -q;
    }
    coeffs
}

fn mat_mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let n = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); cols]; n];
    for i in 0..n {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix.
///
/// All roots of the characteristic polynomial are real, so Descartes' rule of
/// signs counts the positive ones exactly.
pub(crate) fn inertia(m: &BigMatrix) -> (usize, usize, usize) {
    let n = m.len();
    let p = charpoly(m);
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for c in p.iter().skip(zeros) {
        if c.is_zero() {
            continue;
        }
        let pos = c.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                changes += 1;
            }
        }
        last = Some(pos);
    }
    (changes, n - zeros - changes, zeros)
}

/// Nonzero rows of the Hermite normal form of the row lattice of `m`.
pub(crate) fn hermite_rows(m: &BigMatrix) -> BigMatrix {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r.. until only row r is nonzero.
        loop {
            let pivot = (r..rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in c..cols {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for j in c..cols {
                a[r][j] = -a[r][j].clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = &q * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Integer coordinates of `v` in a basis given in row echelon form.
pub(crate) fn coordinates_in_echelon(basis: &BigMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let c = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    rest.iter().all(|x| x.is_zero()).then_some(coords)
}
