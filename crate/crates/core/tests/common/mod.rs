//! Independent oracles shared by the integration tests. None of these reuse
//! the library's linear algebra.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Determinant by cofactor expansion along the first row.
pub fn det_laplace(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_laplace(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Sum of all `k × k` principal minors.
pub fn principal_minor_sum(m: &[Vec<i64>], k: usize) -> i128 {
    subsets(m.len(), k)
        .into_iter()
        .map(|s| {
            let sub: Vec<Vec<i128>> = s.iter().map(|&i| s.iter().map(|&j| m[i][j] as i128).collect()).collect();
            det_laplace(&sub)
        })
        .sum()
}

/// Eigen-sign test: a real symmetric matrix is negative definite iff every
/// coefficient of `det(t·I − A) = Σ (−1)^k E_k t^{n−k}` is positive.
pub fn nd_by_eigen_signs(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let e = principal_minor_sum(m, k);
        if k % 2 == 0 {
            e > 0
        } else {
            e < 0
        }
    })
}

/// Rational `L·D·Lᵀ` without pivoting; negative definite iff every pivot is
/// negative (a zero pivot means a singular leading block).
pub fn nd_by_ldl(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    for k in 0..n {
        let d = a[k][k].clone();
        if !d.is_negative() {
            return false;
        }
        for i in k + 1..n {
            let l = &a[i][k] / &d;
            for j in k + 1..n {
                let t = &l * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

/// Determinant over the rationals by Gaussian elimination with pivoting.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

/// Coefficients (from `t^0`) of `det(A − t·I)`, by Lagrange interpolation
/// through `t = 0, 1, …, n`.
pub fn charpoly_by_interpolation(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|&t| {
            let shifted: Vec<Vec<BigRational>> = (0..n)
                .map(|i| (0..n).map(|j| rat(m[i][j] - if i == j { t } else { 0 })).collect())
                .collect();
            det_rational(&shifted)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, yi) in ys.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b.clone();
                next[k] -= b * rat(xj);
            }
            basis = next;
            denom *= rat(xs[i] - xj);
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * yi / &denom;
        }
    }
    coeffs
}

fn sign_changes(coeffs: &[BigRational]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(positive, negative, zero)` eigenvalue counts from the interpolated
/// characteristic polynomial (all roots real, so Descartes is exact).
pub fn inertia_oracle(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let p = charpoly_by_interpolation(m);
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let pos = sign_changes(&p);
    let flipped: Vec<BigRational> = p
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let neg = sign_changes(&flipped);
    (pos, neg, zero)
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let t = &f * &a[rank][j];
                    a[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Hirzebruch–Jung continuants: `a = K(c_1, …, c_n)`, `b = K(c_2, …, c_n)`
/// with `c_i = −λ_i`, via `K_k = c_k K_{k−1} − K_{k−2}`.
pub fn hirzebruch_jung(chain: &[i64]) -> (BigInt, BigInt) {
    fn continuant(cs: &[i64]) -> BigInt {
        let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
        for &c in cs {
            let next = BigInt::from(c) * &cur - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }
    let cs: Vec<i64> = chain.iter().map(|&l| -l).collect();
    (continuant(&cs), continuant(&cs[1..]))
}

/// `−λ_1 + 1/(λ_2 + 1/(λ_3 + …))`, with only the leading sign flipped.
pub fn mixed_sign_fraction(chain: &[i64]) -> BigRational {
    let mut tail: Option<BigRational> = None;
    for &l in chain[1..].iter().rev() {
        tail = Some(match tail {
            None => rat(l),
            Some(t) => rat(l) + t.recip(),
        });
    }
    match tail {
        None => rat(-chain[0]),
        Some(t) => rat(-chain[0]) + t.recip(),
    }
}

/// Hodge-admissible boundary Gram: at most one positive eigenvalue, and no
/// radical when a positive eigenvalue is present.
pub fn hodge_admissible(gram: &[Vec<i64>]) -> bool {
    let (p, _, z) = inertia_oracle(gram);
    p == 0 || (p == 1 && z == 0)
}
