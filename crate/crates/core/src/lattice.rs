//! Integer intersection lattices with a distinguished canonical class.
//!
//! A lattice is the numerical shadow of `H²(X, Z)` on a smooth projective
//! surface: a symmetric Gram matrix plus the coordinates of `K_X`. Blowups and
//! contractions of `(−1)`-classes return new lattices together with the
//! explicit coordinate maps, so every surgery can be replayed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::exact;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected rank {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("not a numerical (-1)-class: e·e = {self_int}, K·e = {canonical}")]
    NotMinusOneClass { self_int: i64, canonical: i64 },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

/// Integer coordinates of a divisor class in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    /// The `i`-th basis vector.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl From<Vec<i64>> for DivisorClass {
    fn from(v: Vec<i64>) -> Self {
        DivisorClass(v)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// Arithmetic on classes panics on length mismatch or overflow; both indicate
// a class from the wrong lattice, which is a caller bug.
impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "adding classes of different rank");
        DivisorClass(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.checked_add(*b).expect("class coefficient overflow"))
                .collect(),
        )
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(
            rhs.0
                .iter()
                .map(|a| a.checked_mul(self).expect("class coefficient overflow"))
                .collect(),
        )
    }
}

/// Inertia triple of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature {
            positive,
            negative,
            zero,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    EmbedAfterBlowup,
    PushforwardAfterContraction,
}

/// Linear map between lattice coordinates; `matrix[target][source]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    matrix: Vec<Vec<i64>>,
    source_rank: usize,
    kind: MapKind,
}

impl LatticeMap {
    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, class: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        if class.len() != self.source_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.source_rank,
                found: class.len(),
            });
        }
        self.matrix
            .iter()
            .map(|row| {
                let s: i128 = row
                    .iter()
                    .zip(class.coeffs())
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                i64::try_from(s).map_err(|_| LatticeError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DivisorClass)
    }
}

/// Symmetric integer pairing with a canonical class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<i64>>, canonical: DivisorClass) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        if canonical.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: canonical.len(),
            });
        }
        Ok(IntersectionLattice { gram, canonical })
    }

    /// `P²`: rank 1, `H² = 1`, `K = −3H`.
    pub fn projective_plane() -> Self {
        IntersectionLattice {
            gram: vec![vec![1]],
            canonical: DivisorClass(vec![-3]),
        }
    }

    /// Hirzebruch surface `F_β` in the basis `(C, F)` with `C² = −β`,
    /// `C·F = 1`, `F² = 0`, `K = −2C − (β + 2)F`.
    pub fn hirzebruch(beta: i64) -> Self {
        IntersectionLattice {
            gram: vec![vec![-beta, 1], vec![1, 0]],
            canonical: DivisorClass(vec![-2, -(beta + 2)]),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    fn check(&self, c: &DivisorClass) -> Result<(), LatticeError> {
        if c.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: c.len(),
            });
        }
        Ok(())
    }

    /// `aᵀ · gram · b`.
    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        let mut s: i128 = 0;
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs().iter().enumerate() {
                s += ai as i128 * self.gram[i][j] as i128 * bj as i128;
            }
        }
        i64::try_from(s).map_err(|_| LatticeError::Overflow)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<i64, LatticeError> {
        self.pairing(a, a)
    }

    /// Gram matrix of a list of classes under the pairing.
    pub fn gram_of(&self, classes: &[DivisorClass]) -> Result<Vec<Vec<i64>>, LatticeError> {
        classes
            .iter()
            .map(|a| classes.iter().map(|b| self.pairing(a, b)).collect())
            .collect()
    }

    /// Negative definiteness of the Gram matrix of `subset`.
    pub fn is_negative_definite(&self, subset: &[DivisorClass]) -> Result<bool, LatticeError> {
        Ok(is_negative_definite(&self.gram_of(subset)?))
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    pub fn is_surface_realizable(&self) -> bool {
        self.signature() == Signature::new(1, self.rank() - 1, 0)
    }

    /// Blow up a point: `L ⊕ ⟨−1⟩`, `K' = K + e`.
    pub fn blowup(&self) -> (IntersectionLattice, LatticeMap, DivisorClass) {
        let n = self.rank();
        let mut gram: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(0);
                r
            })
            .collect();
        let mut last = vec![0; n + 1];
        last[n] = -1;
        gram.push(last);
        let mut canonical = self.canonical.0.clone();
        canonical.push(1);
        let matrix = (0..=n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let embed = LatticeMap {
            matrix,
            source_rank: n,
            kind: MapKind::EmbedAfterBlowup,
        };
        (
            IntersectionLattice {
                gram,
                canonical: DivisorClass(canonical),
            },
            embed,
            DivisorClass::basis(n + 1, n),
        )
    }

    /// Contract a numerical `(−1)`-class `e`.
    ///
    /// The new lattice is `e^⊥` in the Hermite basis of the projection
    /// `v ↦ v + (v·e)e`; `push` is that projection in new coordinates, so
    /// pushed pairings satisfy `π_*a · π_*b = a·b + (a·e)(b·e)`.
    pub fn contract(&self, e: &DivisorClass) -> Result<(IntersectionLattice, LatticeMap), LatticeError> {
        self.check(e)?;
        let self_int = self.pairing(e, e)?;
        let canonical = self.pairing(&self.canonical, e)?;
        if self_int != -1 || canonical != -1 {
            return Err(LatticeError::NotMinusOneClass {
                self_int,
                canonical,
            });
        }
        let n = self.rank();
        let project = |v: &DivisorClass| -> Result<Vec<BigInt>, LatticeError> {
            let ve = BigInt::from(self.pairing(v, e)?);
            Ok(v.to_big()
                .into_iter()
                .zip(e.to_big())
                .map(|(x, y)| x + &ve * y)
                .collect())
        };
        let images: Vec<Vec<BigInt>> = (0..n)
            .map(|i| project(&DivisorClass::basis(n, i)))
            .collect::<Result<_, _>>()?;
        let basis = exact::hermite_rows(&images);
        debug_assert_eq!(basis.len() + 1, n);
        let basis_i64: Vec<DivisorClass> = basis
            .iter()
            .map(|row| exact::to_i64_vec(row).map(DivisorClass).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()?;
        let gram = self.gram_of(&basis_i64)?;
        // coordinates of the projection of each old basis vector
        let mut columns = Vec::with_capacity(n);
        for img in &images {
            let coords = exact::coordinates_in_echelon(&basis, img)
                .expect("projection lies in the Hermite span");
            columns.push(exact::to_i64_vec(&coords).ok_or(LatticeError::Overflow)?);
        }
        let matrix: Vec<Vec<i64>> = (0..n - 1)
            .map(|r| columns.iter().map(|col| col[r]).collect())
            .collect();
        let push = LatticeMap {
            matrix,
            source_rank: n,
            kind: MapKind::PushforwardAfterContraction,
        };
        let canonical = push.apply(&self.canonical)?;
        Ok((IntersectionLattice { gram, canonical }, push))
    }

    /// `dim_Q` of the kernel of `Q^k → H², generator_i ↦ classes[i]`.
    pub fn kernel_dim(&self, classes: &[DivisorClass]) -> Result<usize, LatticeError> {
        for c in classes {
            self.check(c)?;
        }
        Ok(kernel_dim(classes))
    }
}

/// Number of classes minus the rank of their coefficient matrix.
pub fn kernel_dim(classes: &[DivisorClass]) -> usize {
    let m: Vec<Vec<BigInt>> = classes.iter().map(|c| c.to_big()).collect();
    classes.len() - exact::rank(&m)
}

/// Sylvester's criterion: `(−1)^k · Δ_k > 0` for every leading minor.
pub fn is_negative_definite(gram: &[Vec<i64>]) -> bool {
    if gram.iter().enumerate().any(|(i, row)| row[i] >= 0) {
        return false;
    }
    if let Some(answer) = exact::sylvester_negative_i128(gram) {
        return answer;
    }
    let m = exact::to_big(gram);
    exact::leading_minors(&m).iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

pub fn signature_of(gram: &[Vec<i64>]) -> Signature {
    let (p, n, z) = exact::inertia(&exact::to_big(gram));
    Signature::new(p, n, z)
}

pub fn determinant(gram: &[Vec<i64>]) -> Option<i64> {
    exact::determinant(&exact::to_big(gram)).to_i64()
}
