//! Boundary shapes and log surface pairs `(X, D)`.
//!
//! A type II boundary is a smooth elliptic curve, a nodal rational curve, or a
//! cycle of smooth rational curves `D_1 + … + D_n` whose self-intersections
//! form the type vector `(λ_1, …, λ_n)`. Adjacent components meet once
//! (twice when `n = 2`); every component meets the rest of `D` with total
//! multiplicity 2.

use std::fmt;

use thiserror::Error;

use crate::lattice::{self, DivisorClass, IntersectionLattice, LatticeError, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("a circular boundary needs at least 2 components, got {0}")]
    TooFewComponents(usize),
    #[error("realization has {found} boundary classes, shape has {expected} components")]
    ComponentCount { expected: usize, found: usize },
    #[error("realization does not match shape: D{i}·D{j} = {found}, expected {expected}")]
    PairingMismatch {
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundaryShape {
    Elliptic { self_int: i64 },
    Nodal { self_int: i64 },
    Circular { lambdas: Vec<i64> },
}

impl BoundaryShape {
    pub fn circular(lambdas: Vec<i64>) -> Result<Self, BoundaryError> {
        if lambdas.len() < 2 {
            return Err(BoundaryError::TooFewComponents(lambdas.len()));
        }
        Ok(BoundaryShape::Circular { lambdas })
    }

    /// `μ(D)`, the number of irreducible components.
    pub fn component_count(&self) -> usize {
        match self {
            BoundaryShape::Elliptic { .. } | BoundaryShape::Nodal { .. } => 1,
            BoundaryShape::Circular { lambdas } => lambdas.len(),
        }
    }

    /// Self-intersections in component order.
    pub fn self_intersections(&self) -> Vec<i64> {
        match self {
            BoundaryShape::Elliptic { self_int } | BoundaryShape::Nodal { self_int } => {
                vec![*self_int]
            }
            BoundaryShape::Circular { lambdas } => lambdas.clone(),
        }
    }

    pub fn lambdas(&self) -> Option<&[i64]> {
        match self {
            BoundaryShape::Circular { lambdas } => Some(lambdas),
            _ => None,
        }
    }

    /// Intersection number `D_i·D_j` (0-based) implied by the shape.
    pub fn expected_pairing(&self, i: usize, j: usize) -> i64 {
        match self {
            BoundaryShape::Elliptic { self_int } | BoundaryShape::Nodal { self_int } => *self_int,
            BoundaryShape::Circular { lambdas } => {
                let n = lambdas.len();
                if i == j {
                    lambdas[i]
                } else if n == 2 {
                    2
                } else if (i + 1) % n == j || (j + 1) % n == i {
                    1
                } else {
                    0
                }
            }
        }
    }

    pub fn expected_gram(&self) -> Vec<Vec<i64>> {
        let n = self.component_count();
        (0..n)
            .map(|i| (0..n).map(|j| self.expected_pairing(i, j)).collect())
            .collect()
    }

    /// Gram matrix of the components left after removing `removed` (0-based).
    pub fn gram_without(&self, removed: &[usize]) -> Vec<Vec<i64>> {
        let keep: Vec<usize> = (0..self.component_count())
            .filter(|i| !removed.contains(i))
            .collect();
        keep.iter()
            .map(|&i| keep.iter().map(|&j| self.expected_pairing(i, j)).collect())
            .collect()
    }

    /// `D² = Σλ_i + 2·#nodes`.
    pub fn boundary_square(&self) -> i64 {
        match self {
            BoundaryShape::Elliptic { self_int } | BoundaryShape::Nodal { self_int } => *self_int,
            BoundaryShape::Circular { lambdas } => {
                lambdas.iter().sum::<i64>() + 2 * lambdas.len() as i64
            }
        }
    }
}

impl fmt::Display for BoundaryShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryShape::Elliptic { self_int } => write!(f, "elliptic({self_int})"),
            BoundaryShape::Nodal { self_int } => write!(f, "nodal({self_int})"),
            BoundaryShape::Circular { lambdas } => write!(f, "{}", format_type(lambdas)),
        }
    }
}

/// `(λ1, λ2, ..., λn)` with comma-space separators.
pub fn format_type(lambdas: &[i64]) -> String {
    let parts: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Full-lattice data: the ambient lattice and one class per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub lattice: IntersectionLattice,
    pub boundary_classes: Vec<DivisorClass>,
}

impl Realization {
    pub fn boundary_sum(&self) -> DivisorClass {
        self.boundary_classes
            .iter()
            .fold(DivisorClass::zero(self.lattice.rank()), |acc, c| &acc + c)
    }

    /// `K + D` as a class.
    pub fn log_canonical(&self) -> DivisorClass {
        self.lattice.canonical() + &self.boundary_sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSurfacePair {
    shape: BoundaryShape,
    realization: Option<Realization>,
}

impl LogSurfacePair {
    pub fn type_only(shape: BoundaryShape) -> Self {
        LogSurfacePair {
            shape,
            realization: None,
        }
    }

    /// Full-lattice pair; the boundary Gram must reproduce the shape exactly.
    pub fn realized(
        shape: BoundaryShape,
        lattice: IntersectionLattice,
        boundary_classes: Vec<DivisorClass>,
    ) -> Result<Self, BoundaryError> {
        let realization = Realization {
            lattice,
            boundary_classes,
        };
        check_realization(&shape, &realization)?;
        Ok(LogSurfacePair {
            shape,
            realization: Some(realization),
        })
    }

    /// Realize a shape on the lattice spanned by its own components, with
    /// `K = −D`. The form may be degenerate or indefinite; it is a test bed
    /// for the surgery rules, not a surface.
    pub fn boundary_lattice(shape: BoundaryShape) -> Self {
        let n = shape.component_count();
        let gram = shape.expected_gram();
        let canonical = DivisorClass::new(vec![-1; n]);
        let lattice = IntersectionLattice::new(gram, canonical).expect("shape gram is symmetric");
        let classes = (0..n).map(|i| DivisorClass::basis(n, i)).collect();
        LogSurfacePair {
            shape,
            realization: Some(Realization {
                lattice,
                boundary_classes: classes,
            }),
        }
    }

    pub fn shape(&self) -> &BoundaryShape {
        &self.shape
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn is_full_lattice(&self) -> bool {
        self.realization.is_some()
    }

    pub fn component_count(&self) -> usize {
        self.shape.component_count()
    }

    pub fn picard_rank(&self) -> Option<usize> {
        self.realization.as_ref().map(|r| r.lattice.rank())
    }

    /// Log irregularity `q = dim_Q ker(⊕ Q D_i → H²)`, full-lattice only.
    pub fn irregularity(&self) -> Option<usize> {
        self.realization
            .as_ref()
            .map(|r| lattice::kernel_dim(&r.boundary_classes))
    }

    pub fn into_parts(self) -> (BoundaryShape, Option<Realization>) {
        (self.shape, self.realization)
    }
}

fn check_realization(shape: &BoundaryShape, r: &Realization) -> Result<(), BoundaryError> {
    let n = shape.component_count();
    if r.boundary_classes.len() != n {
        return Err(BoundaryError::ComponentCount {
            expected: n,
            found: r.boundary_classes.len(),
        });
    }
    for i in 0..n {
        for j in i..n {
            let found = r
                .lattice
                .pairing(&r.boundary_classes[i], &r.boundary_classes[j])?;
            let expected = shape.expected_pairing(i, j);
            if found != expected {
                return Err(BoundaryError::PairingMismatch {
                    i: i + 1,
                    j: j + 1,
                    expected,
                    found,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub circularity_ok: bool,
    pub k_plus_d_zero: Option<bool>,
    pub irregularity_q: Option<usize>,
    pub genuine: Option<bool>,
    pub hodge_signature_ok: Option<bool>,
    /// 1-based index `i` such that `D − D_i` has negative definite Gram.
    pub negative_definite_complement: Option<usize>,
    pub notes: Vec<String>,
}

/// Structural and (in full-lattice mode) numerical checks on a pair.
pub fn validate_pair(pair: &LogSurfacePair, check_genuine: bool) -> Result<ValidationReport, BoundaryError> {
    let mut notes = Vec::new();
    let shape = pair.shape();
    let circularity_ok = match shape {
        BoundaryShape::Circular { lambdas } => lambdas.len() >= 2,
        _ => true,
    };
    let Some(r) = pair.realization() else {
        notes.push("type-only: K+D, q and Hodge signature not computed".to_string());
        return Ok(ValidationReport {
            circularity_ok,
            k_plus_d_zero: None,
            irregularity_q: None,
            genuine: None,
            hodge_signature_ok: None,
            negative_definite_complement: None,
            notes,
        });
    };
    check_realization(shape, r)?;

    let k_plus_d_zero = r.log_canonical().is_zero();
    let q = lattice::kernel_dim(&r.boundary_classes);
    let sig = r.lattice.signature();
    let hodge_ok = sig == Signature::new(1, r.lattice.rank() - 1, 0);
    if !hodge_ok {
        notes.push(format!("lattice signature {sig} is not (1, rank-1, 0)"));
    }
    if !k_plus_d_zero {
        notes.push(format!("K+D = {} is not zero", r.log_canonical()));
    }

    let n = shape.component_count();
    let complement = if n >= 2 {
        (0..n).find(|&i| lattice::is_negative_definite(&shape.gram_without(&[i])))
    } else {
        None
    };
    let mut genuine = None;
    if check_genuine {
        let g = k_plus_d_zero && q == 0;
        // K + D = 0 with D − D_i negative definite forces q = 0 on a surface.
        if let (Some(i), true) = (complement, k_plus_d_zero) {
            if g {
                notes.push(format!("D - D{} is negative definite: genuine by the rod criterion", i + 1));
            } else {
                notes.push(format!(
                    "D - D{} is negative definite but q = {q}: not a surface lattice",
                    i + 1
                ));
            }
        }
        genuine = Some(g);
    }

    Ok(ValidationReport {
        circularity_ok,
        k_plus_d_zero: Some(k_plus_d_zero),
        irregularity_q: Some(q),
        genuine,
        hodge_signature_ok: Some(hodge_ok),
        negative_definite_complement: complement.map(|i| i + 1),
        notes,
    })
}
