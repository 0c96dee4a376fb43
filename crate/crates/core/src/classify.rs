//! Normal forms C0–C4 and the A¹-abundance decision.
//!
//! `normalize` runs the induction on the number of boundary components:
//! contract `(−1)`-components, pivot `0`-components until a neighbour becomes
//! a `(−1)`-curve, and stop at one of the five normal forms (or at a type no
//! surface can carry). `b2_fails_on_model` turns the nef-and-big condition
//! into a negative-definiteness test via the Hodge index theorem.

use std::fmt;

use rayon::prelude::*;

use crate::boundary::{format_type, BoundaryShape, LogSurfacePair, Realization};
use crate::lattice::is_negative_definite;
use crate::surgery::{self, Direction, SurgeryError, SurgeryStep, SurgeryTrace, TraceEntry};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalClass {
    /// Smooth elliptic boundary.
    C0,
    /// Nodal rational boundary.
    C1,
    /// `λ_1 ∉ {0, −1}`, every other `λ_i ≤ −2`.
    C2 { normal_type: Vec<i64> },
    /// Two components, `λ_1 ≠ −1`, `λ_2 = 0`.
    C3 { normal_type: Vec<i64> },
    /// Two components, both positive.
    C4 { normal_type: Vec<i64> },
    /// No surface carries this type.
    Inconsistent { reason: String },
}

impl CanonicalClass {
    pub fn label(&self) -> &'static str {
        match self {
            CanonicalClass::C0 => "C0",
            CanonicalClass::C1 => "C1",
            CanonicalClass::C2 { .. } => "C2",
            CanonicalClass::C3 { .. } => "C3",
            CanonicalClass::C4 { .. } => "C4",
            CanonicalClass::Inconsistent { .. } => "Inconsistent",
        }
    }

    pub fn normal_type(&self) -> Option<&[i64]> {
        match self {
            CanonicalClass::C2 { normal_type }
            | CanonicalClass::C3 { normal_type }
            | CanonicalClass::C4 { normal_type } => Some(normal_type),
            _ => None,
        }
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self, CanonicalClass::Inconsistent { .. })
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalClass::Inconsistent { reason } => write!(f, "Inconsistent ({reason})"),
            other => match other.normal_type() {
                Some(t) => write!(f, "{} {}", other.label(), format_type(t)),
                None => f.write_str(other.label()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub class: CanonicalClass,
    pub normal: LogSurfacePair,
    pub trace: SurgeryTrace,
}

const HODGE_REASON: &str = "Hodge index: two components with nonnegative self-intersection on a cycle of length at least 3";

/// Reduce `pair` to a normal form. Never fails on a valid pair; the
/// `Result` only reports lattice-replay disagreements in full-lattice mode.
pub fn normalize(pair: &LogSurfacePair) -> Result<Normalization, SurgeryError> {
    let mut current = pair.clone();
    let mut entries: Vec<TraceEntry> = Vec::new();
    let mut apply = |cur: &mut LogSurfacePair, step: SurgeryStep| -> Result<(), SurgeryError> {
        let (next, e) = surgery::apply_step(cur, &step)?;
        entries.push(e);
        *cur = next;
        Ok(())
    };
    let class = loop {
        let lambdas = match current.shape() {
            BoundaryShape::Elliptic { .. } => break CanonicalClass::C0,
            BoundaryShape::Nodal { .. } => break CanonicalClass::C1,
            BoundaryShape::Circular { lambdas } => lambdas.clone(),
        };
        let n = lambdas.len();
        if let Some(k) = lambdas.iter().position(|&l| l == -1) {
            apply(&mut current, SurgeryStep::CanonicalBlowdown { component: k })?;
            continue;
        }
        if n == 2 {
            let (a, b) = (lambdas[0], lambdas[1]);
            break if a == 0 || b == 0 {
                let swap = b != 0;
                current = rotated(&current, usize::from(swap));
                CanonicalClass::C3 {
                    normal_type: current.shape().self_intersections(),
                }
            } else if a <= -2 || b <= -2 {
                let swap = a <= -2 && b > 0;
                current = rotated(&current, usize::from(swap));
                CanonicalClass::C2 {
                    normal_type: current.shape().self_intersections(),
                }
            } else {
                CanonicalClass::C4 { normal_type: lambdas }
            };
        }
        if let Some(k) = lambdas.iter().position(|&l| l == 0) {
            let pred = lambdas[(k + n - 1) % n];
            let succ = lambdas[(k + 1) % n];
            // pred raises the successor and lowers the predecessor; pick the
            // direction in which a neighbour reaches −1
            let direction = if succ <= -2 || pred >= 0 {
                Direction::Pred
            } else {
                Direction::Succ
            };
            loop {
                apply(
                    &mut current,
                    SurgeryStep::Pivot {
                        component: k,
                        direction,
                    },
                )?;
                let l = current.shape().self_intersections();
                if l[(k + n - 1) % n] == -1 || l[(k + 1) % n] == -1 {
                    break;
                }
            }
            continue;
        }
        let big: Vec<usize> = (0..n).filter(|&i| lambdas[i] >= -1).collect();
        match big.as_slice() {
            [] => break CanonicalClass::C2 { normal_type: lambdas },
            [k] => {
                current = rotated(&current, *k);
                break CanonicalClass::C2 {
                    normal_type: current.shape().self_intersections(),
                };
            }
            _ => {
                break CanonicalClass::Inconsistent {
                    reason: HODGE_REASON.to_string(),
                }
            }
        }
    };
    Ok(Normalization {
        class,
        normal: current,
        trace: SurgeryTrace {
            entries,
            tracked: Vec::new(),
        },
    })
}

/// Relist the components of a circular pair starting at index `start`.
fn rotated(pair: &LogSurfacePair, start: usize) -> LogSurfacePair {
    if start == 0 {
        return pair.clone();
    }
    let (shape, realization) = pair.clone().into_parts();
    let BoundaryShape::Circular { mut lambdas } = shape else {
        unreachable!("only circular boundaries are rotated")
    };
    lambdas.rotate_left(start);
    let shape = BoundaryShape::Circular { lambdas };
    match realization {
        None => LogSurfacePair::type_only(shape),
        Some(Realization {
            lattice,
            mut boundary_classes,
        }) => {
            boundary_classes.rotate_left(start);
            LogSurfacePair::realized(shape, lattice, boundary_classes)
                .expect("rotation preserves the cyclic intersection pattern")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    /// Boundary classes are linearly independent in the lattice.
    Verified,
    /// Type-only input; independence is assumed.
    Assumed,
    /// The classes satisfy this many independent relations.
    Violated { kernel_dim: usize },
}

/// Verdict for removing one adjacent pair `(i, j)` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub pair: (usize, usize),
    pub remainder_negative_definite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2CheckResult {
    pub fails: bool,
    pub witnessing_pairs: Vec<PairVerdict>,
    /// Shape the test ran on. A 2-cycle is tested on the 4-cycle obtained by
    /// blowing up both of its nodes.
    pub evaluated_on: BoundaryShape,
    pub independence: Independence,
}

fn b2_on_shape(shape: &BoundaryShape) -> (bool, Vec<PairVerdict>) {
    let Some(lambdas) = shape.lambdas() else {
        return (false, Vec::new());
    };
    let n = lambdas.len();
    let verdicts: Vec<PairVerdict> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            PairVerdict {
                pair: (i, j),
                remainder_negative_definite: is_negative_definite(&shape.gram_without(&[i, j])),
            }
        })
        .collect();
    let fails = verdicts.iter().all(|v| !v.remainder_negative_definite);
    (fails, verdicts)
}

/// Whether the given model violates the nef-and-big condition: no adjacent
/// pair `D_i + D_j` leaves a negative definite remainder.
pub fn b2_fails_on_model(pair: &LogSurfacePair) -> B2CheckResult {
    let independence = match pair.realization() {
        None => Independence::Assumed,
        Some(r) => match crate::lattice::kernel_dim(&r.boundary_classes) {
            0 => Independence::Verified,
            k => Independence::Violated { kernel_dim: k },
        },
    };
    let evaluated_on = match pair.shape() {
        BoundaryShape::Circular { lambdas } if lambdas.len() == 2 => BoundaryShape::Circular {
            lambdas: vec![lambdas[0] - 2, -1, lambdas[1] - 2, -1],
        },
        other => other.clone(),
    };
    let (fails, witnessing_pairs) = b2_on_shape(&evaluated_on);
    B2CheckResult {
        fails,
        witnessing_pairs,
        evaluated_on,
        independence,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbundanceVerdict {
    CountablyInfinite {
        class: CanonicalClass,
    },
    NotInfinite {
        class: CanonicalClass,
        b2_witness_model: LogSurfacePair,
        check: B2CheckResult,
    },
    Inconsistent {
        reason: String,
    },
}

impl AbundanceVerdict {
    pub fn class(&self) -> CanonicalClass {
        match self {
            AbundanceVerdict::CountablyInfinite { class } | AbundanceVerdict::NotInfinite { class, .. } => {
                class.clone()
            }
            AbundanceVerdict::Inconsistent { reason } => CanonicalClass::Inconsistent { reason: reason.clone() },
        }
    }

    /// Short verdict text.
    pub fn summary(&self) -> &'static str {
        match self {
            AbundanceVerdict::CountablyInfinite { .. } => "countably infinitely many A¹ curves",
            AbundanceVerdict::NotInfinite { .. } => "not infinitely many A¹ curves",
            AbundanceVerdict::Inconsistent { .. } => "inconsistent type",
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            AbundanceVerdict::CountablyInfinite { .. } => "countably-infinite",
            AbundanceVerdict::NotInfinite { .. } => "not-infinite",
            AbundanceVerdict::Inconsistent { .. } => "inconsistent",
        }
    }
}

/// The 4-cycle `(λ1−2, −1, λ2−2, −1)` reached from a 2-cycle by blowing up
/// both nodes.
pub fn c4_witness(normal: &LogSurfacePair) -> Result<LogSurfacePair, SurgeryError> {
    let (once, _) = surgery::canonical_blowup(normal, (0, 1), 0)?;
    let (twice, _) = surgery::canonical_blowup(&once, (2, 0), 0)?;
    Ok(twice)
}

pub fn a1_abundance(pair: &LogSurfacePair) -> Result<AbundanceVerdict, SurgeryError> {
    let norm = normalize(pair)?;
    Ok(match norm.class {
        CanonicalClass::Inconsistent { reason } => AbundanceVerdict::Inconsistent { reason },
        class @ CanonicalClass::C4 { .. } => {
            let witness = c4_witness(&norm.normal)?;
            let check = b2_fails_on_model(&witness);
            debug_assert!(check.fails);
            AbundanceVerdict::NotInfinite {
                class,
                b2_witness_model: witness,
                check,
            }
        }
        class => AbundanceVerdict::CountablyInfinite { class },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRow {
    pub lambdas: Vec<i64>,
    pub class: CanonicalClass,
    pub verdict: AbundanceVerdict,
    /// Shape reached by `normalize`.
    pub normal: BoundaryShape,
    pub trace_len: usize,
}

/// Smallest rotation or reflection of a cyclic vector.
pub fn dihedral_representative(lambdas: &[i64]) -> Vec<i64> {
    let n = lambdas.len();
    let mut best = lambdas.to_vec();
    let mut rev = lambdas.to_vec();
    rev.reverse();
    for base in [lambdas.to_vec(), rev] {
        for s in 0..n {
            let mut v = base.clone();
            v.rotate_left(s);
            if v < best {
                best = v;
            }
        }
    }
    best
}

/// Every circular type with `2 ≤ n ≤ max_n` and entries in the box, one per
/// dihedral orbit, ordered by length and then lexicographically.
pub fn enumerate(max_n: usize, lambda_min: i64, lambda_max: i64) -> Vec<EnumerationRow> {
    if lambda_min > lambda_max {
        return Vec::new();
    }
    let width = (lambda_max - lambda_min + 1) as usize;
    let mut rows: Vec<EnumerationRow> = (2..=max_n)
        .flat_map(|n| {
            let total = width.pow(n as u32);
            (0..total).into_par_iter().filter_map(move |mut idx| {
                let mut v = vec![0i64; n];
                for slot in v.iter_mut().rev() {
                    *slot = lambda_min + (idx % width) as i64;
                    idx /= width;
                }
                (dihedral_representative(&v) == v).then_some(v)
            })
            .map(classify_type)
            .collect::<Vec<_>>()
        })
        .collect();
    rows.sort_by(|a, b| (a.lambdas.len(), &a.lambdas).cmp(&(b.lambdas.len(), &b.lambdas)));
    rows
}

fn classify_type(lambdas: Vec<i64>) -> EnumerationRow {
    let pair = LogSurfacePair::type_only(BoundaryShape::Circular {
        lambdas: lambdas.clone(),
    });
    let norm = normalize(&pair).expect("type-only surgery never fails inside normalize");
    let verdict = a1_abundance(&pair).expect("type-only surgery never fails inside normalize");
    EnumerationRow {
        lambdas,
        class: norm.class,
        verdict,
        normal: norm.normal.shape().clone(),
        trace_len: norm.trace.len(),
    }
}
