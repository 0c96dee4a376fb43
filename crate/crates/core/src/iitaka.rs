//! Iitaka models of type II log K3 surfaces and their counterexample
//! constructions.
//!
//! Every model is a full-lattice pair over `P²` (basis `H`) or a Hirzebruch
//! surface `F_β` (basis `(C, F)`, `C² = −β`). The irregular models b-i … b-viii
//! become genuine log K3 surfaces after half point attachments; the builders
//! replay those attachments and the pivots that expose the failure of the
//! nef-and-big condition.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::boundary::{BoundaryError, BoundaryShape, LogSurfacePair};
use crate::classify::{b2_fails_on_model, B2CheckResult, CanonicalClass};
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::surgery::{run_script, Direction, SurgeryError, SurgeryStep, SurgeryTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IitakaError {
    #[error("unknown Iitaka type {0:?}")]
    UnknownTag(String),
    #[error("{0} needs a beta parameter")]
    BetaRequired(IitakaTag),
    #[error("{0} takes no beta parameter")]
    BetaNotAllowed(IitakaTag),
    #[error("{tag} needs beta >= {min}, got {beta}")]
    BetaOutOfRange { tag: IitakaTag, beta: i64, min: i64 },
    #[error("{0} is not representable: {1}")]
    NotRepresentable(IitakaTag, &'static str),
    #[error("{0} has no counterexample construction (only b-i to b-viii)")]
    NoCounterexample(IitakaTag),
    #[error("self-check failed for {tag}: {invariant}")]
    SelfCheck { tag: IitakaTag, invariant: String },
    #[error("no Iitaka models for an inconsistent type")]
    InconsistentClass,
    #[error("empty chain")]
    EmptyChain,
    #[error("chain entry {0} is not <= -2")]
    ChainEntry(i64),
    #[error("continued fraction overflows 128-bit integers")]
    Overflow,
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IitakaTag {
    AI,
    AII,
    AIII,
    /// `(F_2, E + Δ∞)`.
    AIIIPrime,
    BI,
    BII,
    BIII,
    BIV,
    BV,
    BVI,
    BVII,
    BVIII,
    BIX,
    BX,
    BXI,
    BXII,
    BXIII,
}

use IitakaTag::*;

impl IitakaTag {
    pub const ALL: [IitakaTag; 17] = [
        AI, AII, AIII, AIIIPrime, BI, BII, BIII, BIV, BV, BVI, BVII, BVIII, BIX, BX, BXI, BXII, BXIII,
    ];

    /// Irregular models with a counterexample construction.
    pub const IRREGULAR: [IitakaTag; 8] = [BI, BII, BIII, BIV, BV, BVI, BVII, BVIII];

    pub fn as_str(self) -> &'static str {
        match self {
            AI => "a-i",
            AII => "a-ii",
            AIII => "a-iii",
            AIIIPrime => "a-iii′",
            BI => "b-i",
            BII => "b-ii",
            BIII => "b-iii",
            BIV => "b-iv",
            BV => "b-v",
            BVI => "b-vi",
            BVII => "b-vii",
            BVIII => "b-viii",
            BIX => "b-ix",
            BX => "b-x",
            BXI => "b-xi",
            BXII => "b-xii",
            BXIII => "b-xiii",
        }
    }

    /// Smallest admissible β for the parameterized families.
    pub fn beta_min(self) -> Option<i64> {
        match self {
            BIII | BVII | BXIII => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for IitakaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IitakaTag {
    type Err = IitakaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let t = t.strip_prefix("ii_").unwrap_or(&t);
        let t = t.replace(['′', '\''], "'");
        IitakaTag::ALL
            .into_iter()
            .find(|tag| tag.as_str().replace('′', "'") == t)
            .ok_or_else(|| IitakaError::UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IitakaType {
    tag: IitakaTag,
    beta: Option<i64>,
}

impl IitakaType {
    pub fn new(tag: IitakaTag, beta: Option<i64>) -> Result<Self, IitakaError> {
        match (tag.beta_min(), beta) {
            (None, None) => {}
            (None, Some(_)) => return Err(IitakaError::BetaNotAllowed(tag)),
            (Some(_), None) => return Err(IitakaError::BetaRequired(tag)),
            (Some(min), Some(b)) if b < min => {
                return Err(IitakaError::BetaOutOfRange { tag, beta: b, min });
            }
            (Some(_), Some(_)) => {}
        }
        Ok(IitakaType { tag, beta })
    }

    pub fn tag(&self) -> IitakaTag {
        self.tag
    }

    pub fn beta(&self) -> Option<i64> {
        self.beta
    }
}

impl fmt::Display for IitakaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.beta {
            Some(b) => write!(f, "{} (beta = {b})", self.tag),
            None => write!(f, "{}", self.tag),
        }
    }
}

/// Minimal model with named boundary components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IitakaModel {
    pub kind: IitakaType,
    /// `"P2"` or `"F<β>"`.
    pub surface: String,
    pub component_names: Vec<&'static str>,
    pub pair: LogSurfacePair,
}

fn p2(classes: &[i64]) -> Vec<DivisorClass> {
    classes.iter().map(|&h| DivisorClass::new(vec![h])).collect()
}

fn fb(classes: &[(i64, i64)]) -> Vec<DivisorClass> {
    classes.iter().map(|&(c, f)| DivisorClass::new(vec![c, f])).collect()
}

/// Build the minimal model of an Iitaka type.
pub fn build_model(t: IitakaType) -> Result<IitakaModel, IitakaError> {
    let beta = t.beta.unwrap_or(0);
    let plane = IntersectionLattice::projective_plane;
    let hirz = IntersectionLattice::hirzebruch;
    let elliptic = |s| BoundaryShape::Elliptic { self_int: s };
    let nodal = |s| BoundaryShape::Nodal { self_int: s };
    let circ = |l: Vec<i64>| BoundaryShape::Circular { lambdas: l };
    let (surface_beta, shape, lattice, names, classes): (Option<i64>, _, _, Vec<&'static str>, _) = match t.tag {
        AI => (None, elliptic(9), plane(), vec!["E"], p2(&[3])),
        AII => (Some(0), elliptic(8), hirz(0), vec!["E"], fb(&[(2, 2)])),
        AIII => (Some(2), elliptic(8), hirz(2), vec!["E"], fb(&[(2, 4)])),
        AIIIPrime => {
            return Err(IitakaError::NotRepresentable(
                AIIIPrime,
                "E is disjoint from the (-2)-section, so E + Δ∞ is not connected",
            ))
        }
        BI => (None, circ(vec![1, 1, 1]), plane(), vec!["H1", "H2", "H3"], p2(&[1, 1, 1])),
        BII => (
            Some(0),
            circ(vec![0, 0, 0, 0]),
            hirz(0),
            vec!["H1", "G1", "H2", "G2"],
            fb(&[(1, 0), (0, 1), (1, 0), (0, 1)]),
        ),
        BIII => (
            Some(beta),
            circ(vec![beta, 0, -beta, 0]),
            hirz(beta),
            vec!["Δλ", "F1", "Δ∞", "F2"],
            fb(&[(1, beta), (0, 1), (1, 0), (0, 1)]),
        ),
        BIV => (None, circ(vec![1, 4]), plane(), vec!["H", "C"], p2(&[1, 2])),
        BV => (Some(0), circ(vec![2, 2]), hirz(0), vec!["C1", "C2"], fb(&[(1, 1), (1, 1)])),
        BVI => (Some(2), circ(vec![2, 2]), hirz(2), vec!["Δ0", "Δλ"], fb(&[(1, 2), (1, 2)])),
        BVII => (
            Some(beta),
            circ(vec![0, -beta, beta + 2]),
            hirz(beta),
            vec!["F", "Δ∞", "C3"],
            fb(&[(0, 1), (1, 0), (1, beta + 1)]),
        ),
        BVIII => (
            Some(0),
            circ(vec![0, 0, 2]),
            hirz(0),
            vec!["H", "G", "C"],
            fb(&[(1, 0), (0, 1), (1, 1)]),
        ),
        BIX => (None, nodal(9), plane(), vec!["E"], p2(&[3])),
        BX => (Some(0), nodal(8), hirz(0), vec!["E"], fb(&[(2, 2)])),
        BXI => (Some(2), nodal(8), hirz(2), vec!["E"], fb(&[(2, 4)])),
        BXII => (Some(0), circ(vec![4, 0]), hirz(0), vec!["C1", "C2"], fb(&[(1, 2), (1, 0)])),
        BXIII => (
            Some(beta),
            circ(vec![beta + 4, -beta]),
            hirz(beta),
            vec!["C", "Δ∞"],
            fb(&[(1, beta + 2), (1, 0)]),
        ),
    };
    let surface = match surface_beta {
        None => "P2".to_string(),
        Some(b) => format!("F{b}"),
    };
    let pair = LogSurfacePair::realized(shape, lattice, classes)?;
    Ok(IitakaModel {
        kind: t,
        surface,
        component_names: names,
        pair,
    })
}

/// Outcome of a counterexample construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    pub kind: IitakaType,
    pub model: IitakaModel,
    pub q_before: usize,
    pub attachments: Vec<SurgeryStep>,
    pub extra_pivots: Vec<SurgeryStep>,
    /// Final pair after attachments and pivots.
    pub pair: LogSurfacePair,
    pub q_after: usize,
    pub k_plus_d_zero: bool,
    pub b2_check: B2CheckResult,
    pub trace: SurgeryTrace,
}

fn prescription(t: IitakaType) -> Result<(Vec<usize>, Vec<SurgeryStep>), IitakaError> {
    let beta = t.beta.unwrap_or(0) as usize;
    let pivots = |component, direction| {
        vec![
            SurgeryStep::Pivot {
                component,
                direction,
            };
            beta
        ]
    };
    Ok(match t.tag {
        BI => (vec![0, 1], vec![]),
        BII => (vec![0, 1], vec![]),
        BIII => (vec![1, 0], pivots(3, Direction::Succ)),
        BIV => (vec![1], vec![]),
        BV | BVI => (vec![0], vec![]),
        BVII => (vec![2], pivots(0, Direction::Pred)),
        BVIII => (vec![2], vec![]),
        other => return Err(IitakaError::NoCounterexample(other)),
    })
}

/// Attach half points to an irregular model until it is a genuine log K3,
/// then pivot to a model on which the nef-and-big condition visibly fails.
pub fn build_counterexample(t: IitakaType) -> Result<ModelReport, IitakaError> {
    let (attach_on, extra_pivots) = prescription(t)?;
    let model = build_model(t)?;
    let check = |ok: bool, invariant: String| {
        if ok {
            Ok(())
        } else {
            Err(IitakaError::SelfCheck { tag: t.tag, invariant })
        }
    };
    let q_before = model.pair.irregularity().unwrap_or_default();
    check(
        q_before == attach_on.len(),
        format!("q = {q_before} before attaching {} half points", attach_on.len()),
    )?;
    let attachments: Vec<SurgeryStep> = attach_on
        .iter()
        .map(|&component| SurgeryStep::HalfPointAttach { component })
        .collect();
    let script: Vec<SurgeryStep> = attachments.iter().chain(&extra_pivots).cloned().collect();
    let (pair, trace) = run_script(&model.pair, &script)?;
    let r = pair.realization().expect("surgery keeps the lattice");
    let q_after = pair.irregularity().unwrap_or_default();
    let k_plus_d_zero = r.log_canonical().is_zero();
    check(k_plus_d_zero, "K + D = 0".into())?;
    check(q_after == 0, format!("q = 0 after attachments (got {q_after})"))?;
    let b2_check = b2_fails_on_model(&pair);
    check(b2_check.fails, "nef-and-big condition fails on the final model".into())?;
    Ok(ModelReport {
        kind: t,
        model,
        q_before,
        attachments,
        extra_pivots,
        pair,
        q_after,
        k_plus_d_zero,
        b2_check,
        trace,
    })
}

/// Iitaka types compatible with a normal-form class.
pub fn iitaka_classes_for(c: &CanonicalClass) -> Result<Vec<IitakaTag>, IitakaError> {
    Ok(match c {
        CanonicalClass::C0 => vec![AI, AII, AIII, AIIIPrime],
        CanonicalClass::C1 => vec![BIX, BX, BXI],
        CanonicalClass::C2 { .. } => vec![BIX, BX, BXI, BXII, BXIII],
        CanonicalClass::C3 { .. } => vec![BXII],
        CanonicalClass::C4 { .. } => vec![BIV, BV, BVI],
        CanonicalClass::Inconsistent { .. } => return Err(IitakaError::InconsistentClass),
    })
}

/// `(a, b)` of the cyclic quotient singularity `1/a(1, b)` obtained by
/// contracting a chain of rational curves with the given self-intersections:
/// `a/b = −c_1 − 1/(−c_2 − 1/(…))`.
pub fn cyclic_quotient_invariants(chain: &[i64]) -> Result<(u128, u128), IitakaError> {
    let Some(&last) = chain.last() else {
        return Err(IitakaError::EmptyChain);
    };
    if let Some(&bad) = chain.iter().find(|&&c| c > -2) {
        return Err(IitakaError::ChainEntry(bad));
    }
    let (mut num, mut den) = (-(last as i128), 1i128);
    for &c in chain.iter().rev().skip(1) {
        let next = (-(c as i128))
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or(IitakaError::Overflow)?;
        den = num;
        num = next;
    }
    // continuants of entries ≥ 2 are coprime with num > den ≥ 1
    Ok((num as u128, den as u128))
}
