//! Birational surgery on log pairs.
//!
//! Four moves act on a pair `(X, D)`:
//!
//! * canonical blowup at a node of `D` (the new `(−1)`-curve joins the cycle),
//! * canonical blowdown of a `(−1)`-component of `D`,
//! * pivot at a `0`-component: blow up one of its nodes, then contract its
//!   proper transform,
//! * half point attachment: blow up a smooth point of `D` (full-lattice only).
//!
//! Shape-level arithmetic is computed directly. When the pair carries a
//! lattice realization the same move is replayed on the lattice and the new
//! boundary Gram is checked against the combinatorial result, so the lattice
//! acts as an oracle for every rule.

use std::fmt;

use thiserror::Error;

use crate::boundary::{BoundaryError, BoundaryShape, LogSurfacePair, Realization};
use crate::lattice::{DivisorClass, LatticeError, LatticeMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("component D{index} does not exist (boundary has {count} components)")]
    NoSuchComponent { index: usize, count: usize },
    #[error("D{0} and D{1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("{0} boundary has no node to blow up")]
    NoNode(&'static str),
    #[error("component is not a (-1)-curve: D{component}² = {self_int}")]
    NotMinusOneCurve { component: usize, self_int: i64 },
    #[error("pivot requires a 0-component: D{component}² = {self_int}")]
    PivotNeedsZero { component: usize, self_int: i64 },
    #[error("{0} requires a circular boundary")]
    NotCircular(&'static str),
    #[error("half point attachment requires full-lattice realization")]
    RequiresFullLattice,
    #[error("class is not an exterior (-1)-curve: boundary intersections {0:?}")]
    NotExteriorCurve(Vec<i64>),
    #[error("expected {expected} multiplicities (one per blowup), got {found}")]
    MultiplicityCount { expected: usize, found: usize },
    #[error("lattice replay disagrees with the shape rule: {0}")]
    LatticeDisagreement(BoundaryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("step {index} failed: {source}")]
    StepFailed {
        index: usize,
        #[source]
        source: Box<SurgeryError>,
    },
}

impl SurgeryError {
    /// The 0-based failing step index, for errors raised by `run_script`.
    pub fn step_index(&self) -> Option<usize> {
        match self {
            SurgeryError::StepFailed { index, .. } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Blow up the node shared with `D_{k+1}`: successor loses 1, predecessor gains 1.
    Succ,
    /// Blow up the node shared with `D_{k−1}`: predecessor loses 1, successor gains 1.
    Pred,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Succ => Direction::Pred,
            Direction::Pred => Direction::Succ,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Succ => "succ",
            Direction::Pred => "pred",
        })
    }
}

/// One surgery move. Component indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SurgeryStep {
    /// `edge = (0, 0)` designates the node of a nodal curve. `point` picks one
    /// of the two nodes of a 2-cycle; it only affects where the new component
    /// is listed.
    CanonicalBlowup { edge: (usize, usize), point: u8 },
    CanonicalBlowdown { component: usize },
    Pivot { component: usize, direction: Direction },
    HalfPointAttach { component: usize },
}

impl fmt::Display for SurgeryStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryStep::CanonicalBlowup { edge, point } => {
                write!(f, "blowup D{}∩D{} (point {point})", edge.0 + 1, edge.1 + 1)
            }
            SurgeryStep::CanonicalBlowdown { component } => write!(f, "contract D{}", component + 1),
            SurgeryStep::Pivot {
                component,
                direction,
            } => write!(f, "pivot D{} {direction}", component + 1),
            SurgeryStep::HalfPointAttach { component } => write!(f, "attach D{}", component + 1),
        }
    }
}

/// Coordinate change on the ambient lattice caused by one elementary move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeMove {
    Blowup {
        embed: LatticeMap,
        exceptional: DivisorClass,
    },
    Contract {
        push: LatticeMap,
    },
}

impl LatticeMove {
    /// Total transform (blowup) or pushforward (contraction).
    pub fn transport(&self, class: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        match self {
            LatticeMove::Blowup { embed, .. } => embed.apply(class),
            LatticeMove::Contract { push } => push.apply(class),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: SurgeryStep,
    pub before: BoundaryShape,
    pub after: BoundaryShape,
    /// Empty for type-only pairs.
    pub moves: Vec<LatticeMove>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurgeryTrace {
    pub entries: Vec<TraceEntry>,
    pub tracked: Vec<(String, DivisorClass)>,
}

impl SurgeryTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn steps(&self) -> Vec<SurgeryStep> {
        self.entries.iter().map(|e| e.step.clone()).collect()
    }

    /// Initial shape followed by the shape after every step.
    pub fn shapes(&self) -> Vec<BoundaryShape> {
        let mut out = Vec::with_capacity(self.entries.len() + 1);
        if let Some(first) = self.entries.first() {
            out.push(first.before.clone());
        }
        out.extend(self.entries.iter().map(|e| e.after.clone()));
        out
    }

    /// Number of blowup events, counting the blowup inside each pivot.
    pub fn blowup_count(&self) -> usize {
        self.entries
            .iter()
            .flat_map(|e| &e.moves)
            .filter(|m| matches!(m, LatticeMove::Blowup { .. }))
            .count()
    }

    pub fn has_lattice(&self) -> bool {
        self.entries.iter().all(|e| !e.moves.is_empty())
    }
}

fn check_index(shape: &BoundaryShape, k: usize) -> Result<(), SurgeryError> {
    let count = shape.component_count();
    if k >= count {
        return Err(SurgeryError::NoSuchComponent {
            index: k + 1,
            count,
        });
    }
    Ok(())
}

/// Position of the new component for a canonical blowup of `D_i ∩ D_j`.
fn insertion_position(n: usize, i: usize, j: usize, point: u8) -> Result<usize, SurgeryError> {
    if i >= n || j >= n {
        return Err(SurgeryError::NoSuchComponent {
            index: i.max(j) + 1,
            count: n,
        });
    }
    let (lo, hi) = (i.min(j), i.max(j));
    if lo == hi {
        return Err(SurgeryError::NotAdjacent(i + 1, j + 1));
    }
    if n == 2 {
        return Ok(if point == 0 { 1 } else { 2 });
    }
    if hi == lo + 1 {
        Ok(hi)
    } else if lo == 0 && hi == n - 1 {
        Ok(n)
    } else {
        Err(SurgeryError::NotAdjacent(i + 1, j + 1))
    }
}

struct Elementary {
    pair: LogSurfacePair,
    mv: Option<LatticeMove>,
}

/// Blow up the node `D_i ∩ D_j` and list the new component at `pos`.
fn blowup_node(pair: &LogSurfacePair, i: usize, j: usize, pos: usize) -> Result<Elementary, SurgeryError> {
    let shape = pair.shape();
    let new_shape = match shape {
        BoundaryShape::Elliptic { .. } => return Err(SurgeryError::NoNode("elliptic")),
        BoundaryShape::Nodal { self_int } => {
            if (i, j) != (0, 0) {
                return Err(SurgeryError::NotAdjacent(i + 1, j + 1));
            }
            BoundaryShape::Circular {
                lambdas: vec![self_int - 4, -1],
            }
        }
        BoundaryShape::Circular { lambdas } => {
            let mut l = lambdas.clone();
            l[i] -= 1;
            l[j] -= 1;
            l.insert(pos, -1);
            BoundaryShape::Circular { lambdas: l }
        }
    };
    let Some(r) = pair.realization() else {
        return Ok(Elementary {
            pair: LogSurfacePair::type_only(new_shape),
            mv: None,
        });
    };
    let (lattice, embed, e) = r.lattice.blowup();
    let mut classes = r
        .boundary_classes
        .iter()
        .map(|c| embed.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    if matches!(shape, BoundaryShape::Nodal { .. }) {
        // the nodal curve has multiplicity 2 at its node
        classes[0] = &classes[0] - &(2 * &e);
        classes.push(e.clone());
    } else {
        classes[i] = &classes[i] - &e;
        classes[j] = &classes[j] - &e;
        classes.insert(pos, e.clone());
    }
    let pair = LogSurfacePair::realized(new_shape, lattice, classes).map_err(SurgeryError::LatticeDisagreement)?;
    Ok(Elementary {
        pair,
        mv: Some(LatticeMove::Blowup {
            embed,
            exceptional: e,
        }),
    })
}

fn blowdown_component(pair: &LogSurfacePair, k: usize) -> Result<Elementary, SurgeryError> {
    let shape = pair.shape();
    let BoundaryShape::Circular { lambdas } = shape else {
        return Err(SurgeryError::NotCircular("canonical blowdown"));
    };
    check_index(shape, k)?;
    if lambdas[k] != -1 {
        return Err(SurgeryError::NotMinusOneCurve {
            component: k + 1,
            self_int: lambdas[k],
        });
    }
    let n = lambdas.len();
    let new_shape = if n == 2 {
        BoundaryShape::Nodal {
            self_int: lambdas[1 - k] + 4,
        }
    } else {
        let mut l = lambdas.clone();
        l[(k + n - 1) % n] += 1;
        l[(k + 1) % n] += 1;
        l.remove(k);
        BoundaryShape::Circular { lambdas: l }
    };
    let Some(r) = pair.realization() else {
        return Ok(Elementary {
            pair: LogSurfacePair::type_only(new_shape),
            mv: None,
        });
    };
    let (lattice, push) = r.lattice.contract(&r.boundary_classes[k])?;
    let classes = r
        .boundary_classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, c)| push.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    let pair = LogSurfacePair::realized(new_shape, lattice, classes).map_err(SurgeryError::LatticeDisagreement)?;
    Ok(Elementary {
        pair,
        mv: Some(LatticeMove::Contract { push }),
    })
}

fn entry(step: SurgeryStep, before: &LogSurfacePair, after: &LogSurfacePair, moves: Vec<LatticeMove>) -> TraceEntry {
    TraceEntry {
        step,
        before: before.shape().clone(),
        after: after.shape().clone(),
        moves,
    }
}

/// Blow up a node of `D`. For a circular boundary `edge` names two adjacent
/// components; for a nodal curve it is `(0, 0)`.
pub fn canonical_blowup(
    pair: &LogSurfacePair,
    edge: (usize, usize),
    point: u8,
) -> Result<(LogSurfacePair, TraceEntry), SurgeryError> {
    let (i, j) = edge;
    let pos = match pair.shape() {
        BoundaryShape::Circular { lambdas } => insertion_position(lambdas.len(), i, j, point)?,
        _ => 1,
    };
    let el = blowup_node(pair, i, j, pos)?;
    let step = SurgeryStep::CanonicalBlowup { edge, point };
    let e = entry(step, pair, &el.pair, el.mv.into_iter().collect());
    Ok((el.pair, e))
}

pub fn canonical_blowdown(pair: &LogSurfacePair, k: usize) -> Result<(LogSurfacePair, TraceEntry), SurgeryError> {
    let el = blowdown_component(pair, k)?;
    let e = entry(
        SurgeryStep::CanonicalBlowdown { component: k },
        pair,
        &el.pair,
        el.mv.into_iter().collect(),
    );
    Ok((el.pair, e))
}

/// Pivot at a `0`-component `D_k`. The new `0`-component keeps index `k`.
pub fn pivot(
    pair: &LogSurfacePair,
    k: usize,
    direction: Direction,
) -> Result<(LogSurfacePair, TraceEntry), SurgeryError> {
    let shape = pair.shape();
    let BoundaryShape::Circular { lambdas } = shape else {
        return Err(SurgeryError::NotCircular("pivot"));
    };
    check_index(shape, k)?;
    if lambdas[k] != 0 {
        return Err(SurgeryError::PivotNeedsZero {
            component: k + 1,
            self_int: lambdas[k],
        });
    }
    let n = lambdas.len();
    // Insert the exceptional curve on the chosen side of D_k, then contract
    // the proper transform of D_k; the exceptional curve lands at index k.
    let (nbr, pos, old_k) = match direction {
        Direction::Succ => ((k + 1) % n, k + 1, k),
        Direction::Pred => ((k + n - 1) % n, k, k + 1),
    };
    let up = blowup_node(pair, k, nbr, pos)?;
    let down = blowdown_component(&up.pair, old_k)?;
    let moves = up.mv.into_iter().chain(down.mv).collect();
    let e = entry(SurgeryStep::Pivot { component: k, direction }, pair, &down.pair, moves);
    Ok((down.pair, e))
}

/// Blow up a smooth point of `D_k`; the exceptional curve is not part of `D`.
pub fn half_point_attach(pair: &LogSurfacePair, k: usize) -> Result<(LogSurfacePair, TraceEntry), SurgeryError> {
    let Some(r) = pair.realization() else {
        return Err(SurgeryError::RequiresFullLattice);
    };
    let shape = pair.shape();
    check_index(shape, k)?;
    let new_shape = match shape {
        BoundaryShape::Elliptic { self_int } => BoundaryShape::Elliptic { self_int: self_int - 1 },
        BoundaryShape::Nodal { self_int } => BoundaryShape::Nodal { self_int: self_int - 1 },
        BoundaryShape::Circular { lambdas } => {
            let mut l = lambdas.clone();
            l[k] -= 1;
            BoundaryShape::Circular { lambdas: l }
        }
    };
    let (lattice, embed, e) = r.lattice.blowup();
    let mut classes = r
        .boundary_classes
        .iter()
        .map(|c| embed.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    classes[k] = &classes[k] - &e;
    let out = LogSurfacePair::realized(new_shape, lattice, classes).map_err(SurgeryError::LatticeDisagreement)?;
    let mv = LatticeMove::Blowup { embed, exceptional: e };
    let te = entry(SurgeryStep::HalfPointAttach { component: k }, pair, &out, vec![mv]);
    Ok((out, te))
}

/// Contract a `(−1)`-curve not contained in `D`, given by its class.
///
/// The lattice cannot certify that the class is represented by an
/// irreducible curve; the caller asserts it. Numerically the class must meet
/// `D` exactly once, on a single component, which then gains 1. This undoes
/// a half point attachment.
pub fn contract_exterior_curve(
    pair: &LogSurfacePair,
    class: &DivisorClass,
) -> Result<(LogSurfacePair, LatticeMap), SurgeryError> {
    let Some(r) = pair.realization() else {
        return Err(SurgeryError::RequiresFullLattice);
    };
    let meets = r
        .boundary_classes
        .iter()
        .map(|d| r.lattice.pairing(d, class))
        .collect::<Result<Vec<_>, _>>()?;
    let ones: Vec<usize> = (0..meets.len()).filter(|&i| meets[i] == 1).collect();
    if ones.len() != 1 || meets.iter().any(|&m| m != 0 && m != 1) {
        return Err(SurgeryError::NotExteriorCurve(meets));
    }
    let k = ones[0];
    let (lattice, push) = r.lattice.contract(class)?;
    let classes = r
        .boundary_classes
        .iter()
        .map(|c| push.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    let mut si = pair.shape().self_intersections();
    si[k] += 1;
    let shape = match pair.shape() {
        BoundaryShape::Elliptic { .. } => BoundaryShape::Elliptic { self_int: si[0] },
        BoundaryShape::Nodal { .. } => BoundaryShape::Nodal { self_int: si[0] },
        BoundaryShape::Circular { .. } => BoundaryShape::Circular { lambdas: si },
    };
    let out = LogSurfacePair::realized(shape, lattice, classes).map_err(SurgeryError::LatticeDisagreement)?;
    Ok((out, push))
}

pub fn apply_step(pair: &LogSurfacePair, step: &SurgeryStep) -> Result<(LogSurfacePair, TraceEntry), SurgeryError> {
    match *step {
        SurgeryStep::CanonicalBlowup { edge, point } => canonical_blowup(pair, edge, point),
        SurgeryStep::CanonicalBlowdown { component } => canonical_blowdown(pair, component),
        SurgeryStep::Pivot { component, direction } => pivot(pair, component, direction),
        SurgeryStep::HalfPointAttach { component } => half_point_attach(pair, component),
    }
}

/// Apply `script` in order. The first failing step aborts the whole run.
pub fn run_script(pair: &LogSurfacePair, script: &[SurgeryStep]) -> Result<(LogSurfacePair, SurgeryTrace), SurgeryError> {
    run_script_tracked(pair, script, Vec::new())
}

/// Like [`run_script`], carrying named classes along by total transform and
/// pushforward. Tracking needs a full-lattice pair.
pub fn run_script_tracked(
    pair: &LogSurfacePair,
    script: &[SurgeryStep],
    tracked: Vec<(String, DivisorClass)>,
) -> Result<(LogSurfacePair, SurgeryTrace), SurgeryError> {
    if !tracked.is_empty() && !pair.is_full_lattice() {
        return Err(SurgeryError::RequiresFullLattice);
    }
    let mut current = pair.clone();
    let mut trace = SurgeryTrace {
        entries: Vec::with_capacity(script.len()),
        tracked,
    };
    for (index, step) in script.iter().enumerate() {
        let wrap = |e: SurgeryError| SurgeryError::StepFailed {
            index,
            source: Box::new(e),
        };
        let (next, e) = apply_step(&current, step).map_err(wrap)?;
        for (_, class) in trace.tracked.iter_mut() {
            for mv in &e.moves {
                *class = mv.transport(class).map_err(|err| wrap(err.into()))?;
            }
        }
        trace.entries.push(e);
        current = next;
    }
    Ok((current, trace))
}

/// Proper transform of `class` (given on the initial lattice of `trace`):
/// at the `s`-th blowup subtract `mults[s]` times its exceptional class,
/// push forward through contractions.
pub fn proper_transform(trace: &SurgeryTrace, class: &DivisorClass, mults: &[i64]) -> Result<DivisorClass, SurgeryError> {
    if !trace.has_lattice() {
        return Err(SurgeryError::RequiresFullLattice);
    }
    let expected = trace.blowup_count();
    if mults.len() != expected {
        return Err(SurgeryError::MultiplicityCount {
            expected,
            found: mults.len(),
        });
    }
    let mut c = class.clone();
    let mut s = 0;
    for mv in trace.entries.iter().flat_map(|e| &e.moves) {
        c = mv.transport(&c)?;
        if let LatticeMove::Blowup { exceptional, .. } = mv {
            c = &c - &(mults[s] * exceptional);
            s += 1;
        }
    }
    Ok(c)
}

impl Realization {
    /// Self-intersection helper for tests and reports.
    pub fn component_self_intersections(&self) -> Result<Vec<i64>, LatticeError> {
        self.boundary_classes
            .iter()
            .map(|c| self.lattice.self_intersection(c))
            .collect()
    }
}
