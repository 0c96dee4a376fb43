//! Symbolic calculus for log K3 surfaces of type II.
//!
//! A pair `(X, D)` is described by the self-intersection pattern of its
//! anticanonical boundary and, optionally, by an exact intersection lattice
//! of `X` with the classes of the boundary components.

mod exact;

pub mod boundary;
pub mod classify;
pub mod grouparith;
pub mod iitaka;
pub mod lattice;
pub mod surgery;

pub use boundary::{BoundaryError, BoundaryShape, LogSurfacePair, Realization, ValidationReport};
pub use classify::{AbundanceVerdict, B2CheckResult, CanonicalClass};
pub use grouparith::{find_marked_point, verify_marked_point, FiniteGroupModel, MarkedPoint};
pub use iitaka::{IitakaTag, IitakaType, ModelReport};
pub use lattice::{DivisorClass, IntersectionLattice, LatticeError, LatticeMap, Signature};
pub use surgery::{Direction, SurgeryError, SurgeryStep, SurgeryTrace};
