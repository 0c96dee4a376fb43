//! JSON file formats: pair documents and surgery scripts, 1-based indices.

use std::fmt;

use logk3::boundary::{BoundaryShape, LogSurfacePair};
use logk3::lattice::{DivisorClass, IntersectionLattice};
use logk3::surgery::{Direction, SurgeryStep};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Type,
    Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BoundaryDoc {
    Elliptic { self_int: i64 },
    Nodal { self_int: i64 },
    Circular { lambdas: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub name: String,
    pub mode: Mode,
    pub boundary: BoundaryDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_classes: Option<Vec<Vec<i64>>>,
}

impl PairDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical serialization: fixed key order, two-space indent, trailing newline.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents hold only strings and integers");
        s.push('\n');
        s
    }

    pub fn shape(&self) -> Result<BoundaryShape, DocError> {
        match &self.boundary {
            BoundaryDoc::Elliptic { self_int } => Ok(BoundaryShape::Elliptic { self_int: *self_int }),
            BoundaryDoc::Nodal { self_int } => Ok(BoundaryShape::Nodal { self_int: *self_int }),
            BoundaryDoc::Circular { lambdas } => BoundaryShape::circular(lambdas.clone())
                .map_err(|e| DocError(format!("field `boundary.lambdas`: {e}"))),
        }
    }

    pub fn to_pair(&self) -> Result<LogSurfacePair, DocError> {
        let shape = self.shape()?;
        match self.mode {
            Mode::Type => {
                for (field, present) in [
                    ("gram", self.gram.is_some()),
                    ("canonical", self.canonical.is_some()),
                    ("boundary_classes", self.boundary_classes.is_some()),
                ] {
                    if present {
                        return Err(DocError(format!("field `{field}` is only allowed in lattice mode")));
                    }
                }
                Ok(LogSurfacePair::type_only(shape))
            }
            Mode::Lattice => {
                let missing = |f: &str| DocError(format!("missing field `{f}` (required in lattice mode)"));
                let gram = self.gram.clone().ok_or_else(|| missing("gram"))?;
                let canonical = self.canonical.clone().ok_or_else(|| missing("canonical"))?;
                let classes = self.boundary_classes.clone().ok_or_else(|| missing("boundary_classes"))?;
                let lattice = IntersectionLattice::new(gram, DivisorClass::new(canonical))
                    .map_err(|e| DocError(format!("field `gram`: {e}")))?;
                let classes = classes.into_iter().map(DivisorClass::new).collect();
                LogSurfacePair::realized(shape, lattice, classes)
                    .map_err(|e| DocError(format!("field `boundary_classes`: {e}")))
            }
        }
    }

    pub fn from_pair(name: &str, pair: &LogSurfacePair) -> Self {
        let boundary = match pair.shape() {
            BoundaryShape::Elliptic { self_int } => BoundaryDoc::Elliptic { self_int: *self_int },
            BoundaryShape::Nodal { self_int } => BoundaryDoc::Nodal { self_int: *self_int },
            BoundaryShape::Circular { lambdas } => BoundaryDoc::Circular {
                lambdas: lambdas.clone(),
            },
        };
        let r = pair.realization();
        PairDocument {
            name: name.to_string(),
            mode: if r.is_some() { Mode::Lattice } else { Mode::Type },
            boundary,
            gram: r.map(|r| r.lattice.gram().to_vec()),
            canonical: r.map(|r| r.lattice.canonical().coeffs().to_vec()),
            boundary_classes: r.map(|r| r.boundary_classes.iter().map(|c| c.coeffs().to_vec()).collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionDoc {
    Succ,
    Pred,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum StepDoc {
    Blowup {
        edge: [usize; 2],
        #[serde(default)]
        point: u8,
    },
    Contract {
        component: usize,
    },
    Pivot {
        component: usize,
        direction: DirectionDoc,
    },
    Attach {
        component: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptDocument {
    pub steps: Vec<StepDoc>,
}

fn zero_based(index: usize, at: usize, field: &str) -> Result<usize, DocError> {
    index
        .checked_sub(1)
        .ok_or_else(|| DocError(format!("step {}: field `{field}`: indices start at 1", at + 1)))
}

impl ScriptDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    #[cfg(test)]
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scripts hold only strings and integers");
        s.push('\n');
        s
    }

    pub fn to_steps(&self) -> Result<Vec<SurgeryStep>, DocError> {
        self.steps
            .iter()
            .enumerate()
            .map(|(at, s)| {
                Ok(match *s {
                    StepDoc::Blowup { edge, point } => {
                        if point > 1 {
                            return Err(DocError(format!("step {}: field `point` must be 0 or 1", at + 1)));
                        }
                        SurgeryStep::CanonicalBlowup {
                            edge: (zero_based(edge[0], at, "edge")?, zero_based(edge[1], at, "edge")?),
                            point,
                        }
                    }
                    StepDoc::Contract { component } => SurgeryStep::CanonicalBlowdown {
                        component: zero_based(component, at, "component")?,
                    },
                    StepDoc::Pivot { component, direction } => SurgeryStep::Pivot {
                        component: zero_based(component, at, "component")?,
                        direction: match direction {
                            DirectionDoc::Succ => Direction::Succ,
                            DirectionDoc::Pred => Direction::Pred,
                        },
                    },
                    StepDoc::Attach { component } => SurgeryStep::HalfPointAttach {
                        component: zero_based(component, at, "component")?,
                    },
                })
            })
            .collect()
    }

    #[cfg(test)]
    pub fn from_steps(steps: &[SurgeryStep]) -> Self {
        let steps = steps
            .iter()
            .map(|s| match *s {
                SurgeryStep::CanonicalBlowup { edge, point } => StepDoc::Blowup {
                    edge: [edge.0 + 1, edge.1 + 1],
                    point,
                },
                SurgeryStep::CanonicalBlowdown { component } => StepDoc::Contract {
                    component: component + 1,
                },
                SurgeryStep::Pivot { component, direction } => StepDoc::Pivot {
                    component: component + 1,
                    direction: match direction {
                        Direction::Succ => DirectionDoc::Succ,
                        Direction::Pred => DirectionDoc::Pred,
                    },
                },
                SurgeryStep::HalfPointAttach { component } => StepDoc::Attach {
                    component: component + 1,
                },
            })
            .collect();
        ScriptDocument { steps }
    }
}
