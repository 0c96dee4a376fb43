//! Text, JSON, DOT and CSV renderings of core results.

use std::io::{self, Write};

use logk3::boundary::{format_type, BoundaryShape};
use logk3::classify::{AbundanceVerdict, B2CheckResult, EnumerationRow, Independence, Normalization};
use logk3::iitaka::{IitakaModel, ModelReport};
use logk3::surgery::SurgeryTrace;
use serde::Serialize;

/// ANSI styling, off unless stdout is a terminal or `LOGK3_COLOR=1`.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn from_env(is_terminal: bool) -> Self {
        let color = match std::env::var("LOGK3_COLOR").as_deref() {
            Ok("0") => false,
            Ok("1") => true,
            _ => is_terminal,
        };
        Style { color }
    }

    pub fn bold(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

pub fn classify_text(name: &str, input: &BoundaryShape, norm: &Normalization, verdict: &AbundanceVerdict, style: Style) -> String {
    let mut out = String::new();
    out.push_str(&format!("pair: {name}\n"));
    out.push_str(&format!("type: {input}\n"));
    out.push_str(&format!("{} / {}\n", style.bold(norm.class.label()), verdict.summary()));
    match verdict {
        AbundanceVerdict::Inconsistent { reason } => out.push_str(&format!("reason: {reason}\n")),
        _ => out.push_str(&format!("normal type: {}\n", norm.normal.shape())),
    }
    out.push_str(&format!("steps: {}\n", norm.trace.len()));
    if let AbundanceVerdict::NotInfinite { check, .. } = verdict {
        out.push_str(&b2_text(check));
    }
    out
}

pub fn b2_text(check: &B2CheckResult) -> String {
    let mut out = format!("B2 evaluated on {}\n", check.evaluated_on);
    for v in &check.witnessing_pairs {
        out.push_str(&format!(
            "  remove D{} + D{}: remainder {}\n",
            v.pair.0 + 1,
            v.pair.1 + 1,
            if v.remainder_negative_definite {
                "negative definite"
            } else {
                "not negative definite"
            }
        ));
    }
    out.push_str(&format!("independence: {}\n", independence_text(&check.independence)));
    out.push_str(if check.fails {
        "B2: FAILS — at most finitely many A¹ curves\n"
    } else {
        "B2: holds for some adjacent pair\n"
    });
    out
}

fn independence_text(i: &Independence) -> String {
    match i {
        Independence::Verified => "verified".into(),
        Independence::Assumed => "assumed (type only)".into(),
        Independence::Violated { kernel_dim } => format!("violated ({kernel_dim} relations)"),
    }
}

#[derive(Debug, Serialize)]
pub struct TraceLine {
    pub step: String,
    pub after: String,
}

pub fn trace_lines(trace: &SurgeryTrace) -> Vec<TraceLine> {
    trace
        .entries
        .iter()
        .map(|e| TraceLine {
            step: e.step.to_string(),
            after: e.after.to_string(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct B2Json {
    pub evaluated_on: String,
    pub fails: bool,
    pub independence: String,
    pub negative_definite_remainders: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyJson {
    pub name: String,
    #[serde(rename = "type")]
    pub input_type: String,
    pub class: String,
    pub verdict: String,
    pub normal_type: Option<String>,
    pub reason: Option<String>,
    pub b2: Option<B2Json>,
    pub trace: Vec<TraceLine>,
}

pub fn classify_json(name: &str, input: &BoundaryShape, norm: &Normalization, verdict: &AbundanceVerdict) -> ClassifyJson {
    let (reason, normal_type) = match verdict {
        AbundanceVerdict::Inconsistent { reason } => (Some(reason.clone()), None),
        _ => (None, Some(norm.normal.shape().to_string())),
    };
    let b2 = match verdict {
        AbundanceVerdict::NotInfinite { check, .. } => Some(B2Json {
            evaluated_on: check.evaluated_on.to_string(),
            fails: check.fails,
            independence: independence_text(&check.independence),
            negative_definite_remainders: check
                .witnessing_pairs
                .iter()
                .filter(|v| v.remainder_negative_definite)
                .map(|v| [v.pair.0 + 1, v.pair.1 + 1])
                .collect(),
        }),
        _ => None,
    };
    ClassifyJson {
        name: name.to_string(),
        input_type: input.to_string(),
        class: norm.class.label().to_string(),
        verdict: verdict.slug().to_string(),
        normal_type,
        reason,
        b2,
        trace: trace_lines(&norm.trace),
    }
}

/// Dual graph of the boundary: one node per component, one edge per node of `D`.
pub fn dot(name: &str, shape: &BoundaryShape) -> String {
    let lambdas = shape.self_intersections();
    let mut out = format!("graph \"{}\" {{\n", name.replace('"', "\\\""));
    for (i, l) in lambdas.iter().enumerate() {
        out.push_str(&format!("  D{0} [label=\"D{0} ({1})\"];\n", i + 1, l));
    }
    let n = lambdas.len();
    match shape {
        BoundaryShape::Elliptic { .. } => {}
        BoundaryShape::Nodal { .. } => out.push_str("  D1 -- D1;\n"),
        BoundaryShape::Circular { .. } => {
            for i in 0..n {
                out.push_str(&format!("  D{} -- D{};\n", i + 1, (i + 1) % n + 1));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn write_csv<W: Write>(w: W, rows: &[EnumerationRow]) -> io::Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["type", "class", "verdict", "normal_type", "trace_len"])?;
    for r in rows {
        csv.write_record([
            format_type(&r.lambdas),
            r.class.label().to_string(),
            r.verdict.slug().to_string(),
            r.normal.to_string(),
            r.trace_len.to_string(),
        ])?;
    }
    csv.flush()
}

pub fn model_text(m: &IitakaModel) -> String {
    let mut out = format!("model {} on {}\n", m.kind, m.surface);
    let lambdas = m.pair.shape().self_intersections();
    for (i, (name, l)) in m.component_names.iter().zip(&lambdas).enumerate() {
        out.push_str(&format!("  D{} = {name}, self-intersection {l}\n", i + 1));
    }
    out.push_str(&format!("boundary: {}\n", m.pair.shape()));
    if let Some(rho) = m.pair.picard_rank() {
        out.push_str(&format!("Picard rank: {rho}\n"));
    }
    if let Some(q) = m.pair.irregularity() {
        out.push_str(&format!("q = {q}\n"));
    }
    out
}

pub fn report_text(r: &ModelReport) -> String {
    let mut out = model_text(&r.model);
    out.push_str(&format!("half point attachments: {}\n", r.attachments.len()));
    for e in &r.trace.entries {
        out.push_str(&format!("  {}: {}\n", e.step, e.after));
    }
    out.push_str(&format!("final boundary: {}\n", r.pair.shape()));
    out.push_str(&format!("q = {} after surgery\n", r.q_after));
    out.push_str(&format!("K + D = 0: {}\n", if r.k_plus_d_zero { "yes" } else { "no" }));
    out.push_str(&b2_text(&r.b2_check));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use logk3::boundary::LogSurfacePair;
    use logk3::classify::{a1_abundance, normalize};

    fn shape(l: &[i64]) -> BoundaryShape {
        BoundaryShape::circular(l.to_vec()).unwrap()
    }

    #[test]
    fn dot_has_one_edge_per_node_of_the_cycle() {
        let d = dot("p", &shape(&[1, 1]));
        assert_eq!(d.matches(" -- ").count(), 2);
        assert!(d.contains("D2 [label=\"D2 (1)\"]"));
        assert!(dot("n", &BoundaryShape::Nodal { self_int: 9 }).contains("D1 -- D1;"));
        assert_eq!(dot("e", &BoundaryShape::Elliptic { self_int: 9 }).matches(" -- ").count(), 0);
    }

    #[test]
    fn c4_text_states_the_verdict_and_failure() {
        let p = LogSurfacePair::type_only(shape(&[1, 1]));
        let n = normalize(&p).unwrap();
        let v = a1_abundance(&p).unwrap();
        let text = classify_text("p", p.shape(), &n, &v, Style { color: false });
        assert!(text.contains("C4 / not infinitely many A¹ curves\n"));
        assert!(text.ends_with("B2: FAILS — at most finitely many A¹ curves\n"));
    }

    #[test]
    fn color_only_wraps_when_enabled() {
        assert_eq!(Style { color: false }.bold("C2"), "C2");
        assert_eq!(Style { color: true }.bold("C2"), "\x1b[1mC2\x1b[0m");
    }

    #[test]
    fn csv_quotes_type_vectors() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &logk3::classify::enumerate(2, 0, 1)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "type,class,verdict,normal_type,trace_len\n\"(0, 0)\",C3,countably-infinite,\"(0, 0)\",0\n\"(0, 1)\",C3,countably-infinite,\"(1, 0)\",0\n\"(1, 1)\",C4,not-infinite,\"(1, 1)\",0\n"
        );
    }
}
