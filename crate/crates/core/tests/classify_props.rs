mod common;

use logk3::boundary::{BoundaryShape, LogSurfacePair};
use logk3::classify::{a1_abundance, normalize, AbundanceVerdict, Normalization};
use logk3::surgery::{apply_step, Direction, SurgeryStep};
use proptest::prelude::*;

fn shape(l: &[i64]) -> BoundaryShape {
    BoundaryShape::circular(l.to_vec()).unwrap()
}

fn admissible_type() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, 2..=5).prop_filter("Hodge-admissible", |l| {
        common::hodge_admissible(&shape(l).expected_gram())
    })
}

fn legal_steps(shape: &BoundaryShape) -> Vec<SurgeryStep> {
    match shape {
        BoundaryShape::Elliptic { .. } => vec![],
        BoundaryShape::Nodal { .. } => vec![SurgeryStep::CanonicalBlowup { edge: (0, 0), point: 0 }],
        BoundaryShape::Circular { lambdas } => {
            let n = lambdas.len();
            let mut out = Vec::new();
            for i in 0..n {
                if n > 2 || i == 0 {
                    out.push(SurgeryStep::CanonicalBlowup { edge: (i, (i + 1) % n), point: 0 });
                }
                if lambdas[i] == -1 {
                    out.push(SurgeryStep::CanonicalBlowdown { component: i });
                }
                if lambdas[i] == 0 {
                    out.push(SurgeryStep::Pivot { component: i, direction: Direction::Succ });
                    out.push(SurgeryStep::Pivot { component: i, direction: Direction::Pred });
                }
            }
            out
        }
    }
}

fn conjugate(l: &[i64], picks: &[prop::sample::Index]) -> LogSurfacePair {
    let mut p = LogSurfacePair::type_only(shape(l));
    for pick in picks {
        let steps = legal_steps(p.shape());
        if steps.is_empty() {
            break;
        }
        p = apply_step(&p, pick.get(&steps)).unwrap().0;
    }
    p
}

/// Each contraction shortens the cycle; between contractions all pivots sit
/// at one component, go one way, and move a neighbour strictly toward −1.
fn check_measure(n: &Normalization) -> Result<(), String> {
    let mut block: Option<(usize, Direction)> = None;
    for e in &n.trace.entries {
        match &e.step {
            SurgeryStep::CanonicalBlowdown { .. } => {
                if e.after.component_count() >= e.before.component_count() {
                    return Err(format!("contraction did not shorten {}", e.before));
                }
                block = None;
            }
            SurgeryStep::Pivot { component, direction } => {
                if let Some(b) = block {
                    if b != (*component, *direction) {
                        return Err("pivot block changed component or direction".into());
                    }
                }
                block = Some((*component, *direction));
                let (b, a) = (e.before.self_intersections(), e.after.self_intersections());
                let len = b.len();
                // distance to −1 of the neighbours moving toward it
                let measure = |v: &[i64]| {
                    let (mut down, mut up) = (v[(component + len - 1) % len], v[(component + 1) % len]);
                    if *direction == Direction::Succ {
                        std::mem::swap(&mut down, &mut up);
                    }
                    let a = if down >= -1 { down + 1 } else { i64::MAX };
                    let b = if up <= -1 { -1 - up } else { i64::MAX };
                    a.min(b)
                };
                if measure(&a) >= measure(&b) {
                    return Err(format!("pivot did not approach -1: {} -> {}", e.before, e.after));
                }
            }
            other => return Err(format!("unexpected step {other}")),
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normalize_is_idempotent(l in proptest::collection::vec(-5i64..=5, 2..=6)) {
        let first = normalize(&LogSurfacePair::type_only(shape(&l))).unwrap();
        let again = normalize(&first.normal).unwrap();
        prop_assert_eq!(&again.class, &first.class);
        prop_assert!(again.trace.is_empty());
    }

    #[test]
    fn normalize_decreases_its_measure(l in proptest::collection::vec(-5i64..=5, 2..=6)) {
        let n = normalize(&LogSurfacePair::type_only(shape(&l))).unwrap();
        prop_assert_eq!(check_measure(&n), Ok(()));
    }

    #[test]
    fn normal_forms_satisfy_their_invariants(l in proptest::collection::vec(-5i64..=5, 2..=6)) {
        let n = normalize(&LogSurfacePair::type_only(shape(&l))).unwrap();
        if let Some(t) = n.class.normal_type() {
            prop_assert_eq!(Some(t), n.normal.shape().lambdas());
        }
        match n.class.label() {
            "C2" => {
                let t = n.class.normal_type().unwrap();
                prop_assert!(t[0] != 0 && t[0] != -1);
                prop_assert!(t[1..].iter().all(|&x| x <= -2));
            }
            "C3" => {
                let t = n.class.normal_type().unwrap();
                prop_assert_eq!(t.len(), 2);
                prop_assert!(t[0] != -1 && t[1] == 0);
            }
            "C4" => {
                let t = n.class.normal_type().unwrap();
                prop_assert!(t.len() == 2 && t[0] > 0 && t[1] > 0);
            }
            _ => {}
        }
    }

    #[test]
    fn verdict_depends_only_on_class(
        l in admissible_type(),
        p1 in proptest::collection::vec(any::<prop::sample::Index>(), 0..6),
        p2 in proptest::collection::vec(any::<prop::sample::Index>(), 0..6),
    ) {
        let v1 = a1_abundance(&conjugate(&l, &p1)).unwrap();
        let v2 = a1_abundance(&conjugate(&l, &p2)).unwrap();
        prop_assert_eq!(v1.class().label(), v2.class().label());
        prop_assert_eq!(v1.slug(), v2.slug());
        if let AbundanceVerdict::NotInfinite { check, .. } = v1 {
            prop_assert!(check.fails);
        }
    }
}
