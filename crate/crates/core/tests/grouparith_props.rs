use logk3::grouparith::{find_marked_point, verify_marked_point, FiniteGroupModel, MarkedPoint};
use proptest::prelude::*;

fn brute_force(model: &FiniteGroupModel, a: u64, target: u64) -> Option<u64> {
    (0..model.modulus()).find(|&p| verify_marked_point(model, &MarkedPoint { p, a, target }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn search_agrees_with_brute_force(n in 1u64..=200, a in 1u64..=40, gen in 0u64..200, target in 0u64..200) {
        let model = FiniteGroupModel::new(n, vec![gen % n]).unwrap();
        let target = target % n;
        let found = find_marked_point(&model, a, target);
        prop_assert_eq!(found.map(|m| m.p), brute_force(&model, a, target));
        if let Some(m) = found {
            prop_assert!(verify_marked_point(&model, &m));
        }
    }
}

#[test]
fn two_candidates_cover_each_other() {
    for n in 1u64..=200 {
        let model = FiniteGroupModel::new(n, vec![]).unwrap();
        for a in (2u64..=n).filter(|a| n % (a * a) == 0) {
            for target in (0..n).filter(|t| t % a == 0).take(5) {
                let sols: Vec<u64> = (0..n).filter(|&p| (a * p) % n == target).collect();
                for &p1 in &sols {
                    for &p2 in &sols {
                        let d = (p1 + n - p2) % n;
                        let order = (1..=n).find(|&k| (k * d) % n == 0).unwrap();
                        if order != a {
                            continue;
                        }
                        let ok1 = verify_marked_point(&model, &MarkedPoint { p: p1, a, target });
                        let ok2 = verify_marked_point(&model, &MarkedPoint { p: p2, a, target });
                        assert!(ok1 || ok2, "n={n} a={a} target={target} p1={p1} p2={p2}");
                    }
                }
            }
        }
    }
}
