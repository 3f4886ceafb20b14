mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use racg_boundary::classify::{classify, ClassifyOptions, VerdictKind};
use racg_boundary::io::fixtures;
use racg_boundary::predicates::{has_isolated_flats, is_hyperbolic_racg, is_inseparable, separates};
use racg_boundary::SimplicialGraph;

fn connected_triangle_free(n: usize, seed: u64) -> Option<SimplicialGraph> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = common::random_triangle_free(&mut rng, n, 3 * n);
    g.is_connected().then_some(g)
}

proptest! {
    #[test]
    fn predicates_match_scans(n in 3usize..9, seed in any::<u64>()) {
        let Some(g) = connected_triangle_free(n, seed) else { return Ok(()) };
        let r = is_inseparable(&g).unwrap();
        let shapes = common::separator_shapes(&g);
        let reported = [&r.separating_vertex, &r.separating_edge, &r.cut_pair, &r.separating_vertex_suspension];
        for (found, w) in shapes.iter().zip(reported) {
            prop_assert_eq!(*found, w.is_some());
            if let Some(w) = w {
                prop_assert!(separates(&g, w));
            }
        }
        prop_assert_eq!(r.inseparable, !shapes.iter().any(|&s| s));
        prop_assert_eq!(is_hyperbolic_racg(&g).unwrap(), !common::has_induced_square(&g));
        prop_assert_eq!(has_isolated_flats(&g).unwrap(), !common::has_induced_k23(&g));
    }
}

#[test]
fn mobius_ladders_are_menger() {
    for n in 4..=6 {
        let r = classify(&fixtures::mobius(n), &ClassifyOptions::default()).unwrap();
        assert!(r.has(VerdictKind::MengerCurve), "M{n}");
        assert!(r.inseparability.inseparable);
        assert!(!r.hyperbolic);
        assert!(r.isolated_flats);
        assert_eq!(r.isolated_flats_strategy.label(), "caprace-k23-default");
    }
}

#[test]
fn pi_is_separated_by_a_suspension() {
    let pi = fixtures::pi1();
    let r = is_inseparable(&pi).unwrap();
    let s = r.separating_vertex_suspension.expect("suspension");
    assert_eq!(s, ["x", "y", "z"]);
    let removed = s.iter().cloned().collect();
    let parts = pi.without(&removed).components();
    assert_eq!(parts.len(), 3);
    for essential in ["a", "b", "c"] {
        assert!(parts.iter().any(|p| p.iter().any(|v| v == essential)));
    }
}
