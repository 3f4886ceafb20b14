use std::time::Instant;

use racg_boundary::io::fixtures;
use racg_boundary::reduction::Construction;
use racg_boundary::search::SearchOptions;
use racg_boundary::{reduce, verify_certificate, Error, PatternId, SimplicialGraph, StepAction, TerminalPattern};

fn run(g: &SimplicialGraph) -> racg_boundary::ReductionCertificate {
    let t = Instant::now();
    let cert = reduce(g, &SearchOptions::default()).unwrap();
    let v = verify_certificate(&cert);
    assert!(v.valid, "{:?}", v.diagnostic);
    eprintln!("{:?} after {} doublings in {:?}", cert.terminal, cert.doubling_count(), t.elapsed());
    cert
}

#[test]
fn subdivided_k33_is_already_induced() {
    let cert = run(&fixtures::k33s1());
    assert_eq!(cert.terminal, TerminalPattern::InducedK33);
    assert_eq!(cert.doubling_count(), 0);
}

#[test]
fn pi_graph_ends_at_fig5_left() {
    let cert = run(&fixtures::pi1());
    assert_eq!(cert.terminal, TerminalPattern::Fig5Left);
}

#[test]
fn minimal_fig5_right_instance() {
    let cert = run(&fixtures::fig5r1());
    assert!(matches!(cert.terminal, TerminalPattern::Fig5Right | TerminalPattern::InducedK33));
}

#[test]
fn subdivided_k5_goes_through_the_double() {
    let cert = run(&fixtures::k5s1());
    assert_eq!(cert.kuratowski, PatternId::K5);
    assert!(matches!(
        cert.steps[0].action,
        StepAction::Double { construction: Construction::K5Double, .. }
    ));
    assert!(cert.doubling_count() <= cert.initial_bad_edges().unwrap() + 1);
}

#[test]
fn planar_input_is_rejected() {
    let c6 = racg_boundary::io::generate(racg_boundary::io::Family::Cycle, &[6]).unwrap();
    assert_eq!(reduce(&c6, &SearchOptions::default()).unwrap_err(), Error::PlanarInput);
}

mod common;

/// Random inputs at a generous budget with a per-graph deadline. A few inputs
/// run out of time; everything that finishes must verify, and every doubling
/// outside a lookahead pair must lower the bad-edge count.
#[test]
fn random_nonplanar_graphs_reduce() {
    use rand::SeedableRng;
    use std::time::Duration;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut finished = 0;
    for i in 0..60 {
        let g = common::random_nonplanar(&mut rng, 14);
        let opts = SearchOptions { budget: 64, deadline: Some(Instant::now() + Duration::from_secs(3)) };
        let cert = match reduce(&g, &opts) {
            Ok(c) => c,
            Err(Error::DeadlineExceeded | Error::GraphTooLarge { .. }) => continue,
            Err(e) => panic!("graph {i}: {e}\n{}", racg_boundary::io::to_edgelist(&g)),
        };
        let v = verify_certificate(&cert);
        assert!(v.valid, "graph {i}: {:?}", v.diagnostic);
        for s in &cert.steps {
            if let StepAction::Double { construction, successor_bad_edges, .. } = &s.action {
                if s.report.embedding.pattern == PatternId::K33 && *construction != Construction::Lookahead {
                    assert!(*successor_bad_edges < s.report.count, "graph {i}: {construction:?} did not lower B");
                }
            }
        }
        finished += 1;
    }
    assert!(finished >= 54, "only {finished} of 60 finished");
}

/// K33 plus the chord x-y, with a-y and b-x left as single edges and the other
/// branches subdivided once. No single double lowers the bad-edge count, so
/// the reduction has to take a lookahead pair.
#[test]
fn chord_needing_a_pair_of_doubles() {
    let mut edges = vec![("x".to_string(), "y".to_string()), ("a".into(), "y".into()), ("b".into(), "x".into())];
    for (l, r) in [("a", "x"), ("a", "z"), ("b", "y"), ("b", "z"), ("c", "x"), ("c", "y"), ("c", "z")] {
        let m = format!("{l}{r}");
        edges.push((l.into(), m.clone()));
        edges.push((m, r.into()));
    }
    let g = SimplicialGraph::from_edges(edges).unwrap();
    assert!(g.is_triangle_free());
    let cert = run(&g);
    assert!(cert
        .steps
        .iter()
        .any(|s| matches!(s.action, StepAction::Double { construction: Construction::Lookahead, .. })));
}
