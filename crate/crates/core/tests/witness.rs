use proptest::prelude::*;
use racg_boundary::io::{fixtures, generate, Family};
use racg_boundary::search::SearchOptions;
use racg_boundary::witness::{build_witness, WitnessType};
use racg_boundary::{
    find_subdivision, fig5right_witness, is_planar, k33_boundary_witness, obstruction_check, pi_witness, theta_witness,
    verify_witness, BoundaryWitness, Error, PatternId, SimplicialGraph, SubdivisionEmbedding, SymbolicWitness,
};

fn embedding(g: &SimplicialGraph, p: PatternId) -> SubdivisionEmbedding {
    find_subdivision(g, p, &SearchOptions::default()).unwrap().expect("pattern present")
}

fn assert_valid(w: &SymbolicWitness, g: &SimplicialGraph) {
    let v = verify_witness(w, g);
    assert!(v.valid, "{:?}", v.diagnostic);
}

fn symbolic(w: BoundaryWitness) -> SymbolicWitness {
    match w {
        BoundaryWitness::Symbolic(w) => w,
        BoundaryWitness::JoinOfCantorSets => panic!("expected a symbolic witness"),
    }
}

/// K_{2,3}: a theta with every arc subdivided once.
fn k23() -> SimplicialGraph {
    SimplicialGraph::from_edges([("n", "m0"), ("m0", "s"), ("n", "m1"), ("m1", "s"), ("n", "m2"), ("m2", "s")]).unwrap()
}

/// Two poles joined through three circles, every arc subdivided once.
fn three_circles_with_poles() -> SimplicialGraph {
    let mut edges = Vec::new();
    for i in 0..3 {
        let (p, q) = (format!("p{i}"), format!("q{i}"));
        for (u, w, m) in [("N", p.as_str(), "n"), (q.as_str(), "S", "s"), (p.as_str(), q.as_str(), "l"), (p.as_str(), q.as_str(), "r")] {
            let mid = format!("{m}{i}");
            edges.push((u.to_string(), mid.clone()));
            edges.push((mid, w.to_string()));
        }
    }
    SimplicialGraph::from_edges(edges).unwrap()
}

#[test]
fn theta233_is_a_theta() {
    let g = fixtures::theta233();
    let w = theta_witness(&g, &embedding(&g, PatternId::Theta)).unwrap();
    assert_valid(&w, &g);
    assert_eq!(w.claimed_type, WitnessType::Theta);
    assert!(w.abstract_graph().unwrap().is_isomorphic(&k23()));
}

#[test]
fn theta_branches_of_length_two_are_refused() {
    let g = generate(Family::ThetaSubdiv, &[1, 1, 1]).unwrap();
    let err = theta_witness(&g, &embedding(&g, PatternId::Theta)).unwrap_err();
    assert!(matches!(err, Error::BranchTooShort(_)));
}

#[test]
fn theta_inside_a_subdivided_k33() {
    let g = fixtures::k33s1();
    let (_, w) = build_witness(&g, PatternId::Theta, &SearchOptions::default()).unwrap();
    let w = symbolic(w);
    assert_valid(&w, &g);
    assert!(w.abstract_graph().unwrap().is_isomorphic(&k23()));
}

#[test]
fn k33s1_witness_is_non_planar() {
    let g = fixtures::k33s1();
    let w = symbolic(k33_boundary_witness(&g, &embedding(&g, PatternId::K33)).unwrap());
    assert_valid(&w, &g);
    assert_eq!(w.claimed_type, WitnessType::K33);
    assert!(!is_planar(&w.abstract_graph().unwrap()).planar);
}

#[test]
fn non_induced_k33_is_refused() {
    let g = fixtures::pi1();
    let emb = embedding(&g, PatternId::K33);
    assert!(matches!(k33_boundary_witness(&g, &emb), Err(Error::NotInduced(_))));
}

#[test]
fn fig5_right_witnesses() {
    for g in [fixtures::fig5r1(), generate(Family::Fig5Right, &[2]).unwrap()] {
        let w = fig5right_witness(&g, &embedding(&g, PatternId::Fig5Right)).unwrap();
        assert_valid(&w, &g);
        assert_eq!(w.claimed_type, WitnessType::K33);
        assert!(!is_planar(&w.abstract_graph().unwrap()).planar);
    }
}

#[test]
fn pi_witness_is_three_circles_swapped_by_y() {
    let g = fixtures::pi1();
    let w = pi_witness(&g, &embedding(&g, PatternId::Fig5Left)).unwrap();
    assert_valid(&w, &g);
    assert!(obstruction_check(&w));
    assert!(w.abstract_graph().unwrap().is_isomorphic(&three_circles_with_poles()));
    let inv = w.involution.as_ref().unwrap();
    assert_eq!(inv.generator, "y");
    // y fixes exactly the two poles
    assert_eq!(inv.fixed_points.len(), 2);
}

#[test]
fn pi_witness_with_an_unsubdivided_ax_branch() {
    // branch order ax ay az bx by bz cx cy cz
    let g = generate(Family::Pi, &[0, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
    assert!(g.has_edge("a", "x"));
    let w = pi_witness(&g, &embedding(&g, PatternId::Fig5Left)).unwrap();
    assert_valid(&w, &g);
    assert!(obstruction_check(&w));
    assert!(w.abstract_graph().unwrap().is_isomorphic(&three_circles_with_poles()));
}

#[test]
fn tampered_witnesses_fail() {
    let g = fixtures::pi1();
    let w = pi_witness(&g, &embedding(&g, PatternId::Fig5Left)).unwrap();

    let mut moved = w.clone();
    let inv = moved.involution.as_mut().unwrap();
    inv.fixed_points.pop();
    assert!(!verify_witness(&moved, &g).valid);

    let mut relabeled = w.clone();
    relabeled.claimed_type = WitnessType::Theta;
    assert!(!verify_witness(&relabeled, &g).valid);

    let mut dangling = w;
    dangling.arcs[0].endpoints.1 = dangling.points.len();
    assert!(!verify_witness(&dangling, &g).valid);
}

proptest! {
    #[test]
    fn theta_witness_for_any_long_branches(c in proptest::collection::vec(1usize..5, 3)) {
        prop_assume!(c.iter().any(|&k| k >= 2));
        let g = generate(Family::ThetaSubdiv, &c).unwrap();
        let w = theta_witness(&g, &embedding(&g, PatternId::Theta)).unwrap();
        prop_assert!(verify_witness(&w, &g).valid);
        prop_assert!(w.abstract_graph().unwrap().is_isomorphic(&k23()));
    }

    #[test]
    fn k33_witness_for_any_subdivision(c in proptest::collection::vec(0usize..3, 9)) {
        prop_assume!(c.iter().any(|&k| k > 0));
        let g = generate(Family::K33Subdiv, &c).unwrap();
        let w = symbolic(k33_boundary_witness(&g, &embedding(&g, PatternId::K33)).unwrap());
        prop_assert!(verify_witness(&w, &g).valid);
        prop_assert!(!is_planar(&w.abstract_graph().unwrap()).planar);
    }
}
