mod common;

use rand::{Rng, SeedableRng};
use racg_boundary::io::{fixtures, generate, Family};
use racg_boundary::search::SearchOptions;
use racg_boundary::{find_subdivision, is_planar, PatternId};

#[test]
fn pi_is_not_planar_but_its_double_over_y_is() {
    let pi = fixtures::pi1();
    let r = is_planar(&pi);
    assert!(!r.planar);
    r.witness.expect("Kuratowski witness").validate(&pi).unwrap();
    let d = pi.double("y").unwrap().graph;
    assert!(is_planar(&d).planar);
}

#[test]
fn named_graphs() {
    let petersen = generate(Family::Petersen, &[]).unwrap();
    let r = is_planar(&petersen);
    assert!(!r.planar);
    assert_eq!(r.witness.unwrap().pattern, PatternId::K33);
    assert!(common::contains_topological(&petersen, false));
    assert!(!common::contains_topological(&petersen, true));
    assert!(is_planar(&generate(Family::Cycle, &[7]).unwrap()).planar);
    assert!(!is_planar(&fixtures::k5s1()).planar);
    assert!(!is_planar(&fixtures::mobius(4)).planar);
}

#[test]
fn subdivision_search_agrees_with_edge_deletion() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let opts = SearchOptions::default();
    for _ in 0..400 {
        let n = rng.gen_range(5..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = common::random_connected(&mut rng, n, p);
        let k33 = common::contains_topological(&g, false);
        let k5 = common::contains_topological(&g, true);
        let found33 = find_subdivision(&g, PatternId::K33, &opts).unwrap();
        let found5 = find_subdivision(&g, PatternId::K5, &opts).unwrap();
        assert_eq!(found33.is_some(), k33, "{g:?}");
        assert_eq!(found5.is_some(), k5, "{g:?}");
        for emb in found33.iter().chain(&found5) {
            emb.validate(&g).unwrap();
        }
        let r = is_planar(&g);
        assert_eq!(r.planar, !(k33 || k5), "{g:?}");
        if let Some(w) = r.witness {
            w.validate(&g).unwrap();
        }
    }
}
