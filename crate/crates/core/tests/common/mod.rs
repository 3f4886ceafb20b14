//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use racg_boundary::SimplicialGraph;

/// Random graph on `n` vertices `v0..` with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimplicialGraph {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((vs[i].clone(), vs[j].clone()));
            }
        }
    }
    SimplicialGraph::from_parts(vs.clone(), edges).unwrap()
}

/// Random triangle-free graph: edges are offered in random order and kept
/// when they close no triangle.
pub fn random_triangle_free<R: Rng>(rng: &mut R, n: usize, tries: usize) -> SimplicialGraph {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let mut adj = vec![BTreeSet::new(); n];
    for _ in 0..tries {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j || adj[i].contains(&j) || adj[i].intersection(&adj[j]).next().is_some() {
            continue;
        }
        adj[i].insert(j);
        adj[j].insert(i);
    }
    let edges: Vec<(String, String)> =
        (0..n).flat_map(|i| adj[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j))).map(|(i, j)| (vs[i].clone(), vs[j].clone())).collect();
    SimplicialGraph::from_parts(vs.clone(), edges).unwrap()
}

/// A subdivided K33 or K5 with at most `max_vertices` vertices, plus chords
/// that keep it triangle-free.
pub fn random_nonplanar<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialGraph {
    let k5 = rng.gen_bool(0.4);
    let (ess, pairs): (usize, Vec<(usize, usize)>) = if k5 {
        (5, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect())
    } else {
        (6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect())
    };
    loop {
        let mut counts = vec![0usize; pairs.len()];
        let mut spare = max_vertices - ess;
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        order.shuffle(rng);
        for &e in &order {
            if spare == 0 {
                break;
            }
            let k = rng.gen_range(0..=spare.min(2));
            counts[e] = k;
            spare -= k;
        }
        let mut n = ess;
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max_vertices];
        let link = |adj: &mut Vec<BTreeSet<usize>>, a: usize, b: usize| {
            adj[a].insert(b);
            adj[b].insert(a);
        };
        for (e, &(p, q)) in pairs.iter().enumerate() {
            let mut prev = p;
            for _ in 0..counts[e] {
                link(&mut adj, prev, n);
                prev = n;
                n += 1;
            }
            link(&mut adj, prev, q);
        }
        let triangle = (0..n).any(|i| adj[i].iter().any(|&j| j > i && adj[i].intersection(&adj[j]).next().is_some()));
        if triangle {
            continue;
        }
        let chords = rng.gen_range(0..=4);
        for _ in 0..chords * 4 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j && !adj[i].contains(&j) && adj[i].intersection(&adj[j]).next().is_none() {
                link(&mut adj, i, j);
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("u{i:02}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .flat_map(|i| adj[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .map(|(i, j)| (names[i].clone(), names[j].clone()))
            .collect();
        return SimplicialGraph::from_parts(names.clone(), edges).unwrap();
    }
}

/// Adjacency bitmasks of `g` over its vertices in label order.
pub fn masks(g: &SimplicialGraph) -> (Vec<String>, Vec<u64>) {
    let labels: Vec<String> = g.vertices().cloned().collect();
    let m = labels
        .iter()
        .map(|u| labels.iter().enumerate().filter(|(_, w)| g.has_edge(u, w)).fold(0u64, |acc, (j, _)| acc | 1 << j))
        .collect();
    (labels, m)
}

/// Whether the subgraph induced on `set` is a subdivision of K33 (`want = 6`)
/// or K5 (`want = 5`), by degree counting and contracting degree-2 paths.
pub fn induced_is_subdivision(adj: &[u64], set: u64, want: usize) -> bool {
    let deg = |v: usize| (adj[v] & set).count_ones() as usize;
    let branch_deg = if want == 6 { 3 } else { 4 };
    let mut ess = Vec::new();
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        match deg(v) {
            2 => {}
            d if d == branch_deg => ess.push(v),
            _ => return false,
        }
    }
    if ess.len() != want {
        return false;
    }
    // follow each branch from every essential vertex
    let mut seen = 0u64;
    let mut ends = vec![0u64; want];
    for (i, &e) in ess.iter().enumerate() {
        let mut out = adj[e] & set;
        while out != 0 {
            let mut cur = out.trailing_zeros() as usize;
            out &= out - 1;
            let mut prev = e;
            while deg(cur) == 2 {
                seen |= 1 << cur;
                let next = (adj[cur] & set & !(1u64 << prev)).trailing_zeros() as usize;
                prev = cur;
                cur = next;
            }
            let j = ess.iter().position(|&x| x == cur).unwrap();
            if j == i || ends[i] & (1 << j) != 0 {
                return false;
            }
            ends[i] |= 1 << j;
        }
    }
    let interior = set & !ess.iter().fold(0u64, |a, &e| a | 1 << e);
    if seen != interior {
        return false; // a detached cycle of degree-2 vertices
    }
    if want == 5 {
        return true;
    }
    // complete bipartite: the non-neighbours of ess[0] form its side
    let side: Vec<usize> = (0..6).filter(|&j| j == 0 || ends[0] & (1 << j) == 0).collect();
    side.len() == 3 && side.iter().all(|&p| side.iter().all(|&q| ends[p] & (1 << q) == 0))
}

/// Whether some induced subgraph of `g` is a K33 subdivision (brute force).
pub fn has_induced_k33(g: &SimplicialGraph) -> bool {
    let (_, adj) = masks(g);
    let n = adj.len();
    assert!(n <= 26, "brute force limited to small graphs");
    (0u64..1 << n).any(|set| set.count_ones() >= 6 && induced_is_subdivision(&adj, set, 6))
}

/// Random connected graph on `n` vertices: a random spanning tree plus edges
/// with probability `p`. Not necessarily triangle-free.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimplicialGraph {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert((j, i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.insert((i, j));
            }
        }
    }
    SimplicialGraph::from_parts(vs.clone(), edges.into_iter().map(|(i, j)| (vs[i].clone(), vs[j].clone()))).unwrap()
}

/// Edge list over vertex indices in label order.
pub fn edge_indices(g: &SimplicialGraph) -> (usize, Vec<(usize, usize)>) {
    let labels: Vec<&String> = g.vertices().collect();
    let ix = |l: &String| labels.iter().position(|x| *x == l).unwrap();
    (labels.len(), g.edges().map(|(u, w)| (ix(u), ix(w))).collect())
}

/// Whether the edge set `mask` (bits into `edges`), after pruning vertices
/// of degree at most 1 and smoothing degree-2 vertices, is exactly K33 or K5.
fn smooths_to(n: usize, edges: &[(usize, usize)], mask: u64, k5: bool) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, w)) in edges.iter().enumerate() {
        if mask >> e & 1 == 1 {
            adj[u].push(w);
            adj[w].push(u);
        }
    }
    // multigraph on the branch vertices; degree-2 chains become one edge
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let want = if k5 { (5, 4) } else { (6, 3) };
    if branch.len() != want.0 || branch.iter().any(|&v| adj[v].len() != want.1) {
        return false;
    }
    if (0..n).any(|v| adj[v].len() == 1) {
        return false;
    }
    let mut links = BTreeSet::new();
    let mut interior = 0usize;
    for &b in &branch {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first);
            while adj[cur].len() == 2 {
                interior += 1;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            if cur == b || !links.insert((b.min(cur), b.max(cur), b == b.min(cur))) {
                return false;
            }
        }
    }
    let used = (0..n).filter(|&v| !adj[v].is_empty()).count();
    // every chain was walked from both ends
    if used != branch.len() + interior / 2 {
        return false;
    }
    let pairs: BTreeSet<(usize, usize)> = links.iter().map(|&(a, b, _)| (a, b)).collect();
    if k5 {
        return pairs.len() == 10;
    }
    if pairs.len() != 9 {
        return false;
    }
    let side: Vec<usize> = branch.iter().copied().filter(|&v| v == branch[0] || !pairs.contains(&(branch[0].min(v), branch[0].max(v)))).collect();
    side.len() == 3 && side.iter().all(|&p| side.iter().all(|&q| p == q || !pairs.contains(&(p.min(q), p.max(q)))))
}

/// Whether `g` has a subgraph that is a subdivision of K33 (`k5 = false`) or
/// K5, by deleting edges one at a time. Independent of the library search.
pub fn contains_topological(g: &SimplicialGraph, k5: bool) -> bool {
    let (n, edges) = edge_indices(g);
    assert!(edges.len() <= 40);
    let mut dead = std::collections::HashSet::new();
    fn go(n: usize, edges: &[(usize, usize)], mask: u64, k5: bool, dead: &mut std::collections::HashSet<u64>) -> bool {
        if dead.contains(&mask) {
            return false;
        }
        let mut deg = vec![0usize; n];
        for (e, &(u, w)) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                deg[u] += 1;
                deg[w] += 1;
            }
        }
        let (need, d) = if k5 { (5, 4) } else { (6, 3) };
        if deg.iter().filter(|&&x| x >= d).count() < need {
            dead.insert(mask);
            return false;
        }
        // pendant edges never lie on a subdivision
        if let Some(e) = (0..edges.len()).find(|&e| mask >> e & 1 == 1 && (deg[edges[e].0] == 1 || deg[edges[e].1] == 1)) {
            let r = go(n, edges, mask & !(1 << e), k5, dead);
            if !r {
                dead.insert(mask);
            }
            return r;
        }
        if smooths_to(n, edges, mask, k5) {
            return true;
        }
        for e in 0..edges.len() {
            if mask >> e & 1 == 1 && go(n, edges, mask & !(1 << e), k5, dead) {
                return true;
            }
        }
        dead.insert(mask);
        false
    }
    go(n, &edges, (1u64 << edges.len()) - 1, k5, &mut dead)
}

/// Whether deleting `set` (index bitmask) leaves at least two components.
pub fn splits(adj: &[u64], set: u64) -> bool {
    let n = adj.len();
    let rest = ((1u64 << n) - 1) & !set;
    if rest == 0 {
        return false;
    }
    let start = rest.trailing_zeros();
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & rest & !seen;
        seen |= new;
        frontier |= new;
    }
    seen != rest
}

/// Which of the four separator shapes occur, by scanning every vertex set of
/// size at most 3.
pub fn separator_shapes(g: &SimplicialGraph) -> [bool; 4] {
    let (_, adj) = masks(g);
    let n = adj.len();
    let mut found = [false; 4];
    for set in 1u64..1 << n {
        let k = set.count_ones();
        if k > 3 || !splits(&adj, set) {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let edges = vs.iter().map(|&i| (adj[i] & set).count_ones()).sum::<u32>() / 2;
        match (k, edges) {
            (1, _) => found[0] = true,
            (2, 1) => found[1] = true,
            (2, 0) => found[2] = true,
            // a non-adjacent pair and a vertex joined to both
            (3, 2) => found[3] = vs.iter().any(|&c| (adj[c] & set).count_ones() == 2) || found[3],
            _ => {}
        }
    }
    found
}

/// Whether some four vertices induce a 4-cycle.
pub fn has_induced_square(g: &SimplicialGraph) -> bool {
    let (_, adj) = masks(g);
    let n = adj.len();
    (0u64..1 << n).filter(|s| s.count_ones() == 4).any(|s| (0..n).filter(|&i| s >> i & 1 == 1).all(|i| (adj[i] & s).count_ones() == 2))
}

/// Whether some five vertices induce K_{2,3}.
pub fn has_induced_k23(g: &SimplicialGraph) -> bool {
    let (_, adj) = masks(g);
    let n = adj.len();
    (0u64..1 << n).filter(|s| s.count_ones() == 5).any(|s| {
        let degs: Vec<u32> = (0..n).filter(|&i| s >> i & 1 == 1).map(|i| (adj[i] & s).count_ones()).collect();
        let edges: u32 = degs.iter().sum::<u32>() / 2;
        // six edges, two vertices of degree 3, three of degree 2, and no triangle
        edges == 6 && degs.iter().filter(|&&d| d == 3).count() == 2 && degs.iter().filter(|&&d| d == 2).count() == 3
            && (0..n).filter(|&i| s >> i & 1 == 1).all(|i| (0..n).filter(|&j| (adj[i] & s) >> j & 1 == 1).all(|j| adj[i] & adj[j] & s == 0))
    })
}

/// The double over `v` built from scratch: two copies of `g - v` glued along
/// the link of `v`. Copy vertices are renamed with a `'` suffix.
pub fn double_oracle(g: &SimplicialGraph, v: &str) -> SimplicialGraph {
    let link: BTreeSet<&String> = g.neighbors(v).unwrap().iter().collect();
    let name = |s: &String, second: bool| if second && !link.contains(s) { format!("{s}'") } else { s.clone() };
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for second in [false, true] {
        for s in g.vertices().filter(|s| s.as_str() != v) {
            vertices.insert(name(s, second));
        }
        for (s, t) in g.edges().filter(|(s, t)| s.as_str() != v && t.as_str() != v) {
            let (a, b) = (name(s, second), name(t, second));
            edges.insert((a.clone().min(b.clone()), a.max(b)));
        }
    }
    SimplicialGraph::from_parts(vertices, edges).unwrap()
}
