//! Planarity testing by face-path insertion on biconnected blocks, with
//! Kuratowski witnesses extracted from a minimal non-planar edge set.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::embedding::SubdivisionEmbedding;
use crate::error::{Error, Result};
use crate::graph::{Label, SimplicialGraph};
use crate::pattern::PatternId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityResult {
    pub planar: bool,
    /// A K5 or K33 subdivision when the graph is not planar.
    pub witness: Option<SubdivisionEmbedding>,
}

/// Decides planarity; non-planar graphs come with a Kuratowski subdivision.
pub fn is_planar(g: &SimplicialGraph) -> PlanarityResult {
    let labels: Vec<Label> = g.vertices().cloned().collect();
    let index: BTreeMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, w)| (index[u], index[w])).collect();
    if planar_edges(labels.len(), &edges) {
        return PlanarityResult { planar: true, witness: None };
    }
    let witness = kuratowski(&labels, &edges).expect("non-planar graph has a Kuratowski subgraph");
    PlanarityResult { planar: false, witness: Some(witness) }
}

/// Boolean planarity for an edge list over `0..n`.
pub(crate) fn planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    let m = edges.len();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, w) in edges {
        adj[u].push(w);
        adj[w].push(u);
    }
    blocks(&adj).into_iter().all(|block| block_planar(&block))
}

/// Biconnected components as edge lists.
fn blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut dfs: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, parent, ref mut i)) = dfs.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(p, _, _)) = dfs.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = stack.pop() {
                            comp.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

/// Face-insertion planarity test for a biconnected block.
fn block_planar(edges: &[(usize, usize)]) -> bool {
    if edges.len() < 3 {
        return true;
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, w)| [u, w]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, w) in edges {
        adj[local[&u]].push(local[&w]);
        adj[local[&w]].push(local[&u]);
    }
    for ns in &mut adj {
        ns.sort_unstable();
    }

    let cycle = find_cycle(&adj);
    let mut embedded_v = vec![false; n];
    let mut embedded_e: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        embedded_v[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        embedded_e.insert(key(v, w));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    let total = edges.len();

    while embedded_e.len() < total {
        let frags = fragments(&adj, &embedded_v, &embedded_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = fragment_path(&adj, &frags[fi], &embedded_v);
        for w in path.windows(2) {
            embedded_e.insert(key(w[0], w[1]));
        }
        for &v in &path {
            embedded_v[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    true
}

fn key(u: usize, w: usize) -> (usize, usize) {
    if u < w {
        (u, w)
    } else {
        (w, u)
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    // DFS until a back edge closes a cycle
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < adj[v].len() {
            let w = adj[v][*i];
            *i += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
        } else {
            stack.pop();
        }
    }
    unreachable!("biconnected block with at least three edges contains a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment; empty for a single chord.
    inner: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], ev: &[bool], ee: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !ev[u] {
            continue;
        }
        for &w in &adj[u] {
            if u < w && ev[w] && !ee.contains(&(u, w)) {
                out.push(Fragment { attachments: vec![u, w], inner: Vec::new(), chord: Some((u, w)) });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if ev[s] || seen[s] {
            continue;
        }
        let mut inner = vec![s];
        let mut att = BTreeSet::new();
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if ev[w] {
                    att.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    q.push_back(w);
                }
            }
        }
        out.push(Fragment { attachments: att.into_iter().collect(), inner, chord: None });
    }
    out
}

fn fragment_path(adj: &[Vec<usize>], frag: &Fragment, ev: &[bool]) -> Vec<usize> {
    if let Some((u, w)) = frag.chord {
        return vec![u, w];
    }
    let inside: BTreeSet<usize> = frag.inner.iter().copied().collect();
    let start = frag.attachments[0];
    let first = *adj[start].iter().find(|w| inside.contains(w)).expect("attachment touches fragment");
    // BFS inside the fragment to a vertex touching another attachment
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut q = VecDeque::from([first]);
    prev.insert(first, usize::MAX);
    while let Some(v) = q.pop_front() {
        if let Some(&end) = adj[v].iter().find(|&&w| ev[w] && w != start) {
            let mut path = vec![end, v];
            let mut x = v;
            while prev[&x] != usize::MAX {
                x = prev[&x];
                path.push(x);
            }
            path.push(start);
            path.reverse();
            return path;
        }
        for &w in &adj[v] {
            if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                q.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (u, w) = (path[0], path[path.len() - 1]);
    let k = face.len();
    let i = face.iter().position(|&v| v == u).unwrap();
    let j = face.iter().position(|&v| v == w).unwrap();
    let interior = &path[1..path.len() - 1];
    // face walk from u to w, then back along the path interior
    let mut f1 = Vec::new();
    let mut t = i;
    loop {
        f1.push(face[t]);
        if t == j {
            break;
        }
        t = (t + 1) % k;
    }
    f1.extend(interior.iter().rev());
    let mut f2 = Vec::new();
    let mut t = j;
    loop {
        f2.push(face[t]);
        if t == i {
            break;
        }
        t = (t + 1) % k;
    }
    f2.extend(interior.iter());
    (f1, f2)
}

/// Deletes edges while the graph stays non-planar; what remains is a
/// subdivision of K5 or K33, which is then traced into an embedding.
fn kuratowski(labels: &[Label], edges: &[(usize, usize)]) -> Result<SubdivisionEmbedding> {
    let n = labels.len();
    let mut keep: Vec<(usize, usize)> = edges.to_vec();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if planar_edges(n, &trial) {
            i += 1;
        } else {
            keep = trial;
        }
    }
    trace_kuratowski(labels, &keep)
}

fn trace_kuratowski(labels: &[Label], edges: &[(usize, usize)]) -> Result<SubdivisionEmbedding> {
    let n = labels.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, w) in edges {
        adj[u].push(w);
        adj[w].push(u);
    }
    let branch_vertices: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &s in &branch_vertices {
        for &first in &adj[s] {
            let mut path = vec![s, first];
            while adj[*path.last().unwrap()].len() == 2 {
                let cur = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                path.push(next);
            }
            let t = *path.last().unwrap();
            paths.insert((s, t), path);
        }
    }
    let lookup = |u: &Label, w: &Label| -> Option<Vec<Label>> {
        let ui = labels.iter().position(|l| l == u)?;
        let wi = labels.iter().position(|l| l == w)?;
        paths.get(&(ui, wi)).map(|p| p.iter().map(|&v| labels[v].clone()).collect())
    };
    match branch_vertices.len() {
        5 => {
            let ess = branch_vertices.iter().map(|&v| labels[v].clone()).collect();
            SubdivisionEmbedding::from_lookup(PatternId::K5, ess, lookup)
        }
        6 => {
            let first = branch_vertices[0];
            let joined = |u: usize, w: usize| paths.contains_key(&(u, w));
            let left: Vec<usize> = branch_vertices.iter().copied().filter(|&v| v == first || !joined(first, v)).collect();
            let right: Vec<usize> = branch_vertices.iter().copied().filter(|&v| v != first && joined(first, v)).collect();
            if left.len() != 3 || right.len() != 3 {
                return Err(Error::InternalInvariantViolation("minimal non-planar subgraph is not K33-shaped".into()));
            }
            let ess = left.iter().chain(&right).map(|&v| labels[v].clone()).collect();
            SubdivisionEmbedding::from_lookup(PatternId::K33, ess, lookup)
        }
        k => Err(Error::InternalInvariantViolation(format!("minimal non-planar subgraph has {k} branch vertices"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(&str, &str)]) -> SimplicialGraph {
        SimplicialGraph::from_edges(edges.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> SimplicialGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((format!("v{i}"), format!("v{j}")));
            }
        }
        SimplicialGraph::from_edges(e).unwrap()
    }

    fn petersen() -> SimplicialGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
            e.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
            e.push((format!("o{i}"), format!("i{i}")));
        }
        SimplicialGraph::from_edges(e).unwrap()
    }

    #[test]
    fn small_cases() {
        let c6 = graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "a")]);
        assert_eq!(is_planar(&c6), PlanarityResult { planar: true, witness: None });
        assert!(is_planar(&complete(4)).planar);
        let r = is_planar(&complete(5));
        assert!(!r.planar);
        let w = r.witness.unwrap();
        assert_eq!(w.pattern, PatternId::K5);
        w.validate(&complete(5)).unwrap();
    }

    #[test]
    fn k33_identity_witness() {
        let k33 = graph(&[("a", "x"), ("a", "y"), ("a", "z"), ("b", "x"), ("b", "y"), ("b", "z"), ("c", "x"), ("c", "y"), ("c", "z")]);
        let w = is_planar(&k33).witness.unwrap();
        assert_eq!(w.pattern, PatternId::K33);
        assert_eq!(w.essential, ["a", "b", "c", "x", "y", "z"]);
        w.validate(&k33).unwrap();
    }

    #[test]
    fn petersen_is_not_planar() {
        let p = petersen();
        let r = is_planar(&p);
        assert!(!r.planar);
        let w = r.witness.unwrap();
        assert_eq!(w.pattern, PatternId::K33);
        w.validate(&p).unwrap();
    }

    #[test]
    fn cube_and_wheel_are_planar() {
        let mut e = Vec::new();
        for i in 0..8u32 {
            for b in 0..3 {
                let j = i ^ (1 << b);
                if i < j {
                    e.push((format!("q{i}"), format!("q{j}")));
                }
            }
        }
        assert!(is_planar(&SimplicialGraph::from_edges(e).unwrap()).planar);
        let mut w = Vec::new();
        for i in 0..7 {
            w.push((format!("r{i}"), format!("r{}", (i + 1) % 7)));
            w.push(("hub".to_string(), format!("r{i}")));
        }
        assert!(is_planar(&SimplicialGraph::from_edges(w).unwrap()).planar);
    }
}
