//! Finite simplicial graphs with stable string labels.
//!
//! A [`SimplicialGraph`] is the defining graph of a right-angled Coxeter
//! group. Labels are ordered lexicographically and every iteration follows
//! that order, so all derived searches are deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Label = String;

/// Finite simple undirected graph with string vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct SimplicialGraph {
    adj: BTreeMap<Label, BTreeSet<Label>>,
}

/// Wire form: `{"vertices": [...], "edges": [["u", "w"], ...]}`.
#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<Label>,
    edges: Vec<[Label; 2]>,
}

impl TryFrom<GraphDoc> for SimplicialGraph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        SimplicialGraph::from_parts(doc.vertices, doc.edges.into_iter().map(|[u, w]| (u, w)))
    }
}

impl From<SimplicialGraph> for GraphDoc {
    fn from(g: SimplicialGraph) -> Self {
        GraphDoc {
            vertices: g.vertices().cloned().collect(),
            edges: g.edges().map(|(u, w)| [u.clone(), w.clone()]).collect(),
        }
    }
}

impl SimplicialGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from a vertex list and an edge list. Edge endpoints must
    /// be listed vertices; self loops and repeated edges are rejected.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<Label>,
        E: IntoIterator<Item = (Label, Label)>,
    {
        let mut g = SimplicialGraph::new();
        for v in vertices {
            g.adj.entry(v.into()).or_default();
        }
        for (u, w) in edges {
            if !g.adj.contains_key(&u) {
                return Err(Error::UnknownVertex(u));
            }
            if !g.adj.contains_key(&w) {
                return Err(Error::UnknownVertex(w));
            }
            g.insert_edge(u, w)?;
        }
        Ok(g)
    }

    /// Builds a graph from edges alone; the vertex set is the set of endpoints.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<Label>,
    {
        let mut g = SimplicialGraph::new();
        for (u, w) in edges {
            let (u, w) = (u.into(), w.into());
            g.adj.entry(u.clone()).or_default();
            g.adj.entry(w.clone()).or_default();
            g.insert_edge(u, w)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_vertex(&mut self, v: Label) {
        self.adj.entry(v).or_default();
    }

    pub(crate) fn insert_edge(&mut self, u: Label, w: Label) -> Result<()> {
        if u == w {
            return Err(Error::SelfLoop(u));
        }
        let fresh = self.adj.entry(u.clone()).or_default().insert(w.clone());
        if !fresh {
            let (a, b) = ordered(u, w);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.adj.entry(w).or_default().insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Label> + '_ {
        self.adj.keys()
    }

    /// Edges as `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.adj
            .iter()
            .flat_map(|(u, ns)| ns.range::<Label, _>((std::ops::Bound::Excluded(u), std::ops::Bound::Unbounded)).map(move |w| (u, w)))
    }

    pub fn contains(&self, v: &str) -> bool {
        self.adj.contains_key(v)
    }

    pub fn has_edge(&self, u: &str, w: &str) -> bool {
        self.adj.get(u).is_some_and(|ns| ns.contains(w))
    }

    pub fn neighbors(&self, v: &str) -> Result<&BTreeSet<Label>> {
        self.adj.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        self.neighbors(v).map(BTreeSet::len)
    }

    /// The link of `v`: exactly its neighbours.
    pub fn link(&self, v: &str) -> Result<BTreeSet<Label>> {
        self.neighbors(v).cloned()
    }

    pub fn induced_subgraph<'a, I>(&self, subset: I) -> Result<SimplicialGraph>
    where
        I: IntoIterator<Item = &'a Label>,
    {
        let keep: BTreeSet<&Label> = subset.into_iter().collect();
        let mut out = SimplicialGraph::new();
        for v in &keep {
            let ns = self.neighbors(v)?;
            let inside = ns.iter().filter(|w| keep.contains(w)).cloned().collect();
            out.adj.insert((*v).clone(), inside);
        }
        Ok(out)
    }

    /// The graph with `removed` deleted (unknown labels are ignored).
    pub fn without(&self, removed: &BTreeSet<Label>) -> SimplicialGraph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| !removed.contains(*v))
            .map(|(v, ns)| (v.clone(), ns.iter().filter(|w| !removed.contains(*w)).cloned().collect()))
            .collect();
        SimplicialGraph { adj }
    }

    /// Connected components, each sorted, ordered by their least label.
    pub fn components(&self) -> Vec<Vec<Label>> {
        let mut seen: BTreeSet<&Label> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start.clone()];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in &self.adj[v] {
                    if seen.insert(w) {
                        comp.push(w.clone());
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Lexicographically least triangle, if any.
    pub fn find_triangle(&self) -> Option<[Label; 3]> {
        for (u, ns) in &self.adj {
            for w in ns.iter().filter(|w| *w > u) {
                let common = self.adj[w].iter().find(|t| *t > w && ns.contains(*t));
                if let Some(t) = common {
                    return Some([u.clone(), w.clone(), t.clone()]);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn require_triangle_free(&self) -> Result<()> {
        match self.find_triangle() {
            Some(t) => Err(Error::NotTriangleFree(t)),
            None => Ok(()),
        }
    }

    /// All induced cycles of length at most `max_length`.
    ///
    /// Each cycle is reported once, starting at its least label and oriented
    /// so that the second label is smaller than the last. The result is sorted.
    pub fn enumerate_induced_cycles(&self, max_length: usize) -> Vec<Vec<Label>> {
        let ix = Indexed::new(self);
        let n = ix.len();
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(max_length);
        for s in 0..n {
            path.clear();
            path.push(s);
            induced_cycles_from(&ix, s, max_length, &mut path, &mut out);
        }
        let mut cycles: Vec<Vec<Label>> = out
            .into_iter()
            .map(|c| c.into_iter().map(|i| ix.labels[i].clone()).collect())
            .collect();
        cycles.sort();
        cycles
    }

    /// True when the cyclic sequence `cycle` is a cycle of the graph with no chords.
    pub fn is_induced_cycle(&self, cycle: &[Label]) -> bool {
        let k = cycle.len();
        if k < 3 {
            return false;
        }
        let distinct: BTreeSet<&Label> = cycle.iter().collect();
        if distinct.len() != k {
            return false;
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if self.has_edge(&cycle[i], &cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// The double of the graph over `v` with an automatically chosen generation
    /// tag that cannot collide with existing labels.
    pub fn double(&self, v: &str) -> Result<DoublingResult> {
        let tag = self.max_generation() + 1;
        self.double_tagged(v, tag)
    }

    /// The double over `v` where second-copy vertices are labelled `s#tag`.
    pub fn double_tagged(&self, v: &str, tag: u32) -> Result<DoublingResult> {
        let link = self.link(v)?;
        let mut graph = SimplicialGraph::new();
        let mut correspondence = BTreeMap::new();
        let mut primed = BTreeSet::new();
        let mut image: HashMap<&Label, Label> = HashMap::new();
        for s in self.adj.keys().filter(|s| s.as_str() != v) {
            graph.insert_vertex(s.clone());
            correspondence.insert(s.clone(), s.clone());
            if !link.contains(s) {
                let copy = format!("{s}#{tag}");
                if self.adj.contains_key(&copy) {
                    return Err(Error::InvalidEmbedding(format!(
                        "doubling tag {tag} collides with existing label `{copy}`"
                    )));
                }
                graph.insert_vertex(copy.clone());
                correspondence.insert(copy.clone(), s.clone());
                primed.insert(copy.clone());
                image.insert(s, copy);
            }
        }
        for (s, t) in self.edges() {
            if s == v || t == v {
                continue;
            }
            graph.adj.get_mut(s).unwrap().insert(t.clone());
            graph.adj.get_mut(t).unwrap().insert(s.clone());
            let s2 = image.get(s).unwrap_or(s);
            let t2 = image.get(t).unwrap_or(t);
            graph.adj.get_mut(s2).unwrap().insert(t2.clone());
            graph.adj.get_mut(t2).unwrap().insert(s2.clone());
        }
        Ok(DoublingResult {
            graph,
            doubled_vertex: v.to_string(),
            tag,
            correspondence,
            primed,
        })
    }

    /// Largest `k` appearing as a `#k` suffix segment in any label.
    pub fn max_generation(&self) -> u32 {
        self.adj
            .keys()
            .flat_map(|l| l.split('#').skip(1).filter_map(|part| {
                let digits: String = part.chars().take_while(char::is_ascii_digit).collect();
                digits.parse::<u32>().ok()
            }))
            .max()
            .unwrap_or(0)
    }

    /// Exact isomorphism test by degree-pruned backtracking. Intended for the
    /// small graphs that appear in tests and witnesses.
    pub fn is_isomorphic(&self, other: &SimplicialGraph) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let a = Indexed::new(self);
        let b = Indexed::new(other);
        let mut da: Vec<usize> = a.adj.iter().map(Vec::len).collect();
        let mut db: Vec<usize> = b.adj.iter().map(Vec::len).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        let mut map = vec![usize::MAX; a.len()];
        let mut used = vec![false; b.len()];
        iso_extend(&a, &b, 0, &mut map, &mut used)
    }
}

fn iso_extend(a: &Indexed, b: &Indexed, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if used[j] || a.adj[i].len() != b.adj[j].len() {
            continue;
        }
        let consistent = (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k]));
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if iso_extend(a, b, i + 1, map, used) {
            return true;
        }
        used[j] = false;
    }
    map[i] = usize::MAX;
    false
}

fn induced_cycles_from(ix: &Indexed, s: usize, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    for &w in &ix.adj[last] {
        if w <= s || path.contains(&w) {
            continue;
        }
        // w may only touch the path at `last`, and at `s` when it closes the cycle
        let inner = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        let inner_chord = inner.iter().any(|&p| ix.has_edge(w, p));
        if inner_chord {
            continue;
        }
        let closes = path.len() >= 2 && ix.has_edge(w, s);
        if closes {
            let k = path.len() + 1;
            if k <= max_len && path[1] < w {
                let mut cycle = path.clone();
                cycle.push(w);
                out.push(cycle);
            }
            continue;
        }
        if path.len() + 1 < max_len {
            path.push(w);
            induced_cycles_from(ix, s, max_len, path, out);
            path.pop();
        }
    }
}

fn ordered(u: Label, w: Label) -> (Label, Label) {
    if u <= w {
        (u, w)
    } else {
        (w, u)
    }
}

/// Result of doubling a graph over a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingResult {
    pub graph: SimplicialGraph,
    pub doubled_vertex: Label,
    /// Generation tag used for second-copy labels (`s#tag`).
    pub tag: u32,
    /// Folding map from every vertex of the double to its original vertex.
    pub correspondence: BTreeMap<Label, Label>,
    /// Vertices belonging only to the second copy.
    pub primed: BTreeSet<Label>,
}

impl DoublingResult {
    /// Label of the second copy of `s` (itself when `s` is in the link).
    pub fn second_copy<'a>(&'a self, s: &'a str) -> &'a str {
        let candidate = format!("{s}#{}", self.tag);
        match self.primed.get(&candidate) {
            Some(l) => l.as_str(),
            None => s,
        }
    }
}

/// Index-based view of a graph: vertex `i` is the `i`-th label in
/// lexicographic order, so index order equals label order.
#[derive(Clone, Debug)]
pub(crate) struct Indexed {
    pub labels: Vec<Label>,
    pub adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Indexed {
    pub fn new(g: &SimplicialGraph) -> Self {
        let labels: Vec<Label> = g.adj.keys().cloned().collect();
        let index: HashMap<Label, usize> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let n = labels.len();
        let mut matrix = vec![false; n * n];
        let adj: Vec<Vec<usize>> = labels
            .iter()
            .map(|l| g.adj[l].iter().map(|w| index[w]).collect())
            .collect();
        for (i, ns) in adj.iter().enumerate() {
            for &j in ns {
                matrix[i * n + j] = true;
            }
        }
        Indexed { labels, adj, matrix }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.labels.len() + j]
    }
}
