//! Subdivision embeddings and their bad edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Label, SimplicialGraph};
use crate::pattern::{BranchRule, PatternId};

/// A subdivision of a pattern inside a graph.
///
/// `essential[i]` is the image of pattern vertex `i`; `branches[e]` is the
/// path realising pattern edge `e`, running from the image of `edges()[e].0`
/// to the image of `edges()[e].1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EmbeddingDoc", try_from = "EmbeddingDoc")]
pub struct SubdivisionEmbedding {
    pub pattern: PatternId,
    pub essential: Vec<Label>,
    pub branches: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingDoc {
    pattern: PatternId,
    essential_map: BTreeMap<String, Label>,
    branches: Vec<BranchDoc>,
}

#[derive(Serialize, Deserialize)]
struct BranchDoc {
    edge: [String; 2],
    path: Vec<Label>,
}

impl From<SubdivisionEmbedding> for EmbeddingDoc {
    fn from(e: SubdivisionEmbedding) -> Self {
        let names = e.pattern.vertex_names();
        let essential_map = names.iter().map(|n| n.to_string()).zip(e.essential.iter().cloned()).collect();
        let branches = e
            .pattern
            .edges()
            .iter()
            .zip(e.branches)
            .map(|(&(p, q), path)| BranchDoc { edge: [names[p].to_string(), names[q].to_string()], path })
            .collect();
        EmbeddingDoc { pattern: e.pattern, essential_map, branches }
    }
}

impl TryFrom<EmbeddingDoc> for SubdivisionEmbedding {
    type Error = Error;

    fn try_from(doc: EmbeddingDoc) -> Result<Self> {
        let names = doc.pattern.vertex_names();
        let mut essential = Vec::with_capacity(names.len());
        for n in names {
            let img = doc
                .essential_map
                .get(*n)
                .ok_or_else(|| Error::InvalidEmbedding(format!("missing essential vertex `{n}`")))?;
            essential.push(img.clone());
        }
        if doc.essential_map.len() != names.len() || doc.branches.len() != doc.pattern.edges().len() {
            return Err(Error::InvalidEmbedding("pattern shape mismatch".into()));
        }
        for (b, &(p, q)) in doc.branches.iter().zip(doc.pattern.edges()) {
            if b.edge != [names[p], names[q]] {
                return Err(Error::InvalidEmbedding(format!("unexpected branch {:?}", b.edge)));
            }
        }
        Ok(SubdivisionEmbedding {
            pattern: doc.pattern,
            essential,
            branches: doc.branches.into_iter().map(|b| b.path).collect(),
        })
    }
}

/// Sort key used for deterministic tie breaking: sorted essential images, then
/// the sorted branch sequences, each oriented from its smaller end.
pub type CanonicalKey = (Vec<Label>, Vec<Vec<Label>>);

impl SubdivisionEmbedding {
    pub fn new(pattern: PatternId, essential: Vec<Label>, branches: Vec<Vec<Label>>) -> Self {
        SubdivisionEmbedding { pattern, essential, branches }
    }

    /// Builds an embedding from essential images and a lookup returning the
    /// path between two essential images (as labels).
    pub fn from_lookup<F>(pattern: PatternId, essential: Vec<Label>, mut path: F) -> Result<Self>
    where
        F: FnMut(&Label, &Label) -> Option<Vec<Label>>,
    {
        let mut branches = Vec::new();
        for &(p, q) in pattern.edges() {
            let b = path(&essential[p], &essential[q])
                .ok_or_else(|| Error::InvalidEmbedding(format!("no branch between {} and {}", essential[p], essential[q])))?;
            branches.push(b);
        }
        Ok(SubdivisionEmbedding { pattern, essential, branches })
    }

    pub fn image(&self, name: &str) -> Option<&Label> {
        self.pattern.vertex_index(name).map(|i| &self.essential[i])
    }

    /// The branch joining two essential images, oriented from `u` to `w`.
    /// For Theta the first matching branch is returned.
    pub fn branch_between(&self, u: &str, w: &str) -> Option<Vec<Label>> {
        self.branches.iter().find_map(|b| {
            let (first, last) = (b.first()?, b.last()?);
            if first == u && last == w {
                Some(b.clone())
            } else if first == w && last == u {
                Some(b.iter().rev().cloned().collect())
            } else {
                None
            }
        })
    }

    /// Same embedding with the essential vertices reassigned: `order[i]` is the
    /// current image that becomes pattern vertex `i`.
    pub fn relabeled(&self, pattern: PatternId, order: Vec<Label>) -> Result<Self> {
        Self::from_lookup(pattern, order, |u, w| self.branch_between(u, w))
    }

    pub fn vertex_set(&self) -> BTreeSet<Label> {
        let mut s: BTreeSet<Label> = self.essential.iter().cloned().collect();
        for b in &self.branches {
            s.extend(b.iter().cloned());
        }
        s
    }

    /// Edges of the image subgraph, each as an ordered pair `(min, max)`.
    pub fn edge_set(&self) -> BTreeSet<(Label, Label)> {
        let mut s = BTreeSet::new();
        for b in &self.branches {
            for w in b.windows(2) {
                s.insert(ordered_pair(&w[0], &w[1]));
            }
        }
        s
    }

    /// Total number of branch edges.
    pub fn length(&self) -> usize {
        self.branches.iter().map(|b| b.len().saturating_sub(1)).sum()
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut ess = self.essential.clone();
        ess.sort();
        let mut bs: Vec<Vec<Label>> = self
            .branches
            .iter()
            .map(|b| if b.first() <= b.last() { b.clone() } else { b.iter().rev().cloned().collect() })
            .collect();
        bs.sort();
        (ess, bs)
    }

    /// Re-checks every structural invariant against `g`.
    pub fn validate(&self, g: &SimplicialGraph) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidEmbedding(msg));
        let pattern = self.pattern;
        if self.essential.len() != pattern.vertex_names().len() || self.branches.len() != pattern.edges().len() {
            return invalid(format!("wrong shape for pattern {pattern}"));
        }
        let mut seen: BTreeSet<&Label> = BTreeSet::new();
        for v in &self.essential {
            if !g.contains(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
            if !seen.insert(v) {
                return invalid(format!("essential vertex {v} used twice"));
            }
        }
        for (e, (&(p, q), b)) in pattern.edges().iter().zip(&self.branches).enumerate() {
            if b.len() < 2 || b[0] != self.essential[p] || b[b.len() - 1] != self.essential[q] {
                return invalid(format!("branch {} has wrong endpoints", pattern.edge_name(e)));
            }
            for w in b.windows(2) {
                if !g.has_edge(&w[0], &w[1]) {
                    return invalid(format!("branch {} uses non-edge {}–{}", pattern.edge_name(e), w[0], w[1]));
                }
            }
            for v in &b[1..b.len() - 1] {
                if !g.contains(v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
                if !seen.insert(v) {
                    return invalid(format!("vertex {v} repeated across branches"));
                }
            }
            match pattern.branch_rule(e) {
                BranchRule::Edge if b.len() != 2 => {
                    return invalid(format!("branch {} must be a single edge", pattern.edge_name(e)));
                }
                BranchRule::Subdivided if b.len() < 3 => {
                    return invalid(format!("branch {} must be subdivided", pattern.edge_name(e)));
                }
                _ => {}
            }
        }
        if self.edge_set().len() != self.length() {
            return invalid("two branches share an edge".into());
        }
        for &(p, q) in pattern.extra_edges() {
            if !g.has_edge(&self.essential[p], &self.essential[q]) {
                return invalid(format!("missing edge {}–{}", self.essential[p], self.essential[q]));
            }
        }
        if pattern.exact() {
            let allowed = self.allowed_edges();
            let induced = g.induced_subgraph(&self.vertex_set())?;
            let extra = induced.edges().find(|(u, w)| !allowed.contains(&ordered_pair(u, w))).map(|(u, w)| format!("unexpected edge {u}–{w}"));
            if let Some(msg) = extra {
                return Err(Error::NotInduced(msg));
            }
        }
        Ok(())
    }

    /// Branch edges together with the pattern's extra edges.
    pub fn allowed_edges(&self) -> BTreeSet<(Label, Label)> {
        let mut allowed = self.edge_set();
        for &(p, q) in self.pattern.extra_edges() {
            allowed.insert(ordered_pair(&self.essential[p], &self.essential[q]));
        }
        allowed
    }

    /// True when `g` has no edge between embedding vertices besides branch edges.
    pub fn is_induced(&self, g: &SimplicialGraph) -> Result<bool> {
        Ok(g.induced_subgraph(&self.vertex_set())?.edge_count() == self.length())
    }

    /// Where a vertex of the embedding sits.
    pub fn locate(&self, v: &str) -> Option<Position> {
        if let Some(i) = self.essential.iter().position(|e| e == v) {
            return Some(Position::Essential(i));
        }
        self.branches.iter().enumerate().find_map(|(e, b)| {
            let inner = &b[1..b.len().saturating_sub(1).max(1)];
            inner.iter().position(|x| x == v).map(|k| Position::Interior { branch: e, index: k + 1 })
        })
    }

    /// Lists the bad edges of this embedding in `g`.
    pub fn bad_edges(&self, g: &SimplicialGraph) -> Result<BadEdgeReport> {
        self.validate_loose(g)?;
        let verts = self.vertex_set();
        let own = self.edge_set();
        let mut bad = Vec::new();
        let induced = g.induced_subgraph(&verts)?;
        for (u, w) in induced.edges() {
            if own.contains(&(u.clone(), w.clone())) {
                continue;
            }
            let class = self.classify(u, w);
            bad.push(BadEdge { u: u.clone(), w: w.clone(), class });
        }
        Ok(BadEdgeReport { count: bad.len(), embedding: self.clone(), bad_edges: bad })
    }

    /// Validation minus the exactness requirement of Fig5 patterns.
    fn validate_loose(&self, g: &SimplicialGraph) -> Result<()> {
        let relaxed = match self.pattern {
            PatternId::Fig5Left | PatternId::Fig5Right => PatternId::K33,
            p => p,
        };
        SubdivisionEmbedding { pattern: relaxed, essential: self.essential.clone(), branches: self.branches.clone() }.validate(g)
    }

    fn classify(&self, u: &str, w: &str) -> BadEdgeClass {
        let edges = self.pattern.edges();
        let (pu, pw) = (self.locate(u).expect("vertex on embedding"), self.locate(w).expect("vertex on embedding"));
        match (pu, pw) {
            (Position::Interior { branch: a, .. }, Position::Interior { branch: b, .. }) => {
                let (ea, eb) = (edges[a], edges[b]);
                if a == b {
                    BadEdgeClass::SameBranch
                } else if ea.0 == eb.0 || ea.0 == eb.1 || ea.1 == eb.0 || ea.1 == eb.1 {
                    BadEdgeClass::NonEssAdjacentBranches
                } else {
                    BadEdgeClass::NonEssDisjointBranches
                }
            }
            (Position::Essential(p), Position::Interior { branch, .. }) | (Position::Interior { branch, .. }, Position::Essential(p)) => {
                let e = edges[branch];
                if e.0 == p || e.1 == p {
                    BadEdgeClass::EssToIncidentBranch
                } else {
                    BadEdgeClass::EssToDisjointBranch
                }
            }
            (Position::Essential(p), Position::Essential(q)) => {
                if edges.iter().any(|&(s, t)| (s, t) == (p, q) || (s, t) == (q, p)) {
                    BadEdgeClass::SameBranch
                } else {
                    BadEdgeClass::EssEssSameSide
                }
            }
        }
    }
}

pub(crate) fn ordered_pair(u: &str, w: &str) -> (Label, Label) {
    if u <= w {
        (u.to_string(), w.to_string())
    } else {
        (w.to_string(), u.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Essential(usize),
    /// `index` is the position along the branch path (never 0 or the last).
    Interior { branch: usize, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BadEdgeClass {
    /// Both endpoints on one branch (including its essential ends).
    SameBranch,
    /// Two non-essential endpoints on branches sharing an essential vertex.
    NonEssAdjacentBranches,
    /// Two non-essential endpoints on branches with no common essential vertex.
    NonEssDisjointBranches,
    /// Essential vertex to a non-essential vertex of a branch ending at it.
    EssToIncidentBranch,
    /// Essential vertex to a non-essential vertex of a branch not ending at it.
    EssToDisjointBranch,
    /// Two essential vertices on the same side of a `K_{3,3}`.
    EssEssSameSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadEdge {
    pub u: Label,
    pub w: Label,
    pub class: BadEdgeClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadEdgeReport {
    pub embedding: SubdivisionEmbedding,
    pub bad_edges: Vec<BadEdge>,
    pub count: usize,
}

/// Bad edges of `emb` in `g`; fails if the embedding is not valid in `g`.
pub fn classify_bad_edges(g: &SimplicialGraph, emb: &SubdivisionEmbedding) -> Result<BadEdgeReport> {
    emb.bad_edges(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33_subdivided() -> (SimplicialGraph, SubdivisionEmbedding) {
        let ess: Vec<Label> = ["a", "b", "c", "x", "y", "z"].map(String::from).to_vec();
        let mut edges = Vec::new();
        let mut branches = Vec::new();
        for &(p, q) in PatternId::K33.edges() {
            let mid = format!("{}{}1", ess[p], ess[q]);
            edges.push((ess[p].clone(), mid.clone()));
            edges.push((mid.clone(), ess[q].clone()));
            branches.push(vec![ess[p].clone(), mid, ess[q].clone()]);
        }
        let g = SimplicialGraph::from_edges(edges).unwrap();
        (g, SubdivisionEmbedding::new(PatternId::K33, ess, branches))
    }

    #[test]
    fn subdivided_k33_has_no_bad_edges() {
        let (g, emb) = k33_subdivided();
        emb.validate(&g).unwrap();
        let r = emb.bad_edges(&g).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(emb.length(), 18);
        assert!(emb.is_induced(&g).unwrap());
    }

    #[test]
    fn chords_get_classified() {
        let (g, emb) = k33_subdivided();
        let with = |extra: &[(&str, &str)]| {
            let mut edges: Vec<(String, String)> = g.edges().map(|(u, w)| (u.clone(), w.clone())).collect();
            edges.extend(extra.iter().map(|(u, w)| (u.to_string(), w.to_string())));
            SimplicialGraph::from_edges(edges).unwrap()
        };
        let classes = |h: &SimplicialGraph| -> Vec<BadEdgeClass> {
            emb.bad_edges(h).unwrap().bad_edges.into_iter().map(|b| b.class).collect()
        };
        assert_eq!(classes(&with(&[("x", "y")])), [BadEdgeClass::EssEssSameSide]);
        assert_eq!(classes(&with(&[("ax1", "ay1")])), [BadEdgeClass::NonEssAdjacentBranches]);
        assert_eq!(classes(&with(&[("ax1", "by1")])), [BadEdgeClass::NonEssDisjointBranches]);
        assert_eq!(classes(&with(&[("a", "bx1")])), [BadEdgeClass::EssToDisjointBranch]);
        assert_eq!(classes(&with(&[("a", "x")])), [BadEdgeClass::SameBranch]);
    }

    #[test]
    fn validation_rejects_broken_embeddings() {
        let (g, emb) = k33_subdivided();
        let mut bad = emb.clone();
        bad.branches[0] = vec!["a".into(), "x".into()];
        assert!(bad.validate(&g).is_err());
        let mut bad = emb.clone();
        bad.branches[1][1] = "ax1".into();
        assert!(bad.validate(&g).is_err());
        let mut bad = emb;
        bad.essential[0] = "q".into();
        assert!(bad.validate(&g).is_err());
    }

    #[test]
    fn relabel_and_serde() {
        let (g, emb) = k33_subdivided();
        let swapped = emb
            .relabeled(PatternId::K33, ["x", "y", "z", "a", "b", "c"].map(String::from).to_vec())
            .unwrap();
        swapped.validate(&g).unwrap();
        assert_eq!(swapped.canonical_key(), emb.canonical_key());
        let json = serde_json::to_string(&emb).unwrap();
        let back: SubdivisionEmbedding = serde_json::from_str(&json).unwrap();
        assert_eq!(back, emb);
        assert!(json.contains("\"essential_map\""));
    }
}
