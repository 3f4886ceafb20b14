//! Reroutings that shorten a K33 subdivision (or remove bad edges) without
//! leaving the graph. A canonical embedding admits none of them; they apply
//! to embeddings supplied from elsewhere.

use serde::{Deserialize, Serialize};

use super::named::{join, relabelings, rev, Named, PathBook};
use crate::embedding::{BadEdgeClass, BadEdgeReport, SubdivisionEmbedding};
use crate::error::Result;
use crate::graph::SimplicialGraph;
use crate::pattern::PatternId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RewriteRule {
    /// Shortcut a branch along a chord.
    #[serde(rename = "L3.2-1")]
    BranchChord,
    /// Chord between non-essential vertices of adjacent branches.
    #[serde(rename = "L3.2-2")]
    AdjacentChord,
    /// Chord between non-essential vertices of disjoint branches.
    #[serde(rename = "L3.3")]
    DisjointChord,
    /// A branch vertex adjacent to both other essentials on one side replaces
    /// the far end of its branch.
    #[serde(rename = "Fig9-left")]
    VertexReplacesEnd,
    /// A branch vertex adjacent to an essential and to two branches at the
    /// third essential of that side.
    #[serde(rename = "Fig9-right")]
    VertexFan,
    /// Four branch vertices pairwise joined across two sides.
    #[serde(rename = "Fig10-red")]
    FourVertexSquare,
    /// Two bad edges on each side with some cross branch subdivided.
    #[serde(rename = "Fig11")]
    FourEdges,
    /// Any subdivision of the same graph with a smaller (bad edges, length),
    /// found by a bounded search when no other move applies.
    #[serde(rename = "search")]
    Search,
}

impl RewriteRule {
    pub const ORDER: [RewriteRule; 7] = [
        RewriteRule::BranchChord,
        RewriteRule::AdjacentChord,
        RewriteRule::DisjointChord,
        RewriteRule::VertexReplacesEnd,
        RewriteRule::VertexFan,
        RewriteRule::FourVertexSquare,
        RewriteRule::FourEdges,
    ];

    fn candidates(self, g: &SimplicialGraph, report: &BadEdgeReport) -> Vec<SubdivisionEmbedding> {
        let emb = &report.embedding;
        let mut out = Vec::new();
        match self {
            RewriteRule::BranchChord => {
                for bad in report.bad_edges.iter().filter(|b| b.class == BadEdgeClass::SameBranch) {
                    for (e, b) in emb.branches.iter().enumerate() {
                        let (Some(i), Some(j)) = (b.iter().position(|x| *x == bad.u), b.iter().position(|x| *x == bad.w)) else {
                            continue;
                        };
                        let (i, j) = (i.min(j), i.max(j));
                        let mut cand = emb.clone();
                        cand.branches[e] = join(&[&b[..=i], &b[j..]]);
                        out.push(cand);
                    }
                }
            }
            RewriteRule::AdjacentChord => {
                for n in relabelings(emb) {
                    for bad in &report.bad_edges {
                        for (v, w) in [(&bad.u, &bad.w), (&bad.w, &bad.u)] {
                            if let (Some(iv), Some(jw)) = (n.inside(v, 'a', 'x'), n.inside(w, 'a', 'y')) {
                                if jw >= 2 {
                                    out.extend(adjacent_chord(&n, iv, jw));
                                }
                            }
                        }
                    }
                }
            }
            RewriteRule::DisjointChord => {
                for n in relabelings(emb) {
                    for bad in &report.bad_edges {
                        for (v, w) in [(&bad.u, &bad.w), (&bad.w, &bad.u)] {
                            if let (Some(iv), Some(iw)) = (n.inside(v, 'a', 'x'), n.inside(w, 'c', 'z')) {
                                out.extend(disjoint_chord(&n, iv, iw));
                            }
                        }
                    }
                }
            }
            RewriteRule::VertexReplacesEnd => {
                for n in relabelings(emb) {
                    for v in emb.vertex_set() {
                        if let Some(iv) = n.inside(&v, 'a', 'x') {
                            if g.has_edge(&v, n.get('b')) && g.has_edge(&v, n.get('c')) {
                                out.extend(vertex_replaces_end(&n, iv));
                            }
                        }
                    }
                }
            }
            RewriteRule::VertexFan => {
                for n in relabelings(emb) {
                    for v in emb.vertex_set() {
                        let Some(iv) = n.inside(&v, 'a', 'x') else { continue };
                        if !g.has_edge(&v, n.get('b')) {
                            continue;
                        }
                        let cy = n.br('c', 'y');
                        let cz = n.br('c', 'z');
                        for iu in 1..cy.len() - 1 {
                            for iw in 1..cz.len() - 1 {
                                if g.has_edge(&v, &cy[iu]) && g.has_edge(&v, &cz[iw]) {
                                    out.extend(vertex_fan(&n, iv, iu, iw));
                                }
                            }
                        }
                    }
                }
            }
            RewriteRule::FourVertexSquare => {
                for n in relabelings(emb) {
                    let (ax, cy, cz, xb) = (n.br('a', 'x'), n.br('c', 'y'), n.br('c', 'z'), n.br('x', 'b'));
                    for iv in 1..ax.len() - 1 {
                        for iu in 1..cy.len() - 1 {
                            if !g.has_edge(&ax[iv], &cy[iu]) {
                                continue;
                            }
                            for iw in 1..cz.len() - 1 {
                                if !g.has_edge(&ax[iv], &cz[iw]) {
                                    continue;
                                }
                                for it in 1..xb.len() - 1 {
                                    if g.has_edge(&xb[it], &cy[iu]) && g.has_edge(&xb[it], &cz[iw]) {
                                        out.extend(four_vertex_square(&n, iv, iu, iw, it));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            RewriteRule::FourEdges => {
                for n in relabelings(emb) {
                    let e = |p: char, q: char| g.has_edge(n.get(p), n.get(q));
                    if e('a', 'b') && e('b', 'c') && e('x', 'y') && e('y', 'z') {
                        out.extend(four_edges(&n));
                    }
                }
            }
            RewriteRule::Search => {}
        }
        out
    }
}

/// The best strictly improving rewrite, trying rules in [`RewriteRule::ORDER`].
pub fn try_rewrites(g: &SimplicialGraph, report: &BadEdgeReport) -> Result<Option<(RewriteRule, SubdivisionEmbedding, BadEdgeReport)>> {
    if report.embedding.pattern != PatternId::K33 {
        return Ok(None);
    }
    let current = (report.count, report.embedding.length());
    for rule in RewriteRule::ORDER {
        let mut best: Option<(usize, usize, _, SubdivisionEmbedding, BadEdgeReport)> = None;
        for cand in rule.candidates(g, report) {
            if cand.validate(g).is_err() {
                continue;
            }
            let r = cand.bad_edges(g)?;
            let cost = (r.count, cand.length());
            if cost >= current {
                continue;
            }
            let key = cand.canonical_key();
            if best.as_ref().is_none_or(|b| (cost.0, cost.1, &key) < (b.0, b.1, &b.2)) {
                best = Some((cost.0, cost.1, key, cand, r));
            }
        }
        if let Some((_, _, _, emb, r)) = best {
            return Ok(Some((rule, emb, r)));
        }
    }
    Ok(None)
}

fn adjacent_chord(n: &Named, iv: usize, jw: usize) -> Option<SubdivisionEmbedding> {
    let (ax, ay, az) = (n.br('a', 'x'), n.br('a', 'y'), n.br('a', 'z'));
    let v = &ax[iv];
    let mut book = PathBook::default();
    book.add(ax[iv..].to_vec());
    book.add(join(&[&[v.clone()], &ay[jw..]]));
    book.add(join(&[&rev(&ax[..=iv]), &az]));
    for s in ['b', 'c'] {
        for t in ['x', 'y', 'z'] {
            book.add(n.br(s, t));
        }
    }
    book.k33([v, n.get('b'), n.get('c')], [n.get('x'), n.get('y'), n.get('z')]).ok()
}

fn disjoint_chord(n: &Named, iv: usize, iw: usize) -> Option<SubdivisionEmbedding> {
    let (ax, cz) = (n.br('a', 'x'), n.br('c', 'z'));
    let (v, w) = (&ax[iv], &cz[iw]);
    let mut book = PathBook::default();
    book.add(vec![v.clone(), w.clone()]);
    book.add(rev(&ax[..=iv]));
    book.add(ax[iv..].to_vec());
    book.add(cz[..=iw].to_vec());
    book.add(join(&[&n.br('c', 'y'), &n.br('y', 'a')]));
    book.add(n.br('c', 'x'));
    book.add(rev(&cz[iw..]));
    book.add(n.br('z', 'a'));
    book.add(join(&[&n.br('z', 'b'), &n.br('b', 'x')]));
    book.k33([v, n.get('c'), n.get('z')], [w, n.get('a'), n.get('x')]).ok()
}

fn vertex_replaces_end(n: &Named, iv: usize) -> Option<SubdivisionEmbedding> {
    let ax = n.br('a', 'x');
    let v = &ax[iv];
    let mut book = PathBook::default();
    book.add(ax[..=iv].to_vec());
    book.add(vec![n.get('b').clone(), v.clone()]);
    book.add(vec![n.get('c').clone(), v.clone()]);
    for s in ['a', 'b', 'c'] {
        for t in ['y', 'z'] {
            book.add(n.br(s, t));
        }
    }
    book.k33([n.get('a'), n.get('b'), n.get('c')], [v, n.get('y'), n.get('z')]).ok()
}

fn vertex_fan(n: &Named, iv: usize, iu: usize, iw: usize) -> Option<SubdivisionEmbedding> {
    let (ax, cy, cz) = (n.br('a', 'x'), n.br('c', 'y'), n.br('c', 'z'));
    let (v, u, w) = (&ax[iv], &cy[iu], &cz[iw]);
    let mut book = PathBook::default();
    book.add(vec![v.clone(), u.clone()]);
    book.add(vec![v.clone(), w.clone()]);
    book.add(ax[iv..].to_vec());
    book.add(cy[..=iu].to_vec());
    book.add(cz[..=iw].to_vec());
    book.add(n.br('c', 'x'));
    book.add(join(&[&n.br('b', 'y'), &rev(&cy[iu..])]));
    book.add(join(&[&n.br('b', 'z'), &rev(&cz[iw..])]));
    book.add(n.br('b', 'x'));
    book.k33([v, n.get('c'), n.get('b')], [u, w, n.get('x')]).ok()
}

fn four_vertex_square(n: &Named, iv: usize, iu: usize, iw: usize, it: usize) -> Option<SubdivisionEmbedding> {
    let (ax, cy, cz, xb) = (n.br('a', 'x'), n.br('c', 'y'), n.br('c', 'z'), n.br('x', 'b'));
    let (v, u, w, t) = (&ax[iv], &cy[iu], &cz[iw], &xb[it]);
    let mut book = PathBook::default();
    book.add(ax[iv..].to_vec());
    book.add(vec![v.clone(), w.clone()]);
    book.add(vec![v.clone(), u.clone()]);
    book.add(n.br('c', 'x'));
    book.add(cz[..=iw].to_vec());
    book.add(cy[..=iu].to_vec());
    book.add(rev(&xb[..=it]));
    book.add(vec![t.clone(), w.clone()]);
    book.add(vec![t.clone(), u.clone()]);
    book.k33([v, n.get('c'), t], [n.get('x'), w, u]).ok()
}

fn four_edges(n: &Named) -> Option<SubdivisionEmbedding> {
    let mut book = PathBook::default();
    let edge = |p: char, q: char| vec![n.get(p).clone(), n.get(q).clone()];
    book.add(n.br('y', 'b'));
    book.add(edge('y', 'x'));
    book.add(edge('y', 'z'));
    book.add(edge('a', 'b'));
    book.add(edge('c', 'b'));
    for s in ['a', 'c'] {
        for t in ['x', 'z'] {
            book.add(n.br(s, t));
        }
    }
    book.k33([n.get('y'), n.get('a'), n.get('c')], [n.get('b'), n.get('x'), n.get('z')]).ok()
}
