//! Doubling moves that replace the current K33 subdivision by one with fewer
//! bad edges in (an induced subgraph of) the double.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::named::{join, relabelings, PathBook};
use crate::embedding::{BadEdgeClass, BadEdgeReport, Position, SubdivisionEmbedding};
use crate::error::{Error, Result};
use crate::graph::{DoublingResult, Label, SimplicialGraph};
use crate::pattern::PatternId;
use crate::search::{find_k33_below, select_canonical_k33_seeded, SearchOptions, MAX_VERTICES};

/// How the successor subdivision of a doubling move was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    /// Turning a K5 subdivision into a K33 subdivision of the double.
    K5Double,
    /// Doubling over a non-essential endpoint of a bad edge and rerouting its
    /// branch through the second copy.
    DisjointBranchDouble,
    /// Doubling over an endpoint of the only bad edge on one side and
    /// replacing the third vertex of that side by its second copy.
    IsolatedEdgeDouble,
    /// Exhaustive search over single doubles of the working graph.
    Search,
    /// A double that does not lower the count by itself but makes a second
    /// double lower it. Used when no single double does.
    Lookahead,
}

pub(crate) struct DoubleMove {
    pub vertex: Label,
    pub kept: BTreeSet<Label>,
    pub construction: Construction,
    pub successor: SubdivisionEmbedding,
    pub successor_report: BadEdgeReport,
}

/// The constructive moves and the single-double search inside the subgraph
/// spanned by the current subdivision.
pub(crate) fn quick_move(g: &SimplicialGraph, report: &BadEdgeReport, tag: u32, opts: &SearchOptions) -> Result<Option<DoubleMove>> {
    let emb = &report.embedding;
    let interior: BTreeSet<&Label> = report
        .bad_edges
        .iter()
        .flat_map(|b| [&b.u, &b.w])
        .filter(|v| matches!(emb.locate(v), Some(Position::Interior { .. })))
        .collect();
    for v in &interior {
        let d = g.double_tagged(v, tag)?;
        for clean in [true, false] {
            if let Some(succ) = reroute_around(&d, emb, v, clean) {
                if let Some(m) = accept(&d, succ, report.count, Construction::DisjointBranchDouble, opts)? {
                    return Ok(Some(m));
                }
            }
        }
    }
    let all_side_edges = report.bad_edges.iter().all(|b| b.class == BadEdgeClass::EssEssSameSide);
    if interior.is_empty() && all_side_edges {
        if let Some((x, succ)) = isolated_edge(g, report, tag)? {
            let d = g.double_tagged(&x, tag)?;
            if let Some(m) = accept(&d, succ, report.count, Construction::IsolatedEdgeDouble, opts)? {
                return Ok(Some(m));
            }
        }
    }
    let h = g.induced_subgraph(&emb.vertex_set())?;
    match search_fallback(g, &h, report, tag, opts)? {
        Pair::Found(m) => Ok(Some(m)),
        _ => Ok(None),
    }
}

/// The single-double search over the whole working graph, then the
/// double-double lookahead.
pub(crate) fn deep_move(g: &SimplicialGraph, report: &BadEdgeReport, tag: u32, opts: &SearchOptions) -> Result<DoubleMove> {
    let too_large = |vertices| Error::GraphTooLarge { vertices, budget: opts.budget };
    // right after a lookahead double the working graph is larger than the
    // subdivision and holds the target of the planned second double
    if report.embedding.vertex_set().len() < g.vertex_count() {
        match search_fallback(g, g, report, tag, opts)? {
            Pair::Found(m) => return Ok(m),
            Pair::TooLarge(n) => return Err(too_large(n)),
            Pair::None => {}
        }
    }
    if let Some(m) = lookahead(g, report, tag, opts)? {
        return Ok(m);
    }
    Err(Error::InternalInvariantViolation(format!(
        "no one or two doublings lower the bad-edge count {} of the current subdivision",
        report.count
    )))
}

/// The branch through `v` with `v` replaced by a shortest path through the
/// second copy. With `clean`, that path avoids neighbours of the rest of the
/// subdivision.
fn reroute_around(d: &DoublingResult, emb: &SubdivisionEmbedding, v: &Label, clean: bool) -> Option<SubdivisionEmbedding> {
    let Some(Position::Interior { branch, index }) = emb.locate(v) else {
        return None;
    };
    let path = &emb.branches[branch];
    let (u, w) = (&path[index - 1], &path[index + 1]);
    let verts = emb.vertex_set();
    let rest: BTreeSet<&Label> = verts.iter().filter(|s| *s != v).collect();
    let allowed = |s: &Label| -> bool {
        if !d.primed.contains(s) {
            return false;
        }
        !clean || d.graph.neighbors(s).map(|ns| ns.iter().all(|t| t == u || t == w || !rest.contains(t))).unwrap_or(false)
    };
    let gamma = bfs(&d.graph, u, w, allowed)?;
    let mut succ = emb.clone();
    succ.branches[branch] = join(&[&path[..index], &gamma[1..gamma.len() - 1], &path[index + 1..]]);
    Some(succ)
}

/// Shortest path from `u` to `w` with at least one interior vertex, all of
/// them satisfying `allowed`.
fn bfs<F: Fn(&Label) -> bool>(g: &SimplicialGraph, u: &Label, w: &Label, allowed: F) -> Option<Vec<Label>> {
    let mut prev: HashMap<Label, Label> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in g.neighbors(u).ok()? {
        if allowed(s) && !prev.contains_key(s) {
            prev.insert(s.clone(), u.clone());
            queue.push_back(s.clone());
        }
    }
    while let Some(s) = queue.pop_front() {
        if g.has_edge(&s, w) {
            let mut path = vec![w.clone(), s.clone()];
            let mut cur = s;
            while let Some(p) = prev.get(&cur) {
                path.push(p.clone());
                if p == u {
                    break;
                }
                cur = p.clone();
            }
            path.reverse();
            return Some(path);
        }
        for t in g.neighbors(&s).ok()? {
            if allowed(t) && !prev.contains_key(t) {
                prev.insert(t.clone(), s.clone());
                queue.push_back(t.clone());
            }
        }
    }
    None
}

/// When one side carries exactly one bad edge `x–y`, doubles over `x` and
/// builds the subdivision with sides `{a,b,c}` and `{y, z, z'}`.
fn isolated_edge(g: &SimplicialGraph, report: &BadEdgeReport, tag: u32) -> Result<Option<(Label, SubdivisionEmbedding)>> {
    let emb = &report.embedding;
    let side_of = |v: &Label| emb.essential.iter().position(|e| e == v).map(|i| i / 3);
    let mut chosen: Option<(Label, Label)> = None;
    for side in 0..2 {
        let on_side: Vec<_> = report.bad_edges.iter().filter(|b| side_of(&b.u) == Some(side)).collect();
        if on_side.len() == 1 {
            let b = on_side[0];
            let pair = (b.u.clone().min(b.w.clone()), b.u.clone().max(b.w.clone()));
            if chosen.as_ref().is_none_or(|c| pair < *c) {
                chosen = Some(pair);
            }
        }
    }
    let Some((x, y)) = chosen else { return Ok(None) };
    let d = g.double_tagged(&x, tag)?;
    let Some(n) = relabelings(emb).into_iter().find(|n| *n.get('x') == x && *n.get('y') == y) else {
        return Ok(None);
    };
    let copy = |p: &[Label]| -> Vec<Label> { p.iter().map(|s| d.second_copy(s).to_string()).collect() };
    let z2 = d.second_copy(n.get('z')).to_string();
    let mut book = PathBook::default();
    for s in ['a', 'b', 'c'] {
        book.add(n.br(s, 'y'));
        let sz = n.br(s, 'z');
        book.add(sz.clone());
        let sx = n.br(s, 'x');
        let stem = &sx[..sx.len() - 1];
        let back: Vec<Label> = copy(stem).into_iter().rev().collect();
        book.add(join(&[stem, &back, &copy(&sz[1..])]));
    }
    let succ = book.k33([n.get('a'), n.get('b'), n.get('c')], [n.get('y'), n.get('z'), &z2]);
    Ok(succ.ok().map(|s| (x, s)))
}

/// Accepts `succ` (living in `d`) if its bad-edge count drops below `count`.
///
/// The next working graph is the subgraph of the double spanned by the
/// successor.
fn accept(d: &DoublingResult, succ: SubdivisionEmbedding, count: usize, construction: Construction, opts: &SearchOptions) -> Result<Option<DoubleMove>> {
    if succ.pattern != PatternId::K33 || succ.validate(&d.graph).is_err() {
        return Ok(None);
    }
    if succ.vertex_set().len() > opts.budget {
        return Ok(None);
    }
    // constructed successors may carry chords near the second copies; the
    // best subdivision on the same vertices removes them
    let span = d.graph.induced_subgraph(&succ.vertex_set())?;
    let succ = select_canonical_k33_seeded(&span, Some(&succ), opts)?.map_or(succ, |(t, _)| t);
    let kept = succ.vertex_set();
    let next = d.graph.induced_subgraph(&kept)?;
    let r = succ.bad_edges(&next)?;
    if r.count >= count {
        return Ok(None);
    }
    Ok(Some(DoubleMove {
        vertex: d.doubled_vertex.clone(),
        kept,
        construction,
        successor: succ,
        successor_report: r,
    }))
}

/// Bad-edge endpoints first, then the rest of the subdivision, then the rest
/// of the graph.
fn candidate_order(g: &SimplicialGraph, report: &BadEdgeReport) -> Vec<Label> {
    let mut order: Vec<Label> = report.bad_edges.iter().flat_map(|b| [b.u.clone(), b.w.clone()]).collect::<BTreeSet<_>>().into_iter().collect();
    let on_emb = report.embedding.vertex_set();
    let rest = g.vertices().filter(|v| on_emb.contains(*v)).chain(g.vertices().filter(|v| !on_emb.contains(*v)));
    for v in rest {
        if !order.contains(v) {
            order.push(v.clone());
        }
    }
    order
}

/// A K33 subdivision with the fewest bad edges, without the length and key
/// tie-breaks of the canonical search.
fn fewest_bad_edges(g: &SimplicialGraph, opts: &SearchOptions) -> Result<Option<(SubdivisionEmbedding, BadEdgeReport)>> {
    let edges = g.edge_count();
    for limit in 1..=edges + 1 {
        if let Some(hit) = find_k33_below(g, limit, opts)? {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

fn wide(opts: &SearchOptions) -> SearchOptions {
    SearchOptions { budget: MAX_VERTICES, deadline: opts.deadline }
}

/// Tries every single double of `scope` (an induced subgraph of `g`) and
/// searches each for a K33 subdivision with fewer bad edges, aiming for the
/// lowest count any single double reaches.
fn search_fallback(g: &SimplicialGraph, scope: &SimplicialGraph, report: &BadEdgeReport, tag: u32, opts: &SearchOptions) -> Result<Pair> {
    let mut doubles = Vec::new();
    for v in candidate_order(scope, report) {
        let d = scope.double_tagged(&v, tag)?;
        if d.graph.vertex_count() <= MAX_VERTICES {
            doubles.push(d);
        }
    }
    let mut oversized: Option<usize> = None;
    for limit in 1..=report.count {
        for d in &doubles {
            let Some((succ, _)) = find_k33_below(&d.graph, limit, &wide(opts))? else { continue };
            let succ = shortest_from(&d.graph, succ, opts)?;
            let size = succ.vertex_set().len();
            if size > opts.budget {
                oversized = Some(oversized.map_or(size, |o| o.min(size)));
                continue;
            }
            let full = g.double_tagged(&d.doubled_vertex, tag)?;
            if let Some(m) = accept(&full, succ, report.count, Construction::Search, opts)? {
                return Ok(Pair::Found(m));
            }
        }
    }
    Ok(oversized.map_or(Pair::None, Pair::TooLarge))
}

/// The shortest subdivision with at most the bad edges of `found`.
fn shortest_from(g: &SimplicialGraph, found: SubdivisionEmbedding, opts: &SearchOptions) -> Result<SubdivisionEmbedding> {
    Ok(select_canonical_k33_seeded(g, Some(&found), &wide(opts))?.map_or(found, |(t, _)| t))
}

/// Looks for `v`, then `u` in the double over `v`, such that doubling twice
/// lowers the count. The pair is searched inside the subgraph spanned by the
/// current subdivision, which keeps the second-level doubles small; a target
/// found there is induced in the double of the full working graph too.
/// Pairs of bad-edge endpoints are tried before all other pairs.
/// Returns the first double; the working graph it keeps contains the folded
/// target and `u`, so the next step finds the second double again.
///
/// Fails with `GraphTooLarge` when every target found by the endpoint pairs
/// folds to more vertices than the budget allows.
fn lookahead(g: &SimplicialGraph, report: &BadEdgeReport, tag: u32, opts: &SearchOptions) -> Result<Option<DoubleMove>> {
    let h = g.induced_subgraph(&report.embedding.vertex_set())?;
    let ends: BTreeSet<Label> = report.bad_edges.iter().flat_map(|b| [b.u.clone(), b.w.clone()]).collect();
    let mut oversized: Option<usize> = None;
    for focused in [true, false] {
        for v in candidate_order(&h, report) {
            if focused && !ends.contains(&v) {
                continue;
            }
            let d1h = h.double_tagged(&v, tag)?;
            let mut order: Vec<Label> = Vec::new();
            for s in candidate_order(&h, report) {
                if !d1h.graph.contains(&s) {
                    continue;
                }
                let copy = d1h.second_copy(&s).to_string();
                order.push(s);
                if copy != *order.last().unwrap() {
                    order.push(copy);
                }
            }
            for u in order {
                let first_pass = ends.contains(&v) && ends.contains(&d1h.correspondence[&u]);
                if focused != first_pass {
                    continue;
                }
                match try_pair(g, &d1h, &u, report.count, tag, opts)? {
                    Pair::Found(m) => return Ok(Some(m)),
                    Pair::TooLarge(n) => oversized = Some(oversized.map_or(n, |o| o.min(n))),
                    Pair::None => {}
                }
            }
        }
        if let Some(vertices) = oversized {
            return Err(Error::GraphTooLarge { vertices, budget: opts.budget });
        }
    }
    Ok(None)
}

enum Pair {
    Found(DoubleMove),
    /// A target exists but its working graph would have this many vertices.
    TooLarge(usize),
    None,
}

fn try_pair(g: &SimplicialGraph, d1h: &DoublingResult, u: &Label, count: usize, tag: u32, opts: &SearchOptions) -> Result<Pair> {
    let d2h = d1h.graph.double_tagged(u, tag + 1)?;
    if d2h.graph.vertex_count() > MAX_VERTICES {
        return Ok(Pair::None);
    }
    let Some((target, _)) = find_k33_below(&d2h.graph, count, &wide(opts))? else { return Ok(Pair::None) };
    // the shortest target keeps the next working graph small
    let target = shortest_from(&d2h.graph, target, opts)?;
    let mut core: BTreeSet<Label> = target.vertex_set().iter().map(|s| d2h.correspondence[s].clone()).collect();
    core.insert(u.clone());
    if core.len() > opts.budget {
        return Ok(Pair::TooLarge(core.len()));
    }
    let v = &d1h.doubled_vertex;
    let d1 = g.double_tagged(v, tag)?;
    let w1 = d1.graph.induced_subgraph(&core)?;
    Ok(match fewest_bad_edges(&w1, opts)? {
        Some((succ, sr)) => Pair::Found(DoubleMove {
            vertex: v.clone(),
            kept: core,
            construction: Construction::Lookahead,
            successor: succ,
            successor_report: sr,
        }),
        None => Pair::None,
    })
}
