//! Backtracking search for pattern subdivisions.
//!
//! Essential vertices are assigned first (in label order, respecting the
//! pattern's symmetry constraints), then each pattern edge is routed as a
//! simple path through unused vertices. Optimising searches use a
//! branch-and-bound on (bad edges, length).

use std::time::Instant;

use crate::embedding::{BadEdgeReport, CanonicalKey, SubdivisionEmbedding};
use crate::error::{Error, Result};
use crate::graph::{Indexed, Label, SimplicialGraph};
use crate::pattern::{BranchRule, PatternId};

pub const DEFAULT_BUDGET: usize = 30;
/// Hard limit of the bitset representation.
pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Largest vertex count the search accepts.
    pub budget: usize,
    pub deadline: Option<Instant>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, deadline: None }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: usize) -> Self {
        SearchOptions { budget, deadline: None }
    }

    pub(crate) fn check(&self, g: &SimplicialGraph) -> Result<()> {
        let n = g.vertex_count();
        if n > self.budget.min(MAX_VERTICES) {
            return Err(Error::GraphTooLarge { vertices: n, budget: self.budget.min(MAX_VERTICES) });
        }
        Ok(())
    }
}

/// Some embedding of `pattern` in `g`, or `None` if there is none.
///
/// For the Fig5 patterns the embedding must be induced up to the pattern's
/// extra edges and respect its single-edge / subdivided branch rules.
pub fn find_subdivision(g: &SimplicialGraph, pattern: PatternId, opts: &SearchOptions) -> Result<Option<SubdivisionEmbedding>> {
    opts.check(g)?;
    let mut s = Searcher::new(g, pattern, Mode::First, opts);
    s.run()?;
    Ok(s.best.map(|b| b.emb))
}

/// Calls `visit` on every embedding of `pattern`, one per symmetry class of
/// essential assignments.
pub fn for_each_subdivision<F>(g: &SimplicialGraph, pattern: PatternId, opts: &SearchOptions, mut visit: F) -> Result<()>
where
    F: FnMut(&SubdivisionEmbedding),
{
    opts.check(g)?;
    let mut s = Searcher::new(g, pattern, Mode::All(&mut visit), opts);
    s.run()
}

/// The K33 subdivision minimising (bad edges, length, canonical key).
///
/// Any other K33 subdivision with at most as many bad edges has exactly as
/// many and is at least as long.
pub fn select_canonical_k33(g: &SimplicialGraph, opts: &SearchOptions) -> Result<Option<(SubdivisionEmbedding, BadEdgeReport)>> {
    select_canonical_k33_seeded(g, None, opts)
}

/// As [`select_canonical_k33`], starting the bound from a known embedding.
pub fn select_canonical_k33_seeded(
    g: &SimplicialGraph,
    seed: Option<&SubdivisionEmbedding>,
    opts: &SearchOptions,
) -> Result<Option<(SubdivisionEmbedding, BadEdgeReport)>> {
    opts.check(g)?;
    let mut s = Searcher::new(g, PatternId::K33, Mode::MinBad, opts);
    if let Some(seed) = seed.filter(|e| e.pattern == PatternId::K33) {
        let report = seed.bad_edges(g)?;
        s.best = Some(Best { cost: (report.count, seed.length()), key: seed.canonical_key(), emb: seed.clone() });
    }
    s.run()?;
    match s.best {
        Some(b) => {
            let report = b.emb.bad_edges(g)?;
            Ok(Some((b.emb, report)))
        }
        None => Ok(None),
    }
}

/// Some K33 subdivision with fewer than `limit` bad edges, if one exists.
/// Much cheaper than the canonical search since it stops at the first hit.
pub fn find_k33_below(g: &SimplicialGraph, limit: usize, opts: &SearchOptions) -> Result<Option<(SubdivisionEmbedding, BadEdgeReport)>> {
    opts.check(g)?;
    if limit == 0 {
        return Ok(None);
    }
    let mut s = Searcher::new(g, PatternId::K33, Mode::Below(limit), opts);
    s.run()?;
    match s.best {
        Some(b) => {
            let report = b.emb.bad_edges(g)?;
            Ok(Some((b.emb, report)))
        }
        None => Ok(None),
    }
}

/// The K5 subdivision minimising (length, canonical key).
pub fn shortest_k5(g: &SimplicialGraph, opts: &SearchOptions) -> Result<Option<SubdivisionEmbedding>> {
    opts.check(g)?;
    let mut s = Searcher::new(g, PatternId::K5, Mode::MinLength, opts);
    s.run()?;
    Ok(s.best.map(|b| b.emb))
}

enum Mode<'f> {
    First,
    MinBad,
    MinLength,
    Below(usize),
    All(&'f mut dyn FnMut(&SubdivisionEmbedding)),
}

struct Best {
    cost: (usize, usize),
    key: CanonicalKey,
    emb: SubdivisionEmbedding,
}

struct Searcher<'f> {
    labels: Vec<Label>,
    adj: Vec<u128>,
    n: usize,
    pattern: PatternId,
    pedges: &'static [(usize, usize)],
    rules: Vec<BranchRule>,
    mode: Mode<'f>,
    deadline: Option<Instant>,
    img: Vec<usize>,
    used: u128,
    branches: Vec<Vec<usize>>,
    /// Edges of the graph induced on `used`.
    induced_edges: usize,
    /// Branch edges placed so far, including the current partial path.
    placed_edges: usize,
    best: Option<Best>,
    nodes: u64,
    stop: bool,
    timed_out: bool,
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

impl<'f> Searcher<'f> {
    fn new(g: &SimplicialGraph, pattern: PatternId, mode: Mode<'f>, opts: &SearchOptions) -> Self {
        let ix = Indexed::new(g);
        let adj = ix.adj.iter().map(|ns| ns.iter().fold(0u128, |m, &w| m | bit(w))).collect();
        let rules = (0..pattern.edges().len()).map(|e| pattern.branch_rule(e)).collect();
        Searcher {
            n: ix.len(),
            labels: ix.labels,
            adj,
            pattern,
            pedges: pattern.edges(),
            rules,
            mode,
            deadline: opts.deadline,
            img: Vec::new(),
            used: 0,
            branches: Vec::new(),
            induced_edges: 0,
            placed_edges: 0,
            best: None,
            nodes: 0,
            stop: false,
            timed_out: false,
        }
    }

    fn run(&mut self) -> Result<()> {
        self.assign(0);
        if self.timed_out {
            return Err(Error::DeadlineExceeded);
        }
        Ok(())
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.timed_out = true;
                    self.stop = true;
                }
            }
        }
        self.stop
    }

    fn add_vertex(&mut self, v: usize) {
        self.induced_edges += (self.adj[v] & self.used).count_ones() as usize;
        self.used |= bit(v);
    }

    fn remove_vertex(&mut self, v: usize) {
        self.used &= !bit(v);
        self.induced_edges -= (self.adj[v] & self.used).count_ones() as usize;
    }

    fn assign(&mut self, i: usize) {
        if self.tick() {
            return;
        }
        let k = self.pattern.vertex_names().len();
        if i == k {
            self.route(0);
            return;
        }
        let need = self.pattern.degree(i);
        for v in 0..self.n {
            if self.used & bit(v) != 0 || (self.adj[v].count_ones() as usize) < need {
                continue;
            }
            let ordered = self.pattern.symmetry_order().iter().all(|&(p, q)| {
                if q == i && p < i {
                    self.img[p] < v
                } else if p == i && q < i {
                    v < self.img[q]
                } else {
                    true
                }
            });
            if !ordered || !self.essential_pairs_ok(i, v) {
                continue;
            }
            self.img.push(v);
            self.add_vertex(v);
            if !self.bound_exceeded(0, None) {
                self.assign(i + 1);
            }
            self.remove_vertex(v);
            self.img.pop();
            if self.stop {
                return;
            }
        }
    }

    /// Adjacency constraints between essential images for exact patterns.
    fn essential_pairs_ok(&self, i: usize, v: usize) -> bool {
        if !self.pattern.exact() {
            return true;
        }
        let extras = self.pattern.extra_edges();
        (0..i).all(|j| {
            let adjacent = self.adj[v] & bit(self.img[j]) != 0;
            let pair = |&(p, q): &(usize, usize)| (p, q) == (j, i) || (p, q) == (i, j);
            if extras.iter().any(pair) {
                return adjacent;
            }
            match self.pedges.iter().position(pair) {
                Some(e) => !(adjacent && self.rules[e] == BranchRule::Subdivided) && !(!adjacent && self.rules[e] == BranchRule::Edge),
                None => !adjacent,
            }
        })
    }

    /// Lower bound on the final cost given the routing state. `current` is the
    /// index of the edge being routed and the path so far.
    fn bound_exceeded(&self, first_unrouted: usize, current: Option<&[usize]>) -> bool {
        let limit = match (&self.mode, &self.best) {
            (Mode::Below(k), _) => (*k, 0),
            (Mode::MinBad | Mode::MinLength, Some(best)) => best.cost,
            _ => return false,
        };
        let mut len_lb = self.placed_edges;
        let mut potential = 0;
        let mut rest = first_unrouted;
        if let Some(path) = current {
            let e = first_unrouted;
            let t = self.img[self.pedges[e].1];
            let cur = *path.last().unwrap();
            len_lb += if path.len() == 1 && self.rules[e] == BranchRule::Subdivided { 2 } else { 1 };
            if self.adj[cur] & bit(t) != 0 && !(path.len() == 1 && self.rules[e] == BranchRule::Subdivided) {
                potential += 1;
            }
            rest += 1;
        }
        for e in rest..self.pedges.len() {
            let (p, q) = self.pedges[e];
            if p >= self.img.len() || q >= self.img.len() {
                len_lb += 1;
                potential += 1;
                continue;
            }
            len_lb += if self.rules[e] == BranchRule::Subdivided { 2 } else { 1 };
            if self.adj[self.img[p]] & bit(self.img[q]) != 0 && self.rules[e] != BranchRule::Subdivided {
                potential += 1;
            }
        }
        let bad_lb = match self.mode {
            Mode::MinBad | Mode::Below(_) => self.induced_edges.saturating_sub(self.placed_edges + potential),
            _ => 0,
        };
        match self.mode {
            Mode::Below(_) => bad_lb >= limit.0,
            _ => (bad_lb, len_lb) > limit,
        }
    }

    /// Every remaining pattern edge can still be routed through free vertices.
    fn routable(&self, from: usize) -> bool {
        let free = !self.used & mask(self.n);
        self.pedges[from..].iter().enumerate().all(|(off, &(p, q))| {
            let (s, t) = (self.img[p], self.img[q]);
            if self.adj[s] & bit(t) != 0 && self.rules[from + off] != BranchRule::Subdivided {
                return true;
            }
            self.reaches(s, t, free)
        })
    }

    fn reaches(&self, s: usize, t: usize, free: u128) -> bool {
        let mut seen = self.adj[s] & free;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in bits(frontier) {
                if self.adj[v] & bit(t) != 0 {
                    return true;
                }
                next |= self.adj[v] & free;
            }
            frontier = next & !seen;
            seen |= next;
        }
        false
    }

    fn route(&mut self, e: usize) {
        if e == self.pedges.len() {
            self.complete();
            return;
        }
        if !self.routable(e) {
            return;
        }
        let s = self.img[self.pedges[e].0];
        let mut path = vec![s];
        self.extend(e, &mut path);
    }

    fn extend(&mut self, e: usize, path: &mut Vec<usize>) {
        if self.tick() {
            return;
        }
        let (p, q) = self.pedges[e];
        let t = self.img[q];
        let cur = *path.last().unwrap();
        let rule = self.rules[e];
        let exact = self.pattern.exact();
        // parallel pattern edges (Theta) are routed in increasing order of second vertex
        let min_second = (0..e)
            .rev()
            .find(|&f| self.pedges[f] == (p, q))
            .map(|f| self.branches[f][1]);
        let closes = self.adj[cur] & bit(t) != 0;
        let can_close = closes
            && match rule {
                BranchRule::Edge => path.len() == 1,
                BranchRule::Subdivided => path.len() >= 2,
                BranchRule::Free => true,
            }
            && (path.len() > 1 || min_second.is_none_or(|m| t > m));
        if can_close {
            path.push(t);
            self.placed_edges += 1;
            self.branches.push(path.clone());
            self.route(e + 1);
            self.branches.pop();
            self.placed_edges -= 1;
            path.pop();
            if self.stop {
                return;
            }
        }
        if rule == BranchRule::Edge || (exact && closes) {
            // exact patterns cannot leave a chord to the target behind
            return;
        }
        let free = !self.used & mask(self.n);
        for v in bits(self.adj[cur] & free) {
            if path.len() == 1 && min_second.is_some_and(|m| v < m) {
                continue;
            }
            if exact && self.adj[v] & self.used & !(bit(cur) | bit(t)) != 0 {
                continue;
            }
            if !self.reaches(v, t, free & !bit(v)) && self.adj[v] & bit(t) == 0 {
                continue;
            }
            path.push(v);
            self.add_vertex(v);
            self.placed_edges += 1;
            if !self.bound_exceeded(e, Some(path)) {
                self.extend(e, path);
            }
            self.placed_edges -= 1;
            self.remove_vertex(v);
            path.pop();
            if self.stop {
                return;
            }
        }
    }

    fn complete(&mut self) {
        let emb = SubdivisionEmbedding {
            pattern: self.pattern,
            essential: self.img.iter().map(|&v| self.labels[v].clone()).collect(),
            branches: self
                .branches
                .iter()
                .map(|b| b.iter().map(|&v| self.labels[v].clone()).collect())
                .collect(),
        };
        let length = self.placed_edges;
        match &mut self.mode {
            Mode::All(visit) => visit(&emb),
            Mode::Below(k) => {
                let bad = self.induced_edges - length;
                if bad < *k {
                    self.best = Some(Best { cost: (bad, length), key: emb.canonical_key(), emb });
                    self.stop = true;
                }
            }
            Mode::First => {
                self.best = Some(Best { cost: (0, length), key: emb.canonical_key(), emb });
                self.stop = true;
            }
            Mode::MinBad | Mode::MinLength => {
                let bad = if matches!(self.mode, Mode::MinBad) { self.induced_edges - length } else { 0 };
                let cost = (bad, length);
                let better = match &self.best {
                    None => true,
                    Some(b) => cost < b.cost || (cost == b.cost && emb.canonical_key() < b.key),
                };
                if better {
                    self.best = Some(Best { cost, key: emb.canonical_key(), emb });
                }
            }
        }
    }
}

fn mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}
