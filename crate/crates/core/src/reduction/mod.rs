//! The doubling reduction: starting from a non-planar triangle-free graph,
//! repeatedly double and restrict until a K33 subdivision is induced or its
//! induced subgraph is one of the two exceptional patterns.
//!
//! Each working graph is an induced subgraph of the corresponding iterated
//! double of the input, so the subgroup it defines is a subgroup of a finite
//! index subgroup of the original group.

mod double;
mod k5;
mod named;
mod rewrite;
mod verify;

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use double::Construction;
pub use k5::{k5_to_k33, K5Conversion};
pub use rewrite::{try_rewrites, RewriteRule};
pub use verify::{verify_certificate, Verification};

use crate::embedding::{BadEdgeClass, BadEdgeReport, SubdivisionEmbedding};
use crate::error::{Error, Result};
use crate::graph::{Label, SimplicialGraph};
use crate::pattern::PatternId;
use crate::planarity::is_planar;
use crate::search::{select_canonical_k33, select_canonical_k33_seeded, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TerminalPattern {
    InducedK33,
    Fig5Left,
    Fig5Right,
}

impl TerminalPattern {
    pub fn pattern(self) -> PatternId {
        match self {
            TerminalPattern::InducedK33 => PatternId::K33,
            TerminalPattern::Fig5Left => PatternId::Fig5Left,
            TerminalPattern::Fig5Right => PatternId::Fig5Right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StepAction {
    /// A better subdivision in the same graph.
    ShortenRewrite { rule: RewriteRule, embedding: SubdivisionEmbedding },
    /// Double over `vertex` (second copies labelled `s#tag`) and keep the
    /// subgraph induced on `kept`, which contains `successor_embedding`.
    Double {
        vertex: Label,
        tag: u32,
        kept: BTreeSet<Label>,
        construction: Construction,
        successor_embedding: SubdivisionEmbedding,
        successor_bad_edges: usize,
    },
    Terminal { pattern: TerminalPattern, embedding: SubdivisionEmbedding },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub graph_before: SimplicialGraph,
    pub embedding: SubdivisionEmbedding,
    pub report: BadEdgeReport,
    pub action: StepAction,
}

impl ReductionStep {
    /// The graph the next step works in.
    pub fn successor_graph(&self) -> Result<SimplicialGraph> {
        match &self.action {
            StepAction::Double { vertex, tag, kept, .. } => self.graph_before.double_tagged(vertex, *tag)?.graph.induced_subgraph(kept),
            _ => Ok(self.graph_before.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub initial_graph: SimplicialGraph,
    /// Kind of Kuratowski subgraph the planarity test reported for the input.
    pub kuratowski: PatternId,
    pub steps: Vec<ReductionStep>,
    pub terminal: TerminalPattern,
    pub terminal_embedding: SubdivisionEmbedding,
    pub doubling_sequence: Vec<Label>,
}

impl ReductionCertificate {
    pub fn doubling_count(&self) -> usize {
        self.doubling_sequence.len()
    }

    /// Bad-edge count of the first K33 subdivision.
    pub fn initial_bad_edges(&self) -> Option<usize> {
        self.steps.iter().find(|s| s.embedding.pattern == PatternId::K33).map(|s| s.report.count)
    }

    /// At most one more doubling than the initial bad-edge count. Inputs that
    /// need lookahead doublings can exceed this, so it is not part of
    /// verification.
    pub fn within_doubling_bound(&self) -> bool {
        self.doubling_count() <= self.initial_bad_edges().unwrap_or(0) + 1
    }

    pub fn final_graph(&self) -> &SimplicialGraph {
        &self.steps.last().expect("certificate has steps").graph_before
    }
}

/// One step of the reduction from a K33 subdivision with its bad edges.
///
/// Doubling moves label second copies `s#tag`; `tag` must not already occur
/// in `g`.
pub fn reduce_step(g: &SimplicialGraph, report: &BadEdgeReport, tag: u32, opts: &SearchOptions) -> Result<ReductionStep> {
    g.require_triangle_free()?;
    opts.check(g)?;
    let emb = &report.embedding;
    if emb.pattern != PatternId::K33 {
        return Err(Error::InvalidEmbedding(format!("expected a K33 subdivision, got {}", emb.pattern)));
    }
    emb.validate(g)?;
    let report = &emb.bad_edges(g)?;
    let step = |action| ReductionStep { graph_before: g.clone(), embedding: emb.clone(), report: report.clone(), action };
    if report.count == 0 {
        return Ok(step(StepAction::Terminal { pattern: TerminalPattern::InducedK33, embedding: emb.clone() }));
    }
    if let Some((pattern, embedding)) = exceptional_terminal(g, report) {
        return Ok(step(StepAction::Terminal { pattern, embedding }));
    }
    if let Some((rule, embedding, _)) = try_rewrites(g, report)? {
        return Ok(step(StepAction::ShortenRewrite { rule, embedding }));
    }
    let m = match double::quick_move(g, report, tag, opts)? {
        Some(m) => m,
        None => {
            // the moves assume a subdivision that is shortest for its bad-edge
            // count; restore that before the expensive searches
            if let Some((better, r)) = select_canonical_k33_seeded(g, Some(emb), opts)? {
                if (r.count, better.length()) < (report.count, emb.length()) {
                    return Ok(step(StepAction::ShortenRewrite { rule: RewriteRule::Search, embedding: better }));
                }
            }
            double::deep_move(g, report, tag, opts)?
        }
    };
    Ok(step(StepAction::Double {
        vertex: m.vertex,
        tag,
        kept: m.kept,
        construction: m.construction,
        successor_embedding: m.successor,
        successor_bad_edges: m.successor_report.count,
    }))
}

/// Recognises the two exceptional induced patterns: every bad edge joins two
/// essentials on one side, and the sides carry two and zero, or two and two,
/// such edges.
fn exceptional_terminal(g: &SimplicialGraph, report: &BadEdgeReport) -> Option<(TerminalPattern, SubdivisionEmbedding)> {
    if report.bad_edges.iter().any(|b| b.class != BadEdgeClass::EssEssSameSide) {
        return None;
    }
    let emb = &report.embedding;
    let sides = [&emb.essential[..3], &emb.essential[3..]];
    let count = |side: &[Label]| report.bad_edges.iter().filter(|b| side.contains(&b.u)).count();
    let (l, r) = (count(sides[0]), count(sides[1]));
    // the two-edge side as a path p–m–q with p < q
    let path = |side: &[Label]| -> Option<[Label; 3]> {
        let m = side.iter().find(|m| side.iter().filter(|s| g.has_edge(m, s)).count() == 2)?;
        let mut ends: Vec<Label> = side.iter().filter(|s| *s != m).cloned().collect();
        ends.sort();
        Some([ends[0].clone(), m.clone(), ends[1].clone()])
    };
    let sorted = |side: &[Label]| -> Vec<Label> {
        let mut s = side.to_vec();
        s.sort();
        s
    };
    match (l, r) {
        (2, 0) | (0, 2) => {
            let (two, zero) = if l == 2 { (sides[0], sides[1]) } else { (sides[1], sides[0]) };
            let mut order = sorted(zero);
            order.extend(path(two)?);
            let e = emb.relabeled(PatternId::Fig5Left, order).ok()?;
            e.validate(g).ok().map(|_| (TerminalPattern::Fig5Left, e))
        }
        (2, 2) => {
            let (p, q) = (path(sides[0])?, path(sides[1])?);
            let valid: Vec<SubdivisionEmbedding> = [(p.clone(), q.clone()), (q, p)]
                .into_iter()
                .filter_map(|(abc, xyz)| {
                    let order: Vec<Label> = abc.into_iter().chain(xyz).collect();
                    let e = emb.relabeled(PatternId::Fig5Right, order).ok()?;
                    e.validate(g).ok().map(|_| e)
                })
                .collect();
            let pick = valid.iter().find(|e| e.essential[0] < e.essential[3]).or(valid.first())?;
            Some((TerminalPattern::Fig5Right, pick.clone()))
        }
        _ => None,
    }
}

/// Runs the reduction on a triangle-free non-planar graph.
pub fn reduce(g: &SimplicialGraph, opts: &SearchOptions) -> Result<ReductionCertificate> {
    g.require_triangle_free()?;
    opts.check(g)?;
    let planarity = is_planar(g);
    let Some(witness) = planarity.witness else {
        return Err(Error::PlanarInput);
    };
    let base = g.max_generation();
    let mut steps = Vec::new();
    let mut sequence = Vec::new();
    let mut cur = g.clone();
    let mut seed = None;
    if witness.pattern == PatternId::K5 {
        let conv = k5_to_k33(g, &witness, base + 1, opts)?;
        match &conv.doubled {
            None => seed = Some(conv.embedding.clone()),
            Some(d) => {
                let kept = conv.embedding.vertex_set();
                let next = d.graph.induced_subgraph(&kept)?;
                let succ_report = conv.embedding.bad_edges(&next)?;
                steps.push(ReductionStep {
                    graph_before: g.clone(),
                    embedding: conv.k5.clone(),
                    report: conv.k5.bad_edges(g)?,
                    action: StepAction::Double {
                        vertex: d.doubled_vertex.clone(),
                        tag: d.tag,
                        kept,
                        construction: Construction::K5Double,
                        successor_embedding: conv.embedding.clone(),
                        successor_bad_edges: succ_report.count,
                    },
                });
                sequence.push(d.doubled_vertex.clone());
                cur = next;
                seed = Some(conv.embedding);
            }
        }
    }
    let mut first_count = None;
    loop {
        if opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::DeadlineExceeded);
        }
        // the canonical search runs once; afterwards the successor of each
        // move is carried forward and only shortened by rewrites
        let report = match seed.take() {
            Some(emb) => emb.bad_edges(&cur)?,
            None => select_canonical_k33(&cur, opts)?
                .ok_or_else(|| Error::InternalInvariantViolation("working graph lost its K33 subdivision".into()))?
                .1,
        };
        let b0 = *first_count.get_or_insert(report.count);
        let tag = base + sequence.len() as u32 + 1;
        let step = reduce_step(&cur, &report, tag, opts)?;
        match &step.action {
            StepAction::Terminal { pattern, embedding } => {
                let (terminal, terminal_embedding) = (*pattern, embedding.clone());
                steps.push(step);
                return Ok(ReductionCertificate {
                    initial_graph: g.clone(),
                    kuratowski: witness.pattern,
                    steps,
                    terminal,
                    terminal_embedding,
                    doubling_sequence: sequence,
                });
            }
            StepAction::Double { vertex, successor_embedding, .. } => {
                sequence.push(vertex.clone());
                if sequence.len() > 2 * b0 + 2 {
                    return Err(Error::InternalInvariantViolation("doubling count exceeds its bound".into()));
                }
                seed = Some(successor_embedding.clone());
                cur = step.successor_graph()?;
            }
            StepAction::ShortenRewrite { embedding, .. } => {
                seed = Some(embedding.clone());
            }
        }
        steps.push(step);
    }
}
