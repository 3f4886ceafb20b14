//! Independent checker for reduction certificates. It replays every doubling
//! and recounts every bad edge instead of trusting the recorded values.

use serde::{Deserialize, Serialize};

use super::{Construction, ReductionCertificate, StepAction, TerminalPattern};
use crate::embedding::SubdivisionEmbedding;
use crate::graph::SimplicialGraph;
use crate::pattern::PatternId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    /// The first failing check, if any.
    pub diagnostic: Option<String>,
}

/// Re-checks every invariant of a certificate.
pub fn verify_certificate(cert: &ReductionCertificate) -> Verification {
    match check(cert) {
        Ok(()) => Verification { valid: true, diagnostic: None },
        Err(msg) => Verification { valid: false, diagnostic: Some(msg) },
    }
}

fn is_induced_in(sub: &SimplicialGraph, g: &SimplicialGraph) -> bool {
    sub.vertices().all(|v| g.contains(v)) && g.induced_subgraph(sub.vertices()).is_ok_and(|h| h == *sub)
}

fn check_terminal(pattern: TerminalPattern, emb: &SubdivisionEmbedding, g: &SimplicialGraph) -> Result<(), String> {
    if emb.pattern != pattern.pattern() {
        return Err(format!("terminal {pattern:?} carries a {} embedding", emb.pattern));
    }
    emb.validate(g).map_err(|e| match pattern {
        TerminalPattern::InducedK33 => format!("terminal embedding invalid: {e}"),
        _ => format!("pattern mismatch: {e}"),
    })?;
    if pattern == TerminalPattern::InducedK33 && !emb.is_induced(g).unwrap_or(false) {
        return Err("not induced".into());
    }
    Ok(())
}

fn check(cert: &ReductionCertificate) -> Result<(), String> {
    let initial = &cert.initial_graph;
    if let Some(t) = initial.find_triangle() {
        return Err(format!("initial graph has triangle {t:?}"));
    }
    let Some(last) = cert.steps.last() else {
        return Err("certificate has no steps".into());
    };
    if cert.steps[0].graph_before != *initial {
        return Err("first step does not start from the initial graph".into());
    }
    let mut full = initial.clone();
    let mut doubled = Vec::new();
    // bad-edge count where the current run of lookahead doublings began
    let mut chain_start: Option<usize> = None;
    for (i, step) in cert.steps.iter().enumerate() {
        let at = |msg: String| format!("step {i}: {msg}");
        let g = &step.graph_before;
        if !is_induced_in(g, &full) {
            return Err(at("working graph is not an induced subgraph of the replayed double".into()));
        }
        let emb = &step.embedding;
        emb.validate(g).map_err(|e| at(format!("embedding invalid: {e}")))?;
        if step.report.embedding != *emb {
            return Err(at("report describes a different embedding".into()));
        }
        let recount = emb.bad_edges(g).map_err(|e| at(e.to_string()))?;
        let next = cert.steps.get(i + 1);
        match &step.action {
            StepAction::Terminal { pattern, embedding } => {
                if next.is_some() {
                    return Err(at("terminal step is not last".into()));
                }
                if *pattern != cert.terminal || *embedding != cert.terminal_embedding {
                    return Err(at("terminal disagrees with the certificate summary".into()));
                }
                check_terminal(*pattern, embedding, g).map_err(&at)?;
                check_terminal(*pattern, embedding, &full).map_err(|e| at(format!("in the replayed double: {e}")))?;
            }
            StepAction::ShortenRewrite { embedding, .. } => {
                let next = next.ok_or_else(|| at("rewrite is the last step".into()))?;
                if next.graph_before != *g {
                    return Err(at("rewrite changed the graph".into()));
                }
                if embedding.pattern != PatternId::K33 {
                    return Err(at("rewrite must produce a K33 subdivision".into()));
                }
                embedding.validate(g).map_err(|e| at(format!("rewritten embedding invalid: {e}")))?;
                let r = embedding.bad_edges(g).map_err(|e| at(e.to_string()))?;
                if (r.count, embedding.length()) >= (recount.count, emb.length()) {
                    return Err(at("rewrite does not decrease (bad edges, length)".into()));
                }
            }
            StepAction::Double { vertex, tag, kept, construction, successor_embedding, successor_bad_edges } => {
                let next = next.ok_or_else(|| at("doubling is the last step".into()))?;
                let d = g.double_tagged(vertex, *tag).map_err(|e| at(e.to_string()))?;
                if !kept.iter().all(|v| d.graph.contains(v)) {
                    return Err(at("kept set leaves the double".into()));
                }
                let restricted = d.graph.induced_subgraph(kept).map_err(|e| at(e.to_string()))?;
                if restricted != next.graph_before {
                    return Err(at("double replay mismatch".into()));
                }
                if successor_embedding.pattern != PatternId::K33 {
                    return Err(at("successor must be a K33 subdivision".into()));
                }
                successor_embedding.validate(&restricted).map_err(|e| at(format!("successor invalid: {e}")))?;
                let succ = successor_embedding.bad_edges(&restricted).map_err(|e| at(e.to_string()))?;
                if succ.count != *successor_bad_edges {
                    return Err(at("successor bad-edge count mismatch".into()));
                }
                match construction {
                    Construction::K5Double => {
                        if i != 0 || emb.pattern != PatternId::K5 {
                            return Err(at("K5 doubling must be the first step and start from a K5 subdivision".into()));
                        }
                    }
                    Construction::Lookahead => {
                        if emb.pattern != PatternId::K33 {
                            return Err(at("doubling must start from a K33 subdivision".into()));
                        }
                        if matches!(next.action, StepAction::ShortenRewrite { .. }) {
                            return Err(at("lookahead doubling is not followed by a doubling or a terminal".into()));
                        }
                        chain_start.get_or_insert(recount.count);
                    }
                    _ => {
                        if emb.pattern != PatternId::K33 {
                            return Err(at("doubling must start from a K33 subdivision".into()));
                        }
                        let bound = chain_start.take().map_or(recount.count, |b| b.min(recount.count));
                        if succ.count >= bound || next.report.count >= bound {
                            return Err(at("bad-edge count does not decrease across the doubling".into()));
                        }
                    }
                }
                full = full.double_tagged(vertex, *tag).map_err(|e| at(format!("replay: {e}")))?.graph;
                doubled.push(vertex.clone());
            }
        }
        if recount != step.report {
            return Err(at("recorded bad edges differ from a recount".into()));
        }
    }
    if !matches!(last.action, StepAction::Terminal { .. }) {
        return Err("last step is not terminal".into());
    }
    if doubled != cert.doubling_sequence {
        return Err("doubling sequence does not match the doubling steps".into());
    }
    Ok(())
}
