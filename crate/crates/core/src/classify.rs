//! Boundary verdicts assembled from the predicates and the reduction.

use serde::{Deserialize, Serialize};

use crate::embedding::SubdivisionEmbedding;
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::planarity::is_planar;
use crate::predicates::{has_isolated_flats_with, is_hyperbolic_racg, is_inseparable, InseparabilityReport, IsolatedFlatsStrategy};
use crate::reduction::{reduce, verify_certificate, ReductionCertificate, TerminalPattern, Verification};
use crate::search::SearchOptions;
use crate::witness::{fig5right_witness, k33_boundary_witness, obstruction_check, pi_witness, verify_witness, BoundaryWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    GraphPlanarBoundary,
    EveryBoundaryNonPlanar,
    PiObstruction,
    MengerCurve,
    SierpinskiCarpetCandidate,
}

/// Whether a hypothesis was checked by the tool or is assumed by the
/// statement and left to the reader.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Verified,
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub statement: String,
    pub status: HypothesisStatus,
}

/// A statement about the boundary: it holds whenever every hypothesis does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: String,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BoundaryWitness>,
}

impl Verdict {
    /// True when the conclusion depends on no assumed hypothesis.
    pub fn unconditional(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status == HypothesisStatus::Verified)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input_graph: SimplicialGraph,
    pub triangle_free: bool,
    pub graph_planar: bool,
    pub kuratowski_witness: Option<SubdivisionEmbedding>,
    pub inseparability: InseparabilityReport,
    pub hyperbolic: bool,
    pub isolated_flats: bool,
    pub isolated_flats_strategy: IsolatedFlatsStrategy,
    pub reduction: Option<ReductionCertificate>,
    /// Why the reduction is missing on a non-planar graph.
    pub reduction_error: Option<String>,
    pub verdicts: Vec<Verdict>,
}

impl ClassificationReport {
    pub fn has(&self, kind: VerdictKind) -> bool {
        self.verdicts.iter().any(|v| v.kind == kind)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub search: SearchOptions,
    pub isolated_flats: IsolatedFlatsStrategy,
}

fn verified(s: impl Into<String>) -> Hypothesis {
    Hypothesis { statement: s.into(), status: HypothesisStatus::Verified }
}

fn assumed(s: impl Into<String>) -> Hypothesis {
    Hypothesis { statement: s.into(), status: HypothesisStatus::Assumed }
}

/// Classifies the boundary of the right-angled Coxeter group of `g`.
///
/// A graph with a triangle is rejected. When the reduction cannot finish
/// (graph too large, deadline) the report is still returned, with the
/// reduction error recorded and only the verdicts that do not need it.
pub fn classify(g: &SimplicialGraph, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    g.require_triangle_free()?;
    let planarity = is_planar(g);
    let inseparability = is_inseparable(g)?;
    let hyperbolic = is_hyperbolic_racg(g)?;
    let isolated_flats = has_isolated_flats_with(g, opts.isolated_flats)?;
    let strategy = opts.isolated_flats.label();
    let mut report = ClassificationReport {
        input_graph: g.clone(),
        triangle_free: true,
        graph_planar: planarity.planar,
        kuratowski_witness: planarity.witness,
        inseparability,
        hyperbolic,
        isolated_flats,
        isolated_flats_strategy: opts.isolated_flats,
        reduction: None,
        reduction_error: None,
        verdicts: Vec::new(),
    };
    let inseparable = report.inseparability.inseparable;

    if report.graph_planar {
        report.verdicts.push(Verdict {
            kind: VerdictKind::GraphPlanarBoundary,
            hypotheses: vec![verified("defining graph is planar")],
            conclusion: "every CAT(0) boundary is planar; the group is virtually a 3-manifold group".into(),
            citation: "planar defining graph: the Davis complex embeds in a 3-manifold".into(),
            witness: None,
        });
        if inseparable && hyperbolic {
            report.verdicts.push(Verdict {
                kind: VerdictKind::SierpinskiCarpetCandidate,
                hypotheses: vec![verified("defining graph is planar"), verified("defining graph is inseparable"), verified("no induced 4-cycle")],
                conclusion: "boundary is expected to be a Sierpinski carpet (informational)".into(),
                citation: "planar boundaries of hyperbolic right-angled Coxeter groups with inseparable graphs".into(),
                witness: None,
            });
        }
        return Ok(report);
    }

    if inseparable && (hyperbolic || isolated_flats) {
        let geometry = if hyperbolic {
            verified("no induced 4-cycle (hyperbolic)")
        } else {
            verified(format!("isolated flats ({strategy})"))
        };
        report.verdicts.push(Verdict {
            kind: VerdictKind::MengerCurve,
            hypotheses: vec![verified("defining graph is non-planar"), verified("defining graph is inseparable"), geometry],
            conclusion: "every CAT(0) boundary is the Menger curve".into(),
            citation: "Menger curve criterion: inseparable non-planar triangle-free graph, hyperbolic or with isolated flats".into(),
            witness: None,
        });
    }

    match reduce(g, &opts.search) {
        Ok(cert) => {
            let check = verify_certificate(&cert);
            if check.valid {
                report.verdicts.extend(reduction_verdicts(&cert)?);
            } else {
                report.reduction_error = Some(format!("certificate failed verification: {}", check.diagnostic.unwrap_or_default()));
            }
            report.reduction = Some(cert);
        }
        Err(e @ (Error::GraphTooLarge { .. } | Error::DeadlineExceeded)) => report.reduction_error = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn reduction_verdicts(cert: &ReductionCertificate) -> Result<Vec<Verdict>> {
    let g = cert.final_graph();
    let emb = &cert.terminal_embedding;
    let reached = |what: &str| verified(format!("doubling reduction reaches {what} (certificate verifies)"));
    let out = match cert.terminal {
        TerminalPattern::InducedK33 => vec![Verdict {
            kind: VerdictKind::EveryBoundaryNonPlanar,
            hypotheses: vec![reached("an induced K33 subdivision")],
            conclusion: "every CAT(0) boundary is non-planar".into(),
            citation: "an induced K33 subdivision in a finite-index subgroup embeds K33 in the boundary".into(),
            witness: Some(k33_boundary_witness(g, emb)?),
        }],
        TerminalPattern::Fig5Right => vec![Verdict {
            kind: VerdictKind::EveryBoundaryNonPlanar,
            hypotheses: vec![reached("the four-circle configuration")],
            conclusion: "every CAT(0) boundary is non-planar".into(),
            citation: "four induced cycles of the configuration give a K33 in the boundary".into(),
            witness: Some(BoundaryWitness::Symbolic(fig5right_witness(g, emb)?)),
        }],
        TerminalPattern::Fig5Left => {
            let pi = reached("an induced copy of Π");
            vec![
                Verdict {
                    kind: VerdictKind::PiObstruction,
                    hypotheses: vec![pi.clone()],
                    conclusion: "boundary may be planar".into(),
                    citation: "Π itself has a double with planar defining graph".into(),
                    witness: None,
                },
                Verdict {
                    kind: VerdictKind::PiObstruction,
                    hypotheses: vec![
                        pi,
                        assumed("boundary is connected"),
                        assumed("boundary is locally connected"),
                        assumed("boundary has no local cut points"),
                    ],
                    conclusion: "boundary is non-planar".into(),
                    citation: "involution obstruction on three circles with two poles".into(),
                    witness: Some(BoundaryWitness::Symbolic(pi_witness(g, emb)?)),
                },
            ]
        }
    };
    Ok(out)
}

/// Re-checks a report: the predicates are recomputed, the reduction
/// certificate is verified, and every verdict must follow from the recorded
/// data, with its witness valid in the certificate's final graph.
pub fn verify_report(report: &ClassificationReport) -> Verification {
    match check_report(report) {
        Ok(()) => Verification { valid: true, diagnostic: None },
        Err(msg) => Verification { valid: false, diagnostic: Some(msg) },
    }
}

fn check_report(r: &ClassificationReport) -> std::result::Result<(), String> {
    let g = &r.input_graph;
    if !r.triangle_free || !g.is_triangle_free() {
        return Err("input graph has a triangle".into());
    }
    let planarity = is_planar(g);
    if planarity.planar != r.graph_planar {
        return Err("planarity differs from a recomputation".into());
    }
    if let Some(w) = &r.kuratowski_witness {
        w.validate(g).map_err(|e| format!("Kuratowski witness invalid: {e}"))?;
    } else if !r.graph_planar {
        return Err("non-planar graph without a Kuratowski witness".into());
    }
    let e = |e: Error| e.to_string();
    if is_inseparable(g).map_err(e)? != r.inseparability {
        return Err("inseparability differs from a recomputation".into());
    }
    if is_hyperbolic_racg(g).map_err(e)? != r.hyperbolic {
        return Err("hyperbolicity differs from a recomputation".into());
    }
    if has_isolated_flats_with(g, r.isolated_flats_strategy).map_err(e)? != r.isolated_flats {
        return Err("isolated flats differ from a recomputation".into());
    }
    if let Some(cert) = &r.reduction {
        if cert.initial_graph != *g {
            return Err("reduction starts from a different graph".into());
        }
        let v = verify_certificate(cert);
        if !v.valid {
            return Err(format!("reduction certificate: {}", v.diagnostic.unwrap_or_default()));
        }
    }
    let inseparable = r.inseparability.inseparable;
    for v in &r.verdicts {
        let holds = match v.kind {
            VerdictKind::GraphPlanarBoundary => r.graph_planar,
            VerdictKind::SierpinskiCarpetCandidate => r.graph_planar && inseparable && r.hyperbolic,
            VerdictKind::MengerCurve => !r.graph_planar && inseparable && (r.hyperbolic || r.isolated_flats),
            VerdictKind::EveryBoundaryNonPlanar => {
                r.reduction.as_ref().is_some_and(|c| matches!(c.terminal, TerminalPattern::InducedK33 | TerminalPattern::Fig5Right))
            }
            VerdictKind::PiObstruction => r.reduction.as_ref().is_some_and(|c| c.terminal == TerminalPattern::Fig5Left),
        };
        if !holds {
            return Err(format!("{:?} verdict without its hypotheses", v.kind));
        }
        if let (Some(BoundaryWitness::Symbolic(w)), Some(cert)) = (&v.witness, &r.reduction) {
            let check = verify_witness(w, cert.final_graph());
            if !check.valid {
                return Err(format!("{:?} witness: {}", v.kind, check.diagnostic.unwrap_or_default()));
            }
            if v.kind == VerdictKind::PiObstruction && !obstruction_check(w) {
                return Err("Π witness lacks the involution obstruction".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generate::fixtures;

    #[test]
    fn cycle_is_planar() {
        let c6 = SimplicialGraph::from_edges((0..6).map(|i| (format!("v{i}"), format!("v{}", (i + 1) % 6)))).unwrap();
        let r = classify(&c6, &ClassifyOptions::default()).unwrap();
        let kinds: Vec<VerdictKind> = r.verdicts.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![VerdictKind::GraphPlanarBoundary]);
    }

    #[test]
    fn mobius_is_menger() {
        let r = classify(&fixtures::mobius(4), &ClassifyOptions::default()).unwrap();
        assert!(r.has(VerdictKind::MengerCurve));
        assert!(!r.has(VerdictKind::GraphPlanarBoundary));
        assert!(verify_report(&r).valid);
        let mut forged = r.clone();
        forged.hyperbolic = true;
        assert!(!verify_report(&forged).valid);
    }

    #[test]
    fn pi_gets_the_obstruction() {
        let r = classify(&fixtures::pi1(), &ClassifyOptions::default()).unwrap();
        assert!(r.has(VerdictKind::PiObstruction));
        assert!(!r.has(VerdictKind::MengerCurve));
        assert!(r.verdicts.iter().any(|v| v.kind == VerdictKind::PiObstruction && !v.unconditional()));
    }

    #[test]
    fn triangle_is_an_error() {
        let k3 = SimplicialGraph::from_edges([("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(matches!(classify(&k3, &ClassifyOptions::default()), Err(Error::NotTriangleFree(_))));
    }
}
