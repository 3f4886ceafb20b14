//! Graph predicates standing in for group properties of the right-angled
//! Coxeter group: inseparability, hyperbolicity and isolated flats.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Label, SimplicialGraph};

/// Which of the four separator shapes a graph has. Each witness is the sorted
/// separating vertex set, the least one in label order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InseparabilityReport {
    pub connected: bool,
    pub separating_vertex: Option<Vec<Label>>,
    pub separating_edge: Option<Vec<Label>>,
    /// Two non-adjacent vertices.
    pub cut_pair: Option<Vec<Label>>,
    /// Two non-adjacent vertices and a common neighbour.
    pub separating_vertex_suspension: Option<Vec<Label>>,
    pub inseparable: bool,
}

impl InseparabilityReport {
    /// The witnesses that are present, with their names.
    pub fn witnesses(&self) -> Vec<(&'static str, &[Label])> {
        [
            ("separating_vertex", &self.separating_vertex),
            ("separating_edge", &self.separating_edge),
            ("cut_pair", &self.cut_pair),
            ("separating_vertex_suspension", &self.separating_vertex_suspension),
        ]
        .into_iter()
        .filter_map(|(name, w)| w.as_deref().map(|w| (name, w)))
        .collect()
    }
}

/// True when deleting `set` leaves at least two components.
pub fn separates(g: &SimplicialGraph, set: &[Label]) -> bool {
    let removed: BTreeSet<Label> = set.iter().cloned().collect();
    g.without(&removed).components().len() >= 2
}

/// Checks the four separator shapes of a triangle-free graph. Witnesses are
/// only searched for in connected graphs.
pub fn is_inseparable(g: &SimplicialGraph) -> Result<InseparabilityReport> {
    g.require_triangle_free()?;
    let connected = g.is_connected();
    let vs: Vec<&Label> = g.vertices().collect();
    let n = vs.len();
    let mut report = InseparabilityReport {
        connected,
        separating_vertex: None,
        separating_edge: None,
        cut_pair: None,
        separating_vertex_suspension: None,
        inseparable: false,
    };
    if connected {
        let keep = |slot: &mut Option<Vec<Label>>, mut set: Vec<Label>| {
            set.sort();
            if slot.as_ref().is_none_or(|s| set < *s) && separates(g, &set) {
                *slot = Some(set);
            }
        };
        for i in 0..n {
            keep(&mut report.separating_vertex, vec![vs[i].clone()]);
            for j in (i + 1)..n {
                let pair = vec![vs[i].clone(), vs[j].clone()];
                if g.has_edge(vs[i], vs[j]) {
                    keep(&mut report.separating_edge, pair);
                    continue;
                }
                keep(&mut report.cut_pair, pair);
                let common = g.neighbors(vs[i])?.intersection(g.neighbors(vs[j])?);
                for c in common {
                    keep(&mut report.separating_vertex_suspension, vec![vs[i].clone(), vs[j].clone(), c.clone()]);
                }
            }
        }
    }
    report.inseparable = connected && report.witnesses().is_empty();
    Ok(report)
}

/// Hyperbolicity of the group: a triangle-free graph defines a hyperbolic
/// group exactly when it has no induced 4-cycle.
pub fn is_hyperbolic_racg(g: &SimplicialGraph) -> Result<bool> {
    g.require_triangle_free()?;
    Ok(!g.enumerate_induced_cycles(4).iter().any(|c| c.len() == 4))
}

/// Criterion used to decide isolated flats.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsolatedFlatsStrategy {
    /// No two non-adjacent vertices share three neighbours, i.e. no induced
    /// K_{2,3}. Two induced squares on the same diagonal pair would give flats
    /// meeting in a line.
    #[default]
    #[serde(rename = "caprace-k23-default")]
    CapraceK23Default,
}

impl IsolatedFlatsStrategy {
    pub fn label(self) -> &'static str {
        match self {
            IsolatedFlatsStrategy::CapraceK23Default => "caprace-k23-default",
        }
    }
}

impl fmt::Display for IsolatedFlatsStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Isolated flats with the default strategy.
pub fn has_isolated_flats(g: &SimplicialGraph) -> Result<bool> {
    has_isolated_flats_with(g, IsolatedFlatsStrategy::default())
}

pub fn has_isolated_flats_with(g: &SimplicialGraph, strategy: IsolatedFlatsStrategy) -> Result<bool> {
    g.require_triangle_free()?;
    match strategy {
        IsolatedFlatsStrategy::CapraceK23Default => {
            let vs: Vec<&Label> = g.vertices().collect();
            for (i, u) in vs.iter().enumerate() {
                for w in &vs[i + 1..] {
                    if !g.has_edge(u, w) && g.neighbors(u)?.intersection(g.neighbors(w)?).count() >= 3 {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}
