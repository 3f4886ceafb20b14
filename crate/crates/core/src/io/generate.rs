//! Named graph families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Label, SimplicialGraph};
use crate::pattern::PatternId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cycle,
    Path,
    Mobius,
    K33Subdiv,
    K5Subdiv,
    ThetaSubdiv,
    Pi,
    Fig5Right,
    Petersen,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Cycle,
        Family::Path,
        Family::Mobius,
        Family::K33Subdiv,
        Family::K5Subdiv,
        Family::ThetaSubdiv,
        Family::Pi,
        Family::Fig5Right,
        Family::Petersen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Mobius => "mobius",
            Family::K33Subdiv => "k33_subdiv",
            Family::K5Subdiv => "k5_subdiv",
            Family::ThetaSubdiv => "theta_subdiv",
            Family::Pi => "pi",
            Family::Fig5Right => "fig5_right",
            Family::Petersen => "petersen",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown family `{s}`")))
    }
}

/// Builds a member of `family`.
///
/// `cycle`, `path` and `mobius` take one size. The subdivision families take
/// per-branch interior vertex counts, either one count for every branch or one
/// per branch in pattern edge order (`pi`: 9 K33 branches; `fig5_right`: the
/// five subdivided branches ax, az, by, cx, cz; `theta_subdiv`: 3 branches).
pub fn generate(family: Family, params: &[usize]) -> Result<SimplicialGraph> {
    match family {
        Family::Cycle => {
            let n = single(family, params)?;
            if n < 3 {
                return Err(Error::BadParams("cycle needs n >= 3".into()));
            }
            cycle(n)
        }
        Family::Path => {
            let n = single(family, params)?;
            if n < 2 {
                return Err(Error::BadParams("path needs n >= 2".into()));
            }
            SimplicialGraph::from_edges((1..n).map(|i| (v(i - 1), v(i))))
        }
        Family::Mobius => {
            let n = single(family, params)?;
            if n < 3 {
                return Err(Error::BadParams("mobius needs n >= 3".into()));
            }
            let mut edges: Vec<(Label, Label)> = (0..2 * n).map(|i| (v(i), v((i + 1) % (2 * n)))).collect();
            edges.extend((0..n).map(|i| (v(i), v(i + n))));
            SimplicialGraph::from_edges(edges)
        }
        Family::K33Subdiv => subdivided(PatternId::K33, &counts(family, params, 9)?, &[]),
        Family::K5Subdiv => subdivided(PatternId::K5, &counts(family, params, 10)?, &[]),
        Family::ThetaSubdiv => {
            let c = counts(family, params, 3)?;
            if c.iter().filter(|&&k| k == 0).count() > 1 {
                return Err(Error::BadParams("theta allows at most one unsubdivided branch".into()));
            }
            subdivided(PatternId::Theta, &c, &[])
        }
        Family::Pi => {
            let c = counts(family, params, 9)?;
            let g = subdivided(PatternId::K33, &c, &[("x", "y"), ("y", "z")])?;
            refuse_triangles(g)
        }
        Family::Fig5Right => {
            let black = counts(family, params, 5)?;
            if black.contains(&0) {
                return Err(Error::BadParams("fig5_right branches ax, az, by, cx, cz must be subdivided".into()));
            }
            // K33 edge order: ax ay az bx by bz cx cy cz
            let c = [black[0], 0, black[1], 0, black[2], 0, black[3], 0, black[4]];
            let g = subdivided(PatternId::K33, &c, &[("x", "y"), ("y", "z"), ("a", "b"), ("b", "c")])?;
            refuse_triangles(g)
        }
        Family::Petersen => {
            if !params.is_empty() {
                return Err(Error::BadParams("petersen takes no parameters".into()));
            }
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
                edges.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
                edges.push((format!("o{i}"), format!("i{i}")));
            }
            SimplicialGraph::from_edges(edges)
        }
    }
}

fn v(i: usize) -> Label {
    format!("v{i}")
}

fn cycle(n: usize) -> Result<SimplicialGraph> {
    SimplicialGraph::from_edges((0..n).map(|i| (v(i), v((i + 1) % n))))
}

fn single(family: Family, params: &[usize]) -> Result<usize> {
    match params {
        [n] => Ok(*n),
        _ => Err(Error::BadParams(format!("{family} takes exactly one size parameter"))),
    }
}

fn counts(family: Family, params: &[usize], len: usize) -> Result<Vec<usize>> {
    match params.len() {
        1 => Ok(vec![params[0]; len]),
        n if n == len => Ok(params.to_vec()),
        n => Err(Error::BadParams(format!("{family} takes 1 or {len} counts, got {n}"))),
    }
}

/// The pattern with branch `e` carrying `counts[e]` interior vertices, plus
/// extra edges between essential vertices. Interior vertices of branch `pq`
/// are labelled `pq1, pq2, ...` from the `p` end (`t<e>_<k>` for Theta).
fn subdivided(pattern: PatternId, counts: &[usize], extra: &[(&str, &str)]) -> Result<SimplicialGraph> {
    let names = pattern.vertex_names();
    let mut edges: Vec<(Label, Label)> = Vec::new();
    for (e, &(p, q)) in pattern.edges().iter().enumerate() {
        let mut prev = names[p].to_string();
        for k in 1..=counts[e] {
            let mid = match pattern {
                PatternId::Theta => format!("t{}_{k}", e + 1),
                _ => format!("{}{}{k}", names[p], names[q]),
            };
            edges.push((prev, mid.clone()));
            prev = mid;
        }
        edges.push((prev, names[q].to_string()));
    }
    edges.extend(extra.iter().map(|(u, w)| (u.to_string(), w.to_string())));
    SimplicialGraph::from_edges(edges).map_err(|e| Error::BadParams(e.to_string()))
}

fn refuse_triangles(g: SimplicialGraph) -> Result<SimplicialGraph> {
    match g.find_triangle() {
        Some(t) => Err(Error::BadParams(format!("parameters create triangle {}–{}–{}", t[0], t[1], t[2]))),
        None => Ok(g),
    }
}

/// Fixed instances used throughout the tests and documentation.
pub mod fixtures {
    use super::*;

    /// K33 with every branch subdivided once.
    pub fn k33s1() -> SimplicialGraph {
        generate(Family::K33Subdiv, &[1]).expect("valid parameters")
    }

    /// K5 with every branch subdivided once.
    pub fn k5s1() -> SimplicialGraph {
        generate(Family::K5Subdiv, &[1]).expect("valid parameters")
    }

    /// Π with every K33 branch subdivided once.
    pub fn pi1() -> SimplicialGraph {
        generate(Family::Pi, &[1]).expect("valid parameters")
    }

    /// The smallest instance of the right-hand terminal configuration.
    pub fn fig5r1() -> SimplicialGraph {
        generate(Family::Fig5Right, &[1]).expect("valid parameters")
    }

    /// Theta graph with branch lengths 2, 2, 3.
    pub fn theta233() -> SimplicialGraph {
        generate(Family::ThetaSubdiv, &[1, 1, 2]).expect("valid parameters")
    }

    pub fn mobius(n: usize) -> SimplicialGraph {
        generate(Family::Mobius, &[n]).expect("valid parameters")
    }
}
