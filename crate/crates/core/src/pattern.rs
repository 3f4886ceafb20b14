use std::fmt;

use serde::{Deserialize, Serialize};

/// The fixed graphs whose subdivisions the library searches for.
///
/// `Fig5Left` is the graph Π: a `K_{3,3}` on `{a,b,c}`, `{x,y,z}` with the two
/// extra edges `x–y`, `y–z`. `Fig5Right` adds `a–b`, `b–c` as well and pins
/// which branches are single edges and which are subdivided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternId {
    K5,
    K33,
    Theta,
    Fig5Left,
    Fig5Right,
}

const K33_EDGES: [(usize, usize); 9] = [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)];
const K5_EDGES: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
const THETA_EDGES: [(usize, usize); 3] = [(0, 1), (0, 1), (0, 1)];
const K33_NAMES: [&str; 6] = ["a", "b", "c", "x", "y", "z"];

/// Branch constraint attached to a pattern edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchRule {
    Free,
    /// The branch must be a single edge.
    Edge,
    /// The branch must have at least one interior vertex.
    Subdivided,
}

impl PatternId {
    pub const ALL: [PatternId; 5] = [PatternId::K5, PatternId::K33, PatternId::Theta, PatternId::Fig5Left, PatternId::Fig5Right];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::K5 => "K5",
            PatternId::K33 => "K33",
            PatternId::Theta => "Theta",
            PatternId::Fig5Left => "Fig5Left",
            PatternId::Fig5Right => "Fig5Right",
        }
    }

    pub fn parse(s: &str) -> Option<PatternId> {
        let lower = s.to_ascii_lowercase().replace(['_', '-'], "");
        let id = match lower.as_str() {
            "k5" => PatternId::K5,
            "k33" => PatternId::K33,
            "theta" => PatternId::Theta,
            "fig5left" | "pi" => PatternId::Fig5Left,
            "fig5right" => PatternId::Fig5Right,
            _ => return None,
        };
        Some(id)
    }

    /// Names of the essential vertices, indexed as in `edges`.
    pub fn vertex_names(self) -> &'static [&'static str] {
        match self {
            PatternId::K5 => &["a", "b", "c", "d", "e"],
            PatternId::Theta => &["a", "b"],
            _ => &K33_NAMES,
        }
    }

    pub fn vertex_index(self, name: &str) -> Option<usize> {
        self.vertex_names().iter().position(|n| *n == name)
    }

    /// Pattern edges, each realised by one branch. Theta has three parallel edges.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            PatternId::K5 => &K5_EDGES,
            PatternId::Theta => &THETA_EDGES,
            _ => &K33_EDGES,
        }
    }

    /// Edges between essential vertices that must be present in the graph but
    /// are not branches.
    pub fn extra_edges(self) -> &'static [(usize, usize)] {
        match self {
            PatternId::Fig5Left => &[(3, 4), (4, 5)],
            PatternId::Fig5Right => &[(3, 4), (4, 5), (0, 1), (1, 2)],
            _ => &[],
        }
    }

    pub fn branch_rule(self, edge: usize) -> BranchRule {
        match self {
            PatternId::Fig5Right => match K33_EDGES[edge] {
                // a–y, c–y, b–x, b–z
                (0, 4) | (2, 4) | (1, 3) | (1, 5) => BranchRule::Edge,
                _ => BranchRule::Subdivided,
            },
            _ => BranchRule::Free,
        }
    }

    /// Whether an embedding must induce exactly its branches plus the extra edges.
    pub fn exact(self) -> bool {
        matches!(self, PatternId::Fig5Left | PatternId::Fig5Right)
    }

    pub fn degree(self, v: usize) -> usize {
        self.edges().iter().filter(|(p, q)| *p == v || *q == v).count()
    }

    /// Pairs `(i, j)` with image(i) < image(j) that select one representative
    /// per orbit of the pattern's symmetry group.
    pub(crate) fn symmetry_order(self) -> &'static [(usize, usize)] {
        match self {
            PatternId::K5 => &[(0, 1), (1, 2), (2, 3), (3, 4)],
            PatternId::K33 => &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3)],
            PatternId::Theta => &[(0, 1)],
            PatternId::Fig5Left => &[(0, 1), (1, 2), (3, 5)],
            PatternId::Fig5Right => &[(0, 2), (3, 5), (0, 3)],
        }
    }

    pub fn edge_name(self, edge: usize) -> String {
        let (p, q) = self.edges()[edge];
        let names = self.vertex_names();
        format!("{}{}", names[p], names[q])
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        for v in 0..6 {
            assert_eq!(PatternId::K33.degree(v), 3);
        }
        for v in 0..5 {
            assert_eq!(PatternId::K5.degree(v), 4);
        }
        assert_eq!(PatternId::Theta.degree(0), 3);
    }

    #[test]
    fn fig5_right_rules() {
        let p = PatternId::Fig5Right;
        let forced: Vec<String> = (0..9).filter(|&e| p.branch_rule(e) == BranchRule::Edge).map(|e| p.edge_name(e)).collect();
        assert_eq!(forced, ["ay", "bx", "bz", "cy"]);
        let sub: Vec<String> = (0..9).filter(|&e| p.branch_rule(e) == BranchRule::Subdivided).map(|e| p.edge_name(e)).collect();
        assert_eq!(sub, ["ax", "az", "by", "cx", "cz"]);
    }

    #[test]
    fn parse_names() {
        for p in PatternId::ALL {
            assert_eq!(PatternId::parse(p.name()), Some(p));
        }
        assert_eq!(PatternId::parse("pi"), Some(PatternId::Fig5Left));
        assert_eq!(PatternId::parse("k6"), None);
    }
}
