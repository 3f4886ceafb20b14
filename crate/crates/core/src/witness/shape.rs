//! Abstract shape of a witness: points as nodes, arcs as (parallel) edges.
//! A witness has the claimed type when suppressing its degree-2 points gives
//! a multigraph isomorphic to the type's core.

use super::WitnessType;

/// Multigraph with nodes `0..n` and undirected edges, loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Multigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(p, q)| (p == v) as usize + (q == v) as usize).sum()
    }

    /// Replaces every maximal path through degree-2 nodes by one edge.
    /// Returns `None` when a component is a bare cycle of degree-2 nodes,
    /// since no claimed type has one.
    pub fn suppress_degree_two(&self) -> Option<Multigraph> {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) != 2).collect();
        let index = |v: usize| keep.iter().position(|&k| k == v);
        let mut used = vec![false; self.edges.len()];
        let mut edges = Vec::new();
        for &start in &keep {
            for e in 0..self.edges.len() {
                if used[e] || (self.edges[e].0 != start && self.edges[e].1 != start) {
                    continue;
                }
                used[e] = true;
                let mut cur = if self.edges[e].0 == start { self.edges[e].1 } else { self.edges[e].0 };
                while index(cur).is_none() {
                    let next = (0..self.edges.len()).find(|&f| !used[f] && (self.edges[f].0 == cur || self.edges[f].1 == cur))?;
                    used[next] = true;
                    cur = if self.edges[next].0 == cur { self.edges[next].1 } else { self.edges[next].0 };
                }
                edges.push((index(start)?, index(cur)?));
            }
        }
        if used.iter().any(|u| !u) {
            return None;
        }
        Some(Multigraph { n: keep.len(), edges })
    }

    fn edge_counts(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(p, q)| {
                let (p, q) = (perm[p], perm[q]);
                (p.min(q), p.max(q))
            })
            .collect();
        out.sort();
        out
    }

    /// Brute-force isomorphism test; intended for the handful of nodes a
    /// witness core has.
    pub fn isomorphic(&self, other: &Multigraph) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() || self.n > 9 {
            return false;
        }
        let target = other.edge_counts(&(0..other.n).collect::<Vec<_>>());
        let mut perm: Vec<usize> = (0..self.n).collect();
        permutations(&mut perm, 0, &mut |p| self.edge_counts(p) == target)
    }
}

fn permutations(perm: &mut Vec<usize>, k: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return found(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permutations(perm, k + 1, found) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// The core multigraph of each witness type.
pub(crate) fn core(t: WitnessType) -> Multigraph {
    match t {
        WitnessType::Theta => Multigraph { n: 2, edges: vec![(0, 1); 3] },
        WitnessType::K33 => Multigraph { n: 6, edges: (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect() },
        WitnessType::ThreeCirclesWithPoles => {
            // poles 0 and 1; circle i has attachment points 2+2i (to pole 0) and 3+2i (to pole 1)
            let mut edges = Vec::new();
            for i in 0..3 {
                let (p, q) = (2 + 2 * i, 3 + 2 * i);
                edges.extend([(p, q), (p, q), (0, p), (1, q)]);
            }
            Multigraph { n: 8, edges }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_theta_reduces_to_the_core() {
        // two branch points joined by paths of lengths 1, 2 and 3
        let m = Multigraph { n: 5, edges: vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)] };
        assert!(m.suppress_degree_two().unwrap().isomorphic(&core(WitnessType::Theta)));
        assert!(!m.suppress_degree_two().unwrap().isomorphic(&core(WitnessType::K33)));
    }

    #[test]
    fn bare_cycles_are_rejected() {
        let m = Multigraph { n: 3, edges: vec![(0, 1), (1, 2), (2, 0)] };
        assert!(m.suppress_degree_two().is_none());
    }

    #[test]
    fn cores_are_not_isomorphic_to_each_other() {
        let all = [WitnessType::Theta, WitnessType::K33, WitnessType::ThreeCirclesWithPoles];
        for a in all {
            for b in all {
                assert_eq!(core(a).isomorphic(&core(b)), a == b);
            }
        }
    }
}
