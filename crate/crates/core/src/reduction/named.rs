//! Named views of a K33 embedding under relabelling, used to express the
//! rerouting constructions in fixed letters `a b c` / `x y z`.

use std::collections::HashMap;

use crate::embedding::SubdivisionEmbedding;
use crate::error::Result;
use crate::graph::Label;
use crate::pattern::PatternId;

const NAMES: [char; 6] = ['a', 'b', 'c', 'x', 'y', 'z'];

/// One relabelling of a K33 embedding: `img[i]` is the vertex playing `NAMES[i]`.
pub(crate) struct Named<'a> {
    emb: &'a SubdivisionEmbedding,
    img: [Label; 6],
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// All 72 relabellings of a K33 embedding.
pub(crate) fn relabelings(emb: &SubdivisionEmbedding) -> Vec<Named<'_>> {
    let e = &emb.essential;
    let mut out = Vec::with_capacity(72);
    for swap in [false, true] {
        let (l, r) = if swap { (3, 0) } else { (0, 3) };
        for pl in PERMS3 {
            for pr in PERMS3 {
                let img = [
                    e[l + pl[0]].clone(),
                    e[l + pl[1]].clone(),
                    e[l + pl[2]].clone(),
                    e[r + pr[0]].clone(),
                    e[r + pr[1]].clone(),
                    e[r + pr[2]].clone(),
                ];
                out.push(Named { emb, img });
            }
        }
    }
    out
}

fn slot(c: char) -> usize {
    NAMES.iter().position(|&n| n == c).expect("letter of a K33 vertex")
}

impl<'a> Named<'a> {
    pub fn get(&self, c: char) -> &Label {
        &self.img[slot(c)]
    }

    /// Branch from `p` to `q`.
    pub fn br(&self, p: char, q: char) -> Vec<Label> {
        self.emb.branch_between(self.get(p), self.get(q)).expect("K33 branch between opposite sides")
    }

    /// Index of `v` strictly inside the branch from `p` to `q`.
    pub fn inside(&self, v: &str, p: char, q: char) -> Option<usize> {
        let b = self.br(p, q);
        let i = b.iter().position(|x| x == v)?;
        (i > 0 && i + 1 < b.len()).then_some(i)
    }
}

/// Paths keyed by their (unordered) endpoints, served in either orientation.
#[derive(Default)]
pub(crate) struct PathBook {
    paths: HashMap<(Label, Label), Vec<Label>>,
}

impl PathBook {
    pub fn add(&mut self, path: Vec<Label>) {
        let key = (path[0].clone(), path[path.len() - 1].clone());
        self.paths.insert(key, path);
    }

    pub fn get(&self, u: &Label, w: &Label) -> Option<Vec<Label>> {
        if let Some(p) = self.paths.get(&(u.clone(), w.clone())) {
            return Some(p.clone());
        }
        self.paths.get(&(w.clone(), u.clone())).map(|p| p.iter().rev().cloned().collect())
    }

    /// K33 embedding with the given sides, using the stored paths.
    pub fn k33(&self, left: [&Label; 3], right: [&Label; 3]) -> Result<SubdivisionEmbedding> {
        let ess = left.iter().chain(right.iter()).map(|l| (*l).clone()).collect();
        SubdivisionEmbedding::from_lookup(PatternId::K33, ess, |u, w| self.get(u, w))
    }
}

/// Concatenates paths that share their junction vertices.
pub(crate) fn join(parts: &[&[Label]]) -> Vec<Label> {
    let mut out: Vec<Label> = Vec::new();
    for part in parts {
        if part.is_empty() {
            continue;
        }
        if out.last() == part.first() {
            out.extend_from_slice(&part[1..]);
        } else {
            out.extend_from_slice(part);
        }
    }
    out
}

pub(crate) fn rev(p: &[Label]) -> Vec<Label> {
    p.iter().rev().cloned().collect()
}
