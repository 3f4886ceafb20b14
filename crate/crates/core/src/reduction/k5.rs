//! Converting a K5 subdivision into a K33 subdivision, in the graph itself or
//! in its double over one essential vertex.

use super::named::{join, rev, PathBook};
use crate::embedding::{Position, SubdivisionEmbedding};
use crate::error::{Error, Result};
use crate::graph::{DoublingResult, Label, SimplicialGraph};
use crate::pattern::PatternId;
use crate::search::{shortest_k5, SearchOptions};

/// Outcome of [`k5_to_k33`].
#[derive(Clone, Debug)]
pub struct K5Conversion {
    /// The shortest K5 subdivision the conversion started from.
    pub k5: SubdivisionEmbedding,
    /// The K33 subdivision; it lives in `doubled.graph` when a double was needed.
    pub embedding: SubdivisionEmbedding,
    pub doubled: Option<DoublingResult>,
}

impl K5Conversion {
    pub fn graph<'a>(&'a self, g: &'a SimplicialGraph) -> &'a SimplicialGraph {
        self.doubled.as_ref().map_or(g, |d| &d.graph)
    }
}

/// Given a K5 subdivision of `g`, produces a K33 subdivision of `g` or of the
/// double of `g` over one essential vertex (second copies tagged `tag`).
///
/// The supplied embedding only has to be valid; it is replaced by a shortest
/// K5 subdivision before the construction.
pub fn k5_to_k33(g: &SimplicialGraph, emb: &SubdivisionEmbedding, tag: u32, opts: &SearchOptions) -> Result<K5Conversion> {
    g.require_triangle_free()?;
    if emb.pattern != PatternId::K5 || emb.validate(g).is_err() {
        return Err(Error::NoK5);
    }
    let k5 = shortest_k5(g, opts)?.ok_or(Error::NoK5)?;
    if let Some(embedding) = essential_to_far_branch(g, &k5)? {
        return Ok(K5Conversion { k5, embedding, doubled: None });
    }
    let (d, embedding) = double_over_nonadjacent(g, &k5, tag)?;
    embedding
        .validate(&d.graph)
        .map_err(|e| Error::InternalInvariantViolation(format!("K5 double construction: {e}")))?;
    Ok(K5Conversion { k5, embedding, doubled: Some(d) })
}

fn br(k5: &SubdivisionEmbedding, p: &Label, q: &Label) -> Vec<Label> {
    k5.branch_between(p, q).expect("K5 branch between essentials")
}

/// An essential vertex `a` adjacent to an interior vertex `f` of a branch
/// `[d,e]` not ending at `a` gives sides `{a,e,d}` and `{b,c,f}`.
fn essential_to_far_branch(g: &SimplicialGraph, k5: &SubdivisionEmbedding) -> Result<Option<SubdivisionEmbedding>> {
    let mut ess = k5.essential.clone();
    ess.sort();
    for a in &ess {
        for f in g.neighbors(a)? {
            let Some(Position::Interior { branch, index }) = k5.locate(f) else { continue };
            let path = &k5.branches[branch];
            let (d, e) = (&path[0], &path[path.len() - 1]);
            if d == a || e == a {
                continue;
            }
            let rest: Vec<&Label> = ess.iter().filter(|s| *s != a && *s != d && *s != e).collect();
            let (b, c) = (rest[0], rest[1]);
            let mut book = PathBook::default();
            book.add(br(k5, a, b));
            book.add(br(k5, a, c));
            book.add(vec![a.clone(), f.clone()]);
            book.add(br(k5, e, b));
            book.add(br(k5, e, c));
            book.add(path[..=index].to_vec());
            book.add(br(k5, d, b));
            book.add(br(k5, d, c));
            book.add(path[index..].to_vec());
            let k33 = book.k33([a, e, d], [b, c, f])?;
            if k33.validate(g).is_ok() {
                return Ok(Some(k33));
            }
        }
    }
    Ok(None)
}

/// Doubles over the least essential `a` with two non-adjacent essentials
/// `b < c`; the result has sides `{b, d, c'}` and `{c, e, b'}`.
fn double_over_nonadjacent(g: &SimplicialGraph, k5: &SubdivisionEmbedding, tag: u32) -> Result<(DoublingResult, SubdivisionEmbedding)> {
    let mut ess = k5.essential.clone();
    ess.sort();
    for a in &ess {
        let far: Vec<&Label> = ess.iter().filter(|s| *s != a && !g.has_edge(a, s)).collect();
        if far.len() < 2 {
            continue;
        }
        let (b, c) = (far[0], far[1]);
        let rest: Vec<&Label> = ess.iter().filter(|s| *s != a && *s != b && *s != c).collect();
        let (d, e) = (rest[0], rest[1]);
        let dbl = g.double_tagged(a, tag)?;
        let copy = |p: &[Label]| -> Vec<Label> { p.iter().map(|s| dbl.second_copy(s).to_string()).collect() };
        // `toward(p)` runs from p to the vertex next to a
        let toward = |p: &Label| -> Vec<Label> {
            let path = br(k5, p, a);
            path[..path.len() - 1].to_vec()
        };
        let (b2, c2) = (dbl.second_copy(b).to_string(), dbl.second_copy(c).to_string());
        let mut book = PathBook::default();
        book.add(br(k5, b, c));
        book.add(br(k5, b, e));
        book.add(br(k5, d, c));
        book.add(br(k5, d, e));
        book.add(join(&[&toward(b), &rev(&copy(&toward(b)))]));
        book.add(join(&[&toward(d), &rev(&copy(&toward(d))), &copy(&br(k5, d, b))]));
        book.add(join(&[&copy(&toward(c)), &rev(&toward(c))]));
        book.add(join(&[&copy(&br(k5, c, e)), &copy(&toward(e)), &rev(&toward(e))]));
        book.add(copy(&br(k5, c, b)));
        let k33 = book.k33([b, d, &c2], [c, e, &b2])?;
        return Ok((dbl, k33));
    }
    Err(Error::InternalInvariantViolation("every essential vertex has three adjacent essentials".into()))
}
