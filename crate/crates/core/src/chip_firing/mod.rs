//! Chip-firing on multigraphs: set firing, reduced divisors, linear
//! equivalence and Baker–Norine rank.
//!
//! Loops never move chips. Each parallel edge carries its own chip when an
//! endpoint fires.

mod rank;
mod reduce;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{MetricMultigraph, MultiGraph};

pub use rank::{
    discretize, rank_discrete, rank_discrete_with, rank_metric, DiscreteModel, LowerWitness,
    MetricRank, RankOptions, RankResult, UpperWitness, DEFAULT_PROBE_CAP,
};
pub use reduce::{
    dhar_unburnt, effective_in_class, effective_in_class_at, is_equivalent, is_equivalent_at,
    is_reduced, reduce,
};

/// Fires every vertex of `set` once: along each non-loop edge leaving the
/// set one chip moves out.
pub fn fire_set(g: &MultiGraph, d: &Divisor, set: &[usize]) -> Result<Divisor> {
    d.check(g)?;
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        inside[v] = true;
    }
    match inside.iter().filter(|&&b| b).count() {
        0 => return Err(Error::IllegalFiringSet("empty set")),
        k if k == g.vertex_count() => return Err(Error::IllegalFiringSet("whole vertex set")),
        _ => {}
    }
    let mut out = d.clone();
    for e in g.edges() {
        let (a, b) = e.ends;
        match (inside[a], inside[b]) {
            (true, false) => {
                out[a] -= 1;
                out[b] += 1;
            }
            (false, true) => {
                out[b] -= 1;
                out[a] += 1;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// `deg(v) - 2` at every vertex, loops counted twice.
pub fn canonical_divisor(g: &MultiGraph) -> Divisor {
    Divisor::from_coefficients(
        (0..g.vertex_count())
            .map(|v| g.degree(v) as i64 - 2)
            .collect(),
    )
}

/// Sufficient test for `set` to be rank-determining: the closure of every
/// connected component of the metric graph minus `set` is a tree.
///
/// The check is combinatorial on the underlying graph since the metric plays
/// no role. A component is either a connected piece of vertices outside
/// `set` together with the edges hanging off it, or the open interior of an
/// edge with both ends in `set`.
pub fn certify_rank_determining(m: &MetricMultigraph, set: &[usize]) -> bool {
    let g = m.graph();
    let n = g.vertex_count();
    let mut in_set = vec![false; n];
    for &v in set {
        if v < n {
            in_set[v] = true;
        }
    }
    // interior of a loop based in the set closes up into a cycle
    if (0..n).any(|v| in_set[v] && g.loop_count(v) > 0) {
        return false;
    }
    let mut component = vec![usize::MAX; n];
    let mut marker = vec![usize::MAX; n];
    for start in 0..n {
        if in_set[start] || component[start] != usize::MAX {
            continue;
        }
        component[start] = start;
        let mut stack = vec![start];
        let (mut vertices, mut edges) = (1usize, 0usize);
        while let Some(v) = stack.pop() {
            edges += g.loop_count(v);
            for inc in g.incidences(v) {
                let w = inc.neighbor;
                if in_set[w] {
                    edges += 1;
                    if marker[w] != start {
                        marker[w] = start;
                        vertices += 1;
                    }
                } else {
                    // internal edges are seen from both ends
                    if v < w {
                        edges += 1;
                    }
                    if component[w] == usize::MAX {
                        component[w] = start;
                        vertices += 1;
                        stack.push(w);
                    }
                }
            }
        }
        if edges >= vertices {
            return false;
        }
    }
    true
}
