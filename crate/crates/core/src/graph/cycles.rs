use serde::Serialize;

use super::{Girth, MultiGraph};
use crate::error::{Error, Result};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A simple cycle: `vertices[i]` and `vertices[i + 1]` (cyclically) are
/// joined by `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks the closed-walk structure against `g`.
    pub fn is_valid_in(&self, g: &MultiGraph) -> bool {
        let k = self.vertices.len();
        if k == 0 || k != self.edges.len() {
            return false;
        }
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut es = self.edges.clone();
        es.sort_unstable();
        es.dedup();
        if vs.len() != k || es.len() != k {
            return false;
        }
        (0..k).all(|i| {
            let e = &g.edges()[self.edges[i]];
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            e.ends == (a, b) || e.ends == (b, a)
        })
    }
}

/// Every simple cycle exactly once, loops and parallel-edge digons included.
///
/// Each cycle is reported from its smallest vertex, leaving through the
/// smaller of its two edges at that vertex. Fails instead of truncating
/// once more than `cap` cycles have been found.
pub fn enumerate_cycles(g: &MultiGraph, cap: usize) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<Cycle>, c: Cycle| {
        out.push(c);
        if out.len() > cap {
            Err(Error::CapExceeded {
                what: "cycle",
                count: out.len() as u128,
                cap: cap as u128,
            })
        } else {
            Ok(())
        }
    };
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            push(&mut out, Cycle { vertices: vec![e.ends.0], edges: vec![i] })?;
        }
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for start in 0..n {
        let mut search = Search {
            g,
            start,
            on_path: &mut on_path,
            vertices: vec![start],
            edges: Vec::new(),
        };
        search.on_path[start] = true;
        search.extend(start, &mut |c| push(&mut out, c))?;
        on_path[start] = false;
    }
    Ok(out)
}

struct Search<'a> {
    g: &'a MultiGraph,
    start: usize,
    on_path: &'a mut Vec<bool>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize, emit: &mut dyn FnMut(Cycle) -> Result<()>) -> Result<()> {
        for inc in self.g.incidences(v) {
            let w = inc.neighbor;
            if w == self.start {
                if let Some(&first) = self.edges.first() {
                    if inc.edge != first && first < inc.edge {
                        let mut edges = self.edges.clone();
                        edges.push(inc.edge);
                        emit(Cycle { vertices: self.vertices.clone(), edges })?;
                    }
                }
            } else if w > self.start && !self.on_path[w] {
                self.on_path[w] = true;
                self.vertices.push(w);
                self.edges.push(inc.edge);
                self.extend(w, emit)?;
                self.vertices.pop();
                self.edges.pop();
                self.on_path[w] = false;
            }
        }
        Ok(())
    }
}

/// Smallest number of vertices of `set` on any cycle of `g`.
pub fn min_cycle_hits(g: &MultiGraph, set: &[usize], cap: usize) -> Result<Girth> {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        member[v] = true;
    }
    Ok(enumerate_cycles(g, cap)?
        .iter()
        .map(|c| c.vertices.iter().filter(|&&v| member[v]).count())
        .min()
        .map_or(Girth::Infinite, Girth::Finite))
}
