//! Finite multigraphs with loops and parallel edges.
//!
//! Vertices and edges are addressed by their position in declaration order;
//! names only matter at the I/O boundary. All traversals visit vertices and
//! edges in declaration order so every result is deterministic.

mod cycles;
pub mod io;
mod metric;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cycles::{enumerate_cycles, min_cycle_hits, Cycle, DEFAULT_CYCLE_CAP};
pub use metric::{rescale_to_integer_lengths, subdivide_uniform, MetricMultigraph, Subdivision};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// The endpoint opposite `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

/// One end of a non-loop edge as seen from a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub edge: usize,
    pub neighbor: usize,
}

/// A connected multigraph. Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    // non-loop incidences in CSR layout, edge declaration order within a vertex
    offsets: Vec<usize>,
    incidences: Vec<Incidence>,
    loops: Vec<usize>,
}

impl MultiGraph {
    /// Builds a graph from vertex names and `(edge id, end, end)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |edge: &str, v: &str| {
            vertex_index.get(v).copied().ok_or_else(|| Error::UnknownEndpoint {
                edge: edge.to_string(),
                vertex: v.to_string(),
            })
        };
        let mut indexed = Vec::new();
        for (id, a, b) in edges {
            let ends = (lookup(&id, &a)?, lookup(&id, &b)?);
            indexed.push(Edge { id, ends });
        }
        Self::from_parts(vertices, vertex_index, indexed)
    }

    /// Convenience constructor for literals in tests and examples.
    ///
    /// ```
    /// use chipfire::graph::MultiGraph;
    /// let path = MultiGraph::from_str_edges(&["u", "v"], &[("e", "u", "v")]).unwrap();
    /// assert_eq!(path.edge_count(), 1);
    /// ```
    pub fn from_str_edges(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(id, a, b)| (id.to_string(), a.to_string(), b.to_string())),
        )
    }

    pub(crate) fn from_indexed(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        Self::from_parts(vertices, vertex_index, edges)
    }

    fn from_parts(
        vertices: Vec<String>,
        vertex_index: HashMap<String, usize>,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        let n = vertices.len();
        let mut seen = HashMap::with_capacity(edges.len());
        let mut degree = vec![0usize; n];
        let mut loops = vec![0usize; n];
        for (i, e) in edges.iter().enumerate() {
            if seen.insert(e.id.as_str(), i).is_some() {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
            if e.ends.0 >= n || e.ends.1 >= n {
                return Err(Error::UnknownEndpoint {
                    edge: e.id.clone(),
                    vertex: format!("#{}", e.ends.0.max(e.ends.1)),
                });
            }
            if e.is_loop() {
                loops[e.ends.0] += 1;
            } else {
                degree[e.ends.0] += 1;
                degree[e.ends.1] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut incidences = vec![Incidence { edge: 0, neighbor: 0 }; offsets[n]];
        for (i, e) in edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            let (a, b) = e.ends;
            incidences[fill[a]] = Incidence { edge: i, neighbor: b };
            fill[a] += 1;
            incidences[fill[b]] = Incidence { edge: i, neighbor: a };
            fill[b] += 1;
        }
        let graph = MultiGraph {
            vertices,
            vertex_index,
            edges,
            offsets,
            incidences,
            loops,
        };
        if !graph.is_connected_without(&[]) {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Non-loop incidences of `v`; a parallel class shows up once per edge.
    pub fn incidences(&self, v: usize) -> &[Incidence] {
        &self.incidences[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.loops[v]
    }

    /// Valence of `v` with each loop counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incidences(v).len() + 2 * self.loops[v]
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.degree(v) == 3)
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l > 0)
    }

    /// Breadth-first distances from `source`, ignoring loops.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for inc in self.incidences(v) {
                if dist[inc.neighbor] == usize::MAX {
                    dist[inc.neighbor] = dist[v] + 1;
                    queue.push_back(inc.neighbor);
                }
            }
        }
        dist
    }

    pub(crate) fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for inc in self.incidences(v) {
                if !seen[inc.neighbor] && !removed.contains(&inc.edge) {
                    seen[inc.neighbor] = true;
                    reached += 1;
                    stack.push(inc.neighbor);
                }
            }
        }
        reached == n
    }

    /// Same graph with vertices listed in a new order: vertex `v` of `self`
    /// becomes position `order.iter().position(|&x| x == v)`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.vertex_count();
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let mut new_pos = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            new_pos[v] = pos;
        }
        let vertices = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                ends: (new_pos[e.ends.0], new_pos[e.ends.1]),
            })
            .collect();
        Self::from_indexed(vertices, edges)
    }
}

/// First Betti number `|E| - |V| + 1`.
pub fn genus(g: &MultiGraph) -> usize {
    g.edge_count() + 1 - g.vertex_count()
}

/// Length of a shortest cycle, or `Infinite` on a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(n) => Some(n),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => f.write_str("Infinite"),
        }
    }
}

/// Shortest cycle length. Loops give 1, parallel edges 2, otherwise a
/// breadth-first search from every vertex.
pub fn girth(g: &MultiGraph) -> Girth {
    if g.has_loops() {
        return Girth::Finite(1);
    }
    let n = g.vertex_count();
    for v in 0..n {
        let mut neighbors: Vec<usize> = g.incidences(v).iter().map(|i| i.neighbor).collect();
        neighbors.sort_unstable();
        if neighbors.windows(2).any(|w| w[0] == w[1]) {
            return Girth::Finite(2);
        }
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    for source in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] >= best {
                break;
            }
            for inc in g.incidences(v) {
                let w = inc.neighbor;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_edge[w] = inc.edge;
                    queue.push_back(w);
                } else if inc.edge != parent_edge[v] {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// The two colour classes of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
}

impl Bipartition {
    pub fn is_class(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s == self.black || s == self.white
    }
}

/// Two-colours the graph, the first vertex black. `None` when some closed
/// walk is odd (any loop included).
pub fn bipartition(g: &MultiGraph) -> Option<Bipartition> {
    if g.has_loops() {
        return None;
    }
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    color[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for inc in g.incidences(v) {
            let w = inc.neighbor;
            if color[w] == u8::MAX {
                color[w] = 1 - color[v];
                queue.push_back(w);
            } else if color[w] == color[v] {
                return None;
            }
        }
    }
    let (black, white) = (0..n).partition(|&v| color[v] == 0);
    Some(Bipartition { black, white })
}

/// Minimum number of edges whose removal disconnects the graph, found by
/// trying every edge subset of size 1, 2, ... in turn.
pub fn edge_connectivity(g: &MultiGraph) -> Result<usize> {
    if g.vertex_count() < 2 {
        return Err(Error::SingleVertex);
    }
    let candidates: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edges[e].is_loop())
        .collect();
    // removing every edge at a vertex always works, so this terminates by min degree
    let bound = (0..g.vertex_count())
        .map(|v| g.incidences(v).len())
        .min()
        .unwrap_or(0);
    for k in 1..=bound {
        let mut chosen = Vec::with_capacity(k);
        if disconnecting_subset(g, &candidates, 0, k, &mut chosen) {
            return Ok(k);
        }
    }
    Ok(bound)
}

fn disconnecting_subset(
    g: &MultiGraph,
    candidates: &[usize],
    start: usize,
    k: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == k {
        return !g.is_connected_without(chosen);
    }
    for i in start..candidates.len() {
        chosen.push(candidates[i]);
        if disconnecting_subset(g, candidates, i + 1, k, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
