use std::collections::HashSet;

use num_traits::{One, Zero};

use super::{Edge, MultiGraph};
use crate::error::{Error, Result};
use crate::rational::{format_rational, integer_scale, Rational};

/// A multigraph with a positive rational length on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricMultigraph {
    graph: MultiGraph,
    lengths: Vec<Rational>,
}

impl MetricMultigraph {
    pub fn new(graph: MultiGraph, lengths: Vec<Rational>) -> Result<Self> {
        if lengths.len() != graph.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "{} lengths for {} edges",
                lengths.len(),
                graph.edge_count()
            )));
        }
        for (e, len) in graph.edges().iter().zip(&lengths) {
            if *len <= Rational::zero() {
                return Err(Error::NonPositiveLength {
                    edge: e.id.clone(),
                    length: format_rational(len),
                });
            }
        }
        Ok(MetricMultigraph { graph, lengths })
    }

    /// Every edge of length one.
    pub fn unit(graph: MultiGraph) -> Self {
        let lengths = vec![Rational::one(); graph.edge_count()];
        MetricMultigraph { graph, lengths }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn length(&self, edge: usize) -> Rational {
        self.lengths[edge]
    }

    /// All lengths multiplied by `factor`, which must be positive.
    pub fn scaled(&self, factor: Rational) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.lengths.iter().map(|l| l * factor).collect(),
        )
    }

    pub fn has_integer_lengths(&self) -> bool {
        self.lengths.iter().all(|l| l.is_integer())
    }
}

/// Scales to the canonical integer metric: the least common multiple of
/// the denominators divided by the gcd of the cleared numerators.
pub fn rescale_to_integer_lengths(m: &MetricMultigraph) -> (MetricMultigraph, Rational) {
    let factor = integer_scale(m.lengths());
    let scaled = MetricMultigraph {
        graph: m.graph.clone(),
        lengths: m.lengths.iter().map(|l| l * factor).collect(),
    };
    (scaled, factor)
}

/// Result of replacing every edge by a path of unit edges.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: MultiGraph,
    /// `embedding[v]` is the image of original vertex `v`. Originals keep
    /// their positions, fresh vertices follow them.
    pub embedding: Vec<usize>,
    /// For every original edge, the interior vertices from the first end to
    /// the second.
    pub interiors: Vec<Vec<usize>>,
}

/// Replaces an edge of length `l` by a path of `l` unit edges through
/// `l - 1` fresh vertices named `"{edge}.{k}"`.
pub fn subdivide_uniform(m: &MetricMultigraph) -> Result<Subdivision> {
    let g = m.graph();
    let mut names: Vec<String> = g.vertex_names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut edge_ids: HashSet<String> = g.edges().iter().map(|e| e.id.clone()).collect();
    let mut edges = Vec::new();
    let mut interiors = Vec::with_capacity(g.edge_count());
    for (e, len) in g.edges().iter().zip(m.lengths()) {
        if !len.is_integer() {
            return Err(Error::NonIntegerLength {
                edge: e.id.clone(),
                length: format_rational(len),
            });
        }
        let steps = len.to_integer() as usize;
        let mut path = vec![e.ends.0];
        let mut interior = Vec::with_capacity(steps - 1);
        for k in 1..steps {
            let mut name = format!("{}.{k}", e.id);
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            interior.push(names.len());
            path.push(names.len());
            names.push(name);
        }
        path.push(e.ends.1);
        for (k, pair) in path.windows(2).enumerate() {
            let id = if steps == 1 {
                e.id.clone()
            } else {
                let mut id = format!("{}#{}", e.id, k + 1);
                while edge_ids.contains(&id) {
                    id.push('\'');
                }
                edge_ids.insert(id.clone());
                id
            };
            edges.push(Edge { id, ends: (pair[0], pair[1]) });
        }
        interiors.push(interior);
    }
    let embedding = (0..g.vertex_count()).collect();
    let graph = MultiGraph::from_indexed(names, edges)?;
    Ok(Subdivision { graph, embedding, interiors })
}
