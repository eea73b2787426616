use serde::{Deserialize, Serialize};

use super::{Graph, GraphStats};
use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

/// `W(H)`: the base graph `H` on `0..n` plus a pendant edge `{i, n+i}` at
/// every base vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Graph", into = "Graph")]
pub struct WhiskerGraph {
    base: Graph,
    graph: Graph,
}

impl TryFrom<Graph> for WhiskerGraph {
    type Error = Error;
    fn try_from(base: Graph) -> Result<WhiskerGraph> {
        WhiskerGraph::new(base)
    }
}

impl From<WhiskerGraph> for Graph {
    fn from(w: WhiskerGraph) -> Graph {
        w.base
    }
}

impl WhiskerGraph {
    pub fn new(base: Graph) -> Result<WhiskerGraph> {
        let n = base.n();
        if 2 * n > MAX_VERTICES {
            return Err(Error::TooManyVertices(2 * n));
        }
        let mut edges = base.edges();
        edges.extend((0..n).map(|i| (i, n + i)));
        let mut graph = Graph::from_edges(2 * n, &edges)?;
        if let Some(names) = base.labels() {
            let mut labels: Vec<String> = names.to_vec();
            labels.extend(names.iter().map(|s| format!("{s}'")));
            graph = graph.with_labels(labels)?;
        } else {
            let labels = (1..=n)
                .map(|i| format!("x{i}"))
                .chain((1..=n).map(|i| format!("y{i}")))
                .collect();
            graph = graph.with_labels(labels)?;
        }
        Ok(WhiskerGraph { base, graph })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of base vertices.
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn y(&self, i: usize) -> usize {
        self.n() + i
    }

    pub fn is_whisker_vertex(&self, v: usize) -> bool {
        v >= self.n()
    }

    /// The other end of the whisker edge at `v`.
    pub fn partner(&self, v: usize) -> usize {
        let n = self.n();
        if v < n {
            v + n
        } else {
            v - n
        }
    }

    pub fn partners(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.partner(v)).collect()
    }

    pub fn base_vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn whisker_vertices(&self) -> VertexSet {
        VertexSet::full(2 * self.n()).difference(self.base_vertices())
    }

    pub fn is_whisker_edge(&self, (u, v): (usize, usize)) -> bool {
        self.partner(u) == v
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats::of(&self.base)
    }

    /// `W(H ∖ x_i)` together with the map from old vertex ids of `W(H)` to
    /// new ones (`None` for the removed pair).
    pub fn delete_pair(&self, i: usize) -> Result<(WhiskerGraph, Vec<Option<usize>>)> {
        let n = self.n();
        if i >= n {
            return Err(Error::VertexOutOfRange { vertex: i, n });
        }
        let (base, _) = self.base.delete_vertices(VertexSet::singleton(i));
        let reduced = WhiskerGraph::new(base)?;
        let m = n - 1;
        let map = (0..2 * n)
            .map(|v| {
                let b = v % n;
                if b == i {
                    return None;
                }
                let nb = if b < i { b } else { b - 1 };
                Some(if v < n { nb } else { m + nb })
            })
            .collect();
        Ok((reduced, map))
    }
}
