//! Simple undirected graphs on indexed vertices.

mod families;
mod io;
mod matching;
mod whisker;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

pub use families::{
    all_connected, complete, complete_bipartite, connected_classes, cycle, generate_family,
    path, star, trees, Family, MAX_FAMILY_VERTICES,
};
pub use io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
pub use matching::{enumerate_matchings, matching_number, Matching, MatchingTable};
pub use whisker::WhiskerGraph;

/// Natural number or infinity. No arithmetic is defined on purpose:
/// callers must unpack [`ExtNat::Finite`] explicitly.
/// Serialized as a number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ExtNatRepr", into = "ExtNatRepr")]
pub enum ExtNat {
    Finite(usize),
    Infinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtNatRepr {
    Finite(usize),
    Word(String),
}

impl From<ExtNat> for ExtNatRepr {
    fn from(v: ExtNat) -> Self {
        match v {
            ExtNat::Finite(k) => ExtNatRepr::Finite(k),
            ExtNat::Infinity => ExtNatRepr::Word("inf".into()),
        }
    }
}

impl TryFrom<ExtNatRepr> for ExtNat {
    type Error = String;
    fn try_from(r: ExtNatRepr) -> std::result::Result<Self, String> {
        match r {
            ExtNatRepr::Finite(k) => Ok(ExtNat::Finite(k)),
            ExtNatRepr::Word(w) if w == "inf" => Ok(ExtNat::Infinity),
            ExtNatRepr::Word(w) => Err(format!("expected a number or \"inf\", got `{w}`")),
        }
    }
}

impl ExtNat {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtNat::Infinity
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Graph> {
        let mut g = Graph::from_edges(r.n, &r.edges)?;
        if let Some(labels) = r.labels {
            g = g.with_labels(labels)?;
        }
        Ok(g)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            n: g.n,
            edges: g.edges(),
            labels: g.labels,
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::Precondition(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Open neighbourhood `N(S)`.
    pub fn open_neighborhood(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
    }

    /// Closed neighbourhood `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, s: VertexSet) -> VertexSet {
        self.open_neighborhood(s).union(s)
    }

    /// Whether `s` spans no edge.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Whether `s` spans a clique.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    /// The induced subgraph `G[S]`, reindexed in increasing vertex order.
    /// Returns the graph and the map from new indices to old ones.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if let Some(bad) = s.max().filter(|&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let map = s.to_vec();
        let mut inv = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let mut adj = vec![VertexSet::EMPTY; map.len()];
        for (i, &v) in map.iter().enumerate() {
            adj[i] = self.adj[v].intersection(s).iter().map(|w| inv[w]).collect();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| map.iter().map(|&v| l[v].clone()).collect());
        Ok((
            Graph {
                n: map.len(),
                adj,
                labels,
            },
            map,
        ))
    }

    /// `G ∖ S` with the remaining vertices reindexed.
    pub fn delete_vertices(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        self.induced_subgraph(self.vertices().difference(s))
            .expect("complement of a vertex set is in range")
    }

    /// Same vertex indices, edges restricted to `keep` (other vertices become isolated).
    pub fn restrict(&self, keep: VertexSet) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                if keep.contains(v) {
                    self.adj[v].intersection(keep)
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n)
            .map(|v| all.difference(self.adj[v]).without(v))
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in 0..self.n {
            adj[perm[v]] = self.adj[v].relabel(perm);
        }
        Graph {
            n: self.n,
            adj,
            labels: None,
        }
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = self.open_neighborhood(frontier).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    /// Connected with exactly one cycle.
    pub fn is_unicyclic(&self) -> bool {
        self.is_connected() && self.n >= 3 && self.edge_count() == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        self.odd_girth().is_infinite()
    }

    fn bfs_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle.
    pub fn girth(&self) -> ExtNat {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            // BFS tree with parents; any non-tree edge closes a closed walk
            // through the root of length d(u) + d(v) + 1 containing a cycle,
            // and for the root on a shortest cycle the bound is attained.
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best.map_or(ExtNat::Infinity, ExtNat::Finite)
    }

    /// Length of a shortest odd cycle.
    pub fn odd_girth(&self) -> ExtNat {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let dist = self.bfs_from(root);
            for (u, v) in self.edges() {
                if let (Some(du), Some(dv)) = (dist[u], dist[v]) {
                    if du == dv {
                        let len = 2 * du + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best.map_or(ExtNat::Infinity, ExtNat::Finite)
    }

    /// Whether some triangle exists (an induced 3-cycle).
    pub fn has_triangle(&self) -> bool {
        self.edges()
            .iter()
            .any(|&(u, v)| !self.adj[u].is_disjoint(self.adj[v]))
    }
}

/// Summary statistics of a base graph `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub girth: ExtNat,
    pub odd_girth: ExtNat,
    pub matching_number: usize,
}

impl GraphStats {
    pub fn of(h: &Graph) -> GraphStats {
        GraphStats {
            n: h.n(),
            girth: h.girth(),
            odd_girth: h.odd_girth(),
            matching_number: matching_number(h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_examples() {
        assert_eq!(cycle(6).unwrap().girth(), ExtNat::Finite(6));
        assert_eq!(path(5).unwrap().girth(), ExtNat::Infinity);
        assert_eq!(star(4).unwrap().girth(), ExtNat::Infinity);
        assert_eq!(complete(4).unwrap().girth(), ExtNat::Finite(3));
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(cycle(5).unwrap().odd_girth(), ExtNat::Finite(5));
        assert_eq!(cycle(6).unwrap().odd_girth(), ExtNat::Infinity);
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(paw.odd_girth(), ExtNat::Finite(3));
        assert_eq!(complete_bipartite(3, 3).unwrap().odd_girth(), ExtNat::Infinity);
    }

    #[test]
    fn extended_naturals_serialize_as_numbers_or_inf() {
        assert_eq!(serde_json::to_string(&ExtNat::Finite(4)).unwrap(), "4");
        assert_eq!(serde_json::to_string(&ExtNat::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<ExtNat>("\"inf\"").unwrap(), ExtNat::Infinity);
        assert_eq!(serde_json::from_str::<ExtNat>("7").unwrap(), ExtNat::Finite(7));
        assert!(serde_json::from_str::<ExtNat>("\"many\"").is_err());
    }

    #[test]
    fn invalid_edges_rejected() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(Error::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = cycle(5).unwrap();
        let (p, map) = c5.induced_subgraph(VertexSet::from_slice(&[0, 1, 2])).unwrap();
        assert_eq!(p, path(3).unwrap());
        assert_eq!(map, vec![0, 1, 2]);
        let (same, _) = c5.induced_subgraph(c5.vertices()).unwrap();
        assert_eq!(same, c5);
        let (empty, map) = c5.induced_subgraph(VertexSet::EMPTY).unwrap();
        assert_eq!(empty.n(), 0);
        assert!(map.is_empty());
        assert!(c5.induced_subgraph(VertexSet::singleton(5)).is_err());
    }

    #[test]
    fn serde_round_trip_keeps_edges() {
        let g = cycle(4).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn stats_invariants() {
        for g in connected_classes(5).unwrap() {
            let s = GraphStats::of(&g);
            assert!(s.girth <= s.odd_girth);
            if let ExtNat::Finite(l) = s.odd_girth {
                assert!(l % 2 == 1 && l >= 3);
            }
            if s.girth.is_infinite() {
                assert!(s.odd_girth.is_infinite());
            }
        }
    }
}
