use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// A set of pairwise disjoint edges, stored as sorted `(u, v)` pairs with `u < v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl TryFrom<Vec<(usize, usize)>> for Matching {
    type Error = Error;
    fn try_from(edges: Vec<(usize, usize)>) -> Result<Matching> {
        Matching::new(edges)
    }
}

impl From<Matching> for Vec<(usize, usize)> {
    fn from(m: Matching) -> Self {
        m.edges
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching{:?}", self.edges)
    }
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Matching> {
        let mut norm: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        norm.sort_unstable();
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &norm {
            if u == v {
                return Err(Error::InvalidMatching(format!("loop at {u}")));
            }
            if v >= crate::vset::MAX_VERTICES {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: crate::vset::MAX_VERTICES,
                });
            }
            if seen.contains(u) || seen.contains(v) {
                return Err(Error::InvalidMatching(format!(
                    "edges of {norm:?} are not pairwise disjoint"
                )));
            }
            seen.insert(u);
            seen.insert(v);
        }
        Ok(Matching { edges: norm })
    }

    /// Like [`Matching::new`] but also checks that every edge belongs to `g`.
    pub fn in_graph(g: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Matching> {
        let m = Matching::new(edges)?;
        if let Some(&(u, v)) = m.edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            return Err(Error::InvalidMatching(format!("{{{u}, {v}}} is not an edge")));
        }
        Ok(m)
    }

    pub fn empty() -> Matching {
        Matching::default()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |s, &(u, v)| s.with(u).with(v))
    }

    /// The edge covering `v`, if any.
    pub fn edge_at(&self, v: usize) -> Option<(usize, usize)> {
        self.edges.iter().copied().find(|&(a, b)| a == v || b == v)
    }

    /// Replaces `old` by `new`. The result is re-validated.
    pub fn swap_edge(&self, old: (usize, usize), new: (usize, usize)) -> Result<Matching> {
        let old = (old.0.min(old.1), old.0.max(old.1));
        Matching::new(
            self.edges
                .iter()
                .copied()
                .filter(|&e| e != old)
                .chain(std::iter::once(new)),
        )
    }

    pub fn without_edge(&self, e: (usize, usize)) -> Matching {
        let e = (e.0.min(e.1), e.0.max(e.1));
        Matching {
            edges: self.edges.iter().copied().filter(|&f| f != e).collect(),
        }
    }

    /// Relabels every vertex through `map`.
    pub fn relabel(&self, map: &[usize]) -> Matching {
        Matching::new(self.edges.iter().map(|&(u, v)| (map[u], map[v])))
            .expect("relabeling by an injection keeps a matching")
    }
}

/// All matchings of size exactly `k`, in lexicographic order of their sorted
/// edge lists.
pub fn enumerate_matchings(g: &Graph, k: usize) -> Vec<Matching> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(k);
    fn rec(
        edges: &[(usize, usize)],
        start: usize,
        used: VertexSet,
        k: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) {
        if chosen.len() == k {
            out.push(Matching {
                edges: chosen.clone(),
            });
            return;
        }
        let remaining = k - chosen.len();
        for i in start..edges.len() {
            if edges.len() - i < remaining {
                break;
            }
            let (u, v) = edges[i];
            if used.contains(u) || used.contains(v) {
                continue;
            }
            chosen.push((u, v));
            rec(edges, i + 1, used.with(u).with(v), k, chosen, out);
            chosen.pop();
        }
    }
    rec(&edges, 0, VertexSet::EMPTY, k, &mut chosen, &mut out);
    out
}

pub fn matching_number(g: &Graph) -> usize {
    fn rec(g: &Graph, s: VertexSet) -> usize {
        let Some(v) = s.min() else { return 0 };
        let rest = s.without(v);
        let mut best = rec(g, rest);
        for w in g.neighbors(v).intersection(rest).iter() {
            best = best.max(1 + rec(g, rest.without(w)));
        }
        best
    }
    if g.n() <= MatchingTable::MAX_VERTICES {
        return MatchingTable::new(g).nu(g.vertices());
    }
    rec(g, g.vertices())
}

/// `ν(G[S])` for every vertex subset `S`.
pub struct MatchingTable {
    nu: Vec<u8>,
}

impl MatchingTable {
    pub const MAX_VERTICES: usize = 24;

    pub fn new(g: &Graph) -> MatchingTable {
        let n = g.n();
        assert!(
            n <= Self::MAX_VERTICES,
            "matching table needs at most {} vertices",
            Self::MAX_VERTICES
        );
        let mut nu = vec![0u8; 1usize << n];
        for mask in 1u64..(1u64 << n) {
            let s = VertexSet::from_bits(mask);
            let v = s.min().unwrap();
            let rest = s.without(v);
            let mut best = nu[rest.bits() as usize];
            for w in g.neighbors(v).intersection(rest).iter() {
                best = best.max(1 + nu[rest.without(w).bits() as usize]);
            }
            nu[mask as usize] = best;
        }
        MatchingTable { nu }
    }

    #[inline]
    pub fn nu(&self, s: VertexSet) -> usize {
        self.nu[s.bits() as usize] as usize
    }
}
