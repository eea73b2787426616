//! Even-connections with respect to a matching, the graphs `G^M` and `B_G(M)`,
//! the order on matchings used by the whisker shelling, and swap sets.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_matchings, Graph, Matching, WhiskerGraph};
use crate::matching_free::MonomialIdeal;
use crate::vset::VertexSet;

/// A walk `p_0, ..., p_{2r+1}` whose pairs `{p_{2k+1}, p_{2k+2}}` are distinct
/// edges of the matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenConnectionWitness {
    pub walk: Vec<usize>,
    pub used_edges: Vec<(usize, usize)>,
}

impl EvenConnectionWitness {
    /// Rechecks the witness against `g` and `m` from scratch.
    pub fn is_valid(&self, g: &Graph, m: &Matching) -> bool {
        let w = &self.walk;
        if w.len() < 4 || !w.len().is_multiple_of(2) {
            return false;
        }
        if !w.windows(2).all(|p| g.has_edge(p[0], p[1])) {
            return false;
        }
        let mut used: Vec<(usize, usize)> = Vec::new();
        for k in (1..w.len() - 1).step_by(2) {
            let e = (w[k].min(w[k + 1]), w[k].max(w[k + 1]));
            if !m.edges().contains(&e) || used.contains(&e) {
                return false;
            }
            used.push(e);
        }
        used == self.used_edges
    }

    pub fn reversed(&self) -> EvenConnectionWitness {
        let walk: Vec<usize> = self.walk.iter().rev().copied().collect();
        let used_edges = self.used_edges.iter().rev().copied().collect();
        EvenConnectionWitness { walk, used_edges }
    }
}

/// Searches for an even-connection between `u` and `v`.
///
/// States are `(vertex just reached through a matching edge, used edges)`;
/// every matching edge is used at most once, so the search is finite.
pub fn even_connected(
    g: &Graph,
    m: &Matching,
    u: usize,
    v: usize,
) -> Result<Option<EvenConnectionWitness>> {
    let supp = m.support();
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
        }
        if supp.contains(w) {
            return Err(Error::Precondition(format!(
                "vertex {w} lies in the support of the matching"
            )));
        }
    }
    if u == v {
        return Err(Error::Precondition("even-connection needs two distinct vertices".into()));
    }
    let edges = m.edges();
    let edge_index = |a: usize| edges.iter().position(|&(x, y)| x == a || y == a);
    let other = |(x, y): (usize, usize), a: usize| if x == a { y } else { x };

    // Parent links: state -> (previous state, entry vertex of the matching edge).
    type State = (usize, u64);
    let mut parent: HashMap<State, (Option<State>, usize)> = HashMap::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    for a in g.neighbors(u).intersection(supp).iter() {
        let i = edge_index(a).unwrap();
        let s = (other(edges[i], a), 1u64 << i);
        if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(s) {
            e.insert((None, a));
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let (b, used) = s;
        if g.has_edge(b, v) {
            let mut walk = vec![v];
            let mut cur = Some(s);
            while let Some(st) = cur {
                let (prev, entry) = parent[&st];
                walk.push(st.0);
                walk.push(entry);
                cur = prev;
            }
            walk.push(u);
            walk.reverse();
            let used_edges = (1..walk.len() - 1)
                .step_by(2)
                .map(|k| (walk[k].min(walk[k + 1]), walk[k].max(walk[k + 1])))
                .collect();
            return Ok(Some(EvenConnectionWitness { walk, used_edges }));
        }
        for a in g.neighbors(b).intersection(supp).iter() {
            let i = edge_index(a).unwrap();
            if used >> i & 1 == 1 {
                continue;
            }
            let t = (other(edges[i], a), used | 1 << i);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                e.insert((Some(s), a));
                queue.push_back(t);
            }
        }
    }
    Ok(None)
}

/// Edges of `G^M` in the original labels of `g`.
pub fn even_conn_edges(g: &Graph, m: &Matching) -> Vec<(usize, usize)> {
    let verts = g.vertices().difference(m.support());
    let vs = verts.to_vec();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if g.has_edge(a, b)
                || even_connected(g, m, a, b)
                    .expect("endpoints lie outside the support")
                    .is_some()
            {
                out.push((a, b));
            }
        }
    }
    out
}

/// `G^M` on the vertices outside `Supp(M)`, with the same vertex indices as
/// `g` (support vertices are left isolated).
pub fn even_conn_graph_same_labels(g: &Graph, m: &Matching) -> Graph {
    Graph::from_edges(g.n(), &even_conn_edges(g, m)).expect("edges come from g's range")
}

/// `G^M`, reindexed on `V(G) ∖ Supp(M)`. Returns the graph and the map from
/// new indices to vertices of `g`.
pub fn even_conn_graph(g: &Graph, m: &Matching) -> (Graph, Vec<usize>) {
    let full = even_conn_graph_same_labels(g, m);
    full.induced_subgraph(g.vertices().difference(m.support()))
        .expect("subset of the vertex range")
}

/// Whisker partners of the support of `m`, for matchings of base edges.
pub fn y_set(w: &WhiskerGraph, m: &Matching) -> VertexSet {
    w.partners(m.support())
}

fn require_base_edges(w: &WhiskerGraph, m: &Matching) -> Result<()> {
    for &(a, b) in m.edges() {
        if !w.base().vertices().contains(a) || !w.base().vertices().contains(b) {
            return Err(Error::Precondition(format!(
                "{{{a}, {b}}} is not an edge of the base graph"
            )));
        }
        if !w.base().has_edge(a, b) {
            return Err(Error::InvalidMatching(format!("{{{a}, {b}}} is not an edge")));
        }
    }
    Ok(())
}

/// `B_G(M) = G^M[Y(M)]`, reindexed on `Y(M)` in increasing order.
pub fn b_graph(w: &WhiskerGraph, m: &Matching) -> Result<(Graph, Vec<usize>)> {
    require_base_edges(w, m)?;
    let full = even_conn_graph_same_labels(w.graph(), m);
    full.induced_subgraph(y_set(w, m))
}

/// The order used on matchings of `G ∖ x_1`: families by number of whisker
/// edges, and inside a family either lexicographic or a seeded shuffle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingOrder {
    #[default]
    Lexicographic,
    Seeded(u64),
}

pub fn whisker_edge_count(w: &WhiskerGraph, m: &Matching) -> usize {
    m.edges().iter().filter(|&&e| w.is_whisker_edge(e)).count()
}

/// Key of the lexicographic order: whisker-edge count, then the sorted edge list.
pub fn matching_order_key(w: &WhiskerGraph, m: &Matching) -> (usize, Vec<(usize, usize)>) {
    (whisker_edge_count(w, m), m.edges().to_vec())
}

/// Sorts matchings into `≺` order.
pub fn sort_matchings(w: &WhiskerGraph, ms: &mut [Matching], order: MatchingOrder) {
    ms.sort_by_cached_key(|m| matching_order_key(w, m));
    if let MatchingOrder::Seeded(seed) = order {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start = 0;
        while start < ms.len() {
            let k = whisker_edge_count(w, &ms[start]);
            let mut end = start;
            while end < ms.len() && whisker_edge_count(w, &ms[end]) == k {
                end += 1;
            }
            ms[start..end].shuffle(&mut rng);
            start = end;
        }
    }
}

/// Position of every matching in a fixed `≺` order.
#[derive(Clone, Debug)]
pub struct MatchingRank {
    pub ordered: Vec<Matching>,
    rank: HashMap<Matching, usize>,
}

impl MatchingRank {
    pub fn new(ordered: Vec<Matching>) -> MatchingRank {
        let rank = ordered
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MatchingRank { ordered, rank }
    }

    pub fn rank(&self, m: &Matching) -> Option<usize> {
        self.rank.get(m).copied()
    }
}

/// Witness that `z` belongs to a swap set: replacing `replaced` by `{y, z}`
/// gives `replacement`, which comes earlier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapWitness {
    pub z: usize,
    pub y: usize,
    pub replaced: (usize, usize),
    pub replacement: Matching,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSet {
    pub matching: Matching,
    pub vertices: VertexSet,
    pub witnesses: Vec<SwapWitness>,
}

/// `S(M)` for a `(q−1)`-matching `M` of `G ∖ x1`, relative to `rank`.
pub fn swap_set(w: &WhiskerGraph, x1: usize, m: &Matching, rank: &MatchingRank) -> Result<SwapSet> {
    let g = w.graph();
    let own = rank
        .rank(m)
        .ok_or_else(|| Error::InvalidMatching(format!("{m:?} is not in the order")))?;
    let supp = m.support();
    let allowed = g.vertices().without(x1).difference(supp);
    let mut vertices = VertexSet::EMPTY;
    let mut witnesses = Vec::new();
    for &(a, b) in m.edges() {
        for y in [a, b] {
            for z in g.neighbors(y).intersection(allowed).iter() {
                let replacement = m.swap_edge((a, b), (y, z))?;
                let earlier = rank.rank(&replacement).is_some_and(|r| r < own);
                if earlier && !vertices.contains(z) {
                    vertices.insert(z);
                    witnesses.push(SwapWitness {
                        z,
                        y,
                        replaced: (a, b),
                        replacement,
                    });
                }
            }
        }
    }
    witnesses.sort_by_key(|s| s.z);
    Ok(SwapSet {
        matching: m.clone(),
        vertices,
        witnesses,
    })
}

/// Outcome of the colon-ideal comparison for one matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonCheck {
    pub colon: MonomialIdeal,
    pub edge_ideal: MonomialIdeal,
    pub all_quadratic: bool,
    pub equal: bool,
}

impl ColonCheck {
    pub fn holds(&self) -> bool {
        self.all_quadratic && self.equal
    }
}

/// Computes `(I(G)^{[q+1]} : ∏ Supp M)` by brute force and compares it with
/// `I(G^M)`.
pub fn colon_check(g: &Graph, m: &Matching) -> Result<ColonCheck> {
    if m.is_empty() {
        return Err(Error::Precondition("the matching must be nonempty".into()));
    }
    if let Some(&(a, b)) = m.edges().iter().find(|&&(a, b)| !g.has_edge(a, b)) {
        return Err(Error::InvalidMatching(format!("{{{a}, {b}}} is not an edge")));
    }
    let power = crate::matching_free::sf_power(g, m.len() + 1)?;
    Ok(compare_colon(&power, g, m))
}

fn compare_colon(power: &MonomialIdeal, g: &Graph, m: &Matching) -> ColonCheck {
    let colon = power.colon(m.support());
    let edge_ideal = MonomialIdeal::edge_ideal(&even_conn_graph_same_labels(g, m));
    let all_quadratic = colon.generators().iter().all(|s| s.len() == 2);
    let equal = colon == edge_ideal;
    ColonCheck {
        colon,
        edge_ideal,
        all_quadratic,
        equal,
    }
}

/// Runs [`colon_check`] on every `k`-matching of `g`, sharing one
/// computation of `I(G)^{[k+1]}`. Returns the first matching that fails.
pub fn colon_check_all(g: &Graph, k: usize) -> Result<Option<Matching>> {
    if k == 0 {
        return Err(Error::Precondition("the matching must be nonempty".into()));
    }
    let power = crate::matching_free::sf_power(g, k + 1)?;
    let ms = enumerate_matchings(g, k);
    Ok(ms
        .par_iter()
        .position_first(|m| !compare_colon(&power, g, m).holds())
        .map(|i| ms[i].clone()))
}

pub fn colon_oracle_verify(g: &Graph, m: &Matching) -> Result<bool> {
    Ok(colon_check(g, m)?.holds())
}
