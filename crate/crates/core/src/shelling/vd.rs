//! Vertex decomposability, with shelling orders read off the decomposition,
//! plus the simplicial-vertex rule for independence complexes and
//! chordality.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching_free::independence_complex;
use crate::simplicial::{maximal_sets, SimplicialComplex};
use crate::vset::VertexSet;

/// Memo key: facets after relabeling the support as `0..k` in an order
/// refined from vertex degrees. Equal keys mean isomorphic complexes.
fn canonical(facets: &[VertexSet]) -> (Vec<VertexSet>, Vec<usize>) {
    let support = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
    let verts = support.to_vec();
    let sizes = |v: usize| {
        let mut s: Vec<usize> = facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.len())
            .collect();
        s.sort_unstable();
        s
    };
    let first: HashMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, sizes(v))).collect();
    let refined = |v: usize| {
        let mut around: Vec<u64> = facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| {
                let mut inner: Vec<&Vec<usize>> = f.iter().map(|u| &first[&u]).collect();
                inner.sort_unstable();
                let mut h = DefaultHasher::new();
                inner.hash(&mut h);
                h.finish()
            })
            .collect();
        around.sort_unstable();
        (first[&v].clone(), around)
    };
    let mut ordered = verts.clone();
    ordered.sort_by_cached_key(|&v| (refined(v), v));
    let mut to_new = vec![usize::MAX; 64];
    for (i, &v) in ordered.iter().enumerate() {
        to_new[v] = i;
    }
    let mut key: Vec<VertexSet> = facets.iter().map(|f| f.relabel(&to_new)).collect();
    key.sort_unstable();
    (key, ordered)
}

#[derive(Default)]
struct Decomposer {
    memo: HashMap<Vec<VertexSet>, Option<Vec<VertexSet>>>,
}

impl Decomposer {
    /// Shelling order from a vertex decomposition of the complex with these
    /// facets (already maximal), or `None` if there is none.
    fn solve(&mut self, facets: &[VertexSet]) -> Option<Vec<VertexSet>> {
        match facets {
            [] => return None,
            [f] => return Some(vec![*f]),
            _ => {}
        }
        let (key, ordered) = canonical(facets);
        let found = match self.memo.get(&key) {
            Some(hit) => hit.clone(),
            None => {
                let found = self.search(&key);
                self.memo.insert(key, found.clone());
                found
            }
        };
        found.map(|order| order.iter().map(|f| f.relabel(&ordered)).collect())
    }

    fn search(&mut self, facets: &[VertexSet]) -> Option<Vec<VertexSet>> {
        let support = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        for v in support.iter() {
            let with: Vec<VertexSet> = facets
                .iter()
                .filter(|f| f.contains(v))
                .map(|f| f.without(v))
                .collect();
            let link = maximal_sets(with);
            let del = maximal_sets(facets.iter().map(|f| f.without(v)).collect());
            // Shedding vertex: no facet of the deletion lies in the link.
            if del.iter().any(|g| link.iter().any(|l| g.is_subset(*l))) {
                continue;
            }
            let Some(mut order) = self.solve(&del) else {
                continue;
            };
            let Some(tail) = self.solve(&link) else {
                continue;
            };
            order.extend(tail.into_iter().map(|f| f.with(v)));
            return Some(order);
        }
        None
    }
}

/// A shelling order obtained from a vertex decomposition (deletion first,
/// then the cone over the link), or `None` if `cx` is not vertex
/// decomposable.
pub fn vertex_decomposition(cx: &SimplicialComplex) -> Option<Vec<VertexSet>> {
    Decomposer::default().solve(cx.facets())
}

pub fn is_vertex_decomposable(cx: &SimplicialComplex) -> bool {
    vertex_decomposition(cx).is_some()
}

fn simplicial_vertex(g: &Graph, within: VertexSet) -> Option<usize> {
    within.iter().find(|&v| {
        let nb = g.neighbors(v).intersection(within);
        !nb.is_empty() && g.is_clique(nb)
    })
}

/// Shelling order of the independence complex of `G[within]`.
///
/// A neighbor `w` of a simplicial vertex is a shedding vertex, with deletion
/// `Ind(G ∖ w)` and link `Ind(G ∖ N[w])`. When no simplicial vertex is left
/// the search continues on the complex itself.
pub fn independence_shelling(g: &Graph, within: VertexSet) -> Option<Vec<VertexSet>> {
    fn go(g: &Graph, within: VertexSet, dec: &mut Decomposer) -> Option<Vec<VertexSet>> {
        let has_edge = within
            .iter()
            .any(|v| !g.neighbors(v).is_disjoint(within));
        if !has_edge {
            return Some(vec![within]);
        }
        let Some(v) = simplicial_vertex(g, within) else {
            return dec.solve(independence_complex(g, within).facets());
        };
        let w = g.neighbors(v).intersection(within).min()?;
        let mut order = go(g, within.without(w), dec)?;
        let rest = within.difference(g.closed_neighborhood(VertexSet::singleton(w)));
        order.extend(go(g, rest, dec)?.into_iter().map(|f| f.with(w)));
        Some(order)
    }
    go(g, within, &mut Decomposer::default())
}

/// For every independent set `A`, `G ∖ N[A]` is empty, edgeless, or has a
/// simplicial vertex. This makes `Ind(G)` vertex decomposable.
pub fn independence_vd_via_simplicial(g: &Graph) -> bool {
    let all = g.vertices();
    all.subsets().filter(|&a| g.is_independent(a)).all(|a| {
        let rest = all.difference(g.closed_neighborhood(a));
        let edgeless = rest.iter().all(|v| g.neighbors(v).is_disjoint(rest));
        edgeless || simplicial_vertex(g, rest).is_some()
    })
}

/// Perfect elimination order from maximum cardinality search, if `g` is
/// chordal.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = VertexSet::EMPTY;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .difference(visited)
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited.insert(v);
        visit.push(v);
        for u in g.neighbors(v).difference(visited).iter() {
            weight[u] += 1;
        }
    }
    let peo: Vec<usize> = visit.into_iter().rev().collect();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &peo {
        let later: VertexSet = g.neighbors(v).iter().filter(|&u| pos[u] > pos[v]).collect();
        if let Some(p) = later.iter().min_by_key(|&u| pos[u]) {
            if !later.without(p).is_subset(g.neighbors(p)) {
                return None;
            }
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// Fröberg: an edge ideal has a linear resolution iff the complement graph
/// is chordal.
pub fn edge_ideal_linear_resolution(t: &Graph) -> Result<bool> {
    if t.edge_count() == 0 {
        return Err(Error::Precondition(
            "edge ideal of an edgeless graph is zero".into(),
        ));
    }
    Ok(is_chordal(&t.complement()))
}
