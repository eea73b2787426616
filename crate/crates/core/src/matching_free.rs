//! `MF^q(G)`, squarefree powers `I(G)^[q]`, Stanley-Reisner ideals, and the
//! `{Y, N, S}` partition attached to a face carrying `q − 1` disjoint edges.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::even_conn::even_connected;
use crate::graph::{enumerate_matchings, matching_number, Graph, Matching, MatchingTable, WhiskerGraph};
use crate::simplicial::{minimal_sets, FaceTable, SimplicialComplex};
use crate::vset::VertexSet;

/// Squarefree monomial ideal, stored by the supports of its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    variable_count: usize,
    generators: Vec<VertexSet>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.generators.iter())
    }
}

impl MonomialIdeal {
    pub fn new(variable_count: usize, gens: impl IntoIterator<Item = VertexSet>) -> Self {
        MonomialIdeal {
            variable_count,
            generators: minimal_sets(gens.into_iter().collect()),
        }
    }

    pub fn zero(variable_count: usize) -> Self {
        MonomialIdeal {
            variable_count,
            generators: vec![],
        }
    }

    pub fn edge_ideal(g: &Graph) -> Self {
        MonomialIdeal::new(
            g.n(),
            g.edges().into_iter().map(|(u, v)| VertexSet::from_slice(&[u, v])),
        )
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Minimal generators, sorted by degree and then lexicographically.
    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the squarefree monomial with support `s` lies in the ideal.
    pub fn contains(&self, s: VertexSet) -> bool {
        self.generators.iter().any(|g| g.is_subset(s))
    }

    /// `(I : x^u)` for the squarefree monomial with support `u`.
    pub fn colon(&self, u: VertexSet) -> MonomialIdeal {
        MonomialIdeal::new(
            self.variable_count,
            self.generators.iter().map(|g| g.difference(u)),
        )
    }
}

/// `ν(G[F]) < q` for every `F`, as a dense table.
pub fn mf_face_table(g: &Graph, q: usize) -> Result<FaceTable> {
    if q == 0 {
        return Err(Error::ZeroQ);
    }
    if g.n() > MatchingTable::MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "matching-free complex",
            n: g.n(),
            max: MatchingTable::MAX_VERTICES,
        });
    }
    let nu = MatchingTable::new(g);
    FaceTable::from_predicate(g.n(), |s| nu.nu(s) < q)
}

/// Facets of `MF^q(G)`: the inclusion-maximal vertex sets whose induced
/// subgraph has no matching of size `q`.
pub fn mf_complex(g: &Graph, q: usize) -> Result<SimplicialComplex> {
    if q == 0 {
        return Err(Error::ZeroQ);
    }
    if q > matching_number(g) {
        return Ok(SimplicialComplex::full_simplex(g.n()));
    }
    Ok(mf_face_table(g, q)?.complex())
}

/// `MF^1` of the induced subgraph `G[within]`, on the universe of `g`: the
/// independence complex, listed by maximal independent sets.
pub fn independence_complex(g: &Graph, within: VertexSet) -> SimplicialComplex {
    // Bron-Kerbosch with pivoting, on the complement of G[within].
    fn expand(
        g: &Graph,
        within: VertexSet,
        r: VertexSet,
        p: VertexSet,
        x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        let Some(u) = p.union(x).min() else {
            out.push(r);
            return;
        };
        let compatible = |v: usize| within.difference(g.closed_neighborhood(VertexSet::singleton(v)));
        let (mut p, mut x) = (p, x);
        for v in p.difference(compatible(u)).iter() {
            let c = compatible(v);
            expand(g, within, r.with(v), p.intersection(c), x.intersection(c), out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    expand(g, within, VertexSet::EMPTY, within, VertexSet::EMPTY, &mut out);
    SimplicialComplex::from_facets(g.n(), out).expect("subsets of the vertex range")
}

/// Minimal generators of `I(G)^[q]`: supports of the `q`-matchings.
pub fn sf_power(g: &Graph, q: usize) -> Result<MonomialIdeal> {
    if q == 0 {
        return Err(Error::ZeroQ);
    }
    Ok(MonomialIdeal::new(
        g.n(),
        enumerate_matchings(g, q).iter().map(Matching::support),
    ))
}

/// Facets of `MF^q(G)` by testing every vertex subset for a `q`-matching,
/// without the dense `ν` table. Meant as an oracle for small graphs.
pub fn mf_facets_by_subset_filter(g: &Graph, q: usize) -> Result<Vec<VertexSet>> {
    const MAX: usize = 20;
    if q == 0 {
        return Err(Error::ZeroQ);
    }
    if g.n() > MAX {
        return Err(Error::TooLarge {
            what: "subset filter",
            n: g.n(),
            max: MAX,
        });
    }
    let faces: Vec<VertexSet> = g
        .vertices()
        .subsets()
        .filter(|&s| enumerate_matchings(&g.restrict(s), q).is_empty())
        .collect();
    let mut facets = crate::simplicial::maximal_sets(faces);
    facets.sort();
    Ok(facets)
}

/// `I_Δ`, generated by the minimal non-faces.
pub fn stanley_reisner(cx: &SimplicialComplex) -> MonomialIdeal {
    MonomialIdeal::new(cx.n(), cx.minimal_nonfaces())
}

pub fn verify_sr_equality(g: &Graph, q: usize) -> Result<bool> {
    Ok(stanley_reisner(&mf_complex(g, q)?) == sf_power(g, q)?)
}

/// The partition `{Y, N, S}` of `V(G) ∖ f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionYns {
    pub f: VertexSet,
    pub matching: Matching,
    /// Number of edges of `matching` inside the base graph.
    pub m: usize,
    pub y: VertexSet,
    pub n: VertexSet,
    pub s: VertexSet,
}

impl PartitionYns {
    /// `|F ∩ N| + |F ∩ S|` for a facet `F ⊇ f`.
    pub fn outside_count(&self, facet: VertexSet) -> usize {
        facet.intersection(self.n).len() + facet.intersection(self.s).len()
    }
}

fn check_inner_matching(w: &WhiskerGraph, f: VertexSet, m: &Matching) -> Result<()> {
    let g = w.graph();
    for &(a, b) in m.edges() {
        if !g.has_edge(a, b) {
            return Err(Error::InvalidMatching(format!("{{{a}, {b}}} is not an edge")));
        }
    }
    if !m.support().is_subset(f) {
        return Err(Error::InvalidMatching(format!("{m:?} is not inside {f}")));
    }
    Ok(())
}

/// Builds `{Y, N, S}` for a face `f` of `MF^q(G)`, `q = |M| + 1`.
/// A vertex that qualifies for several classes goes to the first of
/// `f`, `Y`, `N`.
pub fn partition_yns(w: &WhiskerGraph, f: VertexSet, m: &Matching) -> Result<PartitionYns> {
    let g = w.graph();
    if let Some(bad) = f.max().filter(|&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: g.n() });
    }
    check_inner_matching(w, f, m)?;
    let q = m.len() + 1;
    let (sub, _) = g.induced_subgraph(f)?;
    if matching_number(&sub) >= q {
        return Err(Error::NotAFace(format!("{f} in MF^{q}")));
    }
    let base_edges: Vec<(usize, usize)> = m
        .edges()
        .iter()
        .copied()
        .filter(|&e| !w.is_whisker_edge(e))
        .collect();
    let base_supp: VertexSet = base_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let y = w.partners(base_supp).difference(f);
    let nbrs = g.open_neighborhood(f).intersection(w.base_vertices());
    let n = nbrs
        .union(w.partners(nbrs))
        .difference(f)
        .difference(y);
    let s = g.vertices().difference(f).difference(y).difference(n);
    Ok(PartitionYns {
        f,
        matching: m.clone(),
        m: base_edges.len(),
        y,
        n,
        s,
    })
}

/// Grows `s ⊆ Y(M_H)` to a set of `m` pairwise non-even-connected whisker
/// vertices, where `M_H` are the base edges of `m_all`. At each step the first
/// base edge with no partner in the current set contributes its lower-indexed
/// whisker vertex when that keeps the set independent, and the other one
/// otherwise.
pub fn extend_whisker_set(w: &WhiskerGraph, m_all: &Matching, s: VertexSet) -> Result<VertexSet> {
    let g = w.graph();
    let base = Matching::new(
        m_all
            .edges()
            .iter()
            .copied()
            .filter(|&e| !w.is_whisker_edge(e)),
    )?;
    for &(a, b) in base.edges() {
        if !g.has_edge(a, b) {
            return Err(Error::InvalidMatching(format!("{{{a}, {b}}} is not an edge")));
        }
    }
    let y = w.partners(base.support());
    if !s.is_subset(y) {
        return Err(Error::Precondition(format!("{s} is not inside Y = {y}")));
    }
    let connected = |a: usize, b: usize| -> bool {
        even_connected(g, &base, a, b)
            .expect("whisker partners lie outside the support")
            .is_some()
    };
    let independent_with = |set: VertexSet, v: usize| set.iter().all(|u| !connected(u, v));
    let vs = s.to_vec();
    for (i, &a) in vs.iter().enumerate() {
        if vs[i + 1..].iter().any(|&b| connected(a, b)) {
            return Err(Error::Precondition(format!(
                "{s} contains even-connected vertices"
            )));
        }
    }
    let mut cur = s;
    while cur.len() < base.len() {
        let &(a, b) = base
            .edges()
            .iter()
            .find(|&&(a, b)| !cur.contains(w.partner(a)) && !cur.contains(w.partner(b)))
            .ok_or_else(|| Error::Precondition("no free base edge left".into()))?;
        let (lo, hi) = {
            let (pa, pb) = (w.partner(a), w.partner(b));
            (pa.min(pb), pa.max(pb))
        };
        if independent_with(cur, lo) {
            cur.insert(lo);
        } else if independent_with(cur, hi) {
            cur.insert(hi);
        } else {
            return Err(Error::Precondition(format!(
                "neither {lo} nor {hi} extends {cur}"
            )));
        }
    }
    Ok(cur)
}
