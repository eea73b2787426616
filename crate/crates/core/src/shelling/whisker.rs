//! Constructive shelling of `MF^q(W(H))`.
//!
//! With `x1 = x_1`, the supports `μ_1, …, μ_α` of the `(q−1)`-matchings of
//! `G ∖ x1` are peeled off one at a time: `Ω_k` is `Ω_{k−1}` minus the faces
//! containing `μ_k`. Supports go in families by whisker-edge count. Inside a
//! family a support is taken when it is a shedding face of the current
//! complex, trying first the supports that meet `N(x1)` most and then the
//! requested order `≺`, with backtracking when none sheds. Each link must be `MF^1(H_k ∖ S'_k)`, where `S'_k` holds the
//! vertices `z` for which `μ_k ∪ z` contains an earlier support, and what is
//! left at the end must be `MF^{q−1}(G ∖ {x1, y1}) * 2^{x1, y1}`. The
//! shelling of `Ω_0` is the shelling of `Ω_α` followed by the cones over the
//! link shellings, last step first.
//!
//! [`literal_filtration`] walks the requested order as given and reports,
//! step by step, whether the support sheds and whether the link matches the
//! swap-set formula `MF^1(H_k ∖ S(M_k))`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::vd::independence_shelling;
use super::{is_shedding_face, shelling_violation};
use crate::error::{Error, Result};
use crate::even_conn::{
    even_conn_graph_same_labels, sort_matchings, swap_set, whisker_edge_count, MatchingOrder,
    MatchingRank, SwapSet,
};
use crate::graph::{enumerate_matchings, Graph, Matching, WhiskerGraph};
use crate::matching_free::{independence_complex, mf_complex, mf_face_table};
use crate::simplicial::{FaceTable, SimplicialComplex};
use crate::vset::VertexSet;

/// Node limit for the search over orders inside a family.
pub const ORDER_SEARCH_BUDGET: usize = 200_000;

/// One step `Ω_{k−1} → Ω_k` of the filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    pub support: VertexSet,
    /// First matching with this support in the realized order.
    pub matching: Matching,
    /// `S(M_k)` relative to the realized order.
    pub swap_set: SwapSet,
    /// Whether the link equals `MF^1(H_k ∖ S(M_k))`.
    pub swap_formula_holds: bool,
    /// `S'_k`: vertices `z` with an earlier support inside `μ_k ∪ z`.
    pub support_swaps: VertexSet,
    /// `V(H_k) ∖ S'_k` and the edges of `H_k` on it.
    pub link_vertices: VertexSet,
    pub link_edges: Vec<(usize, usize)>,
    pub link: SimplicialComplex,
    pub link_order: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    /// Number of base vertices of the whisker graph.
    pub n: usize,
    pub q: usize,
    /// Requested order; the realized one is `matchings`.
    pub order: MatchingOrder,
    /// The `(q−1)`-matchings of `G ∖ x1` in the realized `≺` order.
    pub matchings: Vec<Matching>,
    pub steps: Vec<FiltrationStep>,
    /// Certificate for `MF^{q−1}(W(H ∖ x1))`, in that graph's own labels.
    pub recursion: Option<Box<ShellingCertificate>>,
    /// Vertex of `W(H ∖ x1)` to vertex of `W(H)`.
    pub recursion_map: Vec<usize>,
    pub facet_order: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum FailedStep {
    /// The independence complex of `W(H)` did not decompose.
    BaseCase,
    /// No family-respecting order makes every support a shedding face;
    /// `placed` is the longest prefix found.
    SheddingOrder { placed: usize, budget_exhausted: bool },
    LinkMismatch { k: usize, support: VertexSet },
    LinkNotDecomposable { k: usize, support: VertexSet },
    /// `Ω_α` differs from `MF^{q−1}(G ∖ {x1, y1}) * 2^{x1, y1}`.
    FinalComplex,
    Recursion { inner: Box<ShellingFailure> },
    OrderVerification { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingFailure {
    pub n: usize,
    pub q: usize,
    pub step: FailedStep,
}

impl fmt::Display for ShellingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} q={}: ", self.n, self.q)?;
        match &self.step {
            FailedStep::BaseCase => write!(f, "independence complex not decomposable"),
            FailedStep::SheddingOrder {
                placed,
                budget_exhausted,
            } => {
                write!(f, "no shedding order of the supports (placed {placed}")?;
                if *budget_exhausted {
                    write!(f, ", search budget exhausted")?;
                }
                write!(f, ")")
            }
            FailedStep::LinkMismatch { k, support } => {
                write!(f, "step {k}: link of {support} is not MF^1(H_k \\ S'_k)")
            }
            FailedStep::LinkNotDecomposable { k, support } => {
                write!(f, "step {k}: link of {support} is not vertex decomposable")
            }
            FailedStep::FinalComplex => write!(f, "remaining complex is not the expected join"),
            FailedStep::Recursion { inner } => write!(f, "recursion failed ({inner})"),
            FailedStep::OrderVerification { position } => {
                write!(f, "facet {position} breaks the shelling condition")
            }
        }
    }
}

type Attempt = std::result::Result<ShellingCertificate, ShellingFailure>;

/// Builds and verifies a shelling certificate for `MF^q(W(H))`. The outer
/// error is for bad input; the inner one reports the step that failed.
pub fn constructive_whisker_shelling(w: &WhiskerGraph, q: usize, order: MatchingOrder) -> Result<Attempt> {
    check_q(w, q)?;
    build(w, q, order)
}

fn check_q(w: &WhiskerGraph, q: usize) -> Result<()> {
    if q == 0 {
        return Err(Error::ZeroQ);
    }
    if q > w.n() {
        return Err(Error::QOutOfRange { q, max: w.n() });
    }
    Ok(())
}

fn trivial(w: &WhiskerGraph, q: usize, order: MatchingOrder, facet_order: Vec<VertexSet>) -> ShellingCertificate {
    ShellingCertificate {
        n: w.n(),
        q,
        order,
        matchings: vec![],
        steps: vec![],
        recursion: None,
        recursion_map: vec![],
        facet_order,
    }
}

/// Shedding condition checked on the facets `μ ∪ l` of the star, `l` running
/// over the link facets.
fn sheds(table: &FaceTable, mu: VertexSet, link: &[VertexSet]) -> bool {
    let all = VertexSet::full(table.n());
    link.iter().all(|&l| {
        let f = mu.union(l);
        mu.iter().all(|v| {
            all.difference(f)
                .iter()
                .any(|u| table.contains(f.without(v).with(u)))
        })
    })
}

/// The `(q−1)`-matchings of `G ∖ x1` in `≺` order, and their distinct
/// supports in induced order.
fn supports_in_order(w: &WhiskerGraph, q: usize, order: MatchingOrder) -> (Vec<Matching>, Vec<VertexSet>) {
    let g = w.graph();
    let mut matchings = enumerate_matchings(&g.restrict(g.vertices().without(w.x(0))), q - 1);
    sort_matchings(w, &mut matchings, order);
    let mut seen = HashSet::new();
    let supports = matchings
        .iter()
        .map(Matching::support)
        .filter(|s| seen.insert(*s))
        .collect();
    (matchings, supports)
}

/// `S'`: vertices `z ∉ μ` such that `μ ∪ z` contains one of `earlier`.
fn support_swaps(all: VertexSet, mu: VertexSet, earlier: &[VertexSet]) -> VertexSet {
    all.difference(mu)
        .iter()
        .filter(|&z| earlier.iter().any(|s| s.is_subset(mu.with(z))))
        .collect()
}

struct OrderSearch<'a> {
    supports: &'a [VertexSet],
    family: Vec<usize>,
    /// Candidates in the order they are tried.
    tries: Vec<usize>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    dead: HashSet<Vec<bool>>,
    nodes: usize,
    deepest: usize,
}

impl OrderSearch<'_> {
    /// `Some(true)` when every support is placed, `None` when out of budget.
    fn run(&mut self, table: &mut FaceTable) -> Option<bool> {
        self.deepest = self.deepest.max(self.chosen.len());
        if self.chosen.len() == self.supports.len() {
            return Some(true);
        }
        if self.dead.contains(&self.used) {
            return Some(false);
        }
        self.nodes += 1;
        if self.nodes > ORDER_SEARCH_BUDGET {
            return None;
        }
        let fam = (0..self.supports.len())
            .filter(|&i| !self.used[i])
            .map(|i| self.family[i])
            .min()?;
        for idx in 0..self.tries.len() {
            let i = self.tries[idx];
            if self.used[i] || self.family[i] != fam {
                continue;
            }
            let mu = self.supports[i];
            let Some(link) = table.link_facets(mu) else {
                continue;
            };
            if !sheds(table, mu, &link) {
                continue;
            }
            let removed = table.remove_supersets(mu);
            self.used[i] = true;
            self.chosen.push(i);
            match self.run(table) {
                Some(false) => {}
                done => return done,
            }
            self.chosen.pop();
            self.used[i] = false;
            table.restore(&removed);
        }
        self.dead.insert(self.used.clone());
        Some(false)
    }
}

fn build(w: &WhiskerGraph, q: usize, order: MatchingOrder) -> Result<Attempt> {
    let g = w.graph();
    let n = w.n();
    let fail = |step| Ok(Err(ShellingFailure { n, q, step }));
    if q > n {
        return Ok(Ok(trivial(w, q, order, vec![g.vertices()])));
    }
    if q == 1 {
        let Some(facet_order) = independence_shelling(g, g.vertices()) else {
            return fail(FailedStep::BaseCase);
        };
        let omega = mf_complex(g, 1)?;
        if let Some(position) = shelling_violation(&omega, &facet_order)? {
            return fail(FailedStep::OrderVerification { position });
        }
        return Ok(Ok(trivial(w, q, order, facet_order)));
    }

    let (x1, y1) = (w.x(0), w.y(0));
    let mut table = mf_face_table(g, q)?;
    let omega = table.complex();
    let (requested, supports) = supports_in_order(w, q, order);

    let near = w.graph().neighbors(x1);
    // Supports meeting N(x1) most go first; the requested order breaks ties.
    let mut tries: Vec<usize> = (0..supports.len()).collect();
    tries.sort_by_key(|&i| std::cmp::Reverse(supports[i].intersection(near).len()));
    let mut search = OrderSearch {
        supports: &supports,
        tries,
        family: supports.iter().map(|s| s.intersection(w.whisker_vertices()).len()).collect(),
        used: vec![false; supports.len()],
        chosen: vec![],
        dead: HashSet::new(),
        nodes: 0,
        deepest: 0,
    };
    match search.run(&mut table.clone()) {
        Some(true) => {}
        outcome => {
            return fail(FailedStep::SheddingOrder {
                placed: search.deepest,
                budget_exhausted: outcome.is_none(),
            })
        }
    }
    let realized_supports: Vec<VertexSet> = search.chosen.iter().map(|&i| supports[i]).collect();
    let matchings: Vec<Matching> = realized_supports
        .iter()
        .flat_map(|&mu| requested.iter().filter(move |m| m.support() == mu).cloned())
        .collect();
    let rank = MatchingRank::new(matchings.clone());

    let mut steps: Vec<FiltrationStep> = Vec::new();
    for (idx, &mu) in realized_supports.iter().enumerate() {
        let k = idx + 1;
        let m = matchings
            .iter()
            .find(|m| m.support() == mu)
            .expect("every support comes from a matching");
        let link_facets = table
            .link_facets(mu)
            .ok_or_else(|| Error::NotAFace(mu.to_string()))?;
        let link = SimplicialComplex::from_facets(g.n(), link_facets)?;
        let h = even_conn_graph_same_labels(g, m);
        let swaps = swap_set(w, x1, m, &rank)?;
        let rest = g.vertices().difference(mu);
        let swap_formula_holds = link == independence_complex(&h, rest.difference(swaps.vertices));
        let support_swaps = support_swaps(g.vertices(), mu, &realized_supports[..idx]);
        let verts = rest.difference(support_swaps);
        if link != independence_complex(&h, verts) {
            return fail(FailedStep::LinkMismatch { k, support: mu });
        }
        let Some(link_order) = independence_shelling(&h, verts) else {
            return fail(FailedStep::LinkNotDecomposable { k, support: mu });
        };
        table.remove_supersets(mu);
        steps.push(FiltrationStep {
            support: mu,
            matching: m.clone(),
            swap_set: swaps,
            swap_formula_holds,
            support_swaps,
            link_vertices: verts,
            link_edges: h.restrict(verts).edges(),
            link,
            link_order,
        });
    }

    let (smaller, map) = w.delete_pair(0)?;
    let mut back = vec![0; smaller.graph().n()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            back[*new] = old;
        }
    }
    let pair = VertexSet::from_slice(&[x1, y1]);
    let rest = mf_complex(smaller.graph(), q - 1)?.relabel(&back, g.n())?;
    if table.complex() != rest.join(&SimplicialComplex::simplex(g.n(), pair)?)? {
        return fail(FailedStep::FinalComplex);
    }
    let inner = match build(&smaller, q - 1, order)? {
        Ok(c) => c,
        Err(e) => return fail(FailedStep::Recursion { inner: Box::new(e) }),
    };

    let mut facet_order: Vec<VertexSet> = inner
        .facet_order
        .iter()
        .map(|f| f.relabel(&back).union(pair))
        .collect();
    for step in steps.iter().rev() {
        facet_order.extend(step.link_order.iter().map(|f| f.union(step.support)));
    }
    if let Some(position) = shelling_violation(&omega, &facet_order)? {
        return fail(FailedStep::OrderVerification { position });
    }
    Ok(Ok(ShellingCertificate {
        n,
        q,
        order,
        matchings,
        steps,
        recursion: Some(Box::new(inner)),
        recursion_map: back,
        facet_order,
    }))
}

/// What happens at step `k` of the filtration taken in the requested order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralStep {
    pub support: VertexSet,
    pub matching: Matching,
    pub shedding: bool,
    /// Link equals `MF^1(H_k ∖ S(M_k))`.
    pub swap_formula_holds: bool,
    /// Link equals `MF^1(H_k ∖ S'_k)`.
    pub support_swap_formula_holds: bool,
}

/// The filtration in exactly the requested order, computed on complexes
/// (faces-not-containing deletions, Jonsson's test), independent of the
/// face-table route used by [`constructive_whisker_shelling`]. Needs `q ≥ 2`.
pub fn literal_filtration(w: &WhiskerGraph, q: usize, order: MatchingOrder) -> Result<Vec<LiteralStep>> {
    check_q(w, q)?;
    if q == 1 {
        return Err(Error::Precondition("the filtration needs q >= 2".into()));
    }
    let g = w.graph();
    let x1 = w.x(0);
    let (matchings, supports) = supports_in_order(w, q, order);
    let rank = MatchingRank::new(matchings.clone());
    let mut omega = mf_complex(g, q)?;
    let mut out = Vec::with_capacity(supports.len());
    for (idx, &mu) in supports.iter().enumerate() {
        let m = matchings
            .iter()
            .find(|m| m.support() == mu)
            .expect("every support comes from a matching");
        let link = omega.link(mu)?;
        let h = even_conn_graph_same_labels(g, m);
        let rest = g.vertices().difference(mu);
        let swaps = swap_set(w, x1, m, &rank)?.vertices;
        let primed = support_swaps(g.vertices(), mu, &supports[..idx]);
        out.push(LiteralStep {
            support: mu,
            matching: m.clone(),
            shedding: is_shedding_face(&omega, mu)?,
            swap_formula_holds: link == independence_complex(&h, rest.difference(swaps)),
            support_swap_formula_holds: link == independence_complex(&h, rest.difference(primed)),
        });
        omega = omega.antistar(mu);
    }
    Ok(out)
}

impl ShellingCertificate {
    /// Rechecks the stored data against `w` without rebuilding the filtration:
    /// the facet order shells `MF^q(G)`, the realized order keeps whisker-edge
    /// families in increasing order, every stored link is the independence
    /// complex of its stored graph and shells in the stored order, and the
    /// recursion replays on `W(H ∖ x1)`.
    pub fn replay(&self, w: &WhiskerGraph) -> Result<bool> {
        if w.n() != self.n {
            return Ok(false);
        }
        let g = w.graph();
        let omega = mf_complex(g, self.q)?;
        if shelling_violation(&omega, &self.facet_order)?.is_some() {
            return Ok(false);
        }
        let families: Vec<usize> = self.matchings.iter().map(|m| whisker_edge_count(w, m)).collect();
        if families.windows(2).any(|p| p[0] > p[1]) {
            return Ok(false);
        }
        for step in &self.steps {
            let h = Graph::from_edges(g.n(), &step.link_edges)?;
            if step.matching.support() != step.support
                || independence_complex(&h, step.link_vertices) != step.link
                || shelling_violation(&step.link, &step.link_order)?.is_some()
            {
                return Ok(false);
            }
        }
        match &self.recursion {
            Some(inner) => inner.replay(&w.delete_pair(0)?.0),
            None => Ok(true),
        }
    }

    /// Steps over all recursion levels.
    pub fn step_count(&self) -> usize {
        self.steps.len() + self.recursion.as_ref().map_or(0, |r| r.step_count())
    }

    /// Whether the swap-set formula held at every step of every level.
    pub fn swap_formula_everywhere(&self) -> bool {
        self.steps.iter().all(|s| s.swap_formula_holds)
            && self.recursion.as_ref().is_none_or(|r| r.swap_formula_everywhere())
    }
}
