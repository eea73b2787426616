//! Closed-form predictions for `MF^q(W(H))` and checks of the structural
//! characterizations against direct computation.
//!
//! Throughout, `n = |V(H)|`, `m` is the girth of `H`, `ℓ` its odd girth and
//! `ν(W(H)) = n`.

mod report;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cycle, ExtNat, Graph, WhiskerGraph};
use crate::homology::{depth, is_cohen_macaulay, is_sequentially_cm, Field};
use crate::matching_free::{mf_complex, stanley_reisner};
use crate::shelling::edge_ideal_linear_resolution;
use crate::simplicial::SimplicialComplex;
use crate::vset::VertexSet;

pub use report::{
    parse_checks, verify, Check, ComputedCm, Computed, Expected, PerField, ShellMethod,
    ShellStatus, ShellingOutcome, Subject, Verdict, VerificationReport, VerifyOptions,
};

/// Cohen-Macaulay behaviour of `MF^q(W(H))` predicted by the classification
/// by girth and odd girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmClass {
    #[serde(rename = "cm")]
    CM,
    SeqCmNotPure,
    /// Pure, with no claim about Cohen-Macaulayness.
    PureUnknownCm,
    NotPure,
    /// `q > ν`: the complex is the full simplex.
    FullSimplex,
}

fn check_q(h: &Graph, q: usize) -> Result<()> {
    match q {
        0 => Err(Error::ZeroQ),
        q if q > h.n() => Err(Error::QOutOfRange { q, max: h.n() }),
        _ => Ok(()),
    }
}

fn half_up(k: usize) -> usize {
    k.div_ceil(2)
}

/// `ℓ` for a graph known to have an odd cycle.
fn odd_girth(h: &Graph) -> usize {
    h.odd_girth().finite().expect("non-bipartite graph has an odd cycle")
}

pub fn expected_pure(h: &Graph, q: usize) -> Result<bool> {
    check_q(h, q)?;
    if h.is_bipartite() {
        return Ok(true);
    }
    let l = odd_girth(h);
    Ok(q < half_up(l) || q > h.n() - l / 2)
}

pub fn expected_dim(h: &Graph, q: usize) -> Result<usize> {
    check_q(h, q)?;
    Ok(h.n() + q - 2)
}

/// Largest `q` for which `MF^q(W(H))` is predicted shellable: `⌈m/2⌉`, or
/// `ν(W(H)) = n` for a forest.
pub fn expected_shellable_upper(h: &Graph) -> usize {
    match h.girth() {
        ExtNat::Finite(m) => half_up(m),
        ExtNat::Infinity => h.n(),
    }
}

/// Accepts `1 ≤ q ≤ n + 1`; `q = n + 1` gives [`CmClass::FullSimplex`].
pub fn expected_cm_class(h: &Graph, q: usize) -> Result<CmClass> {
    let n = h.n();
    if q == n + 1 && n > 0 {
        return Ok(CmClass::FullSimplex);
    }
    check_q(h, q)?;
    let ExtNat::Finite(m) = h.girth() else {
        return Ok(CmClass::CM);
    };
    if h.is_bipartite() {
        return Ok(if q <= m / 2 { CmClass::CM } else { CmClass::PureUnknownCm });
    }
    let l = odd_girth(h);
    let class = if m % 2 == 0 {
        if q <= m / 2 {
            CmClass::CM
        } else if q < half_up(l) {
            CmClass::PureUnknownCm
        } else if q <= n - l / 2 {
            CmClass::NotPure
        } else {
            CmClass::PureUnknownCm
        }
    } else if q < half_up(m) {
        CmClass::CM
    } else if q == half_up(m) {
        CmClass::SeqCmNotPure
    } else if q <= n - m / 2 {
        CmClass::NotPure
    } else {
        CmClass::PureUnknownCm
    };
    Ok(class)
}

/// `depth(R/I(W(H))^[q])` where the closed form is known, `None` elsewhere.
pub fn expected_depth(h: &Graph, q: usize) -> Result<Option<usize>> {
    check_q(h, q)?;
    let n = h.n();
    Ok(match h.girth() {
        ExtNat::Infinity => Some(n + q - 1),
        ExtNat::Finite(m) if q <= m / 2 => Some(n + q - 1),
        ExtNat::Finite(m) if m % 2 == 1 && q == half_up(m) => Some(n),
        ExtNat::Finite(_) => None,
    })
}

/// Upper bound `n + q − 1 − ⌊m/2⌋` on the depth for unicyclic `H` with odd
/// girth `m`, when `⌈m/2⌉ ≤ q ≤ n − ⌊m/2⌋`.
pub fn uni_depth_upper_bound(h: &Graph, q: usize) -> Result<Option<usize>> {
    if !h.is_unicyclic() {
        return Err(Error::Precondition("the graph must be connected and unicyclic".into()));
    }
    check_q(h, q)?;
    let n = h.n();
    let m = h.girth().finite().expect("unicyclic graph has a cycle");
    if m.is_multiple_of(2) || q < half_up(m) || q > n - m / 2 {
        return Ok(None);
    }
    Ok(Some(n + q - 1 - m / 2))
}

/// Depth of `R/I(W(C_n))^[q]`: the conjectured value, whether it is proved,
/// and the computed value when requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDepthReport {
    pub n: usize,
    pub q: usize,
    pub conjectured: usize,
    pub proved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<usize>,
}

impl CycleDepthReport {
    /// `None` when nothing was computed.
    pub fn matches(&self) -> Option<bool> {
        self.computed.map(|c| c == self.conjectured)
    }
}

pub fn whisker_cycle_report(n: usize, q: usize, field: Option<Field>) -> Result<CycleDepthReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("cycles need at least 3 vertices, got {n}")));
    }
    let h = cycle(n)?;
    check_q(&h, q)?;
    let conjectured = if q <= n / 2 { n + q - 1 } else { 2 * q - 1 };
    let proved = q <= n / 2 || (n % 2 == 1 && q == half_up(n));
    let computed = match field {
        Some(field) => {
            let w = WhiskerGraph::new(h)?;
            Some(depth(&mf_complex(w.graph(), q)?, field)?)
        }
        None => None,
    };
    Ok(CycleDepthReport {
        n,
        q,
        conjectured,
        proved,
        computed,
    })
}

/// Whether `{u, v}` is predicted to be the complement of a facet of
/// `MF^{n−1}(W(H))`.
fn complement_is_facet(w: &WhiskerGraph, u: usize, v: usize) -> bool {
    let n = w.n();
    match (u < n, v < n) {
        (true, true) => true,
        (false, false) => !w.base().has_edge(u - n, v - n),
        _ => u % n != v % n,
    }
}

/// Enumerates the facets of `MF^{n−1}(W(H))` and checks that the complex is
/// pure and that `V ∖ {u, v}` is a facet exactly for the pairs allowed by
/// the three-case description.
pub fn facet_complement_check(h: &Graph) -> Result<bool> {
    if h.girth() == ExtNat::Finite(3) {
        return Err(Error::Precondition("the graph must not contain a triangle".into()));
    }
    if h.n() < 2 {
        return Err(Error::Precondition("need at least 2 base vertices".into()));
    }
    let w = WhiskerGraph::new(h.clone())?;
    let cx = mf_complex(w.graph(), h.n() - 1)?;
    let all = w.graph().vertices();
    let facets: std::collections::HashSet<VertexSet> = cx.facets().iter().copied().collect();
    let pairs_ok = (0..2 * h.n()).all(|u| {
        (u + 1..2 * h.n()).all(|v| {
            let f = all.without(u).without(v);
            facets.contains(&f) == complement_is_facet(&w, u, v)
        })
    });
    Ok(cx.is_pure() && pairs_ok)
}

/// Two equivalences checked by computation over `field`: `MF^2(W(H))` is
/// Cohen-Macaulay iff `H` is triangle-free, and `MF^{n−1}(W(H))` is
/// Cohen-Macaulay iff `H` is a forest.
pub fn cm_characterizations_check(h: &Graph, field: Field) -> Result<(bool, bool)> {
    if h.n() < 2 {
        return Err(Error::Precondition("need at least 2 base vertices".into()));
    }
    let w = WhiskerGraph::new(h.clone())?;
    let cm2 = is_cohen_macaulay(&mf_complex(w.graph(), 2)?, field)?;
    let cm_top = is_cohen_macaulay(&mf_complex(w.graph(), h.n() - 1)?, field)?;
    Ok((cm2 == !h.has_triangle(), cm_top == h.is_forest()))
}

/// The Alexander-dual route to Cohen-Macaulayness of `Δ = MF^{n−1}(W(H))`:
/// `Δ` is CM iff `I_{Δ^∨}` has a linear resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualRouteCheck {
    pub cohen_macaulay: bool,
    /// Minimal generators of `I_{Δ^∨}`, from the dual complex.
    pub dual_generators: Vec<VertexSet>,
    /// Whether they are the complements of the facets of `Δ`.
    pub generators_are_facet_complements: bool,
    /// Linear resolution of `I_{Δ^∨}`: by the chordal-complement test when
    /// it is generated in degree 2, false when generated in mixed degrees.
    pub linear_resolution: Option<bool>,
}

impl DualRouteCheck {
    pub fn holds(&self) -> bool {
        self.generators_are_facet_complements && self.linear_resolution == Some(self.cohen_macaulay)
    }
}

pub fn dual_route_check(h: &Graph, field: Field) -> Result<DualRouteCheck> {
    if h.n() < 2 {
        return Err(Error::Precondition("need at least 2 base vertices".into()));
    }
    let w = WhiskerGraph::new(h.clone())?;
    let g = w.graph();
    let cx = mf_complex(g, h.n() - 1)?;
    let cohen_macaulay = is_cohen_macaulay(&cx, field)?;
    let mut dual_generators = stanley_reisner(&cx.alexander_dual()?).generators().to_vec();
    dual_generators.sort();
    let mut complements: Vec<VertexSet> =
        cx.facets().iter().map(|&f| g.vertices().difference(f)).collect();
    complements.sort();
    let degrees: std::collections::BTreeSet<usize> = dual_generators.iter().map(|s| s.len()).collect();
    let linear_resolution = match degrees.iter().copied().collect::<Vec<_>>()[..] {
        [2] => {
            let edges: Vec<(usize, usize)> = dual_generators
                .iter()
                .map(|&s| (VertexSet::min(s).unwrap(), VertexSet::max(s).unwrap()))
                .collect();
            Some(edge_ideal_linear_resolution(&Graph::from_edges(g.n(), &edges)?)?)
        }
        [_] => None,
        _ => Some(false),
    };
    Ok(DualRouteCheck {
        cohen_macaulay,
        generators_are_facet_complements: dual_generators == complements,
        dual_generators,
        linear_resolution,
    })
}

/// `C_5` on `x1..x5` with `t` pendant vertices at each of `x1, x3, x5`.
/// Vertices: `x1..x5 = 0..4`, then `α_1..α_t`, `β_1..β_t`, `γ_1..γ_t`.
pub fn whiskered_pentagon(t: usize) -> Result<Graph> {
    let n = 5 + 3 * t;
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    for (block, hub) in [0, 2, 4].into_iter().enumerate() {
        edges.extend((0..t).map(|j| (hub, 5 + block * t + j)));
    }
    let mut labels: Vec<String> = (1..=5).map(|i| format!("x{i}")).collect();
    for name in ["alpha", "beta", "gamma"] {
        labels.extend((1..=t).map(|j| format!("{name}{j}")));
    }
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

/// Whether `cx` is the independence complex of a complete bipartite graph:
/// exactly two facets, disjoint and nonempty.
fn is_complete_bipartite_independence(cx: &SimplicialComplex) -> bool {
    matches!(cx.facets(), [a, b] if a.is_disjoint(*b) && !a.is_empty() && !b.is_empty())
}

/// Sequential Cohen-Macaulayness of `MF^2` of the whiskered pentagon and the
/// link evidence against it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PentagonReport {
    pub t: usize,
    pub field: Field,
    pub sequentially_cm: bool,
    /// `{α_1..α_t, x3, x4}`.
    pub stated_face: VertexSet,
    pub stated_link_facets: Vec<VertexSet>,
    /// Whether that link is `MF^1` of the complete bipartite graph with
    /// parts `{x5, γ_*}` and `{x2, β_*}`.
    pub stated_link_matches: bool,
    pub stated_link_sequentially_cm: bool,
    /// Largest face (then lexicographically first) whose link is not
    /// sequentially CM.
    pub witness: Option<VertexSet>,
    pub witness_link_facets: Vec<VertexSet>,
    pub witness_link_complete_bipartite: bool,
}

pub fn pentagon_example(t: usize, field: Field) -> Result<PentagonReport> {
    if t == 0 {
        return Err(Error::Precondition("need at least one pendant per hub".into()));
    }
    let g = whiskered_pentagon(t)?;
    let cx = mf_complex(&g, 2)?;
    let block = |b: usize| VertexSet::from_slice(&(5 + b * t..5 + (b + 1) * t).collect::<Vec<_>>());
    let stated_face = block(0).with(2).with(3);
    let stated_link = cx.link(stated_face)?;
    let predicted = SimplicialComplex::from_facets(g.n(), [block(2).with(4), block(1).with(1)])?;
    let mut faces = cx.faces();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut witness = None;
    for f in faces {
        if !is_sequentially_cm(&cx.link(f)?, field)? {
            witness = Some(f);
            break;
        }
    }
    let witness_link = witness.map(|f| cx.link(f)).transpose()?;
    Ok(PentagonReport {
        t,
        field,
        sequentially_cm: is_sequentially_cm(&cx, field)?,
        stated_face,
        stated_link_facets: stated_link.facets().to_vec(),
        stated_link_matches: stated_link == predicted,
        stated_link_sequentially_cm: is_sequentially_cm(&stated_link, field)?,
        witness,
        witness_link_facets: witness_link.as_ref().map_or(vec![], |l| l.facets().to_vec()),
        witness_link_complete_bipartite: witness_link
            .as_ref()
            .is_some_and(is_complete_bipartite_independence),
    })
}
