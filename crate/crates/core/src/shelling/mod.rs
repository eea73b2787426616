//! Shellability: order verification, exhaustive search, shedding faces,
//! vertex decomposability, chordality, and the constructive shelling of
//! matching-free complexes of whisker graphs.
//!
//! Shellings are in the nonpure sense: each facet meets the union of the
//! earlier ones in a complex that is pure of dimension one less than its own.

mod vd;
mod whisker;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;
use crate::vset::VertexSet;

pub use vd::{
    edge_ideal_linear_resolution, independence_shelling, independence_vd_via_simplicial,
    is_chordal, is_vertex_decomposable, perfect_elimination_order, vertex_decomposition,
};
pub use whisker::{
    constructive_whisker_shelling, literal_filtration, FailedStep, FiltrationStep, LiteralStep,
    ShellingCertificate, ShellingFailure, ORDER_SEARCH_BUDGET,
};

/// Facet count above which exhaustive search gives up.
pub const DEFAULT_FACET_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Shellability {
    Shellable { order: Vec<VertexSet> },
    /// `witness` is a face whose link admits no shelling; `None` when the
    /// search ran on the complex itself.
    NotShellable { witness: Option<VertexSet> },
    Indeterminate,
}

impl Shellability {
    pub fn is_shellable(&self) -> Option<bool> {
        match self {
            Shellability::Shellable { .. } => Some(true),
            Shellability::NotShellable { .. } => Some(false),
            Shellability::Indeterminate => None,
        }
    }
}

/// Whether `f` can follow the facets in `earlier`: the maximal sets among
/// `f ∩ g` must all have size `|f| − 1`.
///
/// Let `U` be the vertices `v` with `f ∖ v` inside an earlier facet. The
/// condition holds iff every earlier `g` misses some vertex of `U` in `f`.
fn extends(f: VertexSet, earlier: impl Iterator<Item = VertexSet> + Clone) -> bool {
    let mut u = VertexSet::EMPTY;
    for g in earlier.clone() {
        let missing = f.difference(g);
        if missing.len() == 1 {
            u = u.union(missing);
        }
    }
    earlier.into_iter().all(|g| !f.difference(g).is_disjoint(u))
}

/// Index of the first facet in `order` that breaks the shelling condition.
/// `order` must list each facet of `cx` exactly once.
pub fn shelling_violation(cx: &SimplicialComplex, order: &[VertexSet]) -> Result<Option<usize>> {
    let mut given = order.to_vec();
    given.sort_unstable();
    if given != cx.facets() {
        return Err(Error::Precondition(
            "order is not a permutation of the facets".into(),
        ));
    }
    Ok((1..order.len()).find(|&k| !extends(order[k], order[..k].iter().copied())))
}

pub fn is_shelling_order(cx: &SimplicialComplex, order: &[VertexSet]) -> Result<bool> {
    Ok(shelling_violation(cx, order)?.is_none())
}

/// Greedy extension, larger facets first.
fn greedy(facets: &[VertexSet]) -> Option<Vec<VertexSet>> {
    let mut rest = facets.to_vec();
    rest.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut order = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let i = rest
            .iter()
            .position(|&f| order.is_empty() || extends(f, order.iter().copied()))?;
        order.push(rest.remove(i));
    }
    Some(order)
}

/// Depth-first search over sets of placed facets. Whether a facet may come
/// next depends only on the set already placed, so dead sets are memoized.
fn exhaustive(facets: &[VertexSet]) -> Option<Vec<VertexSet>> {
    fn go(
        facets: &[VertexSet],
        used: u64,
        order: &mut Vec<usize>,
        dead: &mut HashSet<u64>,
    ) -> bool {
        if order.len() == facets.len() {
            return true;
        }
        if dead.contains(&used) {
            return false;
        }
        for i in 0..facets.len() {
            if used >> i & 1 == 1 {
                continue;
            }
            if order.is_empty() || extends(facets[i], order.iter().map(|&j| facets[j])) {
                order.push(i);
                if go(facets, used | 1 << i, order, dead) {
                    return true;
                }
                order.pop();
            }
        }
        dead.insert(used);
        false
    }
    let mut order = Vec::new();
    go(facets, 0, &mut order, &mut HashSet::new())
        .then(|| order.into_iter().map(|i| facets[i]).collect())
}

/// Shelling search: greedy first, then exhaustive backtracking when the
/// complex has at most `cap` facets.
pub fn is_shellable_bruteforce(cx: &SimplicialComplex, cap: usize) -> Result<Shellability> {
    if cx.is_void() {
        return Err(Error::VoidComplex("shellability"));
    }
    if let Some(order) = greedy(cx.facets()) {
        return Ok(Shellability::Shellable { order });
    }
    if cx.facet_count() > cap.min(63) {
        return Ok(Shellability::Indeterminate);
    }
    Ok(match exhaustive(cx.facets()) {
        Some(order) => Shellability::Shellable { order },
        None => Shellability::NotShellable { witness: None },
    })
}

/// A face whose link is provably not shellable, which rules out any
/// shelling of `cx`. Larger faces (smaller links) are tried first.
pub fn non_shellable_link(cx: &SimplicialComplex, cap: usize) -> Option<VertexSet> {
    let mut faces = cx.faces();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.into_iter().find(|&f| {
        let link = cx.link(f).expect("face of the complex");
        link.facet_count() <= cap
            && matches!(
                is_shellable_bruteforce(&link, cap),
                Ok(Shellability::NotShellable { .. })
            )
    })
}

/// Brute-force search on `cx`, falling back to a search for a non-shellable
/// link when the complex is over the cap.
pub fn decide_shellability(cx: &SimplicialComplex, cap: usize) -> Result<Shellability> {
    match is_shellable_bruteforce(cx, cap)? {
        Shellability::Indeterminate => Ok(match non_shellable_link(cx, cap) {
            Some(face) => Shellability::NotShellable {
                witness: Some(face),
            },
            None => Shellability::Indeterminate,
        }),
        decided => Ok(decided),
    }
}

/// Jonsson's shedding condition for a face `σ`: for every `τ` in the star of
/// `σ` and every `v ∈ σ` there is `w ∉ τ` with `(τ ∪ w) ∖ v ∈ Δ`.
///
/// Only facets `τ ⊇ σ` can fail (a smaller `τ` extends inside a facet of the
/// star), so those are the ones checked.
pub fn is_shedding_face(cx: &SimplicialComplex, sigma: VertexSet) -> Result<bool> {
    if !cx.contains(sigma) {
        return Err(Error::NotAFace(sigma.to_string()));
    }
    let verts = cx.support();
    Ok(cx
        .facets()
        .iter()
        .filter(|f| sigma.is_subset(**f))
        .all(|&f| {
            sigma.iter().all(|v| {
                verts
                    .difference(f)
                    .iter()
                    .any(|w| cx.contains(f.without(v).with(w)))
            })
        }))
}
