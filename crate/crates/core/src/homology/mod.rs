//! Reduced simplicial homology ranks over GF(2) or `Q`, Reisner's criterion,
//! sequential Cohen-Macaulayness and depth.

pub mod gf2;
pub mod rational;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    #[default]
    Gf2,
    Rationals,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Gf2 => "gf2",
            Field::Rationals => "rationals",
        })
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        match s.to_ascii_lowercase().as_str() {
            "gf2" | "f2" | "2" => Ok(Field::Gf2),
            "q" | "qq" | "rationals" | "rational" => Ok(Field::Rationals),
            other => Err(Error::Parse(format!("unknown field `{other}`"))),
        }
    }
}

/// Reduced Betti numbers `β̃_i` for `i = −1, 0, ..., dim Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    ranks: Vec<usize>,
}

impl BettiVector {
    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.ranks.get(k).copied())
            .unwrap_or(0)
    }

    /// Ranks from degree −1 upward.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Lowest degree with nonzero homology.
    pub fn lowest_nonzero(&self) -> Option<isize> {
        self.ranks.iter().position(|&r| r != 0).map(|k| k as isize - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `Σ (−1)^i β̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 1 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Ranks of the augmented boundary maps: entry `k` is the rank of
/// `∂_k : C_k → C_{k−1}` where `C_k` is spanned by faces with `k` vertices.
fn boundary_ranks(faces: &[Vec<VertexSet>], field: Field) -> Vec<usize> {
    let mut ranks = vec![0; faces.len() + 1];
    for k in 1..faces.len() {
        let index: HashMap<VertexSet, usize> =
            faces[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows = faces[k - 1].len();
        ranks[k] = match field {
            Field::Gf2 => {
                let cols: Vec<Vec<usize>> = faces[k]
                    .iter()
                    .map(|f| {
                        let mut c: Vec<usize> = f.iter().map(|v| index[&f.without(v)]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                gf2::rank(rows, &cols)
            }
            Field::Rationals => {
                let cols: Vec<rational::SparseColumn<i64>> = faces[k]
                    .iter()
                    .map(|f| {
                        let mut c: Vec<(usize, i64)> = f
                            .iter()
                            .enumerate()
                            .map(|(pos, v)| (index[&f.without(v)], if pos % 2 == 0 { 1 } else { -1 }))
                            .collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                rational::rank(rows, &cols)
            }
        };
    }
    ranks
}

fn betti_from_faces(faces: &[Vec<VertexSet>], field: Field) -> BettiVector {
    let r = boundary_ranks(faces, field);
    let ranks = (0..faces.len())
        .map(|k| faces[k].len() - r[k] - r[k + 1])
        .collect();
    BettiVector { ranks }
}

pub fn reduced_betti(cx: &SimplicialComplex, field: Field) -> Result<BettiVector> {
    if cx.is_void() {
        return Err(Error::VoidComplex("homology"));
    }
    Ok(betti_from_faces(&cx.faces_by_size(), field))
}

/// Lowest `i < bound` with `H̃_i(cx) ≠ 0`. Over `Q` the GF(2) ranks are
/// computed first: `rank_Q ≥ rank_GF(2)` for integer matrices, so vanishing
/// over GF(2) in a degree implies vanishing over `Q` there.
fn lowest_below(cx: &SimplicialComplex, bound: isize, field: Field) -> Option<isize> {
    if is_acyclic_by_shape(cx) {
        return None;
    }
    let faces = cx.faces_by_size();
    let lowest = |b: &BettiVector| b.lowest_nonzero().filter(|&i| i < bound);
    let mod2 = lowest(&betti_from_faces(&faces, Field::Gf2));
    match field {
        Field::Gf2 => mod2,
        Field::Rationals => {
            mod2?;
            lowest(&betti_from_faces(&faces, Field::Rationals))
        }
    }
}

/// Simplices and cones have vanishing reduced homology.
fn is_acyclic_by_shape(cx: &SimplicialComplex) -> bool {
    let facets = cx.facets();
    if facets.is_empty() {
        return false;
    }
    let common = facets
        .iter()
        .fold(facets[0], |acc, f| acc.intersection(*f));
    !common.is_empty()
}

/// For every face `σ`, the lowest degree `i < dim link(σ)` with
/// `H̃_i(link σ) ≠ 0`, reported as `h(σ) + |σ|`; the minimum over all faces.
fn min_obstruction(cx: &SimplicialComplex, field: Field, stop_at_first: bool) -> Option<isize> {
    let faces = cx.faces();
    let eval = |&sigma: &VertexSet| -> Option<isize> {
        let link = cx.link(sigma).expect("faces come from the complex");
        let dim = link.dim().expect("links of faces are not void");
        lowest_below(&link, dim, field).map(|h| h + sigma.len() as isize)
    };
    if stop_at_first {
        faces.par_iter().find_map_any(eval)
    } else {
        faces.par_iter().filter_map(eval).min()
    }
}

/// Reisner's criterion. Non-pure complexes are rejected up front, since a
/// complex satisfying the criterion is pure.
pub fn is_cohen_macaulay(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    if cx.is_void() {
        return Err(Error::VoidComplex("Cohen-Macaulay test"));
    }
    if !cx.is_pure() {
        return Ok(false);
    }
    Ok(min_obstruction(cx, field, true).is_none())
}

/// Reisner's criterion checked on every face, without the purity shortcut.
pub fn reisner_all_faces(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    if cx.is_void() {
        return Err(Error::VoidComplex("Cohen-Macaulay test"));
    }
    Ok(min_obstruction(cx, field, true).is_none())
}

/// Every pure `d`-skeleton, `0 ≤ d ≤ dim Δ`, is Cohen-Macaulay.
pub fn is_sequentially_cm(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    let dim = cx.dim().ok_or(Error::VoidComplex("sequential Cohen-Macaulay test"))?;
    for d in 0..=dim {
        if !is_cohen_macaulay(&cx.pure_skeleton(d)?, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `depth(R/I_Δ)`.
///
/// The `i`-skeleton is Cohen-Macaulay exactly when every face `σ` with
/// `|σ| ≤ i` has `H̃_j(link σ) = 0` for `j < min(dim link σ, i − |σ|)`.
/// Writing `h(σ)` for the lowest nonvanishing degree below `dim link σ`, the
/// largest such `i` is `min(dim Δ, min_σ h(σ) + |σ|)`.
pub fn depth(cx: &SimplicialComplex, field: Field) -> Result<usize> {
    let dim = cx.dim().ok_or(Error::VoidComplex("depth"))?;
    let top = match min_obstruction(cx, field, false) {
        Some(b) => b.min(dim),
        None => dim,
    };
    Ok((top + 1) as usize)
}

/// `depth(R/I_Δ) = 1 + max{i | Δ^(i) is Cohen-Macaulay}`, evaluating the
/// skeletons one by one.
pub fn depth_by_skeletons(cx: &SimplicialComplex, field: Field) -> Result<usize> {
    let dim = cx.dim().ok_or(Error::VoidComplex("depth"))?;
    let mut best = -1;
    for i in 0..=dim {
        if reisner_all_faces(&cx.skeleton(i)?, field)? {
            best = i;
        }
    }
    Ok((best + 1) as usize)
}
