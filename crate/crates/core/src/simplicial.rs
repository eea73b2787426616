//! Simplicial complexes stored by their facets.
//!
//! The void complex has no faces at all; the empty complex `{∅}` has exactly
//! one. They are different values and [`SimplicialComplex::dim`] tells them
//! apart (`None` for void, `Some(-1)` for `{∅}`).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr")]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

#[derive(Deserialize)]
struct ComplexRepr {
    n: usize,
    facets: Vec<VertexSet>,
}

impl TryFrom<ComplexRepr> for SimplicialComplex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Self> {
        SimplicialComplex::from_facets(r.n, r.facets)
    }
}

/// Keeps the inclusion-maximal sets, sorted by size and then lexicographically.
pub fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Keeps the inclusion-minimal sets, sorted by size and then lexicographically.
pub fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable();
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

impl SimplicialComplex {
    pub fn from_facets(n: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let range = VertexSet::full(n);
        let sets: Vec<VertexSet> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(range)) {
            return Err(Error::VertexOutOfRange {
                vertex: bad.difference(range).min().unwrap(),
                n,
            });
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_sets(sets),
        })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![] }
    }

    /// The complex `{∅}`.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::EMPTY],
        }
    }

    /// The simplex `2^s` on the universe `0..n`.
    pub fn simplex(n: usize, s: VertexSet) -> Result<Self> {
        Self::from_facets(n, [s])
    }

    pub fn full_simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::full(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets == [VertexSet::full(self.n)]
    }

    /// `None` stands for the void complex (dimension −∞).
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Vertices that lie in some face.
    pub fn support(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn min_facet_size(&self) -> Result<usize> {
        self.facets
            .iter()
            .map(|f| f.len())
            .min()
            .ok_or(Error::VoidComplex("facets"))
    }

    fn require_face(&self, s: VertexSet) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::NotAFace(s.to_string()))
        }
    }

    /// All faces, sorted by size and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        let mut stack: Vec<VertexSet> = self.facets.clone();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(s.iter().map(|v| s.without(v)).filter(|t| !seen.contains(t)));
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Faces grouped by cardinality: entry `k` lists the faces with `k` vertices.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let faces = self.faces();
        let top = faces.last().map_or(0, |f| f.len());
        let mut out = vec![Vec::new(); if faces.is_empty() { 0 } else { top + 1 }];
        for f in faces {
            out[f.len()].push(f);
        }
        out
    }

    /// `f`-vector indexed by face size (entry 0 counts the empty face).
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_size().iter().map(Vec::len).collect()
    }

    /// Reduced Euler characteristic `Σ (−1)^{|F|−1}` over all faces, ∅ included.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn link(&self, f: VertexSet) -> Result<Self> {
        self.require_face(f)?;
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximal_sets(
                self.facets
                    .iter()
                    .filter(|g| f.is_subset(**g))
                    .map(|g| g.difference(f))
                    .collect(),
            ),
        })
    }

    /// The closed star `{τ | τ ∪ f ∈ Δ}`, generated by the facets containing `f`.
    pub fn star(&self, f: VertexSet) -> Result<Self> {
        self.require_face(f)?;
        Ok(SimplicialComplex {
            n: self.n,
            facets: self
                .facets
                .iter()
                .copied()
                .filter(|g| f.is_subset(*g))
                .collect(),
        })
    }

    /// Faces disjoint from `f`.
    pub fn delete_face(&self, f: VertexSet) -> Self {
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(self.facets.iter().map(|g| g.difference(f)).collect()),
        }
    }

    /// Faces that do not contain `f`. For a single vertex this coincides with
    /// [`SimplicialComplex::delete_face`]; for larger faces it is the deletion
    /// used by shedding-face filtrations.
    pub fn antistar(&self, f: VertexSet) -> Self {
        if f.is_empty() {
            return SimplicialComplex::void(self.n);
        }
        let mut sets = Vec::new();
        for &g in &self.facets {
            if f.is_subset(g) {
                sets.extend(f.iter().map(|v| g.without(v)));
            } else {
                sets.push(g);
            }
        }
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        }
    }

    /// Faces of `self` inside `s`.
    pub fn induced(&self, s: VertexSet) -> Self {
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(self.facets.iter().map(|g| g.intersection(s)).collect()),
        }
    }

    /// Join with a complex on a disjoint part of the same universe.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || !self.support().is_disjoint(other.support()) {
            return Err(Error::OverlappingJoin);
        }
        let mut sets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                sets.push(a.union(*b));
            }
        }
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        })
    }

    /// Moves the complex into the universe `0..n`, vertex `v` going to `map[v]`.
    pub fn relabel(&self, map: &[usize], n: usize) -> Result<Self> {
        Self::from_facets(n, self.facets.iter().map(|f| f.relabel(map)))
    }

    /// All faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> Result<Self> {
        if i < -1 {
            return Err(Error::DimensionOutOfRange {
                d: i,
                dim: self.dim().unwrap_or(-1),
            });
        }
        let size = (i + 1) as usize;
        let mut sets = Vec::new();
        for &g in &self.facets {
            if g.len() <= size {
                sets.push(g);
            } else {
                k_subsets(g, size, &mut sets);
            }
        }
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximal_sets(sets),
        })
    }

    /// The complex generated by the faces of dimension exactly `d`.
    pub fn pure_skeleton(&self, d: isize) -> Result<Self> {
        let dim = self.dim().ok_or(Error::VoidComplex("pure skeleton"))?;
        if d < -1 || d > dim {
            return Err(Error::DimensionOutOfRange { d, dim });
        }
        let size = (d + 1) as usize;
        let mut sets = Vec::new();
        for &g in &self.facets {
            if g.len() >= size {
                k_subsets(g, size, &mut sets);
            }
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(SimplicialComplex {
            n: self.n,
            facets: sets,
        })
    }

    /// Inclusion-minimal subsets of `0..n` that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        if self.is_void() {
            return vec![VertexSet::EMPTY];
        }
        let faces = self.faces();
        let face_set: HashSet<VertexSet> = faces.iter().copied().collect();
        let all = VertexSet::full(self.n);
        let mut out = HashSet::new();
        for &s in &faces {
            for v in all.difference(s).iter() {
                let t = s.with(v);
                if !face_set.contains(&t) && t.iter().all(|w| face_set.contains(&t.without(w))) {
                    out.insert(t);
                }
            }
        }
        let mut out: Vec<VertexSet> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// `Δ^∨ = {V ∖ F | F ∉ Δ}`, generated by the complements of the minimal non-faces.
    pub fn alexander_dual(&self) -> Result<Self> {
        if self.is_void() || self.is_full_simplex() {
            return Err(Error::DegenerateDual);
        }
        let all = VertexSet::full(self.n);
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximal_sets(
                self.minimal_nonfaces()
                    .into_iter()
                    .map(|f| all.difference(f))
                    .collect(),
            ),
        })
    }

    /// The complex generated by the facet complements.
    pub fn complement_complex(&self) -> Self {
        let all = VertexSet::full(self.n);
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(self.facets.iter().map(|f| all.difference(*f)).collect()),
        }
    }
}

/// Appends every `k`-subset of `s` to `out`.
pub fn k_subsets(s: VertexSet, k: usize, out: &mut Vec<VertexSet>) {
    fn rec(rest: &[usize], k: usize, acc: VertexSet, out: &mut Vec<VertexSet>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        if rest.len() < k {
            return;
        }
        rec(&rest[1..], k - 1, acc.with(rest[0]), out);
        rec(&rest[1..], k, acc, out);
    }
    let elems = s.to_vec();
    rec(&elems, k, VertexSet::EMPTY, out);
}

/// Dense membership table over all `2^n` subsets, for `n` up to
/// [`FaceTable::MAX_VERTICES`].
#[derive(Clone, PartialEq, Eq)]
pub struct FaceTable {
    n: usize,
    words: Vec<u64>,
}

impl FaceTable {
    pub const MAX_VERTICES: usize = 26;

    fn blank(n: usize) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "face table",
                n,
                max: Self::MAX_VERTICES,
            });
        }
        Ok(FaceTable {
            n,
            words: vec![0; (1usize << n).div_ceil(64)],
        })
    }

    pub fn new(cx: &SimplicialComplex) -> Result<Self> {
        let mut t = Self::blank(cx.n())?;
        let mut stack: Vec<VertexSet> = cx.facets().to_vec();
        while let Some(s) = stack.pop() {
            if !t.contains(s) {
                t.set(s);
                stack.extend(s.iter().map(|v| s.without(v)));
            }
        }
        Ok(t)
    }

    /// Table of the sets satisfying `pred`. The predicate must be closed under
    /// taking subsets.
    pub fn from_predicate(n: usize, pred: impl Fn(VertexSet) -> bool) -> Result<Self> {
        let mut t = Self::blank(n)?;
        for mask in 0..(1u64 << n) {
            let s = VertexSet::from_bits(mask);
            if pred(s) {
                t.set(s);
            }
        }
        Ok(t)
    }

    fn set(&mut self, s: VertexSet) {
        let b = s.bits() as usize;
        self.words[b / 64] |= 1 << (b % 64);
    }

    fn clear(&mut self, s: VertexSet) {
        let b = s.bits() as usize;
        self.words[b / 64] &= !(1 << (b % 64));
    }

    /// Drops every face containing `s`, leaving the antistar of `s`. Returns
    /// the faces that were removed, for [`FaceTable::restore`].
    pub fn remove_supersets(&mut self, s: VertexSet) -> Vec<VertexSet> {
        let rest = VertexSet::full(self.n).difference(s);
        let mut removed = Vec::new();
        for extra in rest.subsets() {
            let f = s.union(extra);
            if self.contains(f) {
                self.clear(f);
                removed.push(f);
            }
        }
        removed
    }

    pub fn restore(&mut self, faces: &[VertexSet]) {
        for &f in faces {
            self.set(f);
        }
    }

    /// Facets of the link of `s`, or `None` if `s` is not a face.
    pub fn link_facets(&self, s: VertexSet) -> Option<Vec<VertexSet>> {
        if !self.contains(s) {
            return None;
        }
        let rest = VertexSet::full(self.n).difference(s);
        let faces = rest.subsets().filter(|&t| self.contains(s.union(t)));
        let mut out: Vec<VertexSet> = faces
            .filter(|&t| {
                rest.difference(t)
                    .iter()
                    .all(|v| !self.contains(s.union(t).with(v)))
            })
            .collect();
        out.sort_unstable();
        Some(out)
    }

    #[inline]
    pub fn contains(&self, s: VertexSet) -> bool {
        let b = s.bits();
        if b >> self.n != 0 {
            return false;
        }
        let b = b as usize;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> impl Iterator<Item = VertexSet> + '_ {
        (0..(1u64 << self.n))
            .map(VertexSet::from_bits)
            .filter(|&s| self.contains(s))
    }

    pub fn facets(&self) -> Vec<VertexSet> {
        let all = VertexSet::full(self.n);
        let mut out: Vec<VertexSet> = self
            .faces()
            .filter(|&s| all.difference(s).iter().all(|v| !self.contains(s.with(v))))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex {
            n: self.n,
            facets: self.facets(),
        }
    }
}
