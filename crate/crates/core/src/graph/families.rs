//! Named graph families and exhaustive small-graph catalogs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Catalog enumeration is capped at this many (base) vertices.
pub const MAX_FAMILY_VERTICES: usize = 7;

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition(format!("cycle needs n >= 3, got {n}")));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::from_edges(a + b, &edges)
}

/// `K_{1,k}`: centre `0` and leaves `1..=k`.
pub fn star(k: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Graph::from_edges(k + 1, &edges)
}

fn check_catalog_size(n: usize) -> Result<()> {
    if n > MAX_FAMILY_VERTICES {
        return Err(Error::TooLarge {
            what: "graph catalog enumeration",
            n,
            max: MAX_FAMILY_VERTICES,
        });
    }
    Ok(())
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

/// Every connected graph on the labeled vertex set `0..n`.
pub fn all_connected(n: usize) -> Result<Vec<Graph>> {
    check_catalog_size(n)?;
    let pairs = all_pairs(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<_> = VertexSet::from_bits(mask).iter().map(|i| pairs[i]).collect();
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            out.push(g);
        }
    }
    Ok(out)
}

/// Upper-triangle adjacency bits in `all_pairs` order.
fn edge_code(g: &Graph) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Canonical code: the minimum edge code over all relabelings that respect a
/// degree-based vertex partition.
fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let mut invariant: Vec<(usize, Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd, v)
        })
        .collect();
    invariant.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, inv) in invariant.iter().enumerate() {
        if i > 0 && (invariant[i - 1].0, &invariant[i - 1].1) == (inv.0, &inv.1) {
            cells.last_mut().unwrap().push(inv.2);
        } else {
            cells.push(vec![inv.2]);
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    fn rec(
        g: &Graph,
        cells: &mut [Vec<usize>],
        cell: usize,
        order: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if cell == cells.len() {
            let mut perm = vec![0; order.len()];
            for (pos, &v) in order.iter().enumerate() {
                perm[v] = pos;
            }
            *best = (*best).min(edge_code(&g.permute(&perm)));
            return;
        }
        let k = cells[cell].len();
        permute_cell(g, cells, cell, 0, k, order, best);
    }
    fn permute_cell(
        g: &Graph,
        cells: &mut [Vec<usize>],
        cell: usize,
        i: usize,
        k: usize,
        order: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if i == k {
            rec(g, cells, cell + 1, order, best);
            return;
        }
        for j in i..k {
            cells[cell].swap(i, j);
            order.push(cells[cell][i]);
            permute_cell(g, cells, cell, i + 1, k, order, best);
            order.pop();
            cells[cell].swap(i, j);
        }
    }
    rec(g, &mut cells, 0, &mut order, &mut best);
    best
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let pairs = all_pairs(n);
    let edges: Vec<_> = VertexSet::from_bits(code).iter().map(|i| pairs[i]).collect();
    Graph::from_edges(n, &edges).expect("codes only encode valid pairs")
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in increasing canonical-code order.
///
/// Classes on `n` vertices are grown from those on `n - 1`: every connected
/// graph has a non-cut vertex, so attaching a new vertex to every nonempty
/// neighbour set of every smaller class reaches all of them.
pub fn connected_classes(n: usize) -> Result<Vec<Graph>> {
    check_catalog_size(n)?;
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let small = graph_from_code(k - 1, code);
            for nbrs in 1u64..(1u64 << (k - 1)) {
                let mut g = Graph::empty(k)?;
                for (u, v) in small.edges() {
                    g.add_edge(u, v)?;
                }
                for w in VertexSet::from_bits(nbrs).iter() {
                    g.add_edge(w, k - 1)?;
                }
                next.insert(canonical_code(&g));
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|c| graph_from_code(n, c)).collect())
}

/// Trees on `n` vertices up to isomorphism.
pub fn trees(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_classes(n)?
        .into_iter()
        .filter(|g| g.edge_count() + 1 == g.n())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    /// Every connected graph on `n` labeled vertices.
    AllConnected(usize),
    /// Connected graphs on `n` vertices up to isomorphism.
    Connected(usize),
    /// Trees on `n` vertices up to isomorphism.
    Trees(usize),
    /// A tree given by its edge list.
    Tree(Vec<(usize, usize)>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "kbip:{a},{b}"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::AllConnected(n) => write!(f, "all_connected:{n}"),
            Family::Connected(n) => write!(f, "connected:{n}"),
            Family::Trees(n) => write!(f, "trees:{n}"),
            Family::Tree(edges) => {
                write!(f, "tree:")?;
                for (i, (u, v)) in edges.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name:params`, e.g. `cycle:5`, `kbip:3,3`, `tree:0-1,1-2`.
    fn from_str(s: &str) -> Result<Family> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let bad = || Error::Parse(format!("bad parameters in family spec `{s}`"));
        let one = || params.trim().parse::<usize>().map_err(|_| bad());
        match name.trim() {
            "path" => Ok(Family::Path(one()?)),
            "cycle" => Ok(Family::Cycle(one()?)),
            "complete" => Ok(Family::Complete(one()?)),
            "star" => Ok(Family::Star(one()?)),
            "all_connected" => Ok(Family::AllConnected(one()?)),
            "connected" => Ok(Family::Connected(one()?)),
            "trees" => Ok(Family::Trees(one()?)),
            "kbip" | "complete_bipartite" => {
                let (a, b) = params.split_once(',').ok_or_else(bad)?;
                Ok(Family::CompleteBipartite(
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                ))
            }
            "tree" => {
                let mut edges = Vec::new();
                for tok in params.split(',').filter(|t| !t.trim().is_empty()) {
                    let (u, v) = tok.split_once('-').ok_or_else(bad)?;
                    edges.push((
                        u.trim().parse().map_err(|_| bad())?,
                        v.trim().parse().map_err(|_| bad())?,
                    ));
                }
                Ok(Family::Tree(edges))
            }
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

/// Materialises a family. Single-graph families yield one element.
pub fn generate_family(family: &Family) -> Result<Vec<Graph>> {
    match family {
        Family::Path(n) => Ok(vec![path(*n)?]),
        Family::Cycle(n) => Ok(vec![cycle(*n)?]),
        Family::Complete(n) => Ok(vec![complete(*n)?]),
        Family::CompleteBipartite(a, b) => Ok(vec![complete_bipartite(*a, *b)?]),
        Family::Star(k) => Ok(vec![star(*k)?]),
        Family::AllConnected(n) => all_connected(*n),
        Family::Connected(n) => connected_classes(*n),
        Family::Trees(n) => trees(*n),
        Family::Tree(edges) => {
            let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
            let g = Graph::from_edges(n, edges)?;
            if !(g.is_connected() && g.is_forest()) {
                return Err(Error::Precondition(format!("{family} is not a tree")));
            }
            Ok(vec![g])
        }
    }
}
