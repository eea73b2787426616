//! Brute-force oracles compared with the structured computations.

use std::collections::BTreeSet;

use clap::ValueEnum;
use mfq::even_conn::{colon_check, even_conn_edges, even_connected};
use mfq::matching_free::{mf_complex, mf_facets_by_subset_filter, sf_power, stanley_reisner};
use mfq::{Graph, Matching, Result, VertexSet};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// `(I^[k+1] : ∏ Supp M)` by brute force against `I(G^M)`.
    Colon,
    /// Minimal non-faces of `MF^q(G)` against the `q`-matching supports.
    Sr,
    /// Even-connection search against the colon ideal, with every witness
    /// walk rechecked.
    EvenConn,
    /// Facets of `MF^q(G)` against a filter over all vertex subsets.
    Facets,
}

impl OracleKind {
    /// Whether the oracle is indexed by a matching rather than by `q`.
    pub fn takes_matching(self) -> bool {
        matches!(self, OracleKind::Colon | OracleKind::EvenConn)
    }

    fn name(self) -> &'static str {
        match self {
            OracleKind::Colon => "colon",
            OracleKind::Sr => "sr",
            OracleKind::EvenConn => "even-conn",
            OracleKind::Facets => "facets",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub oracle: &'static str,
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<String>>,
    pub structured: usize,
    pub brute_force: usize,
    pub only_structured: Vec<Vec<String>>,
    pub only_brute_force: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_quadratic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invalid_witnesses: Option<Vec<Vec<String>>>,
    pub agree: bool,
}

fn names(g: &Graph, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| g.label(v)).collect()
}

fn edge_names(g: &Graph, m: &Matching) -> Vec<String> {
    m.edges()
        .iter()
        .map(|&(u, v)| format!("{}-{}", g.label(u), g.label(v)))
        .collect()
}

struct Comparison {
    structured: usize,
    brute_force: usize,
    only_structured: Vec<Vec<String>>,
    only_brute_force: Vec<Vec<String>>,
}

impl Comparison {
    fn new(g: &Graph, structured: &[VertexSet], brute: &[VertexSet]) -> Comparison {
        let a: BTreeSet<VertexSet> = structured.iter().copied().collect();
        let b: BTreeSet<VertexSet> = brute.iter().copied().collect();
        Comparison {
            structured: a.len(),
            brute_force: b.len(),
            only_structured: a.difference(&b).map(|&s| names(g, s)).collect(),
            only_brute_force: b.difference(&a).map(|&s| names(g, s)).collect(),
        }
    }

    fn same(&self) -> bool {
        self.only_structured.is_empty() && self.only_brute_force.is_empty()
    }

    fn into_report(self, kind: OracleKind, graph: &str, q: Option<usize>, matching: Option<Vec<String>>) -> OracleReport {
        let agree = self.same();
        OracleReport {
            oracle: kind.name(),
            graph: graph.to_string(),
            q,
            matching,
            structured: self.structured,
            brute_force: self.brute_force,
            only_structured: self.only_structured,
            only_brute_force: self.only_brute_force,
            all_quadratic: None,
            invalid_witnesses: None,
            agree,
        }
    }
}

pub fn run_with_matching(kind: OracleKind, name: &str, g: &Graph, m: &Matching) -> Result<OracleReport> {
    let check = colon_check(g, m)?;
    match kind {
        OracleKind::Colon => {
            let cmp = Comparison::new(g, check.edge_ideal.generators(), check.colon.generators());
            let mut r = cmp.into_report(kind, name, None, Some(edge_names(g, m)));
            r.all_quadratic = Some(check.all_quadratic);
            r.agree &= check.all_quadratic;
            Ok(r)
        }
        OracleKind::EvenConn => {
            let edges = even_conn_edges(g, m);
            let found: Vec<VertexSet> = edges.iter().map(|&(u, v)| VertexSet::from_slice(&[u, v])).collect();
            let mut invalid = Vec::new();
            for &(u, v) in edges.iter().filter(|&&(u, v)| !g.has_edge(u, v)) {
                let ok = even_connected(g, m, u, v)?.is_some_and(|w| w.is_valid(g, m));
                if !ok {
                    invalid.push(vec![g.label(u), g.label(v)]);
                }
            }
            let cmp = Comparison::new(g, &found, check.colon.generators());
            let mut r = cmp.into_report(kind, name, None, Some(edge_names(g, m)));
            r.agree &= invalid.is_empty();
            r.invalid_witnesses = Some(invalid);
            Ok(r)
        }
        _ => unreachable!("indexed by q"),
    }
}

pub fn run_with_q(kind: OracleKind, name: &str, g: &Graph, q: usize) -> Result<OracleReport> {
    let (structured, brute) = match kind {
        OracleKind::Sr => (
            stanley_reisner(&mf_complex(g, q)?).generators().to_vec(),
            sf_power(g, q)?.generators().to_vec(),
        ),
        OracleKind::Facets => (mf_complex(g, q)?.facets().to_vec(), mf_facets_by_subset_filter(g, q)?),
        _ => unreachable!("indexed by a matching"),
    };
    Ok(Comparison::new(g, &structured, &brute).into_report(kind, name, Some(q), None))
}
