//! Expected-versus-computed verification of one `(graph, q)` pair.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{
    expected_cm_class, expected_depth, expected_dim, expected_pure, expected_shellable_upper,
    facet_complement_check, CmClass,
};
use crate::error::{Error, Result};
use crate::even_conn::{colon_check_all, MatchingOrder};
use crate::graph::{matching_number, ExtNat, Graph, WhiskerGraph};
use crate::homology::{depth, is_cohen_macaulay, is_sequentially_cm, Field};
use crate::matching_free::{mf_complex, verify_sr_equality};
use crate::shelling::{
    constructive_whisker_shelling, decide_shellability, is_shelling_order, Shellability,
    DEFAULT_FACET_CAP,
};
use crate::simplicial::SimplicialComplex;
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Check {
    #[serde(rename = "pure")]
    Purity,
    #[serde(rename = "dim")]
    Dim,
    #[serde(rename = "shellable")]
    Shelling,
    #[serde(rename = "cm_class")]
    Cm,
    #[serde(rename = "depth")]
    Depth,
    #[serde(rename = "colon")]
    Colon,
    #[serde(rename = "sr")]
    Sr,
    #[serde(rename = "facet_complement")]
    FacetComplement,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Purity,
        Check::Dim,
        Check::Shelling,
        Check::Cm,
        Check::Depth,
        Check::Colon,
        Check::Sr,
        Check::FacetComplement,
    ];

    /// Name on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Check::Purity => "purity",
            Check::Dim => "dim",
            Check::Shelling => "shelling",
            Check::Cm => "cm",
            Check::Depth => "depth",
            Check::Colon => "colon",
            Check::Sr => "sr",
            Check::FacetComplement => "facet-complement",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

/// Comma-separated check names, `all` for every check. Sorted, no repeats.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        if part.trim() == "all" {
            out.extend(Check::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("no checks given".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The graph under test: `W(H)` given by `H`, or a graph taken as is.
#[derive(Clone, Debug)]
pub enum Subject {
    Whisker(WhiskerGraph),
    Raw(Graph),
}

impl Subject {
    pub fn graph(&self) -> &Graph {
        match self {
            Subject::Whisker(w) => w.graph(),
            Subject::Raw(g) => g,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub fields: Vec<Field>,
    pub facet_cap: usize,
    pub order: MatchingOrder,
    /// Leave out timings so that output is reproducible byte for byte.
    pub stable: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fields: vec![Field::Gf2, Field::Rationals],
            facet_cap: DEFAULT_FACET_CAP,
            order: MatchingOrder::Lexicographic,
            stable: false,
        }
    }
}

/// Predicted values; a field is absent when there is no prediction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shellable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm_class: Option<CmClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colon: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sr: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_complement: Option<bool>,
}

impl Expected {
    /// Copies the predictions of `other` for the given checks over these.
    pub fn override_with(&mut self, other: &Expected, checks: &[Check]) {
        for &c in checks {
            match c {
                Check::Purity => self.pure = other.pure.or(self.pure),
                Check::Dim => self.dim = other.dim.or(self.dim),
                Check::Shelling => self.shellable = other.shellable.or(self.shellable),
                Check::Cm => self.cm_class = other.cm_class.or(self.cm_class),
                Check::Depth => self.depth = other.depth.or(self.depth),
                Check::Colon => self.colon = other.colon.or(self.colon),
                Check::Sr => self.sr = other.sr.or(self.sr),
                Check::FacetComplement => {
                    self.facet_complement = other.facet_complement.or(self.facet_complement)
                }
            }
        }
    }

    pub fn render(&self, check: Check) -> Option<String> {
        match check {
            Check::Purity => self.pure.map(|v| v.to_string()),
            Check::Dim => self.dim.map(|v| v.to_string()),
            Check::Shelling => self.shellable.map(|v| v.to_string()),
            Check::Cm => self.cm_class.map(|c| {
                serde_json::to_value(c)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            }),
            Check::Depth => self.depth.map(|v| v.to_string()),
            Check::Colon => self.colon.map(|v| v.to_string()),
            Check::Sr => self.sr.map(|v| v.to_string()),
            Check::FacetComplement => self.facet_complement.map(|v| v.to_string()),
        }
    }
}

/// One value per field that was computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerField<T> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gf2: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rationals: Option<T>,
}

impl<T: Copy> PerField<T> {
    fn compute(fields: &[Field], mut f: impl FnMut(Field) -> Result<T>) -> Result<PerField<T>> {
        let mut out = PerField {
            gf2: None,
            rationals: None,
        };
        for &field in fields {
            let v = Some(f(field)?);
            match field {
                Field::Gf2 => out.gf2 = v,
                Field::Rationals => out.rationals = v,
            }
        }
        Ok(out)
    }

    pub fn values(&self) -> impl Iterator<Item = (Field, T)> + '_ {
        [(Field::Gf2, self.gf2), (Field::Rationals, self.rationals)]
            .into_iter()
            .filter_map(|(f, v)| v.map(|v| (f, v)))
    }

    fn all(&self, pred: impl Fn(T) -> bool) -> bool {
        self.values().all(|(_, v)| pred(v))
    }
}

impl<T: Copy + fmt::Display> PerField<T> {
    fn render(&self, tag: &str) -> String {
        self.values()
            .map(|(f, v)| format!("{tag}{f}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellStatus {
    Shellable,
    NotShellable,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellMethod {
    /// Constructive whisker certificate, rechecked as a facet order.
    Certificate,
    /// Greedy or exhaustive search over facet orders.
    Search,
    /// A face whose link has no shelling.
    LinkWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingOutcome {
    pub status: ShellStatus,
    pub method: ShellMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedCm {
    pub pure: bool,
    pub cm: PerField<bool>,
    pub seq_cm: PerField<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shellable: Option<ShellingOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm_class: Option<ComputedCm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<PerField<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colon: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sr: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_complement: Option<bool>,
}

impl Computed {
    pub fn render(&self, check: Check) -> Option<String> {
        match check {
            Check::Purity => self.pure.map(|v| v.to_string()),
            Check::Dim => self.dim.map(|v| v.to_string()),
            Check::Shelling => self.shellable.as_ref().map(|s| {
                serde_json::to_value(s.status)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            }),
            Check::Cm => self.cm_class.as_ref().map(|c| {
                format!("pure={} {} {}", c.pure, c.cm.render("cm:"), c.seq_cm.render("seq-cm:"))
            }),
            Check::Depth => self.depth.as_ref().map(|d| d.render("")),
            Check::Colon => self.colon.map(|v| v.to_string()),
            Check::Sr => self.sr.map(|v| v.to_string()),
            Check::FacetComplement => self.facet_complement.map(|v| v.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Agree,
    Disagree,
    /// A prediction exists but the computation could not decide.
    Indeterminate,
    /// Computed only; nothing was predicted.
    NoClaim,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "agree",
            Verdict::Disagree => "disagree",
            Verdict::Indeterminate => "indeterminate",
            Verdict::NoClaim => "no-claim",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub graph: String,
    /// Whether the input was `H`, with the complex built on `W(H)`.
    pub whiskered: bool,
    pub n: usize,
    pub m: ExtNat,
    pub ell: ExtNat,
    pub nu: usize,
    pub q: usize,
    pub expected: Expected,
    pub computed: Computed,
    pub agree: BTreeMap<Check, Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn checks(&self) -> impl Iterator<Item = Check> + '_ {
        self.agree.keys().copied()
    }

    pub fn has_disagreement(&self) -> bool {
        self.agree.values().any(|&v| v == Verdict::Disagree)
    }

    pub fn has_indeterminate(&self) -> bool {
        self.agree.values().any(|&v| v == Verdict::Indeterminate)
    }

    /// The verdicts recomputed from `expected` and `computed`.
    pub fn judged(&self) -> BTreeMap<Check, Verdict> {
        judge(&self.expected, &self.computed, &self.checks().collect::<Vec<_>>())
    }
}

fn compare<T: PartialEq>(expected: Option<T>, computed: Option<T>) -> Verdict {
    match (expected, computed) {
        (None, _) => Verdict::NoClaim,
        (Some(_), None) => Verdict::Indeterminate,
        (Some(e), Some(c)) if e == c => Verdict::Agree,
        _ => Verdict::Disagree,
    }
}

fn cm_matches(class: CmClass, c: &ComputedCm) -> bool {
    match class {
        CmClass::CM => c.pure && c.cm.all(|v| v),
        CmClass::SeqCmNotPure => !c.pure && c.seq_cm.all(|v| v),
        CmClass::NotPure => !c.pure,
        CmClass::PureUnknownCm => c.pure,
        CmClass::FullSimplex => c.pure && c.cm.all(|v| v),
    }
}

fn judge(e: &Expected, c: &Computed, checks: &[Check]) -> BTreeMap<Check, Verdict> {
    checks
        .iter()
        .map(|&check| {
            let verdict = match check {
                Check::Purity => compare(e.pure, c.pure),
                Check::Dim => compare(e.dim, c.dim),
                Check::Shelling => compare(
                    e.shellable,
                    c.shellable.as_ref().and_then(|s| match s.status {
                        ShellStatus::Shellable => Some(true),
                        ShellStatus::NotShellable => Some(false),
                        ShellStatus::Indeterminate => None,
                    }),
                ),
                Check::Cm => compare(e.cm_class.map(|_| true), {
                    e.cm_class.zip(c.cm_class.as_ref()).map(|(k, c)| cm_matches(k, c))
                }),
                Check::Depth => match (e.depth, &c.depth) {
                    (None, _) => Verdict::NoClaim,
                    (Some(_), None) => Verdict::Indeterminate,
                    (Some(d), Some(per)) => {
                        if per.all(|v| v == d) {
                            Verdict::Agree
                        } else {
                            Verdict::Disagree
                        }
                    }
                },
                Check::Colon => compare(e.colon, c.colon),
                Check::Sr => compare(e.sr, c.sr),
                Check::FacetComplement => compare(e.facet_complement, c.facet_complement),
            };
            (check, verdict)
        })
        .collect()
}

fn predictions(subject: &Subject, q: usize, checks: &[Check]) -> Result<Expected> {
    let mut e = Expected::default();
    for &check in checks {
        match (check, subject) {
            (Check::Colon, _) => e.colon = Some(true),
            (Check::Sr, _) => e.sr = Some(true),
            (_, Subject::Raw(_)) => {}
            (Check::Purity, Subject::Whisker(w)) => e.pure = Some(expected_pure(w.base(), q)?),
            (Check::Dim, Subject::Whisker(w)) => e.dim = Some(expected_dim(w.base(), q)?),
            (Check::Shelling, Subject::Whisker(w)) => {
                e.shellable = (q <= expected_shellable_upper(w.base())).then_some(true)
            }
            (Check::Cm, Subject::Whisker(w)) => e.cm_class = Some(expected_cm_class(w.base(), q)?),
            (Check::Depth, Subject::Whisker(w)) => e.depth = expected_depth(w.base(), q)?,
            (Check::FacetComplement, Subject::Whisker(w)) => {
                e.facet_complement = facet_complement_applies(w, q).then_some(true)
            }
        }
    }
    Ok(e)
}

/// The facet description concerns `q = n − 1` and triangle-free `H`.
fn facet_complement_applies(w: &WhiskerGraph, q: usize) -> bool {
    w.n() >= 2 && q == w.n() - 1 && w.base().girth() != ExtNat::Finite(3)
}

fn shelling(subject: &Subject, cx: &SimplicialComplex, q: usize, opts: &VerifyOptions) -> Result<ShellingOutcome> {
    if let Subject::Whisker(w) = subject {
        if let Ok(cert) = constructive_whisker_shelling(w, q, opts.order)? {
            if is_shelling_order(cx, &cert.facet_order)? {
                return Ok(ShellingOutcome {
                    status: ShellStatus::Shellable,
                    method: ShellMethod::Certificate,
                    witness: None,
                });
            }
        }
    }
    Ok(match decide_shellability(cx, opts.facet_cap)? {
        Shellability::Shellable { .. } => ShellingOutcome {
            status: ShellStatus::Shellable,
            method: ShellMethod::Search,
            witness: None,
        },
        Shellability::NotShellable { witness } => ShellingOutcome {
            status: ShellStatus::NotShellable,
            method: if witness.is_some() { ShellMethod::LinkWitness } else { ShellMethod::Search },
            witness,
        },
        Shellability::Indeterminate => ShellingOutcome {
            status: ShellStatus::Indeterminate,
            method: ShellMethod::Search,
            witness: None,
        },
    })
}

/// Runs the requested checks on `MF^q` of the subject. Predictions from
/// `overrides` replace the built-in ones for the requested checks.
pub fn verify(
    name: &str,
    subject: &Subject,
    q: usize,
    checks: &[Check],
    opts: &VerifyOptions,
    overrides: &Expected,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if opts.fields.is_empty() {
        return Err(Error::Precondition("at least one field is needed".into()));
    }
    if opts.facet_cap == 0 {
        return Err(Error::Precondition("the facet cap must be positive".into()));
    }
    let g = subject.graph();
    let nu = matching_number(g);
    if q == 0 {
        return Err(Error::ZeroQ);
    }
    if q > nu {
        return Err(Error::QOutOfRange { q, max: nu });
    }
    let stats_of = match subject {
        Subject::Whisker(w) => w.base(),
        Subject::Raw(g) => g,
    };
    let cx = mf_complex(g, q)?;
    let mut expected = predictions(subject, q, checks)?;
    expected.override_with(overrides, checks);

    let mut computed = Computed::default();
    for &check in checks {
        match check {
            Check::Purity => computed.pure = Some(cx.is_pure()),
            Check::Dim => computed.dim = cx.dim().map(|d| d as usize),
            Check::Shelling => computed.shellable = Some(shelling(subject, &cx, q, opts)?),
            Check::Cm => {
                computed.cm_class = Some(ComputedCm {
                    pure: cx.is_pure(),
                    cm: PerField::compute(&opts.fields, |f| is_cohen_macaulay(&cx, f))?,
                    seq_cm: PerField::compute(&opts.fields, |f| is_sequentially_cm(&cx, f))?,
                })
            }
            Check::Depth => computed.depth = Some(PerField::compute(&opts.fields, |f| depth(&cx, f))?),
            Check::Colon => computed.colon = Some(colon_check_all(g, q)?.is_none()),
            Check::Sr => computed.sr = Some(verify_sr_equality(g, q)?),
            Check::FacetComplement => {
                if let Subject::Whisker(w) = subject {
                    if facet_complement_applies(w, q) {
                        computed.facet_complement = Some(facet_complement_check(w.base())?);
                    }
                }
            }
        }
    }
    let agree = judge(&expected, &computed, checks);
    Ok(VerificationReport {
        graph: name.to_string(),
        whiskered: matches!(subject, Subject::Whisker(_)),
        n: stats_of.n(),
        m: stats_of.girth(),
        ell: stats_of.odd_girth(),
        nu,
        q,
        expected,
        computed,
        agree,
        elapsed_ms: (!opts.stable).then(|| start.elapsed().as_millis() as u64),
    })
}
