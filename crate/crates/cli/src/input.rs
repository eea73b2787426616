//! Graph sources, family specs, `q` ranges and matchings on the command line.

use std::fs;
use std::io::Read;

use mfq::graph::{
    cycle, from_edge_list, from_graph6, generate_family, matching_number, path, Family,
};
use mfq::theorems::{expected_shellable_upper, Subject};
use mfq::{Error, Graph, Matching, Result, WhiskerGraph};

/// A named graph to run on.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub subject: Subject,
}

fn whiskered(name: String, h: Graph) -> Result<Input> {
    Ok(Input {
        name,
        subject: Subject::Whisker(WhiskerGraph::new(h)?),
    })
}

/// `wcN` and `wpN`: the whisker graphs of the cycle and the path.
fn shorthand(src: &str) -> Option<Result<Graph>> {
    let (kind, n) = src.split_at_checked(2)?;
    let n: usize = n.parse().ok()?;
    match kind {
        "wc" => Some(cycle(n)),
        "wp" => Some(path(n)),
        _ => None,
    }
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

/// Graphs in a file: the edge-list format when the first content line is a
/// bare vertex count, otherwise graph6, one graph per line.
pub fn parse_graph_text(text: &str) -> Result<Vec<Graph>> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Parse("no graph found".into()))?;
    if first.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(vec![from_edge_list(text)?]);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(from_graph6)
        .collect()
}

/// A `--graph` argument. Shorthands give whisker graphs; graphs read from a
/// file are used as given unless `whisker` is set, in which case they are
/// the base graph `H`.
pub fn load_graph(src: &str, whisker: bool) -> Result<Vec<Input>> {
    if let Some(h) = shorthand(src) {
        return Ok(vec![whiskered(src.to_string(), h?)?]);
    }
    let graphs = parse_graph_text(&read_source(src)?)?;
    let single = graphs.len() == 1;
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let name = if single { src.to_string() } else { format!("{src}#{i}") };
            if whisker {
                whiskered(name, g)
            } else {
                Ok(Input {
                    name,
                    subject: Subject::Raw(g),
                })
            }
        })
        .collect()
}

/// A `--family` argument: every graph of the family is a base graph `H`.
pub fn load_family(spec: &str) -> Result<Vec<Input>> {
    let family: Family = spec.parse()?;
    let graphs = generate_family(&family)?;
    let single = graphs.len() == 1;
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, h)| {
            let name = if single { family.to_string() } else { format!("{family}#{i}") };
            whiskered(name, h)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSpec {
    /// `1..=ν`.
    All,
    /// `1..=` the predicted shellability bound.
    Shellable,
    Range(usize, usize),
}

impl std::str::FromStr for QSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<QSpec> {
        let bad = || Error::Parse(format!("bad q range `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let s = s.trim();
        let (a, b) = match s {
            "all" => return Ok(QSpec::All),
            "shellable" => return Ok(QSpec::Shellable),
            _ => match s.split_once("..") {
                Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
                None => (num(s)?, num(s)?),
            },
        };
        if a == 0 || a > b {
            return Err(bad());
        }
        Ok(QSpec::Range(a, b))
    }
}

impl QSpec {
    /// The `q` values for a subject. With `clip`, a range is cut down to
    /// `1..=ν`; otherwise values above `ν` are an error.
    pub fn values(self, subject: &Subject, clip: bool) -> Result<Vec<usize>> {
        let nu = matching_number(subject.graph());
        let (a, b) = match self {
            QSpec::All => (1, nu),
            QSpec::Shellable => match subject {
                Subject::Whisker(w) => (1, expected_shellable_upper(w.base()).min(nu)),
                Subject::Raw(_) => {
                    return Err(Error::Precondition("`shellable` needs a whiskered input".into()))
                }
            },
            QSpec::Range(a, b) if clip => (a, b.min(nu)),
            QSpec::Range(_, b) if b > nu => return Err(Error::QOutOfRange { q: b, max: nu }),
            QSpec::Range(a, b) => (a, b),
        };
        Ok((a..=b).collect())
    }
}

/// A vertex by label, falling back to its index.
fn vertex(g: &Graph, name: &str) -> Option<usize> {
    (0..g.n())
        .find(|&v| g.label(v) == name)
        .or_else(|| name.parse().ok().filter(|&v| v < g.n()))
}

/// Comma-separated edges, each `u-v` or two labels written together as in
/// `x1y1`.
pub fn parse_matching(g: &Graph, s: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let pair = match tok.split_once('-') {
            Some((a, b)) => vertex(g, a.trim()).zip(vertex(g, b.trim())),
            None => (1..tok.len())
                .filter(|&i| tok.is_char_boundary(i))
                .find_map(|i| vertex(g, &tok[..i]).zip(vertex(g, &tok[i..]))),
        };
        edges.push(pair.ok_or_else(|| Error::Parse(format!("cannot read edge `{tok}`")))?);
    }
    if edges.is_empty() {
        return Err(Error::Parse("empty matching".into()));
    }
    Matching::in_graph(g, edges)
}
