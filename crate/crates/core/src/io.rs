//! Plain-text edge lists and histogram CSV.
//!
//! Edge lists hold one `i<TAB>j` edge per line, ascending by `(i, j)`, after
//! a single `#` header line. Two headers fix the node set explicitly:
//!
//! * `# mcn r=<r> n=<N>`: nodes `r+1..=N`
//! * `# sf gamma=<γ> n=<N> seed=<s>`: nodes `1..=N`
//!
//! Any other header leaves the node set as the labels that appear in edges.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::layer::{theoretical_pk, DegreeHistogram, LayerSpec};
use crate::robustness::StaticModelSpec;

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeListHeader {
    Mcn { r: u64, n: u64 },
    Sf { gamma: f64, n: u64, seed: u64 },
    Other(String),
}

impl EdgeListHeader {
    pub fn for_layer(spec: LayerSpec) -> Self {
        Self::Mcn { r: spec.remainder(), n: spec.ceiling() }
    }

    pub fn for_static_model(spec: &StaticModelSpec) -> Self {
        Self::Sf { gamma: spec.gamma, n: spec.n as u64, seed: spec.seed }
    }

    fn render(&self) -> String {
        match self {
            Self::Mcn { r, n } => format!("# mcn r={r} n={n}"),
            Self::Sf { gamma, n, seed } => format!("# sf gamma={gamma} n={n} seed={seed}"),
            Self::Other(text) => format!("# {text}"),
        }
    }

    fn parse(line: &str) -> Result<Self> {
        let body = line.trim_start_matches('#').trim();
        let mut words = body.split_whitespace();
        let kind = words.next();
        let fields: Vec<(&str, &str)> = words.filter_map(|w| w.split_once('=')).collect();
        let get = |key: &str| -> Result<&str> {
            fields
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Parse { line: 1, msg: format!("header lacks {key}=") })
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Parse { line: 1, msg: format!("bad value for {key}") })
        };
        match kind {
            Some("mcn") => Ok(Self::Mcn { r: num("r")?, n: num("n")? }),
            Some("sf") => Ok(Self::Sf {
                gamma: get("gamma")?
                    .parse()
                    .map_err(|_| Error::Parse { line: 1, msg: "bad value for gamma".into() })?,
                n: num("n")?,
                seed: num("seed")?,
            }),
            _ => Ok(Self::Other(body.to_string())),
        }
    }
}

pub fn write_edge_list(g: &Digraph, header: &EdgeListHeader) -> String {
    let mut out = String::with_capacity(16 * g.edge_count() + 32);
    out.push_str(&header.render());
    out.push('\n');
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i}\t{j}");
    }
    out
}

/// Parses an edge list; see the module docs for how the node set is fixed.
pub fn read_edge_list(text: &str) -> Result<(EdgeListHeader, Digraph)> {
    let mut header = EdgeListHeader::Other(String::new());
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if no == 0 {
                header = EdgeListHeader::parse(line)?;
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<u64> {
            s.and_then(|v| v.parse().ok()).ok_or_else(|| Error::Parse {
                line: no + 1,
                msg: format!("expected two node labels, got {raw:?}"),
            })
        };
        let i = parse(parts.next())?;
        let j = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Parse { line: no + 1, msg: "trailing fields".into() });
        }
        edges.push((i, j));
    }

    let nodes: Vec<u64> = match &header {
        EdgeListHeader::Mcn { r, n } => LayerSpec::new(*r, *n)?.nodes().collect(),
        EdgeListHeader::Sf { n, .. } => (1..=*n).collect(),
        EdgeListHeader::Other(_) => edges.iter().flat_map(|&(a, b)| [a, b]).collect(),
    };
    let g = Digraph::from_edges(nodes, edges)?;
    Ok((header, g))
}

pub const HISTOGRAM_HEADER: &str = "k,count,empirical_p,theoretical_p";

/// One row per observed degree. `theoretical_p` is left empty where the
/// large-`N` law is undefined (`k = 0` on layers with `r > 0`).
pub fn histogram_csv(h: &DegreeHistogram, r: u64) -> String {
    let mut out = String::new();
    out.push_str(HISTOGRAM_HEADER);
    out.push('\n');
    for (&k, &count) in &h.counts {
        let theory = theoretical_pk(r, k as u64).map(|p| p.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{k},{count},{},{theory}", h.empirical_p(k));
    }
    out
}
