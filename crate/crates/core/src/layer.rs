//! Congruence layers, the multiplex network, chains and degree statistics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// One congruence layer `G(r, N)`: remainder `r` and ceiling `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LayerSpec {
    r: u64,
    n: u64,
}

impl LayerSpec {
    pub fn new(r: u64, n: u64) -> Result<Self> {
        if r.checked_add(2).is_none_or(|min| n < min) {
            return Err(Error::InvalidLayer { r, n });
        }
        Ok(Self { r, n })
    }

    pub fn remainder(&self) -> u64 {
        self.r
    }

    pub fn ceiling(&self) -> u64 {
        self.n
    }

    /// Number of nodes, `N - r`.
    pub fn node_count(&self) -> u64 {
        self.n - self.r
    }

    /// Node labels `r+1..=N`.
    pub fn nodes(&self) -> std::ops::RangeInclusive<u64> {
        self.r + 1..=self.n
    }

    /// Smallest candidate successor of `m`; may exceed the ceiling.
    fn first_successor(&self, m: u64) -> u64 {
        if self.r == 0 {
            2 * m
        } else {
            m + self.r
        }
    }

    /// Closed-form out-degree of node `m`.
    pub fn degree_formula(&self, m: u64) -> u64 {
        if self.r == 0 {
            self.n / m - 1
        } else {
            (self.n - self.r) / m
        }
    }
}

/// Builds the layer `G(r, N)` with fully materialized successor lists.
///
/// For `r > 0` node `m` links to `m + r, 2m + r, ...`; for `r = 0` it links to
/// its proper multiples `2m, 3m, ...`. Everything is capped at `N`.
pub fn build_layer(spec: LayerSpec) -> Digraph {
    let base = spec.r + 1;
    let labels: Vec<u64> = spec.nodes().collect();
    let adjacency = spec
        .nodes()
        .map(|m| {
            let mut succ = Vec::with_capacity(spec.degree_formula(m) as usize);
            let mut j = spec.first_successor(m);
            while j <= spec.n {
                succ.push((j - base) as usize);
                j += m;
            }
            succ
        })
        .collect();
    Digraph::from_sorted_adjacency(labels, adjacency)
}

pub fn out_degree(g: &Digraph, m: u64) -> Result<usize> {
    g.out_degree(m)
}

/// Layers sharing one ceiling, keyed by remainder.
#[derive(Debug, Clone)]
pub struct MultiplexNetwork {
    n: u64,
    layers: BTreeMap<u64, Digraph>,
}

impl MultiplexNetwork {
    /// Builds one layer per distinct remainder; repeated remainders share a layer.
    pub fn new(n: u64, remainders: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut layers = BTreeMap::new();
        for r in remainders {
            if let std::collections::btree_map::Entry::Vacant(slot) = layers.entry(r) {
                slot.insert(build_layer(LayerSpec::new(r, n)?));
            }
        }
        Ok(Self { n, layers })
    }

    pub fn ceiling(&self) -> u64 {
        self.n
    }

    pub fn layer(&self, r: u64) -> Option<&Digraph> {
        self.layers.get(&r)
    }

    pub fn remainders(&self) -> impl Iterator<Item = u64> + '_ {
        self.layers.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

/// Arithmetic progression `i + n*r` linked consecutively inside a layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub root: u64,
    pub members: Vec<u64>,
}

/// Splits the node set of `G(r > 0, N)` into its `r` arithmetic chains.
///
/// Chains are returned in root order. When `N < 2r` the residues whose first
/// member would exceed `N` have no chain, so fewer than `r` chains come back.
pub fn extract_chains(spec: LayerSpec) -> Result<Vec<Chain>> {
    let r = spec.r;
    if r == 0 {
        return Err(Error::Unsupported(
            "the divisibility layer (r = 0) has no chain decomposition".into(),
        ));
    }
    Ok((1..=r)
        .filter_map(|i| {
            let len = (spec.n - i) / r;
            if len == 0 {
                return None;
            }
            let members: Vec<u64> = (1..=len).map(|k| i + k * r).collect();
            Some(Chain { root: members[0], members })
        })
        .collect())
}

/// Out-degree histogram over every node of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<usize, usize>,
    pub total_nodes: usize,
}

impl DegreeHistogram {
    pub fn count(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// Fraction of all nodes with out-degree `k`.
    pub fn empirical_p(&self, k: usize) -> f64 {
        if self.total_nodes == 0 {
            return 0.0;
        }
        self.count(k) as f64 / self.total_nodes as f64
    }

    /// `Σ k · count(k)`, which equals the edge count of the source graph.
    pub fn edge_total(&self) -> usize {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }
}

pub fn empirical_distribution(g: &Digraph) -> DegreeHistogram {
    let mut counts = BTreeMap::new();
    for idx in 0..g.node_count() {
        *counts.entry(g.out_degree_at(idx)).or_insert(0) += 1;
    }
    DegreeHistogram { counts, total_nodes: g.node_count() }
}

/// Large-`N` out-degree law: `1/(k(k+1))` for `r > 0`, `1/((k+1)(k+2))` for `r = 0`.
pub fn theoretical_pk(r: u64, k: u64) -> Result<f64> {
    let k = k as f64;
    if r == 0 {
        Ok(1.0 / ((k + 1.0) * (k + 2.0)))
    } else if k == 0.0 {
        Err(Error::Domain("P(k) for r > 0 is defined for k >= 1".into()))
    } else {
        Ok(1.0 / (k * (k + 1.0)))
    }
}

/// Mean out-degree over all nodes: integer edge sum, one division.
pub fn average_degree(g: &Digraph) -> f64 {
    if g.node_count() == 0 {
        return 0.0;
    }
    g.edge_count() as f64 / g.node_count() as f64
}

/// Mean out-degree over nodes with at least one out-link.
pub fn average_degree_over_sources(g: &Digraph) -> f64 {
    let sources = (0..g.node_count()).filter(|&i| g.out_degree_at(i) > 0).count();
    if sources == 0 {
        return 0.0;
    }
    g.edge_count() as f64 / sources as f64
}

/// Harmonic-sum approximation of the mean out-degree of `G(r, N)`.
pub fn theoretical_average_degree(spec: LayerSpec) -> f64 {
    if spec.r == 0 {
        return (spec.n as f64).ln() + 2.0 * EULER_GAMMA - 2.0;
    }
    let size = spec.n - spec.r;
    let head: u64 = (1..=spec.r).map(|i| size / i).sum();
    (size as f64).ln() + 2.0 * EULER_GAMMA - 1.0 - head as f64 / size as f64
}
