//! Node-removal attacks, driver-density curves and the static-model
//! scale-free baseline.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use serde::Serialize;

use crate::control::min_drivers_matching;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::seed;

/// Slack for `⌊p·n⌋` when `p·n` lands a few ulps under an integer.
const FLOOR_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackStrategy {
    /// Uniformly random node subset.
    Random,
    /// Highest out-degree first, ties by ascending label.
    Targeted,
}

impl AttackStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttackStrategy::Random => "random",
            AttackStrategy::Targeted => "targeted",
        }
    }
}

impl std::str::FromStr for AttackStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "targeted" => Ok(Self::Targeted),
            other => Err(Error::Validation(format!("unknown attack strategy {other:?}"))),
        }
    }
}

fn check_fraction(p: f64) -> Result<()> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::Validation(format!("removal fraction {p} is outside [0, 1)")));
    }
    Ok(())
}

/// `⌊p·n⌋`.
pub fn removal_count(p: f64, n: usize) -> usize {
    ((p * n as f64 + FLOOR_EPS).floor() as usize).min(n)
}

/// Nodes sorted by descending out-degree, ties broken by ascending label.
fn degree_order(g: &Digraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    // labels ascend with index, so a stable sort on degree keeps label order
    order.sort_by_key(|&i| std::cmp::Reverse(g.out_degree_at(i)));
    order
}

/// Removes `⌊p·n⌋` nodes and returns the induced subgraph on the survivors.
pub fn remove_nodes(g: &Digraph, strategy: AttackStrategy, p: f64, seed: u64) -> Result<Digraph> {
    check_fraction(p)?;
    let n = g.node_count();
    let k = removal_count(p, n);
    if k == 0 {
        return Ok(g.clone());
    }
    let mut keep = vec![true; n];
    match strategy {
        AttackStrategy::Random => {
            let mut rng = seed::rng(seed);
            for i in index::sample(&mut rng, n, k) {
                keep[i] = false;
            }
        }
        AttackStrategy::Targeted => {
            for i in degree_order(g).into_iter().take(k) {
                keep[i] = false;
            }
        }
    }
    Ok(g.induced(&keep))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackPoint {
    pub p: f64,
    pub nd_mean: f64,
    pub nd_std: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackCurve {
    pub points: Vec<AttackPoint>,
    pub strategy: AttackStrategy,
    pub source: String,
    pub seed: u64,
}

impl AttackCurve {
    pub const CSV_HEADER: &'static str = "p,nd_mean,nd_std,trials,strategy";

    /// CSV with the fixed header; floats use the shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for pt in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                pt.p,
                pt.nd_mean,
                pt.nd_std,
                pt.trials,
                self.strategy.as_str()
            );
        }
        out
    }
}

/// Evenly spaced grid `0, pmax/steps, ..., pmax`.
pub fn p_grid(pmax: f64, steps: usize) -> Result<Vec<f64>> {
    check_fraction(pmax)?;
    if steps == 0 {
        return Ok(vec![0.0]);
    }
    Ok((0..=steps).map(|i| i as f64 * pmax / steps as f64).collect())
}

fn trial_density(g: &Digraph, strategy: AttackStrategy, p: f64, seed: u64) -> Result<f64> {
    let sub = remove_nodes(g, strategy, p, seed)?;
    if sub.node_count() == 0 {
        return Err(Error::Validation(format!("no nodes survive removal fraction {p}")));
    }
    let rep = min_drivers_matching(&sub);
    Ok(rep.n_d as f64 / sub.node_count() as f64)
}

/// Driver density after removal, one point per grid value.
///
/// Random trials use seeds derived from `(seed, p index, trial index)`, so
/// the curve does not depend on how trials are scheduled. Targeted attacks
/// are deterministic and always run a single trial.
pub fn attack_curve(
    g: &Digraph,
    strategy: AttackStrategy,
    grid: &[f64],
    trials: usize,
    seed: u64,
    source: impl Into<String>,
) -> Result<AttackCurve> {
    if trials == 0 {
        return Err(Error::Validation("attack curve needs at least one trial".into()));
    }
    if g.node_count() == 0 {
        return Err(Error::Validation("cannot attack an empty graph".into()));
    }
    for &p in grid {
        check_fraction(p)?;
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Validation("p grid must be strictly increasing".into()));
    }
    let trials = match strategy {
        AttackStrategy::Targeted => 1,
        AttackStrategy::Random => trials,
    };

    let jobs: Vec<(usize, usize)> =
        (0..grid.len()).flat_map(|pi| (0..trials).map(move |t| (pi, t))).collect();
    let run = |&(pi, t): &(usize, usize)| {
        let s = seed::derive(seed, &[pi as u64, t as u64]);
        trial_density(g, strategy, grid[pi], s)
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<f64>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<f64>> = jobs.iter().map(run).collect();
    let values = results.into_iter().collect::<Result<Vec<f64>>>()?;

    let points = grid
        .iter()
        .zip(values.chunks(trials))
        .map(|(&p, xs)| {
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
            AttackPoint { p, nd_mean: mean, nd_std: var.sqrt(), trials }
        })
        .collect();
    Ok(AttackCurve { points, strategy, source: source.into(), seed })
}

/// Parameters of a directed static-model scale-free graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaticModelSpec {
    pub n: usize,
    pub gamma: f64,
    pub kbar: f64,
    pub seed: u64,
}

impl StaticModelSpec {
    pub fn new(n: usize, gamma: f64, kbar: f64, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!("static model needs n >= 2, got {n}")));
        }
        if !gamma.is_finite() || gamma <= 2.0 {
            return Err(Error::Validation(format!("static model needs gamma > 2, got {gamma}")));
        }
        if !kbar.is_finite() || kbar <= 0.0 {
            return Err(Error::Validation(format!("static model needs kbar > 0, got {kbar}")));
        }
        let spec = Self { n, gamma, kbar, seed };
        let max_edges = n as f64 * (n as f64 - 1.0);
        if spec.edge_target() as f64 > max_edges {
            return Err(Error::Validation(format!(
                "{} edges requested but only {max_edges} fit on {n} nodes",
                spec.edge_target()
            )));
        }
        Ok(spec)
    }

    /// `α = 1/(γ - 1)`.
    pub fn alpha(&self) -> f64 {
        1.0 / (self.gamma - 1.0)
    }

    /// `m = round(kbar · n)`.
    pub fn edge_target(&self) -> usize {
        (self.kbar * self.n as f64).round() as usize
    }
}

/// Static model: node `i` gets weight `i^-α`; source and target are drawn
/// independently from those weights until `m` distinct non-loop edges exist.
pub fn generate_static_sf(spec: &StaticModelSpec) -> Result<Digraph> {
    let alpha = spec.alpha();
    let weights: Vec<f64> = (1..=spec.n).map(|i| (i as f64).powf(-alpha)).collect();
    let dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::Internal(format!("static model weights: {e}")))?;
    let mut rng = seed::rng(spec.seed);

    let target = spec.edge_target();
    let cap = 100 * target as u64;
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(target);
    let mut order = Vec::with_capacity(target);
    let mut draws = 0u64;
    while edges.len() < target {
        if draws >= cap {
            return Err(Error::GeneratorExhausted { draws, edges: edges.len(), target });
        }
        draws += 1;
        let s = dist.sample(&mut rng);
        let t = dist.sample(&mut rng);
        if s != t && edges.insert((s, t)) {
            order.push((s, t));
        }
    }
    let mut adjacency = vec![Vec::new(); spec.n];
    for (s, t) in order {
        adjacency[s].push(t);
    }
    for succ in &mut adjacency {
        succ.sort_unstable();
    }
    Ok(Digraph::from_sorted_adjacency((1..=spec.n as u64).collect(), adjacency))
}

/// Power-law tail fit to a degree sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailFit {
    pub exponent: f64,
    pub kmin: usize,
    pub tail_size: usize,
    pub ks_distance: f64,
}

/// Discrete maximum-likelihood exponent for samples `>= kmin`:
/// `1 + n / Σ ln(k / (kmin - 1/2))`.
pub fn discrete_mle_exponent(degrees: &[usize], kmin: usize) -> Option<f64> {
    if kmin == 0 {
        return None;
    }
    let shift = kmin as f64 - 0.5;
    let (count, sum) = degrees
        .iter()
        .filter(|&&k| k >= kmin)
        .fold((0usize, 0.0f64), |(c, s), &k| (c + 1, s + (k as f64 / shift).ln()));
    if count == 0 || sum <= 0.0 {
        return None;
    }
    Some(1.0 + count as f64 / sum)
}

/// Fits the tail exponent, picking `kmin` by minimum Kolmogorov–Smirnov
/// distance among candidates leaving at least `min_tail` samples.
pub fn fit_power_law_tail(degrees: &[usize], min_tail: usize) -> Option<TailFit> {
    let mut sorted: Vec<usize> = degrees.iter().copied().filter(|&k| k > 0).collect();
    sorted.sort_unstable();
    let mut candidates: Vec<usize> = sorted.clone();
    candidates.dedup();

    let mut best: Option<TailFit> = None;
    for kmin in candidates {
        let start = sorted.partition_point(|&k| k < kmin);
        let tail = &sorted[start..];
        if tail.len() < min_tail.max(2) {
            break;
        }
        let Some(exponent) = discrete_mle_exponent(tail, kmin) else { continue };
        let shift = kmin as f64 - 0.5;
        let n = tail.len() as f64;
        // Compare the empirical CDF with the fitted continuous-corrected CDF
        // at every distinct value.
        let mut ks: f64 = 0.0;
        let mut i = 0;
        while i < tail.len() {
            let k = tail[i];
            let j = tail.partition_point(|&x| x <= k);
            let fitted = 1.0 - ((k as f64 + 0.5) / shift).powf(1.0 - exponent);
            ks = ks.max((j as f64 / n - fitted).abs());
            i = j;
        }
        let fit = TailFit { exponent, kmin, tail_size: tail.len(), ks_distance: ks };
        if best.is_none_or(|b| fit.ks_distance < b.ks_distance) {
            best = Some(fit);
        }
    }
    best
}

/// Out-degree sequence in label order.
pub fn out_degrees(g: &Digraph) -> Vec<usize> {
    (0..g.node_count()).map(|i| g.out_degree_at(i)).collect()
}

/// In-degree sequence in label order.
pub fn in_degrees(g: &Digraph) -> Vec<usize> {
    let mut deg = vec![0; g.node_count()];
    for i in 0..g.node_count() {
        for &j in g.successor_indices(i) {
            deg[j] += 1;
        }
    }
    deg
}
