//! Minimum driver nodes: rank of the coupling matrix over a prime field and
//! maximum matching on the out/in bipartite split.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field;
use crate::graph::Digraph;
use crate::matching::maximum_matching;
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Unit,
    /// Independent uniform nonzero field elements drawn from `seed`.
    Random { seed: u64 },
}

/// Coupling matrix `A` (transpose of the adjacency matrix) in node-label order.
///
/// Entry `(row j, col i)` is nonzero iff the graph has the edge `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMatrix {
    labels: Vec<u64>,
    /// Row-major sparse rows: `rows[j]` holds `(col, weight)` sorted by column.
    rows: Vec<Vec<(usize, u64)>>,
}

impl CouplingMatrix {
    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.rows[row]
            .binary_search_by_key(&col, |&(c, _)| c)
            .map(|p| self.rows[row][p].1)
            .unwrap_or(0)
    }

    /// All nonzero entries as `(row, col, weight)`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, w)| (r, c, w)))
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let n = self.dimension();
        let mut dense = vec![vec![0; n]; n];
        for (r, c, w) in self.entries() {
            dense[r][c] = w;
        }
        dense
    }

    pub fn is_strictly_lower_triangular(&self) -> bool {
        self.entries().all(|(r, c, _)| c < r)
    }
}

pub fn coupling_matrix(g: &Digraph, weighting: Weighting) -> CouplingMatrix {
    let n = g.node_count();
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    let mut rng = match weighting {
        Weighting::Unit => None,
        Weighting::Random { seed } => Some(seed::rng(seed)),
    };
    // Sources ascending, so every row receives columns in ascending order.
    for i in 0..n {
        for &j in g.successor_indices(i) {
            let w = match rng.as_mut() {
                None => 1,
                Some(rng) => rng.random_range(1..field::MODULUS),
            };
            rows[j].push((i, w));
        }
    }
    CouplingMatrix { labels: g.labels().to_vec(), rows }
}

/// Row echelon reduction in ascending row order.
///
/// Returns the rank and the rows that reduce to zero, i.e. rows lying in the
/// span of the rows above them.
fn eliminate(m: &CouplingMatrix) -> (usize, Vec<usize>) {
    let n = m.dimension();
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; n];
    let mut dependent = Vec::new();
    let mut rank = 0;
    let mut scratch = Vec::new();

    for (r, row) in m.rows.iter().enumerate() {
        let mut cur = row.clone();
        loop {
            let Some(&(lead, coef)) = cur.first() else {
                dependent.push(r);
                break;
            };
            match &pivots[lead] {
                Some(p) => {
                    // cur -= coef * p, with p normalized so p[lead] == 1.
                    scratch.clear();
                    let (mut a, mut b) = (0, 0);
                    while a < cur.len() || b < p.len() {
                        let ca = cur.get(a).map_or(usize::MAX, |e| e.0);
                        let cb = p.get(b).map_or(usize::MAX, |e| e.0);
                        if ca < cb {
                            scratch.push(cur[a]);
                            a += 1;
                        } else if cb < ca {
                            scratch.push((cb, field::sub(0, field::mul(coef, p[b].1))));
                            b += 1;
                        } else {
                            let v = field::sub(cur[a].1, field::mul(coef, p[b].1));
                            if v != 0 {
                                scratch.push((ca, v));
                            }
                            a += 1;
                            b += 1;
                        }
                    }
                    std::mem::swap(&mut cur, &mut scratch);
                }
                None => {
                    let scale = field::inv(coef);
                    for e in cur.iter_mut() {
                        e.1 = field::mul(e.1, scale);
                    }
                    pivots[lead] = Some(cur);
                    rank += 1;
                    break;
                }
            }
        }
    }
    (rank, dependent)
}

/// Rank over GF(2^61 - 1).
pub fn rank(m: &CouplingMatrix) -> usize {
    eliminate(m).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlMethod {
    ExactRank,
    Matching,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlReport {
    pub n_nodes: usize,
    /// Rank of `A` for the exact method; maximum matching size for the
    /// structural method (the generic rank).
    #[serde(rename = "rank")]
    pub rank_a: usize,
    pub n_d: usize,
    pub density: f64,
    pub drivers: Vec<u64>,
    pub method: ControlMethod,
}

impl ControlReport {
    fn new(g: &Digraph, rank_a: usize, mut drivers: Vec<u64>, method: ControlMethod) -> Self {
        let n_nodes = g.node_count();
        if drivers.is_empty() && n_nodes > 0 {
            drivers.push(g.labels()[0]);
        }
        drivers.sort_unstable();
        let n_d = drivers.len();
        let density = if n_nodes == 0 { 0.0 } else { n_d as f64 / n_nodes as f64 };
        Self { n_nodes, rank_a, n_d, density, drivers, method }
    }

    /// Single-line JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is serializable");
        value.to_string()
    }
}

/// Exact controllability: `N_D = max(1, n - rank A)`.
///
/// Drivers are the rows of `A` that are linearly dependent on the rows of
/// smaller label; on congruence layers these are the all-zero rows, i.e. the
/// chain roots. A full-rank `A` gets the smallest label as its single driver.
pub fn min_drivers_exact(g: &Digraph, weighting: Weighting) -> ControlReport {
    let a = coupling_matrix(g, weighting);
    let (rank_a, dependent) = eliminate(&a);
    let drivers = dependent.into_iter().map(|r| g.label(r)).collect();
    ControlReport::new(g, rank_a, drivers, ControlMethod::ExactRank)
}

/// Structural controllability: `N_D = max(1, n - |maximum matching|)`,
/// drivers are the nodes whose in-copy stays unmatched.
pub fn min_drivers_matching(g: &Digraph) -> ControlReport {
    let m = maximum_matching(g);
    let drivers = m.unmatched_in().map(|v| g.label(v)).collect();
    ControlReport::new(g, m.size, drivers, ControlMethod::Matching)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SscReport {
    pub unit_rank: usize,
    pub trial_ranks: Vec<usize>,
    pub seed: u64,
    pub strongly_structurally_controllable: bool,
}

/// Checks that `rank A` does not depend on the nonzero link weights.
///
/// Each trial `t` draws weights from `seed::derive(seed, [t])`.
pub fn verify_ssc(g: &Digraph, trials: usize, seed: u64) -> Result<SscReport> {
    if trials < 2 {
        return Err(Error::Validation(format!("verify_ssc needs at least 2 trials, got {trials}")));
    }
    let unit_rank = rank(&coupling_matrix(g, Weighting::Unit));
    let trial_rank = |t: usize| {
        let s = seed::derive(seed, &[t as u64]);
        rank(&coupling_matrix(g, Weighting::Random { seed: s }))
    };
    #[cfg(feature = "parallel")]
    let trial_ranks: Vec<usize> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(trial_rank).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let trial_ranks: Vec<usize> = (0..trials).map(trial_rank).collect();

    let ok = trial_ranks.iter().all(|&r| r == unit_rank);
    Ok(SscReport { unit_rank, trial_ranks, seed, strongly_structurally_controllable: ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layer::{build_layer, extract_chains, LayerSpec};

    fn layer(r: u64, n: u64) -> Digraph {
        build_layer(LayerSpec::new(r, n).unwrap())
    }

    fn dense(g: &Digraph) -> Vec<Vec<u64>> {
        coupling_matrix(g, Weighting::Unit).to_dense()
    }

    #[test]
    fn printed_matrix_r1_n9() {
        let expected = vec![
            vec![0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 0],
            vec![1, 0, 1, 0, 0, 0, 1, 0],
        ];
        assert_eq!(dense(&layer(1, 9)), expected);
    }

    #[test]
    fn printed_matrix_r0_n9() {
        let expected = vec![
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 1, 1, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 1, 0, 1, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 0, 0, 0, 0, 0],
        ];
        assert_eq!(dense(&layer(0, 9)), expected);
    }

    #[test]
    fn empty_graph_matrix() {
        let g = Digraph::from_edges([1, 2, 3], []).unwrap();
        let a = coupling_matrix(&g, Weighting::Unit);
        assert_eq!(a.to_dense(), vec![vec![0; 3]; 3]);
        assert_eq!(rank(&a), 0);
    }

    #[test]
    fn random_weights_are_nonzero_and_seeded() {
        let g = layer(1, 30);
        let a = coupling_matrix(&g, Weighting::Random { seed: 5 });
        let b = coupling_matrix(&g, Weighting::Random { seed: 5 });
        assert_eq!(a, b);
        assert!(a.entries().all(|(_, _, w)| w != 0 && w < field::MODULUS));
        assert_eq!(a.entries().count(), g.edge_count());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&coupling_matrix(&layer(1, 9), Weighting::Unit)), 7);
        assert_eq!(rank(&coupling_matrix(&layer(0, 9), Weighting::Unit)), 4);
    }

    // Dense Gaussian elimination over the rationals via i128 fraction-free
    // (Bareiss) steps; independent of the sparse field routine.
    fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
                }
                m[r][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        rank
    }

    #[test]
    fn unit_rank_matches_rational_rank() {
        for (r, n) in [(0, 30), (1, 25), (2, 25), (3, 40), (5, 16)] {
            let d = dense(&layer(r, n));
            let q = d.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
            assert_eq!(rank(&coupling_matrix(&layer(r, n), Weighting::Unit)), bareiss_rank(q));
        }
        // 0/1 matrix whose rank drops below its term rank
        let g = Digraph::from_edges(1..=4, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert_eq!(rank(&coupling_matrix(&g, Weighting::Unit)), 1);
        assert_eq!(rank(&coupling_matrix(&g, Weighting::Random { seed: 1 })), 2);
        assert_eq!(min_drivers_matching(&g).n_d, 2);
    }

    #[test]
    fn exact_driver_examples() {
        let rep = min_drivers_exact(&layer(1, 9), Weighting::Unit);
        assert_eq!((rep.n_d, rep.drivers.clone()), (1, vec![2]));
        assert_eq!(rep.rank_a, 7);

        let rep = min_drivers_exact(&layer(3, 100), Weighting::Unit);
        assert_eq!((rep.n_d, rep.drivers.clone()), (3, vec![4, 5, 6]));

        let rep = min_drivers_exact(&layer(0, 9), Weighting::Unit);
        assert_eq!(rep.n_d, 5);
        assert_eq!(rep.drivers, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn matching_driver_examples() {
        for r in 1..=5u64 {
            let g = layer(r, 200);
            let m = min_drivers_matching(&g);
            let e = min_drivers_exact(&g, Weighting::Unit);
            assert_eq!(m.n_d as u64, r);
            assert_eq!(m.n_d, e.n_d);
            assert_eq!(m.drivers, e.drivers);
        }
        let g = Digraph::from_edges(1..=7, []).unwrap();
        let rep = min_drivers_matching(&g);
        assert_eq!(rep.n_d, 7);
        assert_eq!(rep.drivers, (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn full_rank_gets_one_driver() {
        // a directed 3-cycle has a perfect matching
        let g = Digraph::from_edges([4, 5, 6], [(4, 5), (5, 6), (6, 4)]).unwrap();
        let m = min_drivers_matching(&g);
        assert_eq!((m.n_d, m.drivers.clone(), m.rank_a), (1, vec![4], 3));
        let e = min_drivers_exact(&g, Weighting::Random { seed: 0 });
        assert_eq!((e.n_d, e.drivers, e.rank_a), (1, vec![4], 3));
    }

    #[test]
    fn divisibility_layers_need_half() {
        for n in [9u64, 50, 100] {
            let g = layer(0, n);
            assert_eq!(min_drivers_exact(&g, Weighting::Unit).n_d as u64, n.div_ceil(2));
            assert_eq!(min_drivers_matching(&g).n_d as u64, n.div_ceil(2));
        }
    }

    #[test]
    fn congruence_layer_grid() {
        for n in [50u64, 100, 500] {
            for r in 1..=10u64 {
                if n < 3 * r + 1 {
                    continue;
                }
                let spec = LayerSpec::new(r, n).unwrap();
                let g = build_layer(spec);
                let a = coupling_matrix(&g, Weighting::Unit);
                assert!(a.is_strictly_lower_triangular());
                assert_eq!(rank(&a) as u64, n - 2 * r);
                let roots: Vec<u64> = extract_chains(spec).unwrap().iter().map(|c| c.root).collect();
                let e = min_drivers_exact(&g, Weighting::Unit);
                let m = min_drivers_matching(&g);
                assert_eq!(e.drivers, roots);
                assert_eq!(m.drivers, roots);
                assert_eq!(e.density, r as f64 / (n - r) as f64);
                assert_eq!(m.density, e.density);
            }
        }
    }

    #[test]
    fn ssc_examples() {
        assert!(verify_ssc(&layer(1, 50), 20, 3).unwrap().strongly_structurally_controllable);
        assert!(verify_ssc(&layer(0, 50), 20, 3).unwrap().strongly_structurally_controllable);
        let edge = Digraph::from_edges([1, 2], [(1, 2)]).unwrap();
        let rep = verify_ssc(&edge, 5, 0).unwrap();
        assert!(rep.strongly_structurally_controllable);
        assert_eq!(rep.unit_rank, 1);
        assert!(matches!(verify_ssc(&edge, 1, 0), Err(Error::Validation(_))));
    }

    #[test]
    fn ssc_detects_weight_dependence() {
        let g = Digraph::from_edges(1..=4, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert!(!verify_ssc(&g, 4, 0).unwrap().strongly_structurally_controllable);
    }

    #[test]
    fn report_json_shape() {
        let rep = min_drivers_matching(&layer(1, 9));
        assert_eq!(
            rep.to_json(),
            r#"{"density":0.125,"drivers":[2],"method":"matching","n_d":1,"n_nodes":8,"rank":7}"#
        );
        let back: ControlReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }
}
