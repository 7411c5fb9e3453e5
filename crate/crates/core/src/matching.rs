//! Maximum bipartite matching (Hopcroft–Karp) on the out/in split of a digraph.
//!
//! Every node contributes an out-copy on the left and an in-copy on the
//! right; each directed edge `u -> v` becomes the bipartite edge
//! `out(u) - in(v)`. Neighbours are scanned in ascending label order and
//! free left vertices are processed in ascending order, so the resulting
//! matching is a deterministic function of the graph.

use std::collections::VecDeque;

use crate::graph::Digraph;

const UNMATCHED: usize = usize::MAX;
const INF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `out_to_in[u]` is the in-copy matched to the out-copy of `u`.
    pub out_to_in: Vec<Option<usize>>,
    /// `in_to_out[v]` is the out-copy matched to the in-copy of `v`.
    pub in_to_out: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    /// Dense indices of nodes whose in-copy is unmatched.
    pub fn unmatched_in(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_to_out
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(v, _)| v)
    }
}

pub fn maximum_matching(g: &Digraph) -> Matching {
    let n = g.node_count();
    let mut pair_out = vec![UNMATCHED; n];
    let mut pair_in = vec![UNMATCHED; n];

    // Greedy start.
    for (u, out) in pair_out.iter_mut().enumerate() {
        if let Some(&v) = g.successor_indices(u).iter().find(|&&v| pair_in[v] == UNMATCHED) {
            *out = v;
            pair_in[v] = u;
        }
    }

    let mut dist = vec![INF; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut via: Vec<usize> = Vec::new();

    loop {
        // Layer the left side from every free out-copy.
        queue.clear();
        for u in 0..n {
            if pair_out[u] == UNMATCHED {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.successor_indices(u) {
                let w = pair_in[v];
                if w == UNMATCHED {
                    reachable_free = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        let mut augmented = false;
        for root in 0..n {
            if pair_out[root] != UNMATCHED {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&x) = stack.last() {
                let succ = g.successor_indices(x);
                if cursor[x] == succ.len() {
                    dist[x] = INF;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let v = succ[cursor[x]];
                cursor[x] += 1;
                let w = pair_in[v];
                if w == UNMATCHED {
                    // Flip the alternating path recorded on the stack.
                    via.push(v);
                    for (&l, &r) in stack.iter().zip(via.iter()) {
                        pair_out[l] = r;
                        pair_in[r] = l;
                    }
                    augmented = true;
                    break;
                }
                if dist[w] != INF && dist[w] == dist[x] + 1 {
                    via.push(v);
                    stack.push(w);
                }
            }
        }
        if !augmented {
            break;
        }
    }

    let to_opt = |x: usize| (x != UNMATCHED).then_some(x);
    let size = pair_out.iter().filter(|&&v| v != UNMATCHED).count();
    Matching {
        out_to_in: pair_out.into_iter().map(to_opt).collect(),
        in_to_out: pair_in.into_iter().map(to_opt).collect(),
        size,
    }
}
