//! Immutable sparse directed graph keyed by natural-number labels.

use crate::error::{Error, Result};

/// Directed graph in compressed sparse row form.
///
/// Node labels are kept sorted and unique; successor lists are strictly
/// increasing. Dense indices are an internal detail and never leave the
/// crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<u64>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Digraph {
    /// Builds a graph from a node set and an edge list given by labels.
    ///
    /// Duplicate edges are collapsed. Self-loops and edges touching a label
    /// outside `labels` are rejected.
    pub fn from_edges<I>(labels: impl IntoIterator<Item = u64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut labels: Vec<u64> = labels.into_iter().collect();
        labels.sort_unstable();
        labels.dedup();

        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Validation(format!("self-loop on node {u}")));
            }
            let ui = labels.binary_search(&u).map_err(|_| Error::UnknownNode(u))?;
            let vi = labels.binary_search(&v).map_err(|_| Error::UnknownNode(v))?;
            pairs.push((ui, vi));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; labels.len() + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..labels.len() {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Self { labels, offsets, targets })
    }

    /// Assembles a graph from per-node successor index lists that are
    /// already sorted, duplicate-free and in range.
    pub(crate) fn from_sorted_adjacency(labels: Vec<u64>, adjacency: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(labels.len(), adjacency.len());
        let mut offsets = Vec::with_capacity(labels.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for succ in adjacency {
            debug_assert!(succ.windows(2).all(|w| w[0] < w[1]));
            targets.extend(succ);
            offsets.push(targets.len());
        }
        Self { labels, offsets, targets }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Sorted node labels.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn contains(&self, label: u64) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    pub(crate) fn index_of(&self, label: u64) -> Result<usize> {
        self.labels.binary_search(&label).map_err(|_| Error::UnknownNode(label))
    }

    pub(crate) fn label(&self, idx: usize) -> u64 {
        self.labels[idx]
    }

    /// Successor indices of the node at dense index `idx`.
    pub(crate) fn successor_indices(&self, idx: usize) -> &[usize] {
        &self.targets[self.offsets[idx]..self.offsets[idx + 1]]
    }

    pub(crate) fn out_degree_at(&self, idx: usize) -> usize {
        self.offsets[idx + 1] - self.offsets[idx]
    }

    /// Successor labels of `label`, ascending.
    pub fn successors(&self, label: u64) -> Result<impl Iterator<Item = u64> + '_> {
        let idx = self.index_of(label)?;
        Ok(self.successor_indices(idx).iter().map(move |&j| self.labels[j]))
    }

    pub fn out_degree(&self, label: u64) -> Result<usize> {
        Ok(self.out_degree_at(self.index_of(label)?))
    }

    pub fn has_edge(&self, from: u64, to: u64) -> bool {
        match (self.labels.binary_search(&from), self.labels.binary_search(&to)) {
            (Ok(u), Ok(v)) => self.successor_indices(u).binary_search(&v).is_ok(),
            _ => false,
        }
    }

    /// All edges as label pairs, ascending by `(from, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.labels.len()).flat_map(move |u| {
            self.successor_indices(u)
                .iter()
                .map(move |&v| (self.labels[u], self.labels[v]))
        })
    }

    /// Subgraph induced by the nodes whose dense index has `keep[idx] == true`.
    pub(crate) fn induced(&self, keep: &[bool]) -> Self {
        debug_assert_eq!(keep.len(), self.labels.len());
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                remap[i] = labels.len();
                labels.push(self.labels[i]);
            }
        }
        let adjacency = (0..self.labels.len())
            .filter(|&i| keep[i])
            .map(|i| {
                self.successor_indices(i)
                    .iter()
                    .filter(|&&j| keep[j])
                    .map(|&j| remap[j])
                    .collect()
            })
            .collect();
        Self::from_sorted_adjacency(labels, adjacency)
    }

    /// Subgraph induced by the given labels; unknown labels are an error.
    pub fn induced_subgraph(&self, keep: &[u64]) -> Result<Self> {
        let mut mask = vec![false; self.labels.len()];
        for &l in keep {
            mask[self.index_of(l)?] = true;
        }
        Ok(self.induced(&mask))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_sorts_and_dedups() {
        let g = Digraph::from_edges([3, 1, 2, 2], [(2, 3), (1, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g.labels(), &[1, 2, 3]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.successors(1).unwrap().collect::<Vec<_>>(), vec![2, 3]);
        assert!(g.has_edge(2, 3));
        assert!(!g.has_edge(3, 2));
    }

    #[test]
    fn rejects_self_loops_and_unknown_nodes() {
        assert!(matches!(
            Digraph::from_edges([1, 2], [(1, 1)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            Digraph::from_edges([1, 2], [(1, 5)]),
            Err(Error::UnknownNode(5))
        ));
    }

    #[test]
    fn induced_subgraph_drops_incident_edges() {
        let g = Digraph::from_edges(1..=4, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let h = g.induced_subgraph(&[1, 3, 4]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 4), (3, 4)]);
        assert!(matches!(h.out_degree(2), Err(Error::UnknownNode(2))));
    }
}
