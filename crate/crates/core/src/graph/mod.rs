//! Undirected simple graphs with dense vertex ids, hop distances, blocks and
//! the outer-face circuit of outerplanar graphs.

mod blocks;
mod circuit;
mod io;

pub use blocks::{blocks_and_cut_vertices, Block, BlockDecomposition};
pub use circuit::{outer_circuit, Circuit};
pub use io::GraphFile;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not outerplanar: {0}")]
    NotOuterplanar(String),
    #[error("graph too large: {0}")]
    TooLarge(String),
    #[error("cannot parse graph: {0}")]
    Parse(String),
}

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and the edge list holds each edge once as
/// `(u, v)` with `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj, edges, labels: BTreeMap::new() })
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Result<Self, GraphError> {
        if let Some(&v) = labels.keys().find(|&&v| v >= self.n) {
            return Err(GraphError::OutOfRange { vertex: v, n: self.n });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Neighborhood bitmasks, for the subset algorithms on small graphs.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>, GraphError> {
        if self.n > 64 {
            return Err(GraphError::TooLarge(format!("{} vertices, bitmask limit is 64", self.n)));
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect())
    }

    /// Induced subgraph on `vertices` (renumbered in the given order).
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(vertices.len(), &edges).expect("induced subgraph of a simple graph is simple")
    }
}

pub fn build_graph(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
    Graph::new(n, edge_list)
}

/// All-pairs hop distances. Unreachable pairs hold [`DistanceMatrix::UNREACHABLE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn reachable(&self, u: Vertex, v: Vertex) -> bool {
        self.get(u, v) != Self::UNREACHABLE
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn eccentricity(&self, u: Vertex) -> Option<u32> {
        let row = self.row(u);
        if row.contains(&Self::UNREACHABLE) {
            None
        } else {
            row.iter().copied().max()
        }
    }

    /// Largest finite entry, or `None` when some pair is unreachable.
    pub fn max_finite(&self) -> Option<u32> {
        if self.dist.contains(&Self::UNREACHABLE) {
            None
        } else {
            Some(self.dist.iter().copied().max().unwrap_or(0))
        }
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![DistanceMatrix::UNREACHABLE; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &w in g.neighbors(u) {
                if row[w] == DistanceMatrix::UNREACHABLE {
                    row[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceMatrix { n, dist }
}

pub fn diameter(g: &Graph) -> Result<u32, GraphError> {
    all_pairs_distances(g).max_finite().ok_or(GraphError::Disconnected)
}

/// Connected components of `G[mask]`, as bitmasks.
pub fn components_of_mask(masks: &[u64], mask: u64) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = masks[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

pub fn mask_is_connected(masks: &[u64], mask: u64) -> bool {
    mask == 0 || components_of_mask(masks, mask).len() == 1
}

pub fn mask_vertices(mask: u64) -> impl Iterator<Item = Vertex> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn build_examples() {
        let k3 = build_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert!(k3.has_edge(2, 0));
        let single = build_graph(1, &[]).unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));
        let c5 = cycle(5);
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            build_graph(2, &[(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(build_graph(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(build_graph(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn distance_examples() {
        let d = all_pairs_distances(&path(3));
        assert_eq!(d.get(0, 2), 2);
        let k5 = all_pairs_distances(&complete(5));
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(k5.get(u, v), u32::from(u != v));
            }
        }
        let split = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(!all_pairs_distances(&split).reachable(0, 2));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&cycle(6)), Ok(3));
        assert_eq!(diameter(&complete(4)), Ok(1));
        assert_eq!(diameter(&path(8)), Ok(7));
        assert_eq!(diameter(&Graph::new(2, &[]).unwrap()), Err(GraphError::Disconnected));
    }

    #[test]
    fn mask_components() {
        let g = path(5);
        let masks = g.neighbor_masks().unwrap();
        let comps = components_of_mask(&masks, 0b11011);
        assert_eq!(comps, vec![0b00011, 0b11000]);
        assert!(mask_is_connected(&masks, 0b00111));
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = cycle(5).induced(&[4, 0, 1]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }
}
