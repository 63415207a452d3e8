//! Oriented graphs, reachability distances and induced subgraphs.
//!
//! Vertices are dense indices `0..n`. Edges are kept sorted by `(tail, head)`
//! so every construction and every export is reproducible byte for byte.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    UnknownVertex { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) given twice")]
    DuplicateEdge(VertexId, VertexId),
    #[error("directed cycle through {0:?}")]
    CycleFound(Vec<VertexId>),
    #[error("more than one directed path from {0} to {1}")]
    MultiplePaths(VertexId, VertexId),
}

/// A finite simple digraph. Acyclicity is a checked property
/// ([`topological_order`]), not a constructor precondition, so that cyclic
/// inputs can be rejected with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
}

impl OrientedGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut edges: Vec<_> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::UnknownVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, edges))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out[u].push(v);
            inc[v].push(u);
        }
        for list in &mut inc {
            list.sort_unstable();
        }
        OrientedGraph { n, edges, out, inc }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(tail, head)`.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.inc[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v].len() + self.inc[v].len()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Position of `(u, v)` in [`edges`](Self::edges).
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&(u, v)).ok()
    }
}

/// Lexicographically smallest topological order (Kahn with a min-heap).
pub fn topological_order(g: &OrientedGraph) -> Result<Vec<VertexId>, GraphError> {
    let n = g.n_vertices();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_neighbors(v).len()).collect();
    let mut ready: BinaryHeap<Reverse<VertexId>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &w in g.out_neighbors(u) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    Err(GraphError::CycleFound(cycle_among(g, &indeg)))
}

// Every vertex left with positive in-degree has a predecessor that is also
// left, so walking predecessors from the smallest one must close a cycle.
fn cycle_among(g: &OrientedGraph, indeg: &[usize]) -> Vec<VertexId> {
    let stuck = |v: VertexId| indeg[v] > 0;
    let start = (0..g.n_vertices()).find(|&v| stuck(v)).expect("a stuck vertex");
    let mut pos = vec![usize::MAX; g.n_vertices()];
    let mut walk = Vec::new();
    let mut v = start;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        walk.push(v);
        v = *g
            .in_neighbors(v)
            .iter()
            .find(|&&u| stuck(u))
            .expect("stuck vertex has a stuck predecessor");
    }
    let mut cycle: Vec<_> = walk[pos[v]..].to_vec();
    cycle.reverse();
    let min_at = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(min_at);
    cycle
}

pub fn is_acyclic(g: &OrientedGraph) -> bool {
    topological_order(g).is_ok()
}

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs lengths of the unique directed paths of a unique-path DAG.
///
/// `u <= v` in the reachability order iff `get(u, v)` is `Some`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    d: Vec<u32>,
}

impl DistanceTable {
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<u32> {
        match self.d[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.get(u, v).is_some()
    }

    /// Strictly comparable pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn comparable_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| match self.get(u, v) {
                Some(d) if u != v => Some((u, v, d)),
                _ => None,
            })
        })
    }

    pub fn max_distance(&self) -> u32 {
        self.d.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }
}

/// Path counts saturate at 2; only "none / one / several" matters.
pub fn distance_table(g: &OrientedGraph) -> Result<DistanceTable, GraphError> {
    let n = g.n_vertices();
    let order = topological_order(g)?;
    let mut count = vec![0u8; n * n];
    let mut d = vec![UNREACHABLE; n * n];
    for &u in order.iter().rev() {
        let row = u * n;
        count[row + u] = 1;
        d[row + u] = 0;
        for &w in g.out_neighbors(u) {
            let wrow = w * n;
            for v in 0..n {
                let c = count[wrow + v];
                if c == 0 {
                    continue;
                }
                count[row + v] = (count[row + v] + c).min(2);
                d[row + v] = d[wrow + v] + 1;
            }
        }
    }
    if let Some(i) = count.iter().position(|&c| c >= 2) {
        return Err(GraphError::MultiplePaths(i / n, i % n));
    }
    Ok(DistanceTable { n, d })
}

/// A re-densified induced subgraph. `back_map[i]` is the parent index of
/// vertex `i`, and is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph<G> {
    pub graph: G,
    pub back_map: Vec<VertexId>,
}

/// Sorts and dedups `vs`, rejecting indices outside `0..n`.
pub(crate) fn normalize_subset(n: usize, vs: &[VertexId]) -> Result<Vec<VertexId>, GraphError> {
    let mut keep = vs.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&v| v >= n) {
        return Err(GraphError::UnknownVertex { vertex: bad, n });
    }
    Ok(keep)
}

/// Returns the kept parent edge indices alongside the subgraph, so labelled
/// parents can carry their labels across.
pub(crate) fn induce_with_edge_map(
    g: &OrientedGraph,
    vs: &[VertexId],
) -> Result<(InducedSubgraph<OrientedGraph>, Vec<usize>), GraphError> {
    let keep = normalize_subset(g.n_vertices(), vs)?;
    let mut forward = vec![usize::MAX; g.n_vertices()];
    for (i, &v) in keep.iter().enumerate() {
        forward[v] = i;
    }
    let mut edges = Vec::new();
    let mut kept = Vec::new();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if forward[u] != usize::MAX && forward[v] != usize::MAX {
            edges.push((forward[u], forward[v]));
            kept.push(idx);
        }
    }
    // back_map is increasing, so the relabelled edges stay sorted.
    let graph = OrientedGraph::from_sorted(keep.len(), edges);
    Ok((InducedSubgraph { graph, back_map: keep }, kept))
}

pub fn induced_subgraph(
    g: &OrientedGraph,
    vs: &[VertexId],
) -> Result<InducedSubgraph<OrientedGraph>, GraphError> {
    induce_with_edge_map(g, vs).map(|(sub, _)| sub)
}
