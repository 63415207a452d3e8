//! Oriented Zykov graphs.
//!
//! `G_1` is a single vertex. `G_{k+1}` is the disjoint union of copies
//! `H_1, ..., H_k` of `G_1, ..., G_k` plus, for every transversal
//! `(v_1, ..., v_k)` with `v_i` in `H_i`, a fresh apex `w` with edges
//! `w -> v_i`. An apex has exactly one out-neighbour per copy and copies never
//! reach each other, which is what keeps directed paths unique.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{OrientedGraph, VertexId};

pub const DEFAULT_MAX_VERTICES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZykovError {
    #[error("k must be at least 1")]
    ZeroOrder,
    #[error("G_{k} would have {predicted} vertices, above the cap of {cap}")]
    SizeBudgetExceeded { k: usize, predicted: BigUint, cap: u64 },
}

/// Where a vertex of `G_k` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// The `j` for which this vertex was added as an apex of `G_j`
    /// (1 for copies of the single vertex of `G_1`).
    pub level: usize,
    /// Top-level copy `H_j` holding the vertex, or `None` for apexes of `G_k`.
    pub copy: Option<usize>,
    /// Lexicographic rank of the transversal that created the apex.
    pub transversal: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct ZykovGraph {
    pub k: usize,
    pub graph: OrientedGraph,
    pub provenance: Vec<Provenance>,
}

impl ZykovGraph {
    /// Vertex range of the top-level copy `H_j` (`1 <= j < k`). The copy is
    /// laid out contiguously and numbered exactly like `G_j`.
    pub fn copy_range(&self, j: usize) -> std::ops::Range<VertexId> {
        assert!(j >= 1 && j < self.k, "G_{} has copies H_1..H_{}", self.k, self.k - 1);
        let start: usize = (1..j).map(vertex_count).sum();
        start..start + vertex_count(j)
    }

    /// The proper `k`-colouring the construction carries: apexes of `G_j`
    /// get colour `j - 1`, above every colour used inside the copies.
    pub fn construction_coloring(&self) -> Vec<usize> {
        self.provenance.iter().map(|p| p.level - 1).collect()
    }
}

fn vertex_count(k: usize) -> usize {
    let (v, _) = predict_size(k);
    usize::try_from(v).expect("vertex count of a built graph fits in usize")
}

/// Exact `(vertices, edges)` of `G_k`:
/// `V_{k+1} = sum V_i + prod V_i`, `E_{k+1} = sum E_i + k * prod V_i`.
pub fn predict_size(k: usize) -> (BigUint, BigUint) {
    assert!(k >= 1, "G_k is defined for k >= 1");
    let mut vertices: Vec<BigUint> = vec![BigUint::from(1u32)];
    let mut edges: Vec<BigUint> = vec![BigUint::from(0u32)];
    for j in 1..k {
        let product: BigUint = vertices.iter().product();
        let v = vertices.iter().sum::<BigUint>() + &product;
        let e = edges.iter().sum::<BigUint>() + product * BigUint::from(j);
        vertices.push(v);
        edges.push(e);
    }
    (vertices.pop().unwrap(), edges.pop().unwrap())
}

pub fn build_zykov(k: usize) -> Result<ZykovGraph, ZykovError> {
    build_zykov_capped(k, DEFAULT_MAX_VERTICES)
}

pub fn build_zykov_capped(k: usize, max_vertices: u64) -> Result<ZykovGraph, ZykovError> {
    if k == 0 {
        return Err(ZykovError::ZeroOrder);
    }
    let (predicted, _) = predict_size(k);
    if predicted > BigUint::from(max_vertices) {
        return Err(ZykovError::SizeBudgetExceeded { k, predicted, cap: max_vertices });
    }

    let mut levels: Vec<ZykovGraph> = vec![ZykovGraph {
        k: 1,
        graph: OrientedGraph::empty(1),
        provenance: vec![Provenance { level: 1, copy: None, transversal: None }],
    }];
    for next in 2..=k {
        let built = extend(&levels);
        debug_assert_eq!(built.k, next);
        levels.push(built);
    }
    Ok(levels.pop().unwrap())
}

fn extend(lower: &[ZykovGraph]) -> ZykovGraph {
    let k = lower.len() + 1;
    let mut edges = Vec::new();
    let mut provenance = Vec::new();
    let mut offsets = Vec::with_capacity(lower.len());
    let mut next = 0;
    for (j, part) in lower.iter().enumerate() {
        offsets.push(next);
        edges.extend(part.graph.edges().iter().map(|&(u, v)| (u + next, v + next)));
        provenance.extend(
            part.provenance.iter().map(|p| Provenance { copy: Some(j + 1), ..*p }),
        );
        next += part.graph.n_vertices();
    }

    // Odometer over transversals, last coordinate fastest, so the apexes
    // appear in lexicographic order of their out-neighbourhoods.
    let sizes: Vec<usize> = lower.iter().map(|g| g.graph.n_vertices()).collect();
    let mut choice = vec![0usize; sizes.len()];
    let mut rank = 0u64;
    loop {
        let apex = next;
        next += 1;
        for (j, &c) in choice.iter().enumerate() {
            edges.push((apex, offsets[j] + c));
        }
        provenance.push(Provenance { level: k, copy: None, transversal: Some(rank) });
        rank += 1;

        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                let graph = OrientedGraph::new(next, edges).expect("construction is simple");
                return ZykovGraph { k, graph, provenance };
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < sizes[pos] {
                break;
            }
            choice[pos] = 0;
        }
    }
}
