//! Longest-path colourings and the product colouring of an induced subgraph
//! of `G'_p`.
//!
//! Edges are split by which residue class their label falls in. Each class
//! graph is coloured by the length of the longest directed path leaving a
//! vertex, and a vertex's final colour is the tuple of its class colours,
//! encoded as a mixed-radix integer (radix `n`, class `i` at digit `i`).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::farey::ResiduePartition;
use crate::graph::{topological_order, GraphError, OrientedGraph, VertexId};
use crate::power::{ClassParameters, ResidueGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("directed cycle through {0:?}")]
    CycleFound(Vec<VertexId>),
    #[error("directed path of length {} reaches the bound {k}: {path:?}", path.len() - 1)]
    PathTooLong { k: usize, path: Vec<VertexId> },
    #[error("graph is labelled mod {graph} but the partition is for p = {partition}")]
    PrimeMismatch { graph: u32, partition: u32 },
    #[error("edge ({0}, {1}) has no residue in 1..p")]
    UnlabeledEdge(VertexId, VertexId),
    #[error("clique number {n} is not below p = {p}")]
    OrderNotLess { n: u32, p: u32 },
    #[error("partition was built for n = {partition}, not n = {n}")]
    OrderMismatch { n: u32, partition: u32 },
    #[error("found a clique of size {} although n = {n}: {witness:?}", witness.len())]
    CliqueTooLarge { n: u32, witness: Vec<VertexId> },
    #[error("class path {path:?} is not a clique; labels are not residues of a unique-path DAG")]
    InconsistentLabels { path: Vec<VertexId> },
    #[error("n^Phi(n) colours do not fit in 128 bits")]
    ColorSpaceOverflow,
}

impl From<GraphError> for ColoringError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CycleFound(c) => ColoringError::CycleFound(c),
            other => unreachable!("topological_order only reports cycles, got {other}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    /// Number of distinct colours used.
    palette: usize,
    assignment: Vec<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tuple_view: Option<Vec<Vec<u32>>>,
}

impl Coloring {
    pub fn from_assignment(assignment: Vec<u128>) -> Self {
        let palette = assignment.iter().collect::<BTreeSet<_>>().len();
        Coloring { palette, assignment, tuple_view: None }
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn assignment(&self) -> &[u128] {
        &self.assignment
    }

    /// Per-vertex `(l_1, ..., l_Phi)` for product colourings.
    pub fn tuple_view(&self) -> Option<&[Vec<u32>]> {
        self.tuple_view.as_deref()
    }
}

/// Colours each vertex by the longest directed path leaving it. Proper on any
/// DAG since an edge `u -> v` forces `l(u) >= l(v) + 1`.
pub fn longest_path_coloring(g: &OrientedGraph, k: usize) -> Result<Coloring, ColoringError> {
    let order = topological_order(g)?;
    let mut level = vec![0usize; g.n_vertices()];
    for &v in order.iter().rev() {
        level[v] = g.out_neighbors(v).iter().map(|&w| level[w] + 1).max().unwrap_or(0);
    }
    if let Some(start) = (0..g.n_vertices()).filter(|&v| level[v] >= k).min_by_key(|&v| (std::cmp::Reverse(level[v]), v)) {
        let mut path = vec![start];
        let mut v = start;
        while level[v] > 0 {
            v = *g.out_neighbors(v).iter().find(|&&w| level[w] + 1 == level[v]).expect("level drops by one");
            path.push(v);
        }
        return Err(ColoringError::PathTooLong { k, path });
    }
    Ok(Coloring::from_assignment(level.into_iter().map(|l| l as u128).collect()))
}

/// The edges of a residue graph split by residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    n_vertices: usize,
    /// `classes[i]` lists `(tail, head)` of the edges whose residue is in `A_{i+1}`.
    classes: Vec<Vec<(VertexId, VertexId)>>,
}

impl EdgePartition {
    pub fn classes(&self) -> &[Vec<(VertexId, VertexId)>] {
        &self.classes
    }

    /// `G*_i` on the full vertex set, zero-based `i`.
    pub fn class_graph(&self, i: usize) -> OrientedGraph {
        OrientedGraph::new(self.n_vertices, self.classes[i].iter().copied()).expect("subset of a simple graph")
    }
}

pub fn edge_partition(g: &ResidueGraph, part: &ResiduePartition) -> Result<EdgePartition, ColoringError> {
    if g.p() != part.p() {
        return Err(ColoringError::PrimeMismatch { graph: g.p(), partition: part.p() });
    }
    let mut classes = vec![Vec::new(); part.len()];
    for (u, v, r) in g.labeled_edges() {
        let class = r.and_then(|r| part.class_of(r)).ok_or(ColoringError::UnlabeledEdge(u, v))?;
        classes[class].push((u, v));
    }
    Ok(EdgePartition { n_vertices: g.graph().n_vertices(), classes })
}

/// `n^classes`, the size of the product colour space.
pub fn color_space(n: u32, classes: usize) -> Option<u128> {
    (n as u128).checked_pow(u32::try_from(classes).ok()?)
}

/// Product colouring of an induced subgraph of `G'_p` with clique number
/// `n < p`, using at most `n^Phi(n)` colours.
///
/// `n` is not trusted: a class path of length `n` is turned into the
/// `(n+1)`-clique it spans and reported.
pub fn bounded_color(g: &ResidueGraph, n: u32, part: &ResiduePartition) -> Result<Coloring, ColoringError> {
    if n >= g.p() {
        return Err(ColoringError::OrderNotLess { n, p: g.p() });
    }
    if part.n() != n {
        return Err(ColoringError::OrderMismatch { n, partition: part.n() });
    }
    let edges = edge_partition(g, part)?;
    color_space(n, part.len()).ok_or(ColoringError::ColorSpaceOverflow)?;

    let per_class: Vec<Result<Coloring, ColoringError>> = (0..part.len())
        .into_par_iter()
        .map(|i| longest_path_coloring(&edges.class_graph(i), n as usize))
        .collect();
    let mut levels = Vec::with_capacity(per_class.len());
    for result in per_class {
        match result {
            Ok(c) => levels.push(c.assignment),
            Err(ColoringError::PathTooLong { path, .. }) => {
                let prefix = path[..=n as usize].to_vec();
                let graph = g.graph();
                let is_clique = prefix
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| prefix[i + 1..].iter().all(|&b| graph.adjacent(a, b)));
                return Err(if is_clique {
                    ColoringError::CliqueTooLarge { n, witness: prefix }
                } else {
                    ColoringError::InconsistentLabels { path: prefix }
                });
            }
            Err(e) => return Err(e),
        }
    }

    let radix = n as u128;
    let n_vertices = g.graph().n_vertices();
    let tuples: Vec<Vec<u32>> =
        (0..n_vertices).map(|v| levels.iter().map(|l| l[v] as u32).collect()).collect();
    let assignment = tuples
        .iter()
        .map(|t| t.iter().rev().fold(0u128, |acc, &digit| acc * radix + digit as u128))
        .collect();
    let mut coloring = Coloring::from_assignment(assignment);
    coloring.tuple_view = Some(tuples);
    Ok(coloring)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Exact chromatic number from the oracle.
    Exact,
    /// Vertex count standing in for the chromatic number.
    VertexCount,
}

fn as_decimal<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiBoundTerm {
    pub prime: u64,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
    pub source: BoundSource,
}

/// `max(n^(n^2), chi(G'_q) for primes q <= n)`, with vertex counts used as
/// upper bounds wherever the exact chromatic number is not known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiBound {
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub power_term: BigUint,
    pub terms: Vec<ChiBoundTerm>,
    #[serde(serialize_with = "as_decimal")]
    pub bound: BigUint,
    /// True when any term is a vertex count rather than an exact value.
    pub substituted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChiBoundError {
    #[error("no size or exact chromatic number for G'_{0}")]
    MissingSize(u64),
    #[error("n = {n} is outside the tabulated domain (n_max = {n_max})")]
    OutOfDomain { n: u64, n_max: u64 },
}

pub fn chi_bound(
    n: u64,
    params: &ClassParameters,
    sizes: &BTreeMap<u64, BigUint>,
    exact: &BTreeMap<u64, u64>,
) -> Result<ChiBound, ChiBoundError> {
    if n > params.n_max {
        return Err(ChiBoundError::OutOfDomain { n, n_max: params.n_max });
    }
    let power_term = BigUint::from(n).pow(u32::try_from(n * n).expect("desk-scale n"));
    let terms = params
        .primes
        .iter()
        .copied()
        .take_while(|&q| q <= n)
        .map(|q| match (exact.get(&q), sizes.get(&q)) {
            (Some(&chi), _) => Ok(ChiBoundTerm { prime: q, value: BigUint::from(chi), source: BoundSource::Exact }),
            (None, Some(size)) => {
                Ok(ChiBoundTerm { prime: q, value: size.clone(), source: BoundSource::VertexCount })
            }
            (None, None) => Err(ChiBoundError::MissingSize(q)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bound = terms.iter().map(|t| &t.value).chain([&power_term]).max().cloned().expect("power term");
    let substituted = terms.iter().any(|t| t.source == BoundSource::VertexCount);
    Ok(ChiBound { n, power_term, terms, bound, substituted })
}
