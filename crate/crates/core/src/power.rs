//! Modular power graphs `G'_p` and the prime-indexed target function `g`.
//!
//! `G'_p` keeps the vertex set of a unique-path base DAG and joins every
//! comparable pair `u < v` whose path length `d(u, v)` is not divisible by
//! `p`, oriented `u -> v` and labelled with `d(u, v) mod p`. Labels travel
//! with the edges into induced subgraphs, where `d` can no longer be
//! recomputed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    distance_table, induce_with_edge_map, DistanceTable, GraphError, InducedSubgraph,
    OrientedGraph, VertexId,
};
use crate::primes::{is_prime, next_prime_after, primes_up_to};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("base graph is not a unique-path DAG: {0}")]
    UniquePathViolation(#[from] GraphError),
    #[error("{labels} labels for {edges} edges")]
    LabelCount { labels: usize, edges: usize },
}

/// An oriented graph whose edges carry residues modulo a prime. This is the
/// carrier for `G'_p` and for all of its induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueGraph {
    p: u32,
    graph: OrientedGraph,
    residues: Vec<Option<u32>>,
}

impl ResidueGraph {
    /// `residues` is aligned with `graph.edges()`. Labels are not range
    /// checked here; see [`crate::coloring::edge_partition`].
    pub fn new(p: u32, graph: OrientedGraph, residues: Vec<Option<u32>>) -> Result<Self, PowerError> {
        if residues.len() != graph.n_edges() {
            return Err(PowerError::LabelCount { labels: residues.len(), edges: graph.n_edges() });
        }
        Ok(ResidueGraph { p, graph, residues })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn residues(&self) -> &[Option<u32>] {
        &self.residues
    }

    pub fn residue(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.graph.edge_index(u, v).and_then(|i| self.residues[i])
    }

    /// `(tail, head, residue)` in edge order.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Option<u32>)> + '_ {
        self.graph.edges().iter().zip(&self.residues).map(|(&(u, v), &r)| (u, v, r))
    }

    pub fn induced(&self, vs: &[VertexId]) -> Result<InducedSubgraph<ResidueGraph>, GraphError> {
        let (sub, kept) = induce_with_edge_map(&self.graph, vs)?;
        let residues = kept.iter().map(|&i| self.residues[i]).collect();
        Ok(InducedSubgraph {
            graph: ResidueGraph { p: self.p, graph: sub.graph, residues },
            back_map: sub.back_map,
        })
    }
}

#[derive(Debug, Clone)]
pub struct PowerGraph {
    base: OrientedGraph,
    distances: DistanceTable,
    labeled: ResidueGraph,
}

impl PowerGraph {
    pub fn p(&self) -> u32 {
        self.labeled.p
    }

    pub fn base(&self) -> &OrientedGraph {
        &self.base
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.distances
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.labeled.graph
    }

    pub fn residue_graph(&self) -> &ResidueGraph {
        &self.labeled
    }

    pub fn into_residue_graph(self) -> ResidueGraph {
        self.labeled
    }
}

pub fn build_power_graph(base: &OrientedGraph, p: u32) -> Result<PowerGraph, PowerError> {
    if !is_prime(p as u64) {
        return Err(PowerError::NotPrime(p));
    }
    let distances = distance_table(base)?;
    let mut edges = Vec::new();
    let mut residues = Vec::new();
    // comparable_pairs is lexicographic, which is the edge order of OrientedGraph.
    for (u, v, d) in distances.comparable_pairs() {
        let r = d % p;
        if r != 0 {
            edges.push((u, v));
            residues.push(Some(r));
        }
    }
    let graph = OrientedGraph::new(base.n_vertices(), edges).expect("pairs are distinct");
    Ok(PowerGraph {
        base: base.clone(),
        distances,
        labeled: ResidueGraph { p, graph, residues },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("the domain {{2, ..., {0}}} is empty")]
    DomainTooSmall(u64),
    #[error("f is not tabulated at {0}")]
    MissingValue(u64),
    #[error("f({0}) overflows u64")]
    Overflow(u64),
    #[error("unrecognised function '{0}' (expected n^2, 2^n or a JSON table)")]
    UnknownFunction(String),
}

/// A target function, either built in or tabulated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionSpec {
    Square,
    PowerOfTwo,
    Table(BTreeMap<u64, u64>),
}

impl FunctionSpec {
    /// Parses the built-in names; tables come from [`FunctionSpec::from_json`].
    pub fn builtin(name: &str) -> Result<Self, ParamsError> {
        match name.replace(' ', "").as_str() {
            "n^2" | "n**2" => Ok(FunctionSpec::Square),
            "2^n" | "2**n" => Ok(FunctionSpec::PowerOfTwo),
            other => Err(ParamsError::UnknownFunction(other.to_string())),
        }
    }

    /// A JSON object `{"2": 4, "3": 9, ...}`.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text).map(FunctionSpec::Table)
    }

    pub fn tabulate(&self, n_max: u64) -> Result<BTreeMap<u64, u64>, ParamsError> {
        (2..=n_max)
            .map(|n| {
                let value = match self {
                    FunctionSpec::Square => n.checked_mul(n),
                    FunctionSpec::PowerOfTwo => u32::try_from(n).ok().and_then(|e| 2u64.checked_pow(e)),
                    FunctionSpec::Table(t) => {
                        return t.get(&n).map(|&v| (n, v)).ok_or(ParamsError::MissingValue(n))
                    }
                };
                value.map(|v| (n, v)).ok_or(ParamsError::Overflow(n))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassParameters {
    pub n_max: u64,
    pub f_table: BTreeMap<u64, u64>,
    /// Every prime up to and including the first prime above `n_max`.
    pub primes: Vec<u64>,
    /// `g(p_i) = max { f(n) : p_i <= n < p_{i+1}, n <= n_max }`.
    pub g: BTreeMap<u64, u64>,
}

impl ClassParameters {
    pub fn g(&self, p: u64) -> Option<u64> {
        self.g.get(&p).copied()
    }

    /// The largest prime `<= n`: the `p` whose `G'_p` witnesses `f(n)`.
    pub fn witness_for(&self, n: u64) -> Option<u64> {
        self.primes.iter().copied().take_while(|&p| p <= n).last()
    }
}

pub fn class_parameters(f: &BTreeMap<u64, u64>, n_max: u64) -> Result<ClassParameters, ParamsError> {
    if n_max < 2 {
        return Err(ParamsError::DomainTooSmall(n_max));
    }
    let mut f_table = BTreeMap::new();
    for n in 2..=n_max {
        let value = *f.get(&n).ok_or(ParamsError::MissingValue(n))?;
        f_table.insert(n, value);
    }
    let mut primes = primes_up_to(n_max);
    primes.push(next_prime_after(n_max));
    let g = primes
        .windows(2)
        .map(|w| {
            let top = (w[1] - 1).min(n_max);
            (w[0], (w[0]..=top).map(|n| f_table[&n]).max().expect("non-empty range"))
        })
        .collect();
    Ok(ClassParameters { n_max, f_table, primes, g })
}
