//! Exact and brute-force verifiers.
//!
//! Everything here works from `n_vertices()` and `edges()` alone: no oracle
//! calls the construction or colouring code it is used to check. Failing
//! verdicts carry a witness, and each witness is re-checked by a small
//! standalone checker before it is returned.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::Coloring;
use crate::farey::ResiduePartition;
use crate::graph::{OrientedGraph, VertexId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Search nodes; deterministic.
    pub max_nodes: Option<u64>,
    /// Wall clock; a run that hits it is reported, never approximated.
    #[serde(skip)]
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }

    pub fn millis(ms: u64) -> Self {
        Budget { max_nodes: None, max_time: Some(Duration::from_millis(ms)) }
    }
}

struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter { budget, start: Instant::now(), nodes: 0 }
    }

    /// Counts one node; `false` once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|cap| self.nodes > cap) {
            return false;
        }
        match self.budget.max_time {
            Some(limit) if self.nodes.is_multiple_of(1024) => self.start.elapsed() <= limit,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("budget exceeded after {nodes} nodes; value lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize, nodes: u64 },
    #[error("directed cycle through {0:?}")]
    CycleFound(Vec<VertexId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Cycle { vertices: Vec<VertexId> },
    DuplicatePaths { from: VertexId, to: VertexId, first: Vec<VertexId>, second: Vec<VertexId> },
    Triangle { vertices: [VertexId; 3] },
    Clique { vertices: Vec<VertexId> },
    ZeroSum { class: usize, elements: Vec<u32> },
    LongPath { vertices: Vec<VertexId> },
    MonochromaticEdge { tail: VertexId, head: VertexId, color: u128 },
    AssignmentLength { expected: usize, found: usize },
    Coloring { colors: Vec<usize> },
    Bounds { lower: usize, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn pass(check: &str, instance: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            instance: instance.to_string(),
            verdict: Verdict::Pass,
            witness: None,
            detail: None,
            wall_time_ms: None,
        }
    }

    pub fn fail(check: &str, instance: &str, witness: Witness) -> Self {
        VerificationReport { verdict: Verdict::Fail, witness: Some(witness), ..Self::pass(check, instance) }
    }

    pub fn budget_exceeded(check: &str, instance: &str, lower: usize, upper: usize) -> Self {
        VerificationReport {
            verdict: Verdict::BudgetExceeded,
            witness: Some(Witness::Bounds { lower, upper }),
            ..Self::pass(check, instance)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Undirected bitset adjacency built from the raw edge list.
struct Adjacency {
    rows: Vec<FixedBitSet>,
}

impl Adjacency {
    fn of(g: &OrientedGraph) -> Self {
        let n = g.n_vertices();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in g.edges() {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Adjacency { rows }
    }

    fn n(&self) -> usize {
        self.rows.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }
}

// ---- witness re-checkers -------------------------------------------------

fn edge_set(g: &OrientedGraph) -> std::collections::HashSet<(usize, usize)> {
    g.edges().iter().copied().collect()
}

fn recheck_directed_path(g: &OrientedGraph, path: &[usize]) -> bool {
    let e = edge_set(g);
    !path.is_empty() && path.windows(2).all(|w| e.contains(&(w[0], w[1])))
}

fn recheck_clique(g: &OrientedGraph, vs: &[usize]) -> bool {
    let e = edge_set(g);
    let linked = |a: usize, b: usize| e.contains(&(a, b)) || e.contains(&(b, a));
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && linked(a, b)))
}

fn recheck_cycle(g: &OrientedGraph, cycle: &[usize]) -> bool {
    let mut closed = cycle.to_vec();
    closed.extend(cycle.first());
    cycle.len() >= 2 && recheck_directed_path(g, &closed)
}

fn recheck_zero_sum(p: u32, n: u32, class: &[u32], elements: &[u32]) -> bool {
    let sum: u64 = elements.iter().map(|&x| x as u64).sum();
    !elements.is_empty()
        && elements.len() <= n as usize
        && elements.iter().all(|x| class.contains(x))
        && sum.is_multiple_of(p as u64)
}

fn recheck_proper(g: &OrientedGraph, colors: &[usize]) -> bool {
    colors.len() == g.n_vertices() && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

// ---- acyclicity and unique paths ----------------------------------------

/// Reverse DFS postorder, or a directed cycle.
fn dfs_order(g: &OrientedGraph) -> Result<Vec<usize>, Vec<usize>> {
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let n = g.n_vertices();
    let mut state = vec![NEW; n];
    let mut post = Vec::with_capacity(n);
    for root in 0..n {
        if state[root] != NEW {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = OPEN;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = g.out_neighbors(v).get(*i) {
                *i += 1;
                match state[w] {
                    NEW => {
                        state[w] = OPEN;
                        stack.push((w, 0));
                    }
                    OPEN => {
                        let from = stack.iter().position(|&(x, _)| x == w).unwrap();
                        return Err(stack[from..].iter().map(|&(x, _)| x).collect());
                    }
                    _ => {}
                }
            } else {
                state[v] = DONE;
                post.push(v);
                stack.pop();
            }
        }
    }
    post.reverse();
    Ok(post)
}

pub fn verify_acyclic(g: &OrientedGraph, instance: &str) -> VerificationReport {
    match dfs_order(g) {
        Ok(_) => VerificationReport::pass("acyclic", instance),
        Err(cycle) => {
            assert!(recheck_cycle(g, &cycle), "cycle witness failed re-check");
            VerificationReport::fail("acyclic", instance, Witness::Cycle { vertices: cycle })
        }
    }
}

/// Pass iff `g` is acyclic and every ordered pair is joined by at most one
/// directed path. The first offending pair in lexicographic order is
/// reported with two distinct paths.
pub fn verify_unique_paths(g: &OrientedGraph, instance: &str) -> VerificationReport {
    const CHECK: &str = "unique_paths";
    let order = match dfs_order(g) {
        Ok(order) => order,
        Err(cycle) => {
            assert!(recheck_cycle(g, &cycle), "cycle witness failed re-check");
            return VerificationReport::fail(CHECK, instance, Witness::Cycle { vertices: cycle });
        }
    };
    let n = g.n_vertices();
    let mut count = vec![0u8; n];
    for s in 0..n {
        count.iter_mut().for_each(|c| *c = 0);
        count[s] = 1;
        for &v in &order {
            if v == s {
                continue;
            }
            let total: u32 = g.in_neighbors(v).iter().map(|&u| count[u] as u32).sum();
            count[v] = total.min(2) as u8;
        }
        if let Some(t) = (0..n).find(|&t| count[t] >= 2) {
            let (first, second) = two_paths(g, &count, s, t);
            assert!(
                first != second
                    && [&first, &second].iter().all(|p| {
                        p.first() == Some(&s) && p.last() == Some(&t) && recheck_directed_path(g, p)
                    }),
                "duplicate-path witness failed re-check"
            );
            return VerificationReport::fail(
                CHECK,
                instance,
                Witness::DuplicatePaths { from: s, to: t, first, second },
            );
        }
    }
    VerificationReport::pass(CHECK, instance)
}

fn one_path(g: &OrientedGraph, count: &[u8], s: usize, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while v != s {
        v = *g.in_neighbors(v).iter().find(|&&u| count[u] > 0).expect("reachable");
        path.push(v);
    }
    path.reverse();
    path
}

fn two_paths(g: &OrientedGraph, count: &[u8], s: usize, t: usize) -> (Vec<usize>, Vec<usize>) {
    let preds: Vec<usize> = g.in_neighbors(t).iter().copied().filter(|&u| count[u] > 0).collect();
    let (mut a, mut b) = if preds.len() >= 2 {
        (one_path(g, count, s, preds[0]), one_path(g, count, s, preds[1]))
    } else {
        two_paths(g, count, s, preds[0])
    };
    a.push(t);
    b.push(t);
    (a, b)
}

pub fn verify_triangle_free(g: &OrientedGraph, instance: &str) -> VerificationReport {
    let adj = Adjacency::of(g);
    for &(u, v) in g.edges() {
        if let Some(w) = adj.rows[u].intersection(&adj.rows[v]).next() {
            let mut t = [u, v, w];
            t.sort_unstable();
            assert!(recheck_clique(g, &t), "triangle witness failed re-check");
            return VerificationReport::fail("triangle_free", instance, Witness::Triangle { vertices: t });
        }
    }
    VerificationReport::pass("triangle_free", instance)
}

// ---- longest paths -------------------------------------------------------

/// Longest directed path, vertices in order.
pub fn longest_path(g: &OrientedGraph) -> Result<Vec<VertexId>, OracleError> {
    let order = dfs_order(g).map_err(OracleError::CycleFound)?;
    let n = g.n_vertices();
    let mut len = vec![0usize; n];
    let mut next = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        for &w in g.out_neighbors(v) {
            if len[w] + 1 > len[v] {
                len[v] = len[w] + 1;
                next[v] = w;
            }
        }
    }
    let Some(mut v) = (0..n).max_by_key(|&v| (len[v], std::cmp::Reverse(v))) else {
        return Ok(Vec::new());
    };
    let mut path = vec![v];
    while next[v] != usize::MAX {
        v = next[v];
        path.push(v);
    }
    Ok(path)
}

/// Pass iff every directed path has fewer than `n` edges.
pub fn verify_no_long_path(
    g: &OrientedGraph,
    n: usize,
    instance: &str,
) -> Result<VerificationReport, OracleError> {
    let path = longest_path(g)?;
    let length = path.len().saturating_sub(1);
    if path.is_empty() || length < n {
        return Ok(VerificationReport::pass("no_long_path", instance)
            .with_detail(format!("longest path {length} < {n}")));
    }
    assert!(recheck_directed_path(g, &path), "long-path witness failed re-check");
    Ok(VerificationReport::fail("no_long_path", instance, Witness::LongPath { vertices: path }))
}

// ---- colourings ----------------------------------------------------------

pub fn verify_proper(g: &OrientedGraph, coloring: &Coloring, instance: &str) -> VerificationReport {
    const CHECK: &str = "proper_coloring";
    let colors = coloring.assignment();
    if colors.len() != g.n_vertices() {
        return VerificationReport::fail(
            CHECK,
            instance,
            Witness::AssignmentLength { expected: g.n_vertices(), found: colors.len() },
        );
    }
    match g.edges().iter().find(|&&(u, v)| colors[u] == colors[v]) {
        None => VerificationReport::pass(CHECK, instance),
        Some(&(tail, head)) => {
            assert!(edge_set(g).contains(&(tail, head)) && colors[tail] == colors[head]);
            VerificationReport::fail(
                CHECK,
                instance,
                Witness::MonochromaticEdge { tail, head, color: colors[tail] },
            )
        }
    }
}

// ---- residue sums --------------------------------------------------------

/// For each class and each `m <= n`, decides by DP over
/// (summands used, residue) whether `m` elements of the class, repetition
/// allowed, can sum to 0 mod `p`.
pub fn verify_class_sums(p: u32, n: u32, classes: &[Vec<u32>], instance: &str) -> VerificationReport {
    const CHECK: &str = "partition_sums";
    let p_us = p as usize;
    for (ci, class) in classes.iter().enumerate() {
        let mut elems: Vec<u32> = class.iter().map(|&x| x % p).collect();
        elems.sort_unstable();
        elems.dedup();
        // parent[m][r] = (residue before, element added) for the first way found.
        let mut parent: Vec<Vec<Option<(usize, u32)>>> = vec![vec![None; p_us]; n as usize + 1];
        let mut reach = vec![false; p_us];
        reach[0] = true;
        for m in 1..=n as usize {
            let mut next = vec![false; p_us];
            for r in (0..p_us).filter(|&r| reach[r]) {
                for &a in &elems {
                    let t = (r + a as usize) % p_us;
                    if !next[t] {
                        next[t] = true;
                        parent[m][t] = Some((r, a));
                    }
                }
            }
            if next[0] {
                let mut elements = Vec::with_capacity(m);
                let mut r = 0;
                for level in (1..=m).rev() {
                    let (prev, a) = parent[level][r].expect("reached");
                    elements.push(a);
                    r = prev;
                }
                elements.sort_unstable();
                assert!(recheck_zero_sum(p, n, class, &elements), "zero-sum witness failed re-check");
                return VerificationReport::fail(
                    CHECK,
                    instance,
                    Witness::ZeroSum { class: ci + 1, elements },
                );
            }
            reach = next;
        }
    }
    VerificationReport::pass(CHECK, instance)
}

pub fn verify_partition_sums(part: &ResiduePartition) -> VerificationReport {
    let instance = format!("p={} n={}", part.p(), part.n());
    verify_class_sums(part.p(), part.n(), part.classes(), &instance)
}

// ---- maximum clique ------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCertificate {
    pub size: usize,
    pub witness: Vec<VertexId>,
    pub nodes: u64,
}

/// Exact clique number by Bron-Kerbosch with Tomita pivoting on bitsets.
pub fn max_clique(g: &OrientedGraph, budget: Budget) -> Result<CliqueCertificate, OracleError> {
    let adj = Adjacency::of(g);
    let n = adj.n();
    let mut search = CliqueSearch { adj: &adj, meter: Meter::new(budget), best: Vec::new(), r: Vec::new() };
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let complete = search.expand(p, x);
    let CliqueSearch { best, meter, .. } = search;
    if !complete {
        return Err(OracleError::BudgetExceeded { lower: best.len(), upper: n, nodes: meter.nodes });
    }
    let mut witness = best;
    witness.sort_unstable();
    assert!(recheck_clique(g, &witness), "clique witness failed re-check");
    Ok(CliqueCertificate { size: witness.len(), witness, nodes: meter.nodes })
}

struct CliqueSearch<'a> {
    adj: &'a Adjacency,
    meter: Meter,
    best: Vec<usize>,
    r: Vec<usize>,
}

impl CliqueSearch<'_> {
    /// `false` when the budget ran out.
    fn expand(&mut self, mut p: FixedBitSet, mut x: FixedBitSet) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if self.r.len() > self.best.len() {
            self.best = self.r.clone();
        }
        if self.r.len() + p.count_ones(..) <= self.best.len() {
            return true;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| (self.adj.rows[u].intersection(&p).count(), std::cmp::Reverse(u)));
        let Some(pivot) = pivot else { return true };
        let candidates: Vec<usize> = p.difference(&self.adj.rows[pivot]).collect();
        for v in candidates {
            let row = &self.adj.rows[v];
            let mut np = p.clone();
            np.intersect_with(row);
            let mut nx = x.clone();
            nx.intersect_with(row);
            self.r.push(v);
            let done = self.expand(np, nx);
            self.r.pop();
            if !done {
                return false;
            }
            p.set(v, false);
            x.insert(v);
        }
        true
    }
}

// ---- chromatic number ----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticCertificate {
    pub chi: usize,
    /// An optimal proper colouring.
    pub coloring: Vec<usize>,
    pub clique_lower_bound: usize,
    pub nodes: u64,
}

/// Exact chromatic number by iterative deepening on `k`, starting from a
/// greedy clique bound, with DSATUR-ordered backtracking for each `k`.
pub fn exact_chromatic_number(g: &OrientedGraph, budget: Budget) -> Result<ChromaticCertificate, OracleError> {
    let adj = Adjacency::of(g);
    let n = adj.n();
    if n == 0 {
        return Ok(ChromaticCertificate { chi: 0, coloring: Vec::new(), clique_lower_bound: 0, nodes: 0 });
    }
    let lower = greedy_clique(&adj).len();
    let upper_coloring = dsatur_greedy(&adj);
    let upper = upper_coloring.iter().max().map_or(0, |&c| c + 1);
    let mut meter = Meter::new(budget);
    for k in lower..upper {
        let mut search = ColorSearch::new(&adj, k);
        match search.run(&mut meter) {
            Some(true) => {
                let coloring = search.color;
                assert!(recheck_proper(g, &coloring), "colouring failed re-check");
                return Ok(ChromaticCertificate { chi: k, coloring, clique_lower_bound: lower, nodes: meter.nodes });
            }
            Some(false) => {}
            None => return Err(OracleError::BudgetExceeded { lower: k, upper, nodes: meter.nodes }),
        }
    }
    assert!(recheck_proper(g, &upper_coloring), "colouring failed re-check");
    Ok(ChromaticCertificate { chi: upper, coloring: upper_coloring, clique_lower_bound: lower, nodes: meter.nodes })
}

fn greedy_clique(adj: &Adjacency) -> Vec<usize> {
    let n = adj.n();
    let mut best = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = adj.rows[start].clone();
        while let Some(v) = cand
            .ones()
            .max_by_key(|&v| (adj.rows[v].intersection(&cand).count(), std::cmp::Reverse(v)))
        {
            clique.push(v);
            cand.intersect_with(&adj.rows[v]);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

fn dsatur_greedy(adj: &Adjacency) -> Vec<usize> {
    let n = adj.n();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (seen[v].count_ones(..), adj.degree(v), std::cmp::Reverse(v)))
            .expect("uncoloured vertex");
        let c = (0..n).find(|&c| !seen[v].contains(c)).expect("a free colour");
        color[v] = c;
        for w in adj.rows[v].ones() {
            seen[w].insert(c);
        }
    }
    color
}

struct ColorSearch<'a> {
    adj: &'a Adjacency,
    k: usize,
    color: Vec<usize>,
    /// forbidden[v * k + c] counts neighbours of v holding colour c.
    forbidden: Vec<u32>,
    saturation: Vec<usize>,
}

impl<'a> ColorSearch<'a> {
    fn new(adj: &'a Adjacency, k: usize) -> Self {
        let n = adj.n();
        ColorSearch {
            adj,
            k,
            color: vec![usize::MAX; n],
            forbidden: vec![0; n * k],
            saturation: vec![0; n],
        }
    }

    /// `Some(colourable)`, or `None` when the budget ran out.
    fn run(&mut self, meter: &mut Meter) -> Option<bool> {
        if self.k == 0 {
            return Some(self.adj.n() == 0);
        }
        self.solve(meter, self.adj.n(), 0)
    }

    fn assign(&mut self, v: usize, c: usize, delta: i32) {
        for w in self.adj.rows[v].ones() {
            let slot = &mut self.forbidden[w * self.k + c];
            if delta > 0 {
                *slot += 1;
                if *slot == 1 {
                    self.saturation[w] += 1;
                }
            } else {
                *slot -= 1;
                if *slot == 0 {
                    self.saturation[w] -= 1;
                }
            }
        }
    }

    fn solve(&mut self, meter: &mut Meter, left: usize, used: usize) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        if !meter.tick() {
            return None;
        }
        let v = (0..self.adj.n())
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v], self.adj.degree(v), std::cmp::Reverse(v)))
            .expect("uncoloured vertex");
        // Colours above `used` are interchangeable; try only the first.
        for c in 0..self.k.min(used + 1) {
            if self.forbidden[v * self.k + c] > 0 {
                continue;
            }
            self.color[v] = c;
            self.assign(v, c, 1);
            let found = self.solve(meter, left - 1, used.max(c + 1));
            if found != Some(false) {
                return found;
            }
            self.assign(v, c, -1);
            self.color[v] = usize::MAX;
        }
        Some(false)
    }
}
