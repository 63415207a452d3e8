#![allow(dead_code)]

use chibound::graph::OrientedGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn path(n: usize) -> OrientedGraph {
    OrientedGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// A DAG on `n` vertices: each pair is joined with probability `density`,
/// oriented along a random hidden order.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, density: f64) -> OrientedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((order[i], order[j]));
            }
        }
    }
    OrientedGraph::new(n, edges).unwrap()
}

/// A random out-forest with shuffled labels; every forest is unique-path.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize) -> OrientedGraph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n)
        .filter_map(|v| rng.random_bool(0.85).then(|| (label[rng.random_range(0..v)], label[v])));
    OrientedGraph::new(n, edges.collect::<Vec<_>>()).unwrap()
}

/// An arbitrary simple graph with each edge oriented low to high.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> OrientedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    OrientedGraph::new(n, edges).unwrap()
}

/// Undirected adjacency matrix.
pub fn matrix(g: &OrientedGraph) -> Vec<Vec<bool>> {
    let n = g.n_vertices();
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Clique number by trying every vertex subset.
pub fn brute_clique_number(g: &OrientedGraph) -> usize {
    let n = g.n_vertices();
    assert!(n <= 20);
    let m = matrix(g);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() > best && vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| m[a][b])) {
            best = vs.len();
        }
    }
    best
}

/// Chromatic number by enumerating set partitions (restricted growth strings).
pub fn brute_chromatic_number(g: &OrientedGraph) -> usize {
    let n = g.n_vertices();
    if n == 0 {
        return 0;
    }
    let m = matrix(g);
    let mut best = n;
    let mut colors = vec![0usize; n];
    fn walk(v: usize, used: usize, colors: &mut [usize], m: &[Vec<bool>], best: &mut usize) {
        if v == colors.len() {
            *best = (*best).min(used);
            return;
        }
        for c in 0..=used {
            if c == used && c + 1 >= *best {
                break;
            }
            if (0..v).all(|u| !(m[u][v] && colors[u] == c)) {
                colors[v] = c;
                walk(v + 1, used.max(c + 1), colors, m, best);
            }
        }
    }
    walk(0, 0, &mut colors, &m, &mut best);
    best
}

/// `d(u, v)` for every pair by breadth-first search from each vertex.
pub fn bfs_distances(g: &OrientedGraph) -> Vec<Vec<Option<u32>>> {
    let n = g.n_vertices();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.out_neighbors(u) {
                    if d[w].is_none() {
                        d[w] = Some(d[u].unwrap() + 1);
                        queue.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}
