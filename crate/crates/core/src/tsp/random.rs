//! Seeded random instances: cities uniform in the unit square, roads pruned to
//! a degree bound.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::graph::TspGraph;

/// Road cost as a function of the two endpoints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Metric {
    #[default]
    Euclidean,
    SquaredEuclidean,
}

impl Metric {
    fn cost(self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let dx = a[0] - b[0];
        let dy = a[1] - b[1];
        let d2 = dx * dx + dy * dy;
        match self {
            Metric::Euclidean => libm::sqrt(d2),
            Metric::SquaredEuclidean => d2,
        }
    }
}

const ATTEMPTS: usize = 64;

/// Random graph with every degree in `[2, degree]` that has a Hamiltonian
/// cycle. Starting from the complete graph, the longest roads touching an
/// over-degree city are dropped unless that would disconnect the graph or
/// leave a city with fewer than two roads. Failed attempts redraw the cities
/// from the same seeded stream, so the result depends only on the arguments.
pub fn random_euclidean_graph(cities: usize, degree: usize, seed: u64, metric: Metric) -> Result<TspGraph> {
    if cities < 3 || degree < 2 || degree > cities - 1 {
        return Err(Error::InvalidDegree { cities, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let coords: Vec<[f64; 2]> = (0..cities).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
        if let Some(adj) = prune(&coords, degree, metric) {
            if has_hamiltonian_cycle(&adj) {
                let mut edges = Vec::new();
                for i in 0..cities {
                    for j in i + 1..cities {
                        if adj[i][j] {
                            edges.push((i, j, metric.cost(coords[i], coords[j])));
                        }
                    }
                }
                return TspGraph::from_edges(cities, &edges)?.with_coordinates(coords);
            }
        }
    }
    Err(Error::Regenerate { degree })
}

fn prune(coords: &[[f64; 2]], degree: usize, metric: Metric) -> Option<Vec<Vec<bool>>> {
    let n = coords.len();
    let mut adj = alloc::vec![alloc::vec![true; n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        row[i] = false;
    }
    let mut deg = alloc::vec![n - 1; n];
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, metric.cost(coords[i], coords[j])));
        }
    }
    // Longest first; ties broken by index for determinism.
    edges.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    for (i, j, _) in edges {
        if deg[i] <= degree && deg[j] <= degree {
            continue;
        }
        if deg[i] <= 2 || deg[j] <= 2 {
            continue;
        }
        adj[i][j] = false;
        adj[j][i] = false;
        if connected(&adj) {
            deg[i] -= 1;
            deg[j] -= 1;
        } else {
            adj[i][j] = true;
            adj[j][i] = true;
        }
    }
    deg.iter().all(|&d| d <= degree).then_some(adj)
}

fn connected(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let mut seen = alloc::vec![false; n];
    let mut stack = alloc::vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn has_hamiltonian_cycle(adj: &[Vec<bool>]) -> bool {
    fn go(adj: &[Vec<bool>], v: usize, count: usize, used: &mut [bool]) -> bool {
        let n = adj.len();
        if count == n {
            return adj[v][0];
        }
        for w in 1..n {
            if adj[v][w] && !used[w] {
                used[w] = true;
                if go(adj, w, count + 1, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    let mut used = alloc::vec![false; adj.len()];
    used[0] = true;
    go(adj, 0, 1, &mut used)
}
