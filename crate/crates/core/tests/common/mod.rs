//! Random graph generators and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use alphacent::matrix::{symmetric_eigen, DenseMatrix};
use alphacent::{Edge, Graph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn undirected(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let edges = pairs
        .iter()
        .map(|&(source, target)| Edge {
            source,
            target,
            weight: 1.0,
        })
        .collect();
    Graph::new(labels(n), false, edges).unwrap()
}

fn is_bipartite(n: usize, adj: &[Vec<usize>]) -> bool {
    let mut color = vec![usize::MAX; n];
    for start in 0..n {
        if color[start] != usize::MAX {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if color[v] == usize::MAX {
                    color[v] = 1 - color[u];
                    stack.push(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Connected simple undirected graph: a random spanning tree plus extra
/// edges with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut present = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present[u][v] = true;
        pairs.push((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.gen_bool(p) {
                present[u][v] = true;
                pairs.push((u, v));
            }
        }
    }
    pairs
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn spectrum(a: &DenseMatrix<f64>) -> Vec<f64> {
    symmetric_eigen(a).unwrap().0
}

/// Connected, non-bipartite undirected graph whose largest eigenvalue
/// exceeds every other eigenvalue modulus by at least the factor `1/ratio`.
pub fn random_gapped(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize, ratio: f64) -> Graph {
    loop {
        let n = rng.gen_range(n_min..=n_max);
        let p = rng.gen_range(0.08..0.4);
        let pairs = random_connected(rng, n, p);
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        if is_bipartite(n, &adj) {
            continue;
        }
        let g = undirected(n, &pairs);
        let ev = spectrum(&g.adjacency());
        let second = ev[1].abs().max(ev[n - 1].abs());
        if second <= ratio * ev[0] {
            return g;
        }
    }
}

/// `Σ_{k=0..terms-1} β α^k A^{k+1}`, summed term by term.
pub fn series(a: &DenseMatrix<f64>, alpha: f64, beta: f64, terms: usize) -> DenseMatrix<f64> {
    let mut power = a.clone();
    let mut sum = DenseMatrix::zeros(a.rows(), a.cols());
    let mut weight = beta;
    for _ in 0..terms {
        sum = sum.add(&power.scaled(weight));
        power = power.matmul(a);
        weight *= alpha;
    }
    sum
}

pub fn normalized(m: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let total = m.grand_sum();
    m.map(|x| x / total)
}

/// Newman modularity `(1/2m) Σ_ij (A_ij − k_i k_j / 2m) δ(s_i, s_j)` of an
/// undirected graph, from the definition.
pub fn newman_modularity(a: &DenseMatrix<f64>, assignment: &[usize]) -> f64 {
    let n = a.rows();
    let k: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if assignment[i] == assignment[j] {
                q += a[(i, j)] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
