#![allow(dead_code)]

use harmonium_core::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random spanning tree on shuffled labels plus each remaining pair with
/// probability `extra`.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: f64) -> Graph {
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push(ordered(labels[i], labels[j]));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(extra) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("valid edges")
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// `(L c)_v` straight from the edge list.
pub fn laplacian_times(g: &Graph, c: &[i64]) -> Vec<i64> {
    let mut d = vec![0i64; g.n()];
    for &(i, j) in g.edges() {
        let (i, j) = (i - 1, j - 1);
        d[i] += c[i] - c[j];
        d[j] += c[j] - c[i];
    }
    d
}

/// Nonconstant orientations compatible with `c`, by trying all `2^n`.
pub fn beta_by_orientations(g: &Graph, c: &[i64]) -> u64 {
    let n = g.n();
    let d = laplacian_times(g, c);
    let mut count = 0;
    for mask in 1..(1u64 << n) - 1 {
        let ok = (0..n).all(|v| {
            if mask >> v & 1 == 1 {
                d[v] >= 0
            } else {
                d[v] <= 0
            }
        });
        if ok {
            count += 1;
        }
    }
    count
}

pub fn random_coloring(rng: &mut impl Rng, n: usize, m: u64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(1..=m as i64)).collect()
}
