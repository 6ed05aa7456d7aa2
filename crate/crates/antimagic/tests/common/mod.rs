//! Test-only oracles that share no code with the library's search or weight logic.

#![allow(dead_code)]

use std::collections::BTreeSet;

use antimagic::{Graph, Mode};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// Weights summed straight from the edge list.
pub fn weights(n: usize, edges: &[(usize, usize)], vertex: &[u64], edge: &[u64]) -> Vec<u64> {
    let mut w = vec![0; n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        w[a - 1] += vertex[b - 1] + edge[i];
        w[b - 1] += vertex[a - 1] + edge[i];
    }
    w
}

/// Minimum color count over every class-respecting bijection, by brute force.
/// `None` when no labeling of the class is local antimagic.
pub fn brute_force_min_colors(g: &Graph, mode: Mode) -> Option<usize> {
    let (n, m) = (g.n(), g.m());
    let edges = g.edges();
    let total = (n + m) as u64;
    let mut best: Option<usize> = None;
    let mut consider = |vertex: &[u64], edge: &[u64]| {
        let w = weights(n, edges, vertex, edge);
        if edges.iter().all(|&(a, b)| w[a - 1] != w[b - 1]) {
            let c = w.iter().collect::<BTreeSet<_>>().len();
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    };
    match mode {
        Mode::General => {
            for p in (1..=total).permutations(n + m) {
                consider(&p[..n], &p[n..]);
            }
        }
        Mode::Svtla | Mode::Setla => {
            let (vlo, elo) = if mode == Mode::Svtla { (1, n as u64 + 1) } else { (m as u64 + 1, 1) };
            let edge_perms: Vec<Vec<u64>> = (elo..elo + m as u64).permutations(m).collect();
            for vp in (vlo..vlo + n as u64).permutations(n) {
                for ep in &edge_perms {
                    consider(&vp, ep);
                }
            }
        }
    }
    best
}

/// A connected graph on `2..=max_n` vertices with at most `max_total` vertices plus
/// edges: a random spanning tree plus random extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, max_n: usize, max_total: usize) -> Graph {
    let n = rng.gen_range(2..=max_n.min(max_total.div_ceil(2)));
    let mut edges: BTreeSet<(usize, usize)> = (2..=n).map(|v| (rng.gen_range(1..v), v)).collect();
    let room = max_total - n - edges.len();
    let extra = rng.gen_range(0..=room);
    for _ in 0..extra {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Graph::new(n, edges).expect("spanning tree keeps the graph valid")
}

/// A uniformly random bijection onto 1..=n+m, split into vertex and edge labels.
pub fn random_bijection(rng: &mut impl Rng, g: &Graph) -> (Vec<u64>, Vec<u64>) {
    let mut labels: Vec<u64> = (1..=(g.n() + g.m()) as u64).collect();
    labels.shuffle(rng);
    let edge = labels.split_off(g.n());
    (labels, edge)
}
