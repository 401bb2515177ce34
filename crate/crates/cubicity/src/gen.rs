//! Generators for the graph families used by the CLI and the test corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Path 1-2-...-n.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as u32).map(|u| (u, u + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Cycle 1-2-...-n-1. Requires n >= 3.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<_> = (1..n as u32).map(|u| (u, u + 1)).collect();
    edges.push((1, n as u32));
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n as u32 {
        for v in (u + 1)..=n as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Star with center 1 and leaves 2..n.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (2..=n as u32).map(|v| (1, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Complete binary tree of the given height (a single root has height 0);
/// n = 2^(height+1) - 1, children of i are 2i and 2i+1.
pub fn binary_tree(height: u32) -> Graph {
    let n = (1usize << (height + 1)) - 1;
    let edges: Vec<_> = (2..=n as u32).map(|v| (v / 2, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Erdős–Rényi G(n, p), deterministic for a fixed seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n as u32 {
        for v in (u + 1)..=n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(path(5).m(), 4);
        assert_eq!(cycle(6).m(), 6);
        assert_eq!(complete(5).m(), 10);
        assert_eq!(star(7).m(), 6);
        let t = binary_tree(3);
        assert_eq!(t.n(), 15);
        assert_eq!(t.m(), 14);
    }

    #[test]
    fn gnp_is_seed_deterministic() {
        let a = gnp(50, 0.1, 1);
        let b = gnp(50, 0.1, 1);
        assert_eq!(a.to_text(), b.to_text());
        let c = gnp(50, 0.1, 2);
        assert_ne!(a.to_text(), c.to_text());
    }
}
