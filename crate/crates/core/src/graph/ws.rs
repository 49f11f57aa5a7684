//! Seeded Watts-Strogatz small-world generator.
//!
//! The random stream is xoshiro256** seeded through SplitMix64 (the
//! `seed_from_u64` construction), so any implementation of those two
//! generators reproduces the same graphs:
//!
//! 1. Build the ring lattice: node `i` joins `(i + d) mod n` for `d = 1..=k/2`.
//! 2. For `i` in `0..n`, then `d` in `1..=k/2`, draw `u = (x >> 11) * 2^-53`
//!    from the next output `x`. If `u < beta`, the edge `(i, i+d)` is rewired
//!    to `(i, w)`: draw `w = (x * n) >> 64` (128-bit product) until `w != i`
//!    and `w` is not already a neighbour of `i`. If `i` is adjacent to every
//!    other node the edge is kept and no node is drawn.
//!
//! Node `i` keeps every edge it owns during the scan, so no node ends up
//! isolated.

use std::collections::BTreeSet;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use super::Graph;
use crate::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WsParams {
    pub n: usize,
    /// Even ring degree.
    pub k: usize,
    pub beta: f64,
    pub seed: u64,
}

impl WsParams {
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.k == 0 || !self.k.is_multiple_of(2) {
            return Err(GraphError::Params(format!(
                "k must be a positive even number, got {}",
                self.k
            )));
        }
        if self.k >= self.n {
            return Err(GraphError::Params(format!(
                "k={} must be smaller than n={}",
                self.k, self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(GraphError::Params(format!("beta={} must lie in [0, 1]", self.beta)));
        }
        Ok(())
    }
}

struct Stream(Xoshiro256StarStar);

impl Stream {
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn index(&mut self, n: usize) -> usize {
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

pub fn generate_ws(params: WsParams) -> Result<Graph, GraphError> {
    params.validate()?;
    let WsParams { n, k, beta, seed } = params;
    let mut rng = Stream(Xoshiro256StarStar::seed_from_u64(seed));

    let mut adj = vec![BTreeSet::new(); n];
    for i in 0..n {
        for d in 1..=k / 2 {
            let j = (i + d) % n;
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }

    for i in 0..n {
        for d in 1..=k / 2 {
            let j = (i + d) % n;
            if rng.unit() >= beta || adj[i].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.index(n);
                if w != i && !adj[i].contains(&w) {
                    break w;
                }
            };
            adj[i].remove(&j);
            adj[j].remove(&i);
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }

    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)));
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph, GraphError> {
        generate_ws(WsParams { n, k, beta, seed })
    }

    #[test]
    fn stream_matches_reference_xoshiro() {
        // SplitMix64(0) -> xoshiro256**, reference outputs.
        let mut rng = Xoshiro256StarStar::seed_from_u64(0);
        let got: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            [
                11091344671253066420,
                13793997310169335082,
                1900383378846508768,
                7684712102626143532
            ]
        );
    }

    #[test]
    fn beta_zero_is_ring_lattice() {
        let g = ws(8, 2, 0.0, 123).unwrap();
        assert_eq!(g, Graph::cycle(8).unwrap());
        let g = ws(10, 4, 0.0, 7).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert_eq!(g.edge_count(), 20);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(ws(8, 3, 0.5, 0), Err(GraphError::Params(_))));
        assert!(matches!(ws(8, 0, 0.5, 0), Err(GraphError::Params(_))));
        assert!(matches!(ws(4, 4, 0.5, 0), Err(GraphError::Params(_))));
        assert!(matches!(ws(8, 2, 1.5, 0), Err(GraphError::Params(_))));
        assert!(matches!(ws(8, 2, f64::NAN, 0), Err(GraphError::Params(_))));
    }

    #[test]
    fn full_rewiring_stays_simple() {
        for seed in 0..50 {
            let g = ws(8, 2, 1.0, seed).unwrap();
            assert_eq!(g.edge_count(), 8);
            assert!(g.edges().iter().all(|&(u, v)| u < v));
            assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
            assert!(g.degrees().iter().all(|&d| d >= 1));
        }
    }

    #[test]
    fn dense_ring_keeps_edges_without_targets() {
        // n=5, k=4 is K5: nothing to rewire to.
        let g = ws(5, 4, 1.0, 9).unwrap();
        assert_eq!(g, Graph::complete(5).unwrap());
    }
}
