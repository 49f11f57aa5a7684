//! Shared inputs for the criterion benchmarks in `benches/`.

use qwalk_core::graph::{generate_ws, Graph, WsParams};

/// Watts-Strogatz graph with ring degree 4 and half the edges rewired.
pub fn small_world(n: usize) -> Graph {
    generate_ws(WsParams {
        n,
        k: 4,
        beta: 0.5,
        seed: 0,
    })
    .expect("valid parameters")
}
