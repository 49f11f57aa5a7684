//! Edge lists frozen from `oracles/ws_trace.py`, an independent Python
//! implementation of the generator's PRNG and rewiring sequence.

use qwalk_core::graph::{generate_ws, serialize_graph, Graph, WsParams};

fn ws(n: usize, k: usize, beta: f64, seed: u64) -> Graph {
    generate_ws(WsParams { n, k, beta, seed }).unwrap()
}

#[test]
fn four_node_half_rewired() {
    assert_eq!(ws(4, 2, 0.5, 0).edges(), &[(0, 1), (0, 2), (1, 2), (2, 3)]);
}

#[test]
fn full_rewiring_seed_3() {
    assert_eq!(
        ws(8, 2, 1.0, 3).edges(),
        &[(0, 5), (1, 2), (1, 4), (1, 7), (3, 7), (4, 6), (4, 7), (5, 7)]
    );
}

#[test]
fn denser_ring() {
    let want = [
        (0, 2),
        (0, 3),
        (0, 8),
        (1, 2),
        (1, 3),
        (1, 9),
        (2, 3),
        (2, 4),
        (3, 4),
        (3, 5),
        (4, 5),
        (4, 6),
        (4, 9),
        (5, 7),
        (5, 8),
        (6, 7),
        (6, 8),
        (7, 8),
        (7, 9),
        (8, 9),
    ];
    assert_eq!(ws(10, 4, 0.3, 42).edges(), &want);
}

#[test]
fn eight_node_validation_family() {
    let golden: [&[(usize, usize)]; 10] = [
        &[(0, 1), (0, 6), (1, 2), (2, 5), (3, 4), (4, 6), (5, 6), (5, 7)],
        &[(0, 1), (0, 4), (0, 7), (1, 2), (2, 3), (3, 5), (4, 5), (6, 7)],
        &[(0, 5), (0, 7), (1, 5), (2, 3), (2, 4), (3, 5), (5, 6), (6, 7)],
        &[(0, 1), (0, 6), (1, 2), (1, 3), (2, 4), (4, 5), (5, 6), (5, 7)],
        &[(0, 3), (0, 4), (0, 7), (1, 2), (2, 4), (3, 5), (4, 6), (5, 6)],
        &[(0, 4), (1, 2), (2, 3), (3, 4), (3, 7), (4, 5), (5, 6), (6, 7)],
        &[(0, 1), (0, 4), (0, 7), (1, 2), (1, 3), (2, 3), (5, 6), (6, 7)],
        &[(0, 1), (0, 5), (0, 7), (1, 6), (2, 3), (3, 4), (4, 5), (4, 6)],
        &[(0, 1), (0, 7), (1, 2), (1, 4), (2, 3), (3, 4), (4, 5), (6, 7)],
        &[(0, 2), (0, 7), (1, 5), (2, 3), (3, 4), (3, 6), (4, 5), (5, 6)],
    ];
    for (seed, want) in golden.iter().enumerate() {
        assert_eq!(ws(8, 2, 0.5, seed as u64).edges(), *want, "seed {seed}");
    }
}

#[test]
fn reproducible_serialization() {
    for seed in [0, 1, 99, u64::MAX] {
        let a = serialize_graph(&ws(16, 4, 0.5, seed));
        let b = serialize_graph(&ws(16, 4, 0.5, seed));
        assert_eq!(a, b);
    }
}

#[test]
fn zero_beta_is_ring_for_many_sizes() {
    for n in 3..20 {
        for k in (2..n).step_by(2) {
            let g = ws(n, k, 0.0, n as u64);
            let want = Graph::new(n, (0..n).flat_map(|i| (1..=k / 2).map(move |d| (i, (i + d) % n)))).unwrap();
            assert_eq!(g, want, "n={n} k={k}");
        }
    }
}
