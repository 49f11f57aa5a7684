//! Discrete-time coined quantum walks on simple undirected networks.
//!
//! The crate has two independent routes to the same walk:
//!
//! * [`oracle`] evolves the state directly in the `2|E|`-dimensional arc
//!   space with a block-diagonal Grover coin and the flip-flop shift.
//! * [`circuit`] compiles the walk onto a position register of
//!   `ceil(log2 N)` qubits and an edge-label register of `ceil(log2 |E|)`
//!   qubits, and [`simulator`] runs that circuit on a dense statevector.
//!
//! Agreement between the two is what the test suites check.

pub mod circuit;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod simulator;

pub use circuit::{
    compile_walk_circuit, resource_estimate, Circuit, CompileOptions, Gate, RegisterLayout, ResourceEstimate,
};
pub use error::{CircuitError, GraphError, SimError};
pub use graph::{generate_ws, parse_edge_list, Graph, WsParams};
pub use num_complex::Complex64;
pub use oracle::{evolve, initial_state_uniform, node_probabilities, ArcBasis, ArcState, WalkOperators};
pub use simulator::{inject_initial_state, run, InitialSpec, Statevector};
