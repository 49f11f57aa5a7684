use thiserror::Error;

/// Errors from graph construction, parsing and (de)serialization.
#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("invalid Watts-Strogatz parameters: {0}")]
    Params(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {0} is isolated")]
    IsolatedNode(usize),
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("graph has no edges")]
    Empty,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("malformed graph json: {0}")]
    Json(String),
}

/// Errors from circuit compilation, validation and (de)serialization.
#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("circuit needs {needed} qubits, budget is {budget}")]
    Capacity { needed: usize, budget: usize },
    #[error("invalid gate #{index}: {msg}")]
    InvalidGate { index: usize, msg: String },
    #[error("malformed circuit json: {0}")]
    Json(String),
    #[error("circuit was compiled for a different graph")]
    FingerprintMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors raised while preparing or running a statevector simulation.
#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("({0}, {1}) is not an arc of the graph")]
    NotAnArc(usize, usize),
    #[error("arc ({0}, {1}) appears twice in the initial state")]
    DuplicateArc(usize, usize),
    #[error("initial state has zero norm")]
    ZeroNorm,
    #[error("initial state norm {0} is not 1 within 1e-9")]
    NotNormalized(f64),
    #[error("qubit {qubit} out of range for a {width}-qubit register")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("statevector layout {found:?} does not match circuit layout {expected:?}")]
    LayoutMismatch {
        expected: crate::circuit::RegisterLayout,
        found: crate::circuit::RegisterLayout,
    },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
}
