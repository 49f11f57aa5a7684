//! Exact arc-space reference for the coined walk.
//!
//! The state lives on the `2|E|` directed arcs of the graph. One step applies
//! the node-dependent Grover coin and then the flip-flop shift, so `t` steps
//! compute `(S C)^t |psi>`. Nothing here knows about qubits; the circuit path
//! is checked against these results.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::GraphError;
use crate::graph::Graph;

/// Directed arcs `(tail, head)` of a graph.
///
/// Arc `2l` is `(u -> v)` and arc `2l + 1` is `(v -> u)` for the edge
/// `(u, v)`, `u < v`, with label `l`. Callers should key results by
/// `(tail, head)` rather than by raw position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcBasis {
    arcs: Vec<(usize, usize)>,
    graph: Graph,
}

impl ArcBasis {
    pub fn new(g: &Graph) -> Self {
        let arcs = g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Self { arcs, graph: g.clone() }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index]
    }

    pub fn index(&self, tail: usize, head: usize) -> Result<usize, GraphError> {
        let label = self.graph.edge_label(tail, head)?;
        Ok(2 * label + usize::from(tail > head))
    }

    pub fn reverse(&self, index: usize) -> usize {
        index ^ 1
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// Amplitudes over the arc basis after `step` applications of `S C`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcState {
    amplitudes: Vec<Complex64>,
    basis: Arc<ArcBasis>,
    step: usize,
}

impl ArcState {
    /// Wraps raw amplitudes; panics if the length does not match the basis.
    pub fn from_amplitudes(basis: Arc<ArcBasis>, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(amplitudes.len(), basis.len(), "one amplitude per arc");
        Self {
            amplitudes,
            basis,
            step: 0,
        }
    }

    /// All amplitude on the single arc `tail -> head`.
    pub fn single_arc(basis: Arc<ArcBasis>, tail: usize, head: usize) -> Result<Self, GraphError> {
        let idx = basis.index(tail, head)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.len()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            basis,
            step: 0,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn basis(&self) -> &Arc<ArcBasis> {
        &self.basis
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn amplitude(&self, tail: usize, head: usize) -> Option<Complex64> {
        self.basis.index(tail, head).ok().map(|i| self.amplitudes[i])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }
}

/// One Grover block `2|s><s| - I` acting on the arcs leaving `node`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinBlock {
    pub node: usize,
    /// Arc indices leaving `node`, ordered by head.
    pub arcs: Vec<usize>,
    /// Row-major `k x k` matrix.
    pub matrix: Vec<f64>,
}

impl CoinBlock {
    pub fn degree(&self) -> usize {
        self.arcs.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.arcs.len() + col]
    }
}

/// Block-diagonal coin over the arc basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Coin {
    blocks: Vec<CoinBlock>,
}

impl Coin {
    pub fn blocks(&self) -> &[CoinBlock] {
        &self.blocks
    }

    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); input.len()];
        for block in &self.blocks {
            let k = block.arcs.len();
            for (row, &dst) in block.arcs.iter().enumerate() {
                out[dst] = block
                    .arcs
                    .iter()
                    .enumerate()
                    .map(|(col, &src)| input[src] * block.matrix[row * k + col])
                    .sum();
            }
        }
        out
    }
}

/// Arc permutation `(i -> j) |-> (j -> i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    perm: Vec<usize>,
}

impl Shift {
    /// `perm[a]` is the image of arc `a`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); input.len()];
        for (src, &dst) in self.perm.iter().enumerate() {
            out[dst] = input[src];
        }
        out
    }
}

pub fn build_coin(g: &Graph) -> Coin {
    let basis = ArcBasis::new(g);
    let blocks = (0..g.node_count())
        .map(|node| {
            let arcs: Vec<usize> = g
                .neighbors(node)
                .iter()
                .map(|&head| basis.index(node, head).expect("neighbour is an arc"))
                .collect();
            let k = arcs.len();
            let w = 2.0 / k as f64;
            let matrix = (0..k * k).map(|e| if e / k == e % k { w - 1.0 } else { w }).collect();
            CoinBlock { node, arcs, matrix }
        })
        .collect();
    Coin { blocks }
}

pub fn build_shift(g: &Graph) -> Shift {
    let basis = ArcBasis::new(g);
    Shift {
        perm: (0..basis.len()).map(|a| basis.reverse(a)).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct WalkOperators {
    pub basis: Arc<ArcBasis>,
    pub coin: Coin,
    pub shift: Shift,
}

impl WalkOperators {
    pub fn new(g: &Graph) -> Self {
        Self {
            basis: Arc::new(ArcBasis::new(g)),
            coin: build_coin(g),
            shift: build_shift(g),
        }
    }

    /// One walk step: coin, then shift.
    pub fn step(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        self.shift.apply(&self.coin.apply(amplitudes))
    }
}

/// `psi_ij(0) = 1 / sqrt(N k_i)` on every arc `i -> j`.
pub fn initial_state_uniform(g: &Graph) -> ArcState {
    let basis = Arc::new(ArcBasis::new(g));
    let n = g.node_count() as f64;
    let amplitudes = basis
        .arcs()
        .iter()
        .map(|&(tail, _)| Complex64::new(1.0 / (n * g.degree(tail) as f64).sqrt(), 0.0))
        .collect();
    ArcState {
        amplitudes,
        basis,
        step: 0,
    }
}

/// Applies `(S C)^t` to `state`.
pub fn evolve(ops: &WalkOperators, state: &ArcState, t: usize) -> ArcState {
    let mut amplitudes = state.amplitudes.clone();
    for _ in 0..t {
        amplitudes = ops.step(&amplitudes);
    }
    ArcState {
        amplitudes,
        basis: Arc::clone(&state.basis),
        step: state.step + t,
    }
}

/// `P_i = sum_j |psi_ij|^2` over arcs leaving `i`.
pub fn node_probabilities(g: &Graph, state: &ArcState) -> Vec<f64> {
    let mut probs = vec![0.0; g.node_count()];
    for (amp, &(tail, _)) in state.amplitudes.iter().zip(state.basis.arcs()) {
        probs[tail] += amp.norm_sqr();
    }
    probs
}
