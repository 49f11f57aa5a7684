//! Gate-level encoding of the walk.
//!
//! A walker at node `i` travelling along edge `e` is the basis state
//! `|pos = i>|label = l(e)>`, with global index `i * 2^q_l + l(e)`. Global
//! qubit `q` is bit `q` of that index, so coin qubits are `0..q_l` and
//! position qubits are `q_l..q_l + q_x`.
//!
//! Each step is a coin stage (one controlled diffusion per node) followed by
//! a shift stage (one label-controlled X mask per edge). X-ing the position
//! by `u ^ v` swaps `u` and `v`, so a single multi-controlled X realises both
//! directions of the flip-flop shift while leaving the label untouched.

mod json;
mod resources;

use crate::error::{CircuitError, GraphError};
use crate::graph::{EdgeLabel, Graph};

pub use json::{deserialize_circuit, deserialize_circuit_with_graph, serialize_circuit};
pub use resources::{resource_estimate, ResourceEstimate};

/// Default cap on `q_x + q_l`.
pub const DEFAULT_QUBIT_BUDGET: usize = 30;

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegisterLayout {
    /// Position qubits.
    pub q_x: usize,
    /// Edge-label (coin) qubits.
    pub q_l: usize,
}

impl RegisterLayout {
    /// `q_x = max(1, ceil(log2 N))`, `q_l = max(1, ceil(log2 |E|))`.
    pub fn for_graph(g: &Graph) -> Self {
        Self {
            q_x: ceil_log2(g.node_count()).max(1),
            q_l: ceil_log2(g.edge_count()).max(1),
        }
    }

    pub fn total(&self) -> usize {
        self.q_x + self.q_l
    }

    /// Statevector length.
    pub fn dim(&self) -> usize {
        1 << self.total()
    }

    /// Global index of position qubit `bit`.
    pub fn position_qubit(&self, bit: usize) -> usize {
        self.q_l + bit
    }

    pub fn coin_qubit(&self, bit: usize) -> usize {
        bit
    }

    pub fn index(&self, pos: usize, label: usize) -> usize {
        (pos << self.q_l) | label
    }

    /// Splits a basis index into `(pos, label)`.
    pub fn split(&self, index: usize) -> (usize, usize) {
        (index >> self.q_l, index & ((1 << self.q_l) - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    /// Fires on `|1>` when true, on `|0>` when false.
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    /// X on every target when all controls are satisfied.
    Mcx {
        controls: Vec<Control>,
        targets: Vec<usize>,
    },
    /// Reflection `I - 2P_L + 2|u><u|` on the coin register, conditioned on
    /// the position register holding `node`. `labels` is `L`, ascending, and
    /// `|u>` is the uniform superposition over it.
    Diffusion { node: usize, labels: Vec<EdgeLabel> },
}

impl Gate {
    /// Qubits the gate touches, controls included.
    pub fn qubits(&self, layout: &RegisterLayout) -> Vec<usize> {
        match self {
            Gate::Mcx { controls, targets } => controls
                .iter()
                .map(|c| c.qubit)
                .chain(targets.iter().copied())
                .collect(),
            Gate::Diffusion { .. } => (0..layout.total()).collect(),
        }
    }

    pub fn validate(&self, layout: &RegisterLayout) -> Result<(), String> {
        match self {
            Gate::Mcx { controls, targets } => {
                let mut seen = vec![false; layout.total()];
                for c in controls {
                    if c.qubit >= layout.total() {
                        return Err(format!("control qubit {} out of range", c.qubit));
                    }
                    if std::mem::replace(&mut seen[c.qubit], true) {
                        return Err(format!("control qubit {} repeated", c.qubit));
                    }
                }
                if targets.is_empty() {
                    return Err("mcx without targets".into());
                }
                for &t in targets {
                    if t < layout.q_l || t >= layout.total() {
                        return Err(format!("target {t} is not a position qubit"));
                    }
                    if std::mem::replace(&mut seen[t], true) {
                        return Err(format!("qubit {t} used as target and control or twice as target"));
                    }
                }
                Ok(())
            }
            Gate::Diffusion { node, labels } => {
                if *node >= 1 << layout.q_x {
                    return Err(format!("node {node} does not fit in {} position qubits", layout.q_x));
                }
                if labels.is_empty() {
                    return Err("diffusion over an empty label set".into());
                }
                if labels.windows(2).any(|w| w[0] >= w[1]) {
                    return Err("diffusion labels must be strictly ascending".into());
                }
                if labels[labels.len() - 1] >= 1 << layout.q_l {
                    return Err(format!("label does not fit in {} coin qubits", layout.q_l));
                }
                Ok(())
            }
        }
    }
}

/// Dense `2^q_l x 2^q_l` matrix of the diffusion `I - 2P_L + 2|u><u|`.
///
/// The simulator never builds this; it is here for inspection and tests.
pub fn diffusion_matrix(labels: &[EdgeLabel], q_l: usize) -> Vec<Vec<f64>> {
    let dim = 1 << q_l;
    let w = 2.0 / labels.len() as f64;
    let mut m: Vec<Vec<f64>> = (0..dim)
        .map(|r| (0..dim).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
        .collect();
    for &r in labels {
        for &c in labels {
            m[r][c] = if r == c { w - 1.0 } else { w };
        }
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    pub qubit_budget: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            qubit_budget: DEFAULT_QUBIT_BUDGET,
        }
    }
}

/// A compiled walk: `steps` repetitions of `[coin stage; shift stage]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: RegisterLayout,
    graph: Graph,
    steps: usize,
    gates: Vec<Gate>,
    fingerprint: String,
}

impl Circuit {
    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Gates of one walk step.
    pub fn step_blocks(&self) -> impl Iterator<Item = &[Gate]> {
        let per_step = self.graph.node_count() + self.graph.edge_count();
        self.gates.chunks(per_step)
    }
}

/// One diffusion per node, ascending, over the node's incident labels.
pub fn coin_stage(g: &Graph) -> Vec<Gate> {
    (0..g.node_count())
        .map(|node| Gate::Diffusion {
            node,
            labels: g.incident_labels(node),
        })
        .collect()
}

/// One multi-controlled X per edge, ascending label order.
///
/// Controls match the label's bits on the coin register (0-bits negative);
/// targets are the position qubits where `u ^ v` has a 1.
pub fn shift_stage(g: &Graph) -> Vec<Gate> {
    let layout = RegisterLayout::for_graph(g);
    g.edges()
        .iter()
        .enumerate()
        .map(|(label, &(u, v))| {
            let controls = (0..layout.q_l)
                .map(|bit| Control {
                    qubit: layout.coin_qubit(bit),
                    positive: (label >> bit) & 1 == 1,
                })
                .collect();
            let mask = u ^ v;
            let targets = (0..layout.q_x)
                .filter(|bit| (mask >> bit) & 1 == 1)
                .map(|bit| layout.position_qubit(bit))
                .collect();
            Gate::Mcx { controls, targets }
        })
        .collect()
}

pub fn compile_walk_circuit(g: &Graph, steps: usize) -> Result<Circuit, CircuitError> {
    compile_walk_circuit_with(g, steps, &CompileOptions::default())
}

pub fn compile_walk_circuit_with(g: &Graph, steps: usize, opts: &CompileOptions) -> Result<Circuit, CircuitError> {
    let layout = RegisterLayout::for_graph(g);
    if layout.total() > opts.qubit_budget {
        return Err(CircuitError::Capacity {
            needed: layout.total(),
            budget: opts.qubit_budget,
        });
    }
    let mut block = coin_stage(g);
    block.extend(shift_stage(g));
    let gates = std::iter::repeat_n(block, steps).flatten().collect();
    Ok(Circuit {
        layout,
        graph: g.clone(),
        steps,
        gates,
        fingerprint: g.fingerprint(),
    })
}

/// Basis index of the arc `tail -> head`: `tail * 2^q_l + l({tail, head})`.
pub fn encode_arc(g: &Graph, layout: &RegisterLayout, tail: usize, head: usize) -> Result<usize, GraphError> {
    let label = g.edge_label(tail, head)?;
    Ok(layout.index(tail, label))
}

/// Inverse of [`encode_arc`]; `None` when the index is not a valid incidence.
pub fn decode_index(g: &Graph, layout: &RegisterLayout, index: usize) -> Option<(usize, usize)> {
    let (pos, label) = layout.split(index);
    let &(u, v) = g.edges().get(label)?;
    match pos {
        p if p == u => Some((u, v)),
        p if p == v => Some((v, u)),
        _ => None,
    }
}
