use super::{ceil_log2, Circuit, Gate};

/// Width, depth and gate counts of a compiled circuit.
///
/// Depth is the number of layers from as-soon-as-possible scheduling where
/// each gate is one unit occupying all of its control and target qubits. A
/// diffusion gate occupies the whole register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceEstimate {
    pub width: usize,
    pub depth: usize,
    pub diffusion_gates: usize,
    pub mcx_gates: usize,
    /// `ceil(log2 N) + ceil(log2 |E|)`, without the one-qubit floor.
    pub width_formula: usize,
    /// `width_formula * steps`; depth is expected to exceed it.
    pub depth_bound: usize,
}

pub fn resource_estimate(c: &Circuit) -> ResourceEstimate {
    let layout = c.layout();
    let mut ready = vec![0usize; layout.total()];
    let mut depth = 0;
    let (mut diffusion_gates, mut mcx_gates) = (0, 0);

    for gate in c.gates() {
        match gate {
            Gate::Diffusion { .. } => diffusion_gates += 1,
            Gate::Mcx { .. } => mcx_gates += 1,
        }
        let qubits = gate.qubits(&layout);
        let layer = qubits.iter().map(|&q| ready[q]).max().unwrap_or(0);
        for q in qubits {
            ready[q] = layer + 1;
        }
        depth = depth.max(layer + 1);
    }

    let g = c.graph();
    let width_formula = ceil_log2(g.node_count()) + ceil_log2(g.edge_count());
    ResourceEstimate {
        width: layout.total(),
        depth,
        diffusion_gates,
        mcx_gates,
        width_formula,
        depth_bound: width_formula * c.steps(),
    }
}
