//! Dense statevector execution of compiled walk circuits.

use std::collections::HashSet;
use std::sync::Arc;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;

use crate::circuit::{decode_index, encode_arc, Circuit, Gate, RegisterLayout};
use crate::error::SimError;
use crate::graph::Graph;
use crate::oracle::{initial_state_uniform, ArcBasis, ArcState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    amplitudes: Vec<Complex64>,
    layout: RegisterLayout,
}

impl Statevector {
    pub fn zeros(layout: RegisterLayout) -> Self {
        Self {
            amplitudes: vec![ZERO; layout.dim()],
            layout,
        }
    }

    /// Panics if the length is not `2^(q_x + q_l)`.
    pub fn from_amplitudes(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(amplitudes.len(), layout.dim(), "statevector length must be 2^width");
        Self { amplitudes, layout }
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), SimError> {
        let width = self.layout.total();
        if let Some(&qubit) = gate.qubits(&self.layout).iter().find(|&&q| q >= width) {
            return Err(SimError::QubitOutOfRange { qubit, width });
        }
        gate.validate(&self.layout).map_err(SimError::InvalidGate)?;

        match gate {
            Gate::Mcx { controls, targets } => {
                let (mut cmask, mut cval) = (0usize, 0usize);
                for c in controls {
                    cmask |= 1 << c.qubit;
                    cval |= usize::from(c.positive) << c.qubit;
                }
                let tmask = targets.iter().fold(0usize, |m, &t| m | (1 << t));
                // Walk only the indices whose control bits match, visiting
                // each swapped pair once from the side with the lowest
                // target bit clear.
                let pivot = tmask & tmask.wrapping_neg();
                let free = (self.amplitudes.len() - 1) & !cmask;
                let mut sub = 0usize;
                loop {
                    let i = sub | cval;
                    if i & pivot == 0 {
                        self.amplitudes.swap(i, i ^ tmask);
                    }
                    if sub == free {
                        break;
                    }
                    sub = sub.wrapping_sub(free) & free;
                }
            }
            Gate::Diffusion { node, labels } => {
                let base = self.layout.index(*node, 0);
                let slice = &mut self.amplitudes[base..base + (1 << self.layout.q_l)];
                let mean2 = labels.iter().map(|&l| slice[l]).sum::<Complex64>() * (2.0 / labels.len() as f64);
                for &l in labels {
                    slice[l] = mean2 - slice[l];
                }
            }
        }
        Ok(())
    }
}

/// Amplitude on the arc `(tail, head)`.
pub type ArcAmplitude = ((usize, usize), Complex64);

/// Initial walk state, embedded straight into the amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialSpec {
    /// `1 / sqrt(N k_i)` on every arc leaving node `i`.
    Uniform,
    SingleArc {
        tail: usize,
        head: usize,
    },
    /// Arc amplitudes keyed by `(tail, head)`; must have unit norm within
    /// 1e-9 and are renormalized.
    Custom(Vec<ArcAmplitude>),
}

impl InitialSpec {
    /// The same initial state in the arc basis, for the reference walk.
    pub fn arc_state(&self, g: &Graph) -> Result<ArcState, SimError> {
        let basis = Arc::new(ArcBasis::new(g));
        match self {
            InitialSpec::Uniform => Ok(initial_state_uniform(g)),
            InitialSpec::SingleArc { tail, head } => {
                ArcState::single_arc(basis, *tail, *head).map_err(|_| SimError::NotAnArc(*tail, *head))
            }
            InitialSpec::Custom(entries) => {
                let mut amps = vec![ZERO; basis.len()];
                for ((tail, head), amp) in normalized_entries(entries)? {
                    let i = basis.index(tail, head).map_err(|_| SimError::NotAnArc(tail, head))?;
                    amps[i] = amp;
                }
                Ok(ArcState::from_amplitudes(basis, amps))
            }
        }
    }
}

fn normalized_entries(entries: &[ArcAmplitude]) -> Result<Vec<ArcAmplitude>, SimError> {
    let mut seen = HashSet::new();
    for &(arc, _) in entries {
        if !seen.insert(arc) {
            return Err(SimError::DuplicateArc(arc.0, arc.1));
        }
    }
    let norm = entries.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(SimError::ZeroNorm);
    }
    if (norm - 1.0).abs() > 1e-9 {
        return Err(SimError::NotNormalized(norm));
    }
    Ok(entries.iter().map(|&(arc, a)| (arc, a / norm)).collect())
}

pub fn inject_initial_state(layout: RegisterLayout, g: &Graph, spec: &InitialSpec) -> Result<Statevector, SimError> {
    let mut sv = Statevector::zeros(layout);
    let index = |tail, head| encode_arc(g, &layout, tail, head).map_err(|_| SimError::NotAnArc(tail, head));
    match spec {
        InitialSpec::Uniform => {
            let n = g.node_count() as f64;
            for &(u, v) in g.edges() {
                for (tail, head) in [(u, v), (v, u)] {
                    let amp = 1.0 / (n * g.degree(tail) as f64).sqrt();
                    sv.amplitudes[index(tail, head)?] = Complex64::new(amp, 0.0);
                }
            }
        }
        InitialSpec::SingleArc { tail, head } => {
            sv.amplitudes[index(*tail, *head)?] = Complex64::new(1.0, 0.0);
        }
        InitialSpec::Custom(entries) => {
            for ((tail, head), amp) in normalized_entries(entries)? {
                sv.amplitudes[index(tail, head)?] = amp;
            }
        }
    }
    Ok(sv)
}

pub fn apply_gate(mut sv: Statevector, gate: &Gate) -> Result<Statevector, SimError> {
    sv.apply_gate(gate)?;
    Ok(sv)
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub state: Statevector,
    /// State after each walk step, when requested.
    pub snapshots: Vec<Statevector>,
}

/// Applies every gate of `c` to `init` in order.
pub fn run(c: &Circuit, init: Statevector, snapshots: bool) -> Result<RunOutput, SimError> {
    if init.layout != c.layout() {
        return Err(SimError::LayoutMismatch {
            expected: c.layout(),
            found: init.layout,
        });
    }
    let mut state = init;
    let mut shots = Vec::new();
    for block in c.step_blocks() {
        for gate in block {
            state.apply_gate(gate)?;
        }
        if snapshots {
            shots.push(state.clone());
        }
    }
    Ok(RunOutput {
        state,
        snapshots: shots,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeProbabilities {
    pub nodes: Vec<f64>,
    /// Probability sitting on basis states that encode no arc.
    pub invalid_mass: f64,
}

pub fn node_probabilities_from_sv(g: &Graph, layout: &RegisterLayout, sv: &Statevector) -> NodeProbabilities {
    let mut nodes = vec![0.0; g.node_count()];
    let mut invalid_mass = 0.0;
    for (i, amp) in sv.amplitudes.iter().enumerate() {
        match decode_index(g, layout, i) {
            Some((tail, _)) => nodes[tail] += amp.norm_sqr(),
            None => invalid_mass += amp.norm_sqr(),
        }
    }
    NodeProbabilities { nodes, invalid_mass }
}

/// Largest amplitude magnitude on an index that encodes no arc.
pub fn validity_report(g: &Graph, layout: &RegisterLayout, sv: &Statevector) -> f64 {
    sv.amplitudes
        .iter()
        .enumerate()
        .filter(|&(i, _)| decode_index(g, layout, i).is_none())
        .map(|(_, a)| a.norm())
        .fold(0.0, f64::max)
}

/// Draws `shots` samples from `probs` and returns per-outcome counts.
pub fn sample_counts(probs: &[f64], shots: u64, seed: u64) -> Vec<u64> {
    let mut counts = vec![0; probs.len()];
    // Rounding can leave tiny negative weights; they are never sampled.
    let weights: Vec<f64> = probs.iter().map(|p| p.max(0.0)).collect();
    let Ok(dist) = WeightedIndex::new(&weights) else {
        return counts;
    };
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    counts
}
