//! Circuit JSON.
//!
//! ```text
//! {"edges":[[u,v],...],"gates":[{"controls":[[q,pol],...],"kind":"mcx","targets":[...]},
//!  {"kind":"diffusion","labels":[...],"node":i}],"n":N,"q_l":L,"q_x":X,"steps":T,"version":1}
//! ```
//!
//! Keys are written sorted and there are no floats: diffusion matrices are
//! rebuilt from their label sets on load.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{compile_walk_circuit_with, Circuit, CompileOptions, Control, Gate, RegisterLayout};
use crate::error::CircuitError;
use crate::graph::Graph;

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GateJson {
    Mcx {
        controls: Vec<[usize; 2]>,
        targets: Vec<usize>,
    },
    Diffusion {
        node: usize,
        labels: Vec<usize>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitJson {
    version: u32,
    n: usize,
    edges: Vec<[usize; 2]>,
    q_x: usize,
    q_l: usize,
    steps: usize,
    gates: Vec<GateJson>,
}

impl From<&Gate> for GateJson {
    fn from(g: &Gate) -> Self {
        match g {
            Gate::Mcx { controls, targets } => GateJson::Mcx {
                controls: controls.iter().map(|c| [c.qubit, usize::from(c.positive)]).collect(),
                targets: targets.clone(),
            },
            Gate::Diffusion { node, labels } => GateJson::Diffusion {
                node: *node,
                labels: labels.clone(),
            },
        }
    }
}

impl TryFrom<GateJson> for Gate {
    type Error = String;

    fn try_from(g: GateJson) -> Result<Self, String> {
        Ok(match g {
            GateJson::Mcx { controls, targets } => Gate::Mcx {
                controls: controls
                    .into_iter()
                    .map(|[qubit, pol]| match pol {
                        0 | 1 => Ok(Control {
                            qubit,
                            positive: pol == 1,
                        }),
                        _ => Err(format!("control polarity {pol} is not 0 or 1")),
                    })
                    .collect::<Result<_, _>>()?,
                targets,
            },
            GateJson::Diffusion { node, labels } => Gate::Diffusion { node, labels },
        })
    }
}

pub fn serialize_circuit(c: &Circuit) -> String {
    let doc = CircuitJson {
        version: VERSION,
        n: c.graph.node_count(),
        edges: c.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        q_x: c.layout.q_x,
        q_l: c.layout.q_l,
        steps: c.steps,
        gates: c.gates.iter().map(GateJson::from).collect(),
    };
    // serde_json::Map is a BTreeMap, so going through Value sorts every key.
    let value: Value = serde_json::to_value(&doc).expect("circuit json is always serializable");
    serde_json::to_string(&value).expect("value serializes")
}

/// Parses and validates a circuit file. The gate list must be exactly the
/// compiled walk for the embedded graph and step count.
pub fn deserialize_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let doc: CircuitJson = serde_json::from_str(text).map_err(|e| CircuitError::Json(e.to_string()))?;
    if doc.version != VERSION {
        return Err(CircuitError::Json(format!("unsupported version {}", doc.version)));
    }
    let graph = Graph::new(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))?;
    let layout = RegisterLayout {
        q_x: doc.q_x,
        q_l: doc.q_l,
    };
    let expected_layout = RegisterLayout::for_graph(&graph);
    if layout != expected_layout {
        return Err(CircuitError::Json(format!(
            "register sizes q_x={} q_l={} do not match the graph (expected {} and {})",
            layout.q_x, layout.q_l, expected_layout.q_x, expected_layout.q_l
        )));
    }

    let mut gates = Vec::with_capacity(doc.gates.len());
    for (index, raw) in doc.gates.into_iter().enumerate() {
        let gate = Gate::try_from(raw).map_err(|msg| CircuitError::InvalidGate { index, msg })?;
        gate.validate(&layout)
            .map_err(|msg| CircuitError::InvalidGate { index, msg })?;
        gates.push(gate);
    }

    let compiled = compile_walk_circuit_with(
        &graph,
        doc.steps,
        &CompileOptions {
            qubit_budget: usize::MAX,
        },
    )?;
    if let Some(index) = (0..gates.len().max(compiled.gates.len())).find(|&i| gates.get(i) != compiled.gates.get(i)) {
        return Err(CircuitError::InvalidGate {
            index,
            msg: "gate list is not the compiled walk for this graph".into(),
        });
    }
    Ok(compiled)
}

/// Like [`deserialize_circuit`], additionally requiring the circuit to have
/// been compiled for `graph`.
pub fn deserialize_circuit_with_graph(text: &str, graph: &Graph) -> Result<Circuit, CircuitError> {
    let c = deserialize_circuit(text)?;
    if c.fingerprint != graph.fingerprint() {
        return Err(CircuitError::FingerprintMismatch);
    }
    Ok(c)
}
