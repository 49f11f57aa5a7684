use std::cmp::Ordering;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qwalk_core::circuit::{
    compile_walk_circuit_with, resource_estimate, serialize_circuit, CompileOptions, RegisterLayout,
};
use qwalk_core::graph::{serialize_graph, write_edge_list, Graph};
use qwalk_core::simulator::{inject_initial_state, node_probabilities_from_sv, run as run_circuit, sample_counts};
use qwalk_core::{evolve, node_probabilities, CircuitError, GraphError, SimError, WalkOperators};
use serde_json::{json, Value};

use crate::source;
use crate::{Engine, OutputFormat};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Validation(_) | CliError::Input(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Params(_) => CliError::Usage(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::Capacity { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn gen(ws: &[String], seed: u64, output: Option<&Path>, json_format: bool) -> Result<(), CliError> {
    let params = source::ws_params(ws, seed)?;
    let g = source::generate(ws, seed)?;
    let text = if json_format {
        let mut doc: Value = serde_json::from_str(&serialize_graph(&g)).expect("canonical graph json");
        doc["meta"] = json!({
            "generator": "watts-strogatz",
            "n": params.n,
            "k": params.k,
            "beta": params.beta,
            "seed": params.seed,
        });
        format!("{doc}\n")
    } else {
        format!(
            "# watts-strogatz n={} k={} beta={} seed={}\n{}",
            params.n,
            params.k,
            params.beta,
            params.seed,
            write_edge_list(&g)
        )
    };
    write_output(output, &text)
}

pub struct RunOptions {
    pub steps: usize,
    pub engine: Engine,
    pub init: Vec<String>,
    pub seed: u64,
    pub tolerance: f64,
    pub qubit_budget: usize,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub snapshots: Option<PathBuf>,
    pub shots: Option<u64>,
}

/// Per-step probabilities from whichever engines ran.
struct Trace {
    oracle: Option<Vec<Vec<f64>>>,
    circuit: Option<Vec<Vec<f64>>>,
    invalid_mass: Vec<f64>,
}

fn oracle_trace(g: &Graph, init: &qwalk_core::InitialSpec, steps: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let ops = WalkOperators::new(g);
    let mut state = init.arc_state(g)?;
    let mut rows = vec![node_probabilities(g, &state)];
    for _ in 0..steps {
        state = evolve(&ops, &state, 1);
        rows.push(node_probabilities(g, &state));
    }
    Ok(rows)
}

pub fn run(graph: Option<&str>, ws: Option<&[String]>, opts: &RunOptions) -> Result<(), CliError> {
    let g = source::resolve(graph, ws, opts.seed)?;
    let init = source::parse_init(&opts.init)?;

    let mut trace = Trace {
        oracle: None,
        circuit: None,
        invalid_mass: Vec::new(),
    };
    if opts.engine != Engine::Circuit {
        trace.oracle = Some(oracle_trace(&g, &init, opts.steps)?);
    }
    if opts.engine != Engine::Oracle {
        let circuit = compile_walk_circuit_with(
            &g,
            opts.steps,
            &CompileOptions {
                qubit_budget: opts.qubit_budget,
            },
        )?;
        let layout = circuit.layout();
        let sv0 = inject_initial_state(layout, &g, &init)?;
        let out = run_circuit(&circuit, sv0.clone(), true)?;
        let states: Vec<_> = std::iter::once(&sv0).chain(&out.snapshots).collect();
        let probs: Vec<_> = states
            .iter()
            .map(|sv| node_probabilities_from_sv(&g, &layout, sv))
            .collect();
        trace.invalid_mass = probs.iter().map(|p| p.invalid_mass).collect();
        trace.circuit = Some(probs.into_iter().map(|p| p.nodes).collect());
        if let Some(path) = &opts.snapshots {
            write_output(Some(path), &snapshot_json(&layout, opts, &states))?;
        }
    }

    let deviations: Option<Vec<f64>> = match (&trace.oracle, &trace.circuit) {
        (Some(o), Some(c)) => Some(
            o.iter()
                .zip(c)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, max_keep_nan))
                .collect(),
        ),
        _ => None,
    };

    let text = match opts.format {
        OutputFormat::Csv => render_csv(&g, opts, &trace, deviations.as_deref()),
        OutputFormat::Json => render_json(&g, opts, &trace, deviations.as_deref()),
    };
    write_output(opts.output.as_deref(), &text)?;

    if let Some(devs) = deviations {
        let worst = devs.iter().copied().fold(0.0, max_keep_nan);
        if !matches!(
            worst.partial_cmp(&opts.tolerance),
            Some(Ordering::Less | Ordering::Equal)
        ) {
            return Err(CliError::Validation(format!(
                "circuit and oracle disagree: max |dP| = {worst:e} > tolerance {:e}",
                opts.tolerance
            )));
        }
        eprintln!("max |dP| = {worst:e} (tolerance {:e})", opts.tolerance);
    }
    Ok(())
}

/// `f64::max` drops NaN; a NaN deviation must fail the comparison instead.
fn max_keep_nan(acc: f64, x: f64) -> f64 {
    if x.is_nan() || x > acc {
        x
    } else {
        acc
    }
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Circuit => "circuit",
        Engine::Oracle => "oracle",
        Engine::Both => "both",
    }
}

/// Counts for step `t` are drawn with seed `seed + t`.
fn counts(probs: &[f64], opts: &RunOptions, step: usize) -> Option<Vec<u64>> {
    opts.shots
        .map(|shots| sample_counts(probs, shots, opts.seed.wrapping_add(step as u64)))
}

// Floats use `{:?}`: shortest round-trip, exponent form when tiny.
fn render_csv(g: &Graph, opts: &RunOptions, trace: &Trace, devs: Option<&[f64]>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# qwalk run engine={} steps={} init={} seed={} shots={} graph={}",
        engine_name(opts.engine),
        opts.steps,
        opts.init.join(":"),
        opts.seed,
        opts.shots.unwrap_or(0),
        g.fingerprint()
    );
    let shots_col = if opts.shots.is_some() { ",count" } else { "" };
    match (&trace.oracle, &trace.circuit) {
        (Some(o), Some(c)) => {
            let _ = writeln!(out, "step,node,p_oracle,p_circuit,abs_diff{shots_col}");
            for (t, (po, pc)) in o.iter().zip(c).enumerate() {
                let cnt = counts(pc, opts, t);
                for i in 0..g.node_count() {
                    let _ = write!(out, "{t},{i},{:?},{:?},{:?}", po[i], pc[i], (po[i] - pc[i]).abs());
                    if let Some(cnt) = &cnt {
                        let _ = write!(out, ",{}", cnt[i]);
                    }
                    out.push('\n');
                }
            }
            if let Some(devs) = devs {
                for (t, d) in devs.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "# step={t} max_abs_diff={d:?} invalid_mass={:?}",
                        trace.invalid_mass[t]
                    );
                }
            }
        }
        (Some(p), None) | (None, Some(p)) => {
            let _ = writeln!(out, "step,node,probability{shots_col}");
            for (t, row) in p.iter().enumerate() {
                let cnt = counts(row, opts, t);
                for (i, prob) in row.iter().enumerate() {
                    let _ = write!(out, "{t},{i},{prob:?}");
                    if let Some(cnt) = &cnt {
                        let _ = write!(out, ",{}", cnt[i]);
                    }
                    out.push('\n');
                }
            }
        }
        (None, None) => unreachable!("at least one engine runs"),
    }
    out
}

fn render_json(g: &Graph, opts: &RunOptions, trace: &Trace, devs: Option<&[f64]>) -> String {
    let rows = trace.oracle.as_ref().or(trace.circuit.as_ref()).map_or(0, Vec::len);
    let steps: Vec<Value> = (0..rows)
        .map(|t| {
            let mut row = json!({ "step": t });
            if let Some(o) = &trace.oracle {
                row["p_oracle"] = json!(o[t]);
            }
            if let Some(c) = &trace.circuit {
                row["p_circuit"] = json!(c[t]);
                row["invalid_mass"] = json!(trace.invalid_mass[t]);
            }
            if let Some(d) = devs {
                row["max_abs_diff"] = json!(d[t]);
            }
            let sampled = trace.circuit.as_ref().or(trace.oracle.as_ref()).map(|p| &p[t]);
            if let Some(cnt) = sampled.and_then(|p| counts(p, opts, t)) {
                row["counts"] = json!(cnt);
            }
            row
        })
        .collect();
    let doc = json!({
        "meta": {
            "engine": engine_name(opts.engine),
            "steps": opts.steps,
            "init": opts.init,
            "seed": opts.seed,
            "shots": opts.shots,
            "tolerance": opts.tolerance,
            "graph": serde_json::from_str::<Value>(&serialize_graph(g)).expect("canonical graph json"),
            "fingerprint": g.fingerprint(),
        },
        "steps": steps,
    });
    format!("{doc}\n")
}

fn snapshot_json(layout: &RegisterLayout, opts: &RunOptions, states: &[&qwalk_core::Statevector]) -> String {
    let steps: Vec<Value> = states
        .iter()
        .enumerate()
        .map(|(t, sv)| {
            let amps: Vec<[f64; 2]> = sv.amplitudes().iter().map(|a| [a.re, a.im]).collect();
            json!({ "step": t, "amplitudes": amps })
        })
        .collect();
    let doc = json!({
        "q_x": layout.q_x,
        "q_l": layout.q_l,
        "seed": opts.seed,
        "snapshots": steps,
    });
    format!("{doc}\n")
}

pub fn export(
    graph: Option<&str>,
    ws: Option<&[String]>,
    seed: u64,
    steps: usize,
    qubit_budget: usize,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let g = source::resolve(graph, ws, seed)?;
    let circuit = compile_walk_circuit_with(&g, steps, &CompileOptions { qubit_budget })?;
    let r = resource_estimate(&circuit);
    let summary = format!(
        "width={} (ceil(log2 N)+ceil(log2 |E|) = {})\ndepth={} (lower bound {})\ngates diffusion={} mcx={} total={}\n",
        r.width,
        r.width_formula,
        r.depth,
        r.depth_bound,
        r.diffusion_gates,
        r.mcx_gates,
        r.diffusion_gates + r.mcx_gates
    );
    let text = serialize_circuit(&circuit) + "\n";
    match output {
        Some(path) => {
            write_output(Some(path), &text)?;
            print!("{summary}");
        }
        None => {
            print!("{text}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

pub fn info(path: &Path) -> Result<(), CliError> {
    let g = source::read_graph_file(path)?;
    let layout = RegisterLayout::for_graph(&g);
    let mut out = format!(
        "N={} |E|={} q_x={} q_l={}\n",
        g.node_count(),
        g.edge_count(),
        layout.q_x,
        layout.q_l
    );
    let mut hist = std::collections::BTreeMap::new();
    for d in g.degrees() {
        *hist.entry(d).or_insert(0usize) += 1;
    }
    let hist: Vec<String> = hist.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    let _ = writeln!(out, "degree histogram (degree:count) {}", hist.join(" "));
    let labels: Vec<String> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(l, (u, v))| format!("{l}=({u},{v})"))
        .collect();
    let _ = writeln!(out, "edge labels {}", labels.join(" "));
    print!("{out}");
    Ok(())
}
