use std::fs;
use std::path::Path;

use qwalk_core::graph::{deserialize_graph, generate_ws, parse_edge_list, Graph, WsParams};
use qwalk_core::{Complex64, InitialSpec};

use crate::commands::CliError;

/// Parses the three `--ws N K BETA` values.
pub fn ws_params(values: &[String], seed: u64) -> Result<WsParams, CliError> {
    let [n, k, beta] = values else {
        return Err(CliError::Usage("--ws takes N K BETA".into()));
    };
    let int = |name: &str, s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("--ws {name} must be a non-negative integer, got {s:?}")))
    };
    let params = WsParams {
        n: int("N", n)?,
        k: int("K", k)?,
        beta: beta
            .parse()
            .map_err(|_| CliError::Usage(format!("--ws BETA must be a number, got {beta:?}")))?,
        seed,
    };
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(params)
}

pub fn generate(values: &[String], seed: u64) -> Result<Graph, CliError> {
    let params = ws_params(values, seed)?;
    generate_ws(params).map_err(|e| CliError::Usage(e.to_string()))
}

fn builtin(name: &str) -> Option<Result<Graph, CliError>> {
    if name == "triangle" {
        return Some(Graph::complete(3).map_err(CliError::from));
    }
    let (ctor, digits): (fn(usize) -> _, &str) = [
        ("cycle", Graph::cycle as fn(usize) -> _),
        ("complete", Graph::complete),
        ("star", Graph::star),
        ("path", Graph::path),
    ]
    .into_iter()
    .find_map(|(prefix, f)| name.strip_prefix(prefix).map(|rest| (f, rest)))?;
    let size = digits.parse().ok()?;
    Some(ctor(size).map_err(CliError::from))
}

/// Reads a graph file (JSON when it starts with `{`, edge list otherwise)
/// or builds a named builtin when no such file exists.
pub fn load_graph(spec: &str) -> Result<Graph, CliError> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Some(g) = builtin(spec) {
            return g;
        }
    }
    read_graph_file(path)
}

pub fn read_graph_file(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        deserialize_graph(&text)
    } else {
        parse_edge_list(&text)
    };
    parsed.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn resolve(graph: Option<&str>, ws: Option<&[String]>, seed: u64) -> Result<Graph, CliError> {
    match (graph, ws) {
        (Some(g), None) => load_graph(g),
        (None, Some(ws)) => generate(ws, seed),
        _ => Err(CliError::Usage("give exactly one of --graph or --ws".into())),
    }
}

/// `uniform`, `single-arc TAIL HEAD`, or `custom FILE` where FILE holds
/// `[[tail, head, re, im], ...]`.
pub fn parse_init(values: &[String]) -> Result<InitialSpec, CliError> {
    let node = |s: &String| {
        s.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("node id must be a non-negative integer, got {s:?}")))
    };
    match values {
        [kind] if kind == "uniform" => Ok(InitialSpec::Uniform),
        [kind, tail, head] if kind == "single-arc" => Ok(InitialSpec::SingleArc {
            tail: node(tail)?,
            head: node(head)?,
        }),
        [kind, file] if kind == "custom" => {
            let text = fs::read_to_string(file).map_err(|e| CliError::Io(format!("{file}: {e}")))?;
            let rows: Vec<(usize, usize, f64, f64)> =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
            Ok(InitialSpec::Custom(
                rows.into_iter()
                    .map(|(t, h, re, im)| ((t, h), Complex64::new(re, im)))
                    .collect(),
            ))
        }
        _ => Err(CliError::Usage(format!(
            "--init expects `uniform`, `single-arc TAIL HEAD` or `custom FILE`, got {values:?}"
        ))),
    }
}
