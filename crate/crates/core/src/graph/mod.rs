//! Simple undirected networks with a canonical edge labelling.
//!
//! Nodes are numbered `0..n`. Edges are stored as `(u, v)` pairs with `u < v`,
//! sorted lexicographically; the position of an edge in that list is its
//! label, which the circuit encoding uses as the coin-register value.

mod ws;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::GraphError;

pub use ws::{generate_ws, WsParams};

/// Canonical index of an undirected edge.
pub type EdgeLabel = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on nodes `0..n`, normalizing every pair to `(min, max)`.
    ///
    /// Self-loops, duplicate edges, out-of-range endpoints and isolated nodes
    /// are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if b >= n {
                return Err(GraphError::NodeOutOfRange { node: b, n });
            }
            canon.push((a, b));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        if canon.is_empty() {
            return Err(GraphError::Empty);
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (node, nbrs) in adjacency.iter_mut().enumerate() {
            if nbrs.is_empty() {
                return Err(GraphError::IsolatedNode(node));
            }
            nbrs.sort_unstable();
        }
        Ok(Self {
            n,
            edges: canon,
            adjacency,
        })
    }

    /// Cycle graph `C_n` (n >= 3).
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Params(format!("cycle needs at least 3 nodes, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Complete graph `K_n` (n >= 2).
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Star `K_{1,leaves}` centred on node 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Path graph on `n` nodes (n >= 2).
    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in label order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_label(u, v).is_ok()
    }

    /// Label of the edge `{u, v}`, independent of argument order.
    pub fn edge_label(&self, u: usize, v: usize) -> Result<EdgeLabel, GraphError> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).map_err(|_| GraphError::NotAnEdge(u, v))
    }

    /// Labels of the edges incident to `node`, ascending.
    pub fn incident_labels(&self, node: usize) -> Vec<EdgeLabel> {
        let mut labels: Vec<_> = self.adjacency[node]
            .iter()
            .map(|&j| self.edge_label(node, j).expect("adjacency and edge list agree"))
            .collect();
        labels.sort_unstable();
        labels
    }

    /// True when every node has the same degree.
    pub fn is_regular(&self) -> bool {
        self.adjacency.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(serialize_graph(self).as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// Parses a whitespace-separated `u v` edge list. Blank lines and `#`
/// comments (whole-line or trailing) are ignored. The node count is the
/// largest id mentioned plus one.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut max_node = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("expected two node ids, found {:?}", line),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("{s:?} is not a non-negative integer"),
            })
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("self-loop on node {u}"),
            });
        }
        let key = (u.min(v), u.max(v));
        if let Some(first) = seen.insert(key, line_no) {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("duplicate edge ({}, {}), first given on line {first}", key.0, key.1),
            });
        }
        max_node = max_node.max(Some(key.1));
        edges.push(key);
    }

    let n = max_node.map_or(0, |m| m + 1);
    Graph::new(n, edges)
}

/// Writes the graph in edge-list form, one `u v` per line in label order.
pub fn write_edge_list(g: &Graph) -> String {
    g.edges.iter().fold(String::new(), |mut s, (u, v)| {
        let _ = writeln!(s, "{u} {v}");
        s
    })
}

// Field order is the canonical (sorted) key order.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    edges: Vec<[usize; 2]>,
    n: usize,
}

/// Canonical JSON: `{"edges":[[u,v],...],"n":N}` with edges in label order.
pub fn serialize_graph(g: &Graph) -> String {
    let doc = GraphJson {
        edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        n: g.n,
    };
    serde_json::to_string(&doc).expect("graph json is always serializable")
}

/// Reads the JSON produced by [`serialize_graph`]. Edge endpoints may come in
/// either order and in any sequence; unknown keys are ignored.
pub fn deserialize_graph(text: &str) -> Result<Graph, GraphError> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    Graph::new(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
}
