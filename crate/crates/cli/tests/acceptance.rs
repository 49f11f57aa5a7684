//! Acceptance criteria for the walk toolkit.
//!
//! Each criterion is a function returning a one-line verdict; the single
//! test below runs all of them, prints `PASS`/`FAIL` per criterion and fails
//! if any criterion does. Run with `-- --nocapture` to see the table.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use qwalk_core::circuit::{compile_walk_circuit, encode_arc, resource_estimate, RegisterLayout};
use qwalk_core::graph::{generate_ws, Graph, WsParams};
use qwalk_core::oracle::{build_coin, build_shift, evolve, initial_state_uniform, node_probabilities, ArcState};
use qwalk_core::simulator::{inject_initial_state, node_probabilities_from_sv, run, validity_report, InitialSpec};
use qwalk_core::WalkOperators;

/// Entrywise node-probability agreement between the two engines.
const CROSS_PATH_TOL: f64 = 1e-10;
/// Norms, probability sums, invalid amplitudes, operator identities.
const EXACT_TOL: f64 = 1e-12;
const CROSS_PATH_BUDGET_SECS: f64 = 1.0;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

/// False for NaN.
fn within(x: f64, tol: f64) -> bool {
    x <= tol
}

fn ws8(seed: u64) -> Graph {
    generate_ws(WsParams {
        n: 8,
        k: 2,
        beta: 0.5,
        seed,
    })
    .unwrap()
}

/// WS(8, 2, 0.5) seeds 0-9, C8, triangle, K_{1,3}, K4.
fn test_graphs() -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, Graph)> = (0..10).map(|s| (format!("ws8-seed{s}"), ws8(s))).collect();
    graphs.push(("cycle8".into(), Graph::cycle(8).unwrap()));
    graphs.push(("triangle".into(), Graph::complete(3).unwrap()));
    graphs.push(("star3".into(), Graph::star(3).unwrap()));
    graphs.push(("k4".into(), Graph::complete(4).unwrap()));
    graphs
}

fn ceil_log2(x: usize) -> usize {
    (0..).find(|&q| 1usize << q >= x).unwrap()
}

fn single_arc_specs(g: &Graph) -> Vec<InitialSpec> {
    g.edges()
        .iter()
        .flat_map(|&(u, v)| {
            [
                InitialSpec::SingleArc { tail: u, head: v },
                InitialSpec::SingleArc { tail: v, head: u },
            ]
        })
        .collect()
}

fn criterion_1_cross_path() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (name, g) in test_graphs() {
        let layout = RegisterLayout::for_graph(&g);
        let circuit = compile_walk_circuit(&g, 10).unwrap();
        let sv0 = inject_initial_state(layout, &g, &InitialSpec::Uniform).unwrap();
        let out = run(&circuit, sv0.clone(), true).unwrap();
        let ops = WalkOperators::new(&g);
        let mut arc = initial_state_uniform(&g);
        for t in 0..=10 {
            if t > 0 {
                arc = evolve(&ops, &arc, 1);
            }
            let sv = if t == 0 { &sv0 } else { &out.snapshots[t - 1] };
            let pc = node_probabilities_from_sv(&g, &layout, sv).nodes;
            let po = node_probabilities(&g, &arc);
            for (a, b) in pc.iter().zip(&po) {
                let d = (a - b).abs();
                worst = worst.max(d);
                if !within(d, CROSS_PATH_TOL) {
                    return Err(format!("{name} t={t}: |dP|={d:e}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= CROSS_PATH_BUDGET_SECS {
        return Err(format!("took {secs:.3}s, budget {CROSS_PATH_BUDGET_SECS}s"));
    }
    Ok(format!("max |dP| = {worst:e} over 14 graphs, t=0..10, {secs:.3}s"))
}

fn criterion_2_width() -> Verdict {
    for (name, g) in test_graphs() {
        let r = resource_estimate(&compile_walk_circuit(&g, 1).unwrap());
        let formula = ceil_log2(g.node_count()) + ceil_log2(g.edge_count());
        if r.width != formula {
            return Err(format!("{name}: width {} != {formula}", r.width));
        }
    }
    for seed in 0..10 {
        let r = resource_estimate(&compile_walk_circuit(&ws8(seed), 1).unwrap());
        if r.width != 6 {
            return Err(format!("ws8 seed {seed}: width {} != 6", r.width));
        }
    }
    Ok("width = ceil(log2 N) + ceil(log2 |E|) everywhere; WS(8,2,0.5) width 6".into())
}

fn criterion_3_depth() -> Verdict {
    let mut tightest = f64::INFINITY;
    for (name, g) in test_graphs() {
        for t in 1..=5 {
            let c = compile_walk_circuit(&g, t).unwrap();
            let r = resource_estimate(&c);
            let bound = c.layout().total() * t;
            if r.depth < bound {
                return Err(format!("{name} t={t}: depth {} < {bound}", r.depth));
            }
            tightest = tightest.min(r.depth as f64 / bound as f64);
        }
    }
    Ok(format!(
        "ASAP depth >= (q_x+q_l) t for t=1..5; min depth/bound = {tightest:.2}"
    ))
}

fn criterion_4_conservation() -> Verdict {
    let mut worst: f64 = 0.0;
    for (name, g) in test_graphs() {
        let layout = RegisterLayout::for_graph(&g);
        let ops = WalkOperators::new(&g);
        let block = compile_walk_circuit(&g, 1).unwrap();
        for spec in std::iter::once(InitialSpec::Uniform).chain(single_arc_specs(&g).into_iter().take(2)) {
            let mut sv = inject_initial_state(layout, &g, &spec).unwrap();
            let mut arc = spec.arc_state(&g).unwrap();
            for t in 1..=100 {
                for gate in block.gates() {
                    sv.apply_gate(gate).unwrap();
                    worst = worst.max((sv.norm() - 1.0).abs());
                }
                arc = evolve(&ops, &arc, 1);
                let p = node_probabilities_from_sv(&g, &layout, &sv);
                let checks = [
                    (sv.norm() - 1.0).abs(),
                    (arc.norm() - 1.0).abs(),
                    (node_probabilities(&g, &arc).iter().sum::<f64>() - 1.0).abs(),
                    (p.nodes.iter().sum::<f64>() + p.invalid_mass - 1.0).abs(),
                    (p.nodes.iter().sum::<f64>() - 1.0).abs(),
                ];
                for c in checks {
                    worst = worst.max(c);
                    if !within(c, EXACT_TOL) {
                        return Err(format!("{name} {spec:?} t={t}: deviation {c:e}"));
                    }
                }
            }
        }
    }
    Ok(format!("norms and sum P within {worst:e} of 1 over 100 steps"))
}

fn criterion_5_valid_subspace() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for (name, g) in test_graphs() {
        let layout = RegisterLayout::for_graph(&g);
        let c = compile_walk_circuit(&g, 10).unwrap();
        for spec in std::iter::once(InitialSpec::Uniform).chain(single_arc_specs(&g)) {
            let sv0 = inject_initial_state(layout, &g, &spec).unwrap();
            let out = run(&c, sv0.clone(), true).unwrap();
            runs += 1;
            for (t, sv) in std::iter::once(&sv0).chain(&out.snapshots).enumerate() {
                let m = validity_report(&g, &layout, sv);
                worst = worst.max(m);
                if !within(m, EXACT_TOL) {
                    return Err(format!("{name} {spec:?} t={t}: invalid amplitude {m:e}"));
                }
            }
        }
    }
    Ok(format!("max invalid amplitude {worst:e} over {runs} runs, t=0..10"))
}

fn criterion_6_operators() -> Verdict {
    let mut worst: f64 = 0.0;
    for (name, g) in test_graphs() {
        for block in build_coin(&g).blocks() {
            let k = block.degree();
            let s = 1.0 / (k as f64).sqrt();
            for r in 0..k {
                let cs: f64 = (0..k).map(|c| block.entry(r, c) * s).sum();
                worst = worst.max((cs - s).abs());
                for c in 0..k {
                    let sq: f64 = (0..k).map(|m| block.entry(r, m) * block.entry(m, c)).sum();
                    let id = if r == c { 1.0 } else { 0.0 };
                    worst = worst.max((sq - id).abs());
                }
            }
            if !within(worst, EXACT_TOL) {
                return Err(format!("{name} node {}: coin identity off by {worst:e}", block.node));
            }
        }
        let perm = build_shift(&g);
        let p = perm.permutation();
        if (0..p.len()).any(|a| p[p[a]] != a) {
            return Err(format!("{name}: shift^2 != identity"));
        }
    }
    Ok(format!("C_i^2 = I and C_i s_i = s_i within {worst:e}; S^2 = I exactly"))
}

/// Dense `(S C)` on C_n built straight from the definitions, on arcs listed
/// as `(tail, head)` in lexicographic order. Shares no code with the crate.
fn dense_cycle_walk(n: usize) -> (Vec<(usize, usize)>, Vec<Vec<f64>>) {
    let mut arcs: Vec<(usize, usize)> = (0..n).flat_map(|i| [(i, (i + 1) % n), (i, (i + n - 1) % n)]).collect();
    arcs.sort_unstable();
    let dim = arcs.len();
    let pos = |a: (usize, usize)| arcs.iter().position(|&b| b == a).unwrap();
    let mut coin = vec![vec![0.0; dim]; dim];
    for r in 0..dim {
        for c in 0..dim {
            if arcs[r].0 == arcs[c].0 {
                let degree = 2.0;
                coin[r][c] = 2.0 / degree - if r == c { 1.0 } else { 0.0 };
            }
        }
    }
    let mut shift = vec![vec![0.0; dim]; dim];
    for (c, &(i, j)) in arcs.iter().enumerate() {
        shift[pos((j, i))][c] = 1.0;
    }
    let step = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| (0..dim).map(|m| shift[r][m] * coin[m][c]).sum())
                .collect()
        })
        .collect();
    (arcs, step)
}

fn criterion_7_special_cases() -> Verdict {
    // (a) regular-graph stationarity, both engines.
    for g in [Graph::cycle(8).unwrap(), Graph::complete(4).unwrap()] {
        let n = g.node_count() as f64;
        let layout = RegisterLayout::for_graph(&g);
        let ops = WalkOperators::new(&g);
        let c = compile_walk_circuit(&g, 20).unwrap();
        let sv0 = inject_initial_state(layout, &g, &InitialSpec::Uniform).unwrap();
        let out = run(&c, sv0.clone(), true).unwrap();
        for t in 0..=20 {
            let po = node_probabilities(&g, &evolve(&ops, &initial_state_uniform(&g), t));
            let sv = if t == 0 { &sv0 } else { &out.snapshots[t - 1] };
            let pc = node_probabilities_from_sv(&g, &layout, sv).nodes;
            if let Some(p) = po.iter().chain(&pc).find(|p| !within((*p - 1.0 / n).abs(), EXACT_TOL)) {
                return Err(format!("stationarity broken on N={n} at t={t}: P={p}"));
            }
        }
    }

    // (b) ballistic transport on C8: the dense brute force is checked
    // against the hand-derived node (i - t) mod 8 first, then both engines.
    let n = 8;
    let (arcs, step) = dense_cycle_walk(n);
    let g = Graph::cycle(n).unwrap();
    let layout = RegisterLayout::for_graph(&g);
    let ops = WalkOperators::new(&g);
    for i in 0..n {
        let start = (i, (i + 1) % n);
        let mut v: Vec<f64> = arcs.iter().map(|&a| if a == start { 1.0 } else { 0.0 }).collect();
        let c = compile_walk_circuit(&g, 8).unwrap();
        let sv0 = inject_initial_state(
            layout,
            &g,
            &InitialSpec::SingleArc {
                tail: start.0,
                head: start.1,
            },
        )
        .unwrap();
        let out = run(&c, sv0.clone(), true).unwrap();
        let arc0 = ArcState::single_arc(Arc::clone(&ops.basis), start.0, start.1).unwrap();
        for t in 0..=8 {
            if t > 0 {
                v = (0..v.len())
                    .map(|r| (0..v.len()).map(|m| step[r][m] * v[m]).sum())
                    .collect();
            }
            let expected = (i + n * 8 - t) % n;
            let mut dense_p = vec![0.0; n];
            for (a, &(tail, _)) in arcs.iter().enumerate() {
                dense_p[tail] += v[a] * v[a];
            }
            let po = node_probabilities(&g, &evolve(&ops, &arc0, t));
            let sv = if t == 0 { &sv0 } else { &out.snapshots[t - 1] };
            let pc = node_probabilities_from_sv(&g, &layout, sv).nodes;
            for (engine, p) in [("dense", &dense_p), ("oracle", &po), ("circuit", &pc)] {
                if !within((p[expected] - 1.0).abs(), EXACT_TOL) {
                    return Err(format!(
                        "{engine}: start {start:?} t={t}: P[{expected}]={}",
                        p[expected]
                    ));
                }
            }
        }
    }
    Ok("P_i = 1/N on C8 and K4 for t<=20; ballistic C8 transport matches dense (S C)^t for t<=8".into())
}

fn qwalk(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn criterion_8_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for tag in ["a", "b"] {
        let graph = format!("g_{tag}.json");
        let edges = format!("g_{tag}.txt");
        let csv = format!("run_{tag}.csv");
        let json = format!("run_{tag}.json");
        let circ = format!("c_{tag}.json");
        let runs: [&[&str]; 5] = [
            &["gen", "--ws", "8", "2", "0.5", "--seed", "7", "-o", &graph],
            &[
                "gen", "--ws", "8", "2", "0.5", "--seed", "7", "--format", "edgelist", "-o", &edges,
            ],
            &[
                "run", "-g", &graph, "-t", "10", "--engine", "both", "--shots", "500", "--seed", "3", "-o", &csv,
            ],
            &[
                "run", "--ws", "8", "2", "0.5", "--seed", "7", "-t", "6", "--format", "json", "-o", &json,
            ],
            &["export", "-g", &graph, "-t", "3", "-o", &circ],
        ];
        for args in runs {
            let out = qwalk(d, args);
            if !out.status.success() {
                return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
            }
        }
    }
    for stem in ["g_{}.json", "g_{}.txt", "run_{}.csv", "run_{}.json", "c_{}.json"] {
        let a = std::fs::read(d.join(stem.replace("{}", "a"))).unwrap();
        let b = std::fs::read(d.join(stem.replace("{}", "b"))).unwrap();
        if a != b {
            return Err(format!("{stem} differs between invocations"));
        }
    }
    Ok("gen/run/export outputs byte-identical across invocations".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 cross-path equivalence", criterion_1_cross_path),
        ("2 register width", criterion_2_width),
        ("3 depth bound", criterion_3_depth),
        ("4 unitarity and conservation", criterion_4_conservation),
        ("5 valid-subspace containment", criterion_5_valid_subspace),
        ("6 operator structure", criterion_6_operators),
        ("7 analytic special cases", criterion_7_special_cases),
        ("8 determinism", criterion_8_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  criterion {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn encode_arc_used_by_acceptance_graphs_is_injective() {
    for (name, g) in test_graphs() {
        let layout = RegisterLayout::for_graph(&g);
        let mut idx: Vec<usize> = g
            .edges()
            .iter()
            .flat_map(|&(u, v)| {
                [
                    encode_arc(&g, &layout, u, v).unwrap(),
                    encode_arc(&g, &layout, v, u).unwrap(),
                ]
            })
            .collect();
        idx.sort_unstable();
        idx.dedup();
        assert_eq!(idx.len(), 2 * g.edge_count(), "{name}");
    }
}
