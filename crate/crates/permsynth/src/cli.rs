// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end: synthesis, sweeps, benchmarks, compilation, and
//! verification, with machine-readable output.
//!
//! Exit codes: 0 success, 1 invalid input, 2 timeout with partial results.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::circuit::Circuit;
use crate::compile::{absorb_swaps, collapse_swap_blocks, generate_qv, resynthesize, route};
use crate::error::{Error, Result};
use crate::gf2::Permutation;
use crate::optimal::{sweep_all, ExactOptions, Sampler};
use crate::rowcol::OrderStrategy;
use crate::sat::Backend;
use crate::topology::CouplingGraph;
use crate::{synthesize, MethodOptions, Objective, SynthMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_TIMEOUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "permsynth",
    about = "Synthesize qubit permutations on coupling graphs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize one permutation and print the circuit with metrics.
    Synth(SynthArgs),
    /// Solve every permutation (or a sample) and emit per-instance CSV.
    Sweep(SweepArgs),
    /// Compare methods over topology families and sizes; emit CSV.
    Bench(BenchArgs),
    /// Run the routing + block-resynthesis pipeline on a QV-style circuit.
    Compile(CompileArgs),
    /// Check a circuit file against a graph and permutation.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Graph spec: path:n, ring:n, grid:WxH, tree:<file>, edges:<file>
    #[arg(long)]
    graph: String,
    /// Permutation: comma-separated dest table, `reversal`, or `random:seed`
    #[arg(long)]
    perm: String,
    #[arg(long)]
    method: String,
    #[arg(long, default_value = "depth")]
    objective: String,
    /// Partition samples for lr-synth (default: per-level rule)
    #[arg(long)]
    samples: Option<usize>,
    /// Elimination-order strategy for rowcol: fixed:v0,v1,... | exhaustive
    /// | sample:k[:seed]
    #[arg(long)]
    order: Option<String>,
    /// Total solver budget in seconds for exact methods
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the circuit JSON here as well
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    graph: String,
    /// cnot-opt or swap-opt
    #[arg(long)]
    method: String,
    #[arg(long)]
    objective: String,
    /// all | random:k:seed
    #[arg(long)]
    enumerate: String,
    #[arg(long)]
    out: PathBuf,
    /// Per-instance solver budget in seconds
    #[arg(long)]
    time_limit: Option<f64>,
    /// Worker threads (default: logical CPU count)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// path | ring | tree | grid
    #[arg(long)]
    family: String,
    /// Inclusive range `a..b` or explicit list `4,8,16`
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 10)]
    perms_per_size: usize,
    /// Comma-separated method list
    #[arg(long)]
    methods: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct CompileArgs {
    #[arg(long)]
    qubits: usize,
    /// Unitary layers; ignored when --square is set
    #[arg(long, default_value_t = 1)]
    layers: usize,
    /// Square circuit: layers = qubits
    #[arg(long, default_value_t = false)]
    square: bool,
    #[arg(long)]
    graph: String,
    #[arg(long)]
    method: String,
    #[arg(long)]
    objective: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    graph: String,
    /// Comma-separated dest table
    #[arg(long)]
    perm: String,
}

fn parse_perm(spec: &str, n: usize) -> Result<Permutation> {
    match spec {
        "reversal" => Ok(Permutation::reversal(n)),
        s if s.starts_with("random:") => {
            let seed: u64 = s["random:".len()..]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad seed in `{s}`")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Permutation::random(n, &mut rng))
        }
        csv => {
            let p = Permutation::parse(csv)?;
            if p.len() != n {
                return Err(Error::InvalidInput(format!(
                    "permutation has {} entries for {} vertices",
                    p.len(),
                    n
                )));
            }
            Ok(p)
        }
    }
}

fn parse_order(spec: &str) -> Result<OrderStrategy> {
    if spec == "exhaustive" {
        return Ok(OrderStrategy::Exhaustive);
    }
    if let Some(rest) = spec.strip_prefix("fixed:") {
        let order: Vec<usize> = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad order entry `{t}`")))
            })
            .collect::<Result<_>>()?;
        return Ok(OrderStrategy::Fixed(order));
    }
    if let Some(rest) = spec.strip_prefix("sample:") {
        let mut parts = rest.split(':');
        let k = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("bad sample count in `{spec}`")))?;
        let seed = match parts.next() {
            Some(t) => t
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad sample seed in `{spec}`")))?,
            None => 0,
        };
        return Ok(OrderStrategy::Sample { k, seed });
    }
    Err(Error::InvalidInput(format!("unknown order strategy `{spec}`")))
}

fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = spec.split_once("..") {
        let a: usize = a
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad size range `{spec}`")))?;
        let b: usize = b
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad size range `{spec}`")))?;
        if a > b {
            return Err(Error::InvalidInput(format!("empty size range `{spec}`")));
        }
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad size `{t}`")))
        })
        .collect()
}

fn method_options(
    order: Option<&str>,
    samples: Option<usize>,
    time_limit: Option<f64>,
) -> Result<MethodOptions> {
    let mut opts = MethodOptions {
        exact: ExactOptions {
            backend: Backend::from_env(),
            time_limit: time_limit.map(Duration::from_secs_f64),
            plain_encoding: false,
        },
        ..Default::default()
    };
    if let Some(order) = order {
        opts.rowcol_order = parse_order(order)?;
    }
    opts.lr_samples = samples;
    Ok(opts)
}

/// Random tree on n vertices from a seeded Pruefer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<CouplingGraph> {
    use rand::Rng;
    if n == 2 {
        return CouplingGraph::path(2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pruefer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &pruefer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut degree_work = degree.clone();
    for &v in &pruefer {
        let leaf = (0..n).find(|&u| degree_work[u] == 1).expect("leaf exists");
        edges.push((leaf, v));
        degree_work[leaf] -= 1;
        degree_work[v] -= 1;
    }
    let mut last: Vec<usize> = (0..n).filter(|&u| degree_work[u] == 1).collect();
    edges.push((last.remove(0), last.remove(0)));
    CouplingGraph::new(n, edges)
}

fn graph_for_family(family: &str, n: usize, seed: u64) -> Result<CouplingGraph> {
    match family {
        "path" => CouplingGraph::path(n),
        "ring" => CouplingGraph::ring(n),
        "tree" => random_tree(n, seed),
        "grid" => {
            // the most square WxH with W*H = n
            let mut w = (n as f64).sqrt() as usize;
            while w > 1 && !n.is_multiple_of(w) {
                w -= 1;
            }
            if w <= 1 {
                return Err(Error::InvalidInput(format!(
                    "grid family needs a composite size, got {n}"
                )));
            }
            CouplingGraph::grid(w, n / w)
        }
        other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
    }
}

fn install_thread_pool(threads: Option<usize>) {
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<i32> {
    let g = CouplingGraph::parse(&args.graph)?;
    let p = parse_perm(&args.perm, g.n())?;
    let method: SynthMethod = args.method.parse()?;
    let objective: Objective = args.objective.parse()?;
    let opts = method_options(args.order.as_deref(), args.samples, args.time_limit)?;

    let result = match synthesize(&g, &p, method, objective, &opts) {
        Ok(r) => r,
        Err(Error::SynthTimeout { refuted_below }) => {
            eprintln!(
                "timeout: every bound below {refuted_below} is refuted; no circuit found \
                 within the budget"
            );
            return Ok(EXIT_TIMEOUT);
        }
        Err(e) => return Err(e),
    };
    let circuit = &result.circuit;
    let metrics = json!({
        "size": circuit.size(),
        "depth": circuit.depth(),
        "cnot_equivalent_size": circuit.cnot_equivalent_size()?,
        "cnot_equivalent_depth": circuit.cnot_equivalent_depth()?,
        "wall_ms": result.wall_time.as_millis() as u64,
    });
    let mut value = serde_json::to_value(circuit)?;
    value["metrics"] = metrics.clone();
    value["method"] = json!(result.method);
    value["objective"] = json!(result.objective);
    let json_text = serde_json::to_string_pretty(&value)?;
    if let Some(out) = &args.out {
        std::fs::write(out, &json_text)?;
    }
    match args.format.as_str() {
        "json" => println!("{json_text}"),
        "text" => {
            println!("method: {}", result.method);
            println!("objective: {}", result.objective);
            println!("optimum: {}", result.optimum);
            for (key, val) in metrics.as_object().unwrap() {
                println!("{key}: {val}");
            }
            for flag in &result.flags {
                println!("note: {flag}");
            }
        }
        other => return Err(Error::InvalidInput(format!("unknown format `{other}`"))),
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    install_thread_pool(args.threads);
    let g = CouplingGraph::parse(&args.graph)?;
    let method: SynthMethod = args.method.parse()?;
    let kind = match method {
        SynthMethod::CnotOpt => crate::GateKind::Cnot,
        SynthMethod::SwapOpt => crate::GateKind::Swap,
        other => {
            return Err(Error::InvalidInput(format!(
                "sweep wants an exact method, got `{other}`"
            )))
        }
    };
    let objective: Objective = args.objective.parse()?;
    let sampler = match args.enumerate.as_str() {
        "all" => {
            if g.n() > 8 {
                return Err(Error::InvalidInput(format!(
                    "enumerating {}! permutations is infeasible; use random:k:seed",
                    g.n()
                )));
            }
            Sampler::All
        }
        s if s.starts_with("random:") => {
            let mut parts = s["random:".len()..].split(':');
            let k = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad sample `{s}`")))?;
            let seed = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad sample `{s}`")))?;
            Sampler::Random { k, seed }
        }
        other => return Err(Error::InvalidInput(format!("unknown enumerate `{other}`"))),
    };
    let opts = ExactOptions {
        backend: Backend::from_env(),
        time_limit: args.time_limit.map(Duration::from_secs_f64),
        plain_encoding: false,
    };
    let report = sweep_all(&g, kind, objective, sampler, &opts)?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    std::fs::write(&args.out, &csv)?;
    let hist: Vec<String> = report
        .histogram
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    println!("instances: {}", report.rows.len());
    println!("histogram: {}", hist.join(" "));
    if let Some((witness, optimum)) = &report.max_witness {
        println!("max optimum {optimum} witness {witness}");
    }
    if report.timeouts > 0 {
        println!("timeouts: {}", report.timeouts);
        return Ok(EXIT_TIMEOUT);
    }
    Ok(EXIT_OK)
}

fn cmd_bench(args: &BenchArgs) -> Result<i32> {
    install_thread_pool(args.threads);
    let sizes = parse_sizes(&args.sizes)?;
    let methods: Vec<SynthMethod> = args
        .methods
        .split(',')
        .map(|m| m.trim().parse())
        .collect::<Result<_>>()?;
    if methods.is_empty() {
        return Err(Error::InvalidInput("empty method list".into()));
    }
    if methods.contains(&SynthMethod::OddEven) && args.family != "path" {
        return Err(Error::InvalidInput(
            "odd-even runs only on the path family".into(),
        ));
    }
    let opts = method_options(None, None, args.time_limit)?;
    let mut rows: Vec<String> = Vec::new();
    for &n in &sizes {
        let g = graph_for_family(&args.family, n, args.seed ^ n as u64)?;
        let perms: Vec<Permutation> = (0..args.perms_per_size)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ (n as u64) << 20 ^ i as u64);
                Permutation::random(g.n(), &mut rng)
            })
            .collect();
        for &method in &methods {
            let outcomes: Vec<Option<(usize, usize, u128)>> = perms
                .par_iter()
                .map(|p| match synthesize(&g, p, method, Objective::Depth, &opts) {
                    Ok(r) => Some((
                        r.circuit.size(),
                        r.circuit.depth(),
                        r.wall_time.as_millis(),
                    )),
                    Err(Error::SynthTimeout { .. }) => None,
                    Err(e) => panic!("bench instance failed: {e}"),
                })
                .collect();
            let done: Vec<&(usize, usize, u128)> = outcomes.iter().flatten().collect();
            let (mean_size, mean_depth, mean_ms) = if done.is_empty() {
                (String::new(), String::new(), String::new())
            } else {
                let k = done.len() as f64;
                (
                    format!("{:.2}", done.iter().map(|r| r.0 as f64).sum::<f64>() / k),
                    format!("{:.2}", done.iter().map(|r| r.1 as f64).sum::<f64>() / k),
                    format!("{:.2}", done.iter().map(|r| r.2 as f64).sum::<f64>() / k),
                )
            };
            rows.push(format!(
                "{},{},{},{},{},{},{},{}",
                args.family,
                n,
                method.name(),
                mean_size,
                mean_depth,
                mean_ms,
                done.len(),
                args.seed
            ));
        }
    }
    let mut text = String::from("topology,n,method,mean_size,mean_depth,mean_wall_ms,samples,seed\n");
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    write_or_print(args.out.as_ref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_compile(args: &CompileArgs) -> Result<i32> {
    let g = CouplingGraph::parse(&args.graph)?;
    if g.n() != args.qubits {
        return Err(Error::InvalidInput(format!(
            "graph has {} vertices but --qubits is {}",
            g.n(),
            args.qubits
        )));
    }
    let layers = if args.square { args.qubits } else { args.layers };
    let method: SynthMethod = args.method.parse()?;
    let objective: Objective = args.objective.parse()?;
    let opts = method_options(None, None, args.time_limit)?;

    let logical = generate_qv(args.qubits, layers, args.seed)?;
    let routed = route(&logical, &g, args.seed)?;
    let (absorbed, _) = absorb_swaps(&routed);
    let collapsed = collapse_swap_blocks(&absorbed, &g)?;
    let (_, report) = resynthesize(&collapsed, &g, method, objective, &opts)?;
    let text = serde_json::to_string_pretty(&report)?;
    write_or_print(args.out.as_ref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let g = CouplingGraph::parse(&args.graph)?;
    let text = std::fs::read_to_string(&args.circuit)?;
    let circuit = Circuit::from_json(&text)?;
    let p = Permutation::parse(&args.perm)?;
    if p.len() != g.n() || circuit.n != g.n() {
        return Err(Error::InvalidInput(
            "circuit, graph, and permutation sizes disagree".into(),
        ));
    }
    match circuit.verify_permutation(&g, &p) {
        crate::VerifyOutcome::Pass => {
            println!("ok");
            Ok(EXIT_OK)
        }
        crate::VerifyOutcome::OffGraphGate(i) => {
            eprintln!("gate {i} acts on a pair that is not a graph edge");
            Ok(EXIT_INVALID)
        }
        crate::VerifyOutcome::WrongFunction => {
            eprintln!("circuit realizes a different function");
            Ok(EXIT_INVALID)
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Compile(args) => cmd_compile(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
