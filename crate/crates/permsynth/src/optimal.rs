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

//! Exact synthesizers: CNOT-size-optimal, CNOT-depth-optimal,
//! SWAP-size-optimal and SWAP-depth-optimal, realized as an
//! iterative-deepening loop of satisfiability queries, plus the
//! all-permutations sweep driver.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Permutation};
use crate::sat::{decode, encode_cnot, encode_cnot_plain, encode_swap, encode_swap_plain, solve, Backend, SolveOutcome};
use crate::topology::CouplingGraph;
use crate::{GateKind, Objective};

/// One satisfiability query made by the deepening loop.
#[derive(Debug, Clone, Serialize)]
pub struct QueryRecord {
    pub bound: usize,
    pub outcome: QueryOutcome,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryOutcome {
    Sat,
    Unsat,
}

/// A synthesized circuit with its method tag, objective value, and solver
/// statistics.
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub circuit: Circuit,
    pub method: String,
    pub objective: Objective,
    /// Minimal objective value for exact methods; the measured value for
    /// heuristics.
    pub optimum: usize,
    pub queries: Vec<QueryRecord>,
    pub wall_time: Duration,
    /// Non-fatal notes (hybrid fallbacks, discarded splits).
    pub flags: Vec<String>,
}

impl SynthesisResult {
    pub fn measured_objective(&self) -> usize {
        match self.objective {
            Objective::Size => self.circuit.size(),
            Objective::Depth => self.circuit.depth(),
        }
    }
}

/// Target of an exact query: a general invertible matrix (CNOT only) or a
/// permutation (either gate kind).
#[derive(Debug, Clone, Copy)]
pub enum ExactTarget<'a> {
    Matrix(&'a Gf2Matrix),
    Perm(&'a Permutation),
}

#[derive(Debug, Clone, Default)]
pub struct ExactOptions {
    pub backend: Backend,
    pub time_limit: Option<Duration>,
    /// Encode only the core clause families, without the implied
    /// reachability clauses that sharpen propagation.
    pub plain_encoding: bool,
}

fn method_tag(kind: GateKind) -> &'static str {
    match kind {
        GateKind::Cnot => "cnot-opt",
        GateKind::Swap => "swap-opt",
    }
}

/// Minimal-size or minimal-depth synthesis by deepening the bound from 0 in
/// steps of 1 until the first satisfiable query. The identity
/// short-circuits without a solver call.
pub fn exact_synth(
    g: &CouplingGraph,
    target: ExactTarget<'_>,
    kind: GateKind,
    objective: Objective,
    opts: &ExactOptions,
) -> Result<SynthesisResult> {
    let start = Instant::now();
    let deadline = opts.time_limit.map(|d| start + d);

    let matrix: Gf2Matrix = match (kind, target) {
        (GateKind::Cnot, ExactTarget::Matrix(m)) => {
            if !m.is_invertible() {
                return Err(Error::NotInvertible);
            }
            m.clone()
        }
        (GateKind::Cnot, ExactTarget::Perm(p)) => Gf2Matrix::from_permutation(p),
        (GateKind::Swap, ExactTarget::Perm(p)) => Gf2Matrix::from_permutation(p),
        (GateKind::Swap, ExactTarget::Matrix(m)) => {
            // SWAP circuits only realize permutations.
            match m.to_permutation() {
                Some(_) => m.clone(),
                None => return Err(Error::NotBijective),
            }
        }
    };
    if matrix.n() != g.n() {
        return Err(Error::DimensionMismatch(matrix.n(), g.n()));
    }

    let mut queries = Vec::new();
    if matrix.is_identity() {
        return Ok(SynthesisResult {
            circuit: Circuit::empty(g.n()),
            method: method_tag(kind).to_string(),
            objective,
            optimum: 0,
            queries,
            wall_time: start.elapsed(),
            flags: Vec::new(),
        });
    }

    let mut bound = 1;
    loop {
        let remaining = match deadline {
            Some(d) => {
                let now = Instant::now();
                if now >= d {
                    return Err(Error::SynthTimeout { refuted_below: bound });
                }
                Some(d - now)
            }
            None => None,
        };
        let q_start = Instant::now();
        let (formula, vm) = match (kind, opts.plain_encoding) {
            (GateKind::Cnot, false) => encode_cnot(g, &matrix, bound, objective)?,
            (GateKind::Cnot, true) => encode_cnot_plain(g, &matrix, bound, objective)?,
            (GateKind::Swap, plain) => {
                let p = matrix.to_permutation().expect("checked above");
                if plain {
                    encode_swap_plain(g, &p, bound, objective)?
                } else {
                    encode_swap(g, &p, bound, objective)?
                }
            }
        };
        match solve(&formula, &opts.backend, remaining)? {
            SolveOutcome::Sat(model) => {
                queries.push(QueryRecord {
                    bound,
                    outcome: QueryOutcome::Sat,
                    wall_ms: q_start.elapsed().as_millis(),
                });
                let circuit = decode(&model, &vm)?;
                if !circuit.verify(g, &matrix).passed() {
                    return Err(Error::SolverInconsistent(
                        "decoded circuit fails verification".into(),
                    ));
                }
                let measured = match objective {
                    Objective::Size => circuit.size(),
                    Objective::Depth => circuit.depth(),
                };
                if measured > bound {
                    return Err(Error::SolverInconsistent(format!(
                        "decoded objective {measured} exceeds bound {bound}"
                    )));
                }
                return Ok(SynthesisResult {
                    circuit,
                    method: method_tag(kind).to_string(),
                    objective,
                    optimum: bound,
                    queries,
                    wall_time: start.elapsed(),
                    flags: Vec::new(),
                });
            }
            SolveOutcome::Unsat => {
                queries.push(QueryRecord {
                    bound,
                    outcome: QueryOutcome::Unsat,
                    wall_ms: q_start.elapsed().as_millis(),
                });
                bound += 1;
            }
            SolveOutcome::Timeout => {
                return Err(Error::SynthTimeout { refuted_below: bound });
            }
        }
    }
}

/// Shared result cache for the hybrid synthesizers: repeated residual
/// instances (same subgraph shape, same target) skip the solver.
#[derive(Default)]
pub struct SynthCache {
    map: Mutex<HashMap<CacheKey, Circuit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CacheKey {
    edges: Vec<(u16, u16)>,
    kind: GateKind,
    objective: Objective,
    target: Vec<u8>,
}

fn target_bytes(m: &Gf2Matrix) -> Vec<u8> {
    let n = m.n();
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut nbits = 0;
    for i in 0..n {
        for k in 0..n {
            acc = acc << 1 | u8::from(m.get(i, k));
            nbits += 1;
            if nbits == 8 {
                bytes.push(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(acc);
    }
    bytes
}

impl SynthCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact synthesis with memoization. The cached circuit is exactly what
    /// `exact_synth` would return for the same instance.
    pub fn exact_synth(
        &self,
        g: &CouplingGraph,
        target: ExactTarget<'_>,
        kind: GateKind,
        objective: Objective,
        opts: &ExactOptions,
    ) -> Result<Circuit> {
        let matrix_owned;
        let matrix: &Gf2Matrix = match target {
            ExactTarget::Matrix(m) => m,
            ExactTarget::Perm(p) => {
                matrix_owned = Gf2Matrix::from_permutation(p);
                &matrix_owned
            }
        };
        let key = CacheKey {
            edges: g.edges().iter().map(|&(a, b)| (a as u16, b as u16)).collect(),
            kind,
            objective,
            target: target_bytes(matrix),
        };
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let result = exact_synth(g, target, kind, objective, opts)?;
        self.map
            .lock()
            .unwrap()
            .insert(key, result.circuit.clone());
        Ok(result.circuit)
    }
}

/// Which permutations a sweep enumerates.
#[derive(Debug, Clone, Copy)]
pub enum Sampler {
    /// All n! permutations in lexicographic order (refused for n > 8).
    All,
    Random { k: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub perm: Permutation,
    /// None when the instance timed out.
    pub optimum: Option<usize>,
    pub queries: usize,
    pub wall_ms: u128,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub histogram: BTreeMap<usize, usize>,
    /// Lexicographically smallest witness at the maximum optimum.
    pub max_witness: Option<(Permutation, usize)>,
    pub timeouts: usize,
}

impl SweepReport {
    /// CSV with header `perm,optimum,queries,wall_ms`, one row per
    /// permutation, and `#`-prefixed summary lines at the end.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "perm,optimum,queries,wall_ms")?;
        for row in &self.rows {
            let opt = row
                .optimum
                .map(|o| o.to_string())
                .unwrap_or_default();
            writeln!(w, "\"{}\",{},{},{}", row.perm, opt, row.queries, row.wall_ms)?;
        }
        let hist: Vec<String> = self
            .histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        writeln!(w, "# histogram {}", hist.join(" "))?;
        if let Some((p, o)) = &self.max_witness {
            writeln!(w, "# max_witness \"{p}\" optimum {o}")?;
        }
        if self.timeouts > 0 {
            writeln!(w, "# timeouts {}", self.timeouts)?;
        }
        Ok(())
    }
}

fn lex_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::new(idx.clone()).expect("valid permutation"));
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| idx[i] < idx[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| idx[j] > idx[i]).unwrap();
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
    out
}

/// Per-permutation optima over a whole enumeration or a seeded sample,
/// solved in parallel with a deterministic merge.
pub fn sweep_all(
    g: &CouplingGraph,
    kind: GateKind,
    objective: Objective,
    sampler: Sampler,
    opts: &ExactOptions,
) -> Result<SweepReport> {
    let n = g.n();
    let perms: Vec<Permutation> = match sampler {
        Sampler::All => {
            if n > 8 {
                return Err(Error::StateSpaceTooLarge(n));
            }
            lex_permutations(n)
        }
        Sampler::Random { k, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..k).map(|_| Permutation::random(n, &mut rng)).collect()
        }
    };
    let rows: Vec<SweepRow> = perms
        .into_par_iter()
        .map(|perm| {
            let started = Instant::now();
            match exact_synth(g, ExactTarget::Perm(&perm), kind, objective, opts) {
                Ok(result) => SweepRow {
                    perm,
                    optimum: Some(result.optimum),
                    queries: result.queries.len(),
                    wall_ms: started.elapsed().as_millis(),
                },
                Err(Error::SynthTimeout { .. }) => SweepRow {
                    perm,
                    optimum: None,
                    queries: 0,
                    wall_ms: started.elapsed().as_millis(),
                },
                Err(e) => panic!("sweep instance failed: {e}"),
            }
        })
        .collect();

    let mut histogram = BTreeMap::new();
    let mut timeouts = 0;
    for row in &rows {
        match row.optimum {
            Some(o) => *histogram.entry(o).or_insert(0) += 1,
            None => timeouts += 1,
        }
    }
    let max_witness = histogram.keys().next_back().copied().and_then(|max| {
        rows.iter()
            .filter(|r| r.optimum == Some(max))
            .map(|r| r.perm.clone())
            .min_by(|a, b| a.as_slice().cmp(b.as_slice()))
            .map(|p| (p, max))
    });
    Ok(SweepReport { rows, histogram, max_witness, timeouts })
}
