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

//! Compilation pipeline for quantum-volume-style circuits: route layers of
//! opaque two-qubit unitaries onto a coupling graph, absorb free SWAPs into
//! adjacent unitaries, collapse the remaining SWAP networks into permutation
//! blocks, resynthesize each block with a chosen method, and accept a
//! replacement only when it improves the objective.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::Permutation;
use crate::topology::CouplingGraph;
use crate::{synthesize, MethodOptions, Objective, SynthMethod};

/// Quantum-volume-style circuit: `layers` rounds, each a uniformly random
/// perfect pairing of the qubits (one idle qubit when n is odd), every pair
/// receiving an opaque two-qubit unitary with a fresh id.
pub fn generate_qv(n: usize, layers: usize, seed: u64) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 qubits, got {n}")));
    }
    if layers < 1 {
        return Err(Error::InvalidInput("need at least 1 layer".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut circuit = Circuit::empty(n);
    let mut next_id = 0u64;
    for _ in 0..layers {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        for pair in order.chunks_exact(2) {
            circuit.push(Gate::U2 {
                qubits: [pair[0], pair[1]],
                id: next_id,
                mirrored: false,
            });
            next_id += 1;
        }
    }
    Ok(circuit)
}

/// Stand-in router: trivial layout (logical i on physical i), then for each
/// unitary in order walk the two logical qubits together along a shortest
/// path, inserting SWAPs and updating the layout. The seed picks which
/// endpoint walks.
pub fn route(c: &Circuit, g: &CouplingGraph, seed: u64) -> Result<Circuit> {
    if c.n != g.n() {
        return Err(Error::DimensionMismatch(c.n, g.n()));
    }
    let n = c.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phys_of: Vec<usize> = (0..n).collect(); // logical -> physical
    let mut log_of: Vec<usize> = (0..n).collect(); // physical -> logical
    let mut out = Circuit::empty(n);
    for gate in &c.gates {
        let Gate::U2 { qubits: [a, b], id, mirrored } = gate else {
            return Err(Error::UnsupportedGate("router accepts only two-qubit unitaries"));
        };
        let (pa, pb) = (phys_of[*a], phys_of[*b]);
        if !g.has_edge(pa, pb) {
            let path = g.shortest_path(pa, pb)?;
            let mut swap_phys = |x: usize, y: usize, out: &mut Circuit| {
                out.push(Gate::swap(x, y));
                let (lx, ly) = (log_of[x], log_of[y]);
                log_of[x] = ly;
                log_of[y] = lx;
                phys_of[lx] = y;
                phys_of[ly] = x;
            };
            if rng.gen_bool(0.5) {
                // walk a toward b
                for w in path.windows(2).take(path.len() - 2) {
                    swap_phys(w[0], w[1], &mut out);
                }
            } else {
                // walk b toward a
                for w in path.windows(2).skip(1).rev() {
                    swap_phys(w[1], w[0], &mut out);
                }
            }
        }
        out.push(Gate::U2 {
            qubits: [phys_of[*a], phys_of[*b]],
            id: *id,
            mirrored: *mirrored,
        });
    }
    Ok(out)
}

/// Merge every SWAP that sits immediately adjacent (no intervening gate on
/// either qubit) to a unitary on the same pair into that unitary, toggling
/// its mirrored flag. Repeats to a fixpoint. Returns the circuit and the
/// number of passes taken.
pub fn absorb_swaps(c: &Circuit) -> (Circuit, usize) {
    let mut gates: Vec<Gate> = c.gates.clone();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut changed = false;
        let mut i = 0;
        while i < gates.len() {
            let Gate::Swap { qubits: [x, y] } = gates[i] else {
                i += 1;
                continue;
            };
            let pair = |g: &Gate| -> Option<bool> {
                // Some(mirrored) when g is a unitary on exactly {x, y}
                match g {
                    Gate::U2 { qubits: [a, b], mirrored, .. }
                        if (*a == x && *b == y) || (*a == y && *b == x) =>
                    {
                        Some(*mirrored)
                    }
                    _ => None,
                }
            };
            let touches = |g: &Gate| g.qubits().iter().any(|&q| q == x || q == y);
            // nearest preceding gate on either qubit
            let back = (0..i).rev().find(|&j| touches(&gates[j]));
            let merged = if let Some(j) = back.filter(|&j| pair(&gates[j]).is_some()) {
                Some(j)
            } else {
                let fwd = (i + 1..gates.len()).find(|&j| touches(&gates[j]));
                fwd.filter(|&j| pair(&gates[j]).is_some())
            };
            if let Some(j) = merged {
                if let Gate::U2 { mirrored, .. } = &mut gates[j] {
                    *mirrored = !*mirrored;
                }
                gates.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    (Circuit { n: c.n, gates }, passes)
}

/// Expand `verts` to a connected induced subgraph of `g` by repeatedly
/// joining the component of the smallest member to the closest other
/// member along a shortest path.
fn connected_closure(g: &CouplingGraph, verts: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = verts.to_vec();
    set.sort_unstable();
    set.dedup();
    loop {
        let mut in_set = vec![false; g.n()];
        for &v in &set {
            in_set[v] = true;
        }
        if g.connected_within(&in_set) {
            return set;
        }
        // component containing the smallest member
        let mut seen = vec![false; g.n()];
        let mut queue = std::collections::VecDeque::from([set[0]]);
        seen[set[0]] = true;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if in_set[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        // closest outside member, via BFS over the whole graph
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        let mut queue = std::collections::VecDeque::new();
        for &v in set.iter().filter(|&&v| seen[v]) {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let touch = set
            .iter()
            .copied()
            .filter(|&v| !seen[v])
            .min_by_key(|&v| (dist[v], v))
            .expect("disconnected set has another member");
        let mut cur = touch;
        while parent[cur] != usize::MAX {
            cur = parent[cur];
            if !in_set[cur] {
                set.push(cur);
            }
        }
        set.sort_unstable();
        set.dedup();
    }
}

/// Replace maximal SWAP bags with permutation blocks. A SWAP joins the
/// current bag when no non-SWAP gate has touched its qubits since the bag
/// opened; the block sits at the first bagged SWAP's position and covers
/// the touched vertices expanded to their connected closure.
pub fn collapse_swap_blocks(c: &Circuit, g: &CouplingGraph) -> Result<Circuit> {
    let mut gates: Vec<Gate> = c.gates.clone();
    let mut scan_from = 0;
    while let Some(open) =
        (scan_from..gates.len()).find(|&i| matches!(gates[i], Gate::Swap { .. }))
    {
        let mut blocked = vec![false; c.n];
        let mut bag: Vec<(usize, usize)> = Vec::new();
        let mut bag_indices: Vec<usize> = Vec::new();
        for (i, gate) in gates.iter().enumerate().skip(open) {
            match gate {
                Gate::Swap { qubits: [x, y] } if !blocked[*x] && !blocked[*y] => {
                    bag.push((*x, *y));
                    bag_indices.push(i);
                }
                other => {
                    for q in other.qubits() {
                        blocked[q] = true;
                    }
                }
            }
        }
        // block vertices: touched, expanded to a connected subgraph
        let touched: Vec<usize> = bag.iter().flat_map(|&(x, y)| [x, y]).collect();
        let qubits = connected_closure(g, &touched);
        let index_of = |v: usize| qubits.binary_search(&v).expect("member");
        // net permutation: the token at qubits[i] ends at qubits[perm[i]]
        let mut pos: Vec<usize> = (0..qubits.len()).collect(); // token -> local pos
        for &(x, y) in &bag {
            let (lx, ly) = (index_of(x), index_of(y));
            let tx = pos.iter().position(|&p| p == lx).unwrap();
            let ty = pos.iter().position(|&p| p == ly).unwrap();
            pos.swap(tx, ty);
        }
        let block = Gate::Perm {
            qubits: qubits.clone(),
            perm: pos,
            original_swaps: bag.clone(),
        };
        // install the block at the first swap's slot, drop the others
        for &i in bag_indices.iter().skip(1).rev() {
            gates.remove(i);
        }
        gates[open] = block;
        scan_from = open + 1;
    }
    Ok(Circuit { n: c.n, gates })
}

/// Per-block outcome of one resynthesis run.
#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub block: usize,
    pub qubits: Vec<usize>,
    pub original_size: usize,
    pub original_depth: usize,
    pub method_size: usize,
    pub method_depth: usize,
    pub accepted: bool,
    pub synth_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Metrics {
    pub size: usize,
    pub depth: usize,
}

/// Report of one pipeline run, serialized as the `compile` command's JSON
/// output.
#[derive(Debug, Clone, Serialize)]
pub struct CompilationReport {
    pub before: Metrics,
    pub after: Metrics,
    pub objective: Objective,
    pub method: String,
    pub blocks: Vec<BlockRecord>,
}

fn flatten(c: &Circuit, realizations: &[Option<Circuit>]) -> Circuit {
    let mut out = Circuit::empty(c.n);
    let mut block_idx = 0;
    for gate in &c.gates {
        match gate {
            Gate::Perm { original_swaps, .. } => {
                match &realizations[block_idx] {
                    Some(replacement) => out.gates.extend(replacement.gates.iter().cloned()),
                    None => out
                        .gates
                        .extend(original_swaps.iter().map(|&(a, b)| Gate::swap(a, b))),
                }
                block_idx += 1;
            }
            other => out.push(other.clone()),
        }
    }
    out
}

/// Resynthesize every permutation block with `method`, accepting a
/// replacement only when it strictly improves the primary objective, or
/// ties it and strictly improves the secondary. Returns the final flattened
/// circuit and the report.
pub fn resynthesize(
    c: &Circuit,
    g: &CouplingGraph,
    method: SynthMethod,
    objective: Objective,
    opts: &MethodOptions,
) -> Result<(Circuit, CompilationReport)> {
    let mut records = Vec::new();
    let mut realizations: Vec<Option<Circuit>> = Vec::new();
    for gate in &c.gates {
        let Gate::Perm { qubits, perm, original_swaps } = gate else {
            continue;
        };
        let block_id = records.len();
        let (sub, embedding) = g.induced(qubits)?;
        let local_of = |v: usize| embedding.binary_search(&v).expect("block member");
        let original_local = Circuit::from_gates(
            sub.n(),
            original_swaps
                .iter()
                .map(|&(a, b)| Gate::swap(local_of(a), local_of(b)))
                .collect(),
        );
        let target = Permutation::new(perm.clone())?;
        let started = Instant::now();
        let (synth, note) = match synthesize(&sub, &target, method, objective, opts) {
            Ok(result) => (Some(result.circuit), None),
            Err(Error::SynthTimeout { .. }) => {
                (None, Some("method timed out; kept original network".to_string()))
            }
            Err(e) => return Err(e),
        };
        let synth_ms = started.elapsed().as_millis();
        let (orig_size, orig_depth) = (original_local.size(), original_local.depth());
        let (accepted, method_size, method_depth, replacement) = match synth {
            Some(circuit) => {
                let (ms, md) = (circuit.size(), circuit.depth());
                let better = match objective {
                    Objective::Size => {
                        ms < orig_size || (ms == orig_size && md < orig_depth)
                    }
                    Objective::Depth => {
                        md < orig_depth || (md == orig_depth && ms < orig_size)
                    }
                };
                if better {
                    (true, ms, md, Some(circuit.remap(&embedding, g.n())?))
                } else {
                    (false, ms, md, None)
                }
            }
            None => (false, orig_size, orig_depth, None),
        };
        records.push(BlockRecord {
            block: block_id,
            qubits: qubits.clone(),
            original_size: orig_size,
            original_depth: orig_depth,
            method_size,
            method_depth,
            accepted,
            synth_ms,
            note,
        });
        realizations.push(replacement);
    }

    let before = flatten(c, &vec![None; records.len()]);
    let after = flatten(c, &realizations);
    let report = CompilationReport {
        before: Metrics { size: before.size(), depth: before.depth() },
        after: Metrics { size: after.size(), depth: after.depth() },
        objective,
        method: method.name().to_string(),
        blocks: records,
    };
    Ok((after, report))
}

/// One unitary application seen by [`replay`]: the unitary id and the
/// ordered logical qubit pair it met.
pub type ReplayEvent = (u64, (usize, usize));

/// Symbolic replay for equivalence checking: the sequence of unitary
/// events plus the final physical-to-logical map. Mirrored unitaries count
/// as the unitary followed by a SWAP.
pub fn replay(c: &Circuit) -> (Vec<ReplayEvent>, Vec<usize>) {
    let mut log_of: Vec<usize> = (0..c.n).collect();
    let mut events = Vec::new();
    for gate in &c.gates {
        match gate {
            Gate::U2 { qubits: [x, y], id, mirrored } => {
                events.push((*id, (log_of[*x], log_of[*y])));
                if *mirrored {
                    log_of.swap(*x, *y);
                }
            }
            Gate::Swap { qubits: [x, y] } => {
                log_of.swap(*x, *y);
            }
            Gate::Cnot { .. } => {}
            Gate::Perm { qubits, perm, .. } => {
                let old: Vec<usize> = qubits.iter().map(|&q| log_of[q]).collect();
                for (i, &p) in perm.iter().enumerate() {
                    log_of[qubits[p]] = old[i];
                }
            }
        }
    }
    (events, log_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimal::ExactOptions;

    fn opts() -> MethodOptions {
        MethodOptions {
            exact: ExactOptions::default(),
            ..Default::default()
        }
    }

    #[test]
    fn qv_shapes() {
        let c = generate_qv(2, 1, 0).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.gates[0].qubits().len(), 2);

        let c = generate_qv(4, 3, 1).unwrap();
        assert_eq!(c.size(), 6);
        assert_eq!(c.depth(), 3);

        // one idle qubit per layer when n is odd
        let c = generate_qv(5, 2, 2).unwrap();
        assert_eq!(c.size(), 4);

        // deterministic under seed
        assert_eq!(generate_qv(6, 4, 9).unwrap(), generate_qv(6, 4, 9).unwrap());
        assert_ne!(generate_qv(6, 4, 9).unwrap(), generate_qv(6, 4, 10).unwrap());
    }

    #[test]
    fn route_on_graph_circuit_is_untouched() {
        let g = CouplingGraph::path(4).unwrap();
        let c = Circuit::from_gates(
            4,
            vec![Gate::U2 { qubits: [0, 1], id: 0, mirrored: false }],
        );
        let routed = route(&c, &g, 0).unwrap();
        assert_eq!(routed, c);
    }

    #[test]
    fn route_distant_pair_inserts_path_swaps() {
        for n in [4, 6, 9] {
            let g = CouplingGraph::path(n).unwrap();
            let c = Circuit::from_gates(
                n,
                vec![Gate::U2 { qubits: [0, n - 1], id: 0, mirrored: false }],
            );
            let routed = route(&c, &g, 0).unwrap();
            let swaps = routed
                .gates
                .iter()
                .filter(|g| matches!(g, Gate::Swap { .. }))
                .count();
            assert_eq!(swaps, n - 2);
        }
    }

    #[test]
    fn routed_gates_are_always_on_graph() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            use rand::Rng;
            let n = rng.gen_range(3..10);
            let g = if trial % 2 == 0 {
                CouplingGraph::path(n).unwrap()
            } else {
                CouplingGraph::ring(n.max(3)).unwrap()
            };
            let c = generate_qv(g.n(), 4, trial).unwrap();
            let routed = route(&c, &g, trial).unwrap();
            for gate in &routed.gates {
                let (a, b) = gate.pair().unwrap();
                assert!(g.has_edge(a, b), "{gate:?} off graph");
            }
            // replay equivalence: same unitaries meet the same logical pairs
            let (orig_events, _) = replay(&c);
            let (routed_events, _) = replay(&routed);
            assert_eq!(orig_events, routed_events);
        }
    }

    #[test]
    fn absorb_direct_adjacency() {
        let c = Circuit::from_gates(
            3,
            vec![
                Gate::U2 { qubits: [0, 1], id: 5, mirrored: false },
                Gate::swap(0, 1),
            ],
        );
        let (out, _) = absorb_swaps(&c);
        assert_eq!(
            out.gates,
            vec![Gate::U2 { qubits: [0, 1], id: 5, mirrored: true }]
        );
        // replay equivalence
        assert_eq!(replay(&c), replay(&out));
    }

    #[test]
    fn absorb_skips_different_pair() {
        let c = Circuit::from_gates(
            3,
            vec![
                Gate::U2 { qubits: [0, 1], id: 0, mirrored: false },
                Gate::swap(1, 2),
            ],
        );
        let (out, _) = absorb_swaps(&c);
        assert_eq!(out, c);
    }

    #[test]
    fn absorb_respects_intervening_gates() {
        let c = Circuit::from_gates(
            3,
            vec![
                Gate::U2 { qubits: [0, 1], id: 0, mirrored: false },
                Gate::U2 { qubits: [1, 2], id: 1, mirrored: false },
                Gate::swap(0, 1),
            ],
        );
        let (out, _) = absorb_swaps(&c);
        // the swap's nearest neighbor on qubit 1 is unitary 1, a different
        // pair, so nothing merges
        assert_eq!(out, c);
    }

    #[test]
    fn absorb_reaches_fixpoint_quickly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for trial in 0..100 {
            let n = rng.gen_range(4..9);
            let g = CouplingGraph::path(n).unwrap();
            let c = generate_qv(n, 3, trial).unwrap();
            let routed = route(&c, &g, trial).unwrap();
            let (out, passes) = absorb_swaps(&routed);
            assert!(passes <= routed.size().max(1));
            assert_eq!(replay(&routed), replay(&out));
        }
    }

    #[test]
    fn collapse_no_swaps_unchanged() {
        let g = CouplingGraph::path(4).unwrap();
        let c = generate_qv(4, 2, 3).unwrap();
        assert_eq!(collapse_swap_blocks(&c, &g).unwrap(), c);
    }

    #[test]
    fn collapse_disjoint_swaps_into_one_block() {
        let g = CouplingGraph::path(6).unwrap();
        let c = Circuit::from_gates(
            6,
            vec![Gate::swap(0, 1), Gate::swap(2, 3), Gate::swap(4, 5)],
        );
        let out = collapse_swap_blocks(&c, &g).unwrap();
        assert_eq!(out.size(), 1);
        let Gate::Perm { qubits, perm, original_swaps } = &out.gates[0] else {
            panic!("expected a permutation block");
        };
        assert_eq!(qubits, &vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(perm, &vec![1, 0, 3, 2, 5, 4]);
        assert_eq!(original_swaps.len(), 3);
    }

    #[test]
    fn collapse_net_permutation_matches_swap_composition() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..100 {
            use rand::Rng;
            let n = rng.gen_range(4..9);
            let g = CouplingGraph::path(n).unwrap();
            let routed = route(&generate_qv(n, 4, trial).unwrap(), &g, trial).unwrap();
            let (absorbed, _) = absorb_swaps(&routed);
            let collapsed = collapse_swap_blocks(&absorbed, &g).unwrap();
            // replay equivalence of the whole circuit proves each block's
            // net permutation equals the composition of its swaps
            assert_eq!(replay(&absorbed), replay(&collapsed));
            for gate in &collapsed.gates {
                assert!(!matches!(gate, Gate::Swap { .. }), "loose swap left behind");
            }
        }
    }

    #[test]
    fn resynthesize_size_never_increases_global_size() {
        for seed in 0..8 {
            let g = CouplingGraph::path(6).unwrap();
            let routed = route(&generate_qv(6, 6, seed).unwrap(), &g, seed).unwrap();
            let (absorbed, _) = absorb_swaps(&routed);
            let collapsed = collapse_swap_blocks(&absorbed, &g).unwrap();
            let (after, report) =
                resynthesize(&collapsed, &g, SynthMethod::RowcolHybrid, Objective::Size, &opts())
                    .unwrap();
            assert!(report.after.size <= report.before.size);
            assert_eq!(after.size(), report.after.size);
            // accepted blocks strictly satisfy the accept rule
            for b in &report.blocks {
                if b.accepted {
                    assert!(
                        b.method_size < b.original_size
                            || (b.method_size == b.original_size
                                && b.method_depth < b.original_depth)
                    );
                }
            }
        }
    }

    #[test]
    fn final_circuit_replay_matches_routed_original() {
        // 200 random instances: the flattened pipeline output wires the
        // same unitaries to the same logical qubit pairs in the same order
        // and realizes the same final map as the routed original.
        for seed in 0..200u64 {
            let g = CouplingGraph::path(7).unwrap();
            let routed = route(&generate_qv(7, 4, seed).unwrap(), &g, seed).unwrap();
            let (absorbed, _) = absorb_swaps(&routed);
            let collapsed = collapse_swap_blocks(&absorbed, &g).unwrap();
            let (after, _) =
                resynthesize(&collapsed, &g, SynthMethod::LrSynth, Objective::Depth, &opts())
                    .unwrap();
            assert_eq!(replay(&routed), replay(&after), "seed {seed}");
        }
    }

    #[test]
    fn resynthesize_preserves_semantics() {
        for seed in 0..10 {
            let g = CouplingGraph::path(6).unwrap();
            let routed = route(&generate_qv(6, 6, seed).unwrap(), &g, seed).unwrap();
            let (absorbed, _) = absorb_swaps(&routed);
            let collapsed = collapse_swap_blocks(&absorbed, &g).unwrap();
            // Block collapsing preserves the replay wholesale; SWAP-based
            // resynthesis preserves it through the flattened circuit too.
            assert_eq!(replay(&routed), replay(&collapsed));
            for (method, objective) in [
                (SynthMethod::LrSynth, Objective::Depth),
                (SynthMethod::SwapOpt, Objective::Depth),
            ] {
                let (after, _) = resynthesize(&collapsed, &g, method, objective, &opts()).unwrap();
                assert_eq!(replay(&routed), replay(&after), "{method} broke the wiring");
            }
            // CNOT realizations act at the GF(2) matrix level; each accepted
            // block is verified against its permutation at synthesis time,
            // so the collapsed-level replay above carries the guarantee.
            let (_, report) =
                resynthesize(&collapsed, &g, SynthMethod::RowcolHybrid, Objective::Size, &opts())
                    .unwrap();
            assert_eq!(report.blocks.len(), collapsed
                .gates
                .iter()
                .filter(|g| matches!(g, Gate::Perm { .. }))
                .count());
        }
    }
}
