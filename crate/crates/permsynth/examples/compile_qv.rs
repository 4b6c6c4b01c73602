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

//! The full compilation pipeline on a quantum-volume-style workload:
//! generate a square circuit of random two-qubit unitaries, route it onto a
//! path, absorb free SWAPs into adjacent unitaries, collapse SWAP bags into
//! permutation blocks, and resynthesize each block, accepting replacements
//! only when they improve the objective.
//!
//! Run twice, once per objective, to see why local depth wins do not always
//! become global ones while size wins always add up.
//!
//! ```text
//! cargo run --release --example compile_qv -- [qubits] [seed]
//! ```

use permsynth::compile::{absorb_swaps, collapse_swap_blocks, generate_qv, replay, resynthesize, route};
use permsynth::{CouplingGraph, MethodOptions, Objective, SynthMethod};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(17);
    let g = CouplingGraph::path(n).unwrap();

    let logical = generate_qv(n, n, seed).unwrap();
    let routed = route(&logical, &g, seed).unwrap();
    let (absorbed, passes) = absorb_swaps(&routed);
    let collapsed = collapse_swap_blocks(&absorbed, &g).unwrap();
    let blocks = collapsed
        .gates
        .iter()
        .filter(|gate| matches!(gate, permsynth::Gate::Perm { .. }))
        .count();
    println!("square QV-style circuit: {n} qubits x {n} layers, seed {seed}");
    println!(
        "routed: {} gates (depth {}), absorption took {passes} pass(es), {blocks} permutation blocks",
        routed.size(),
        routed.depth()
    );
    assert_eq!(replay(&routed), replay(&collapsed));

    for (method, objective) in [
        (SynthMethod::LrSynthHybrid, Objective::Depth),
        (SynthMethod::SwapOpt, Objective::Depth),
        (SynthMethod::RowcolHybrid, Objective::Size),
    ] {
        let (_, report) =
            resynthesize(&collapsed, &g, method, objective, &MethodOptions::default()).unwrap();
        let accepted = report.blocks.iter().filter(|b| b.accepted).count();
        println!(
            "\n{method} optimizing {objective}: accepted {accepted}/{} blocks",
            report.blocks.len(),
        );
        println!(
            "  global size  {} -> {}",
            report.before.size, report.after.size
        );
        println!(
            "  global depth {} -> {}",
            report.before.depth, report.after.depth
        );
        for b in report.blocks.iter().filter(|b| b.accepted) {
            println!(
                "  block {} on {:?}: {}g/{}d -> {}g/{}d",
                b.block, b.qubits, b.original_size, b.original_depth, b.method_size, b.method_depth
            );
        }
    }
}
