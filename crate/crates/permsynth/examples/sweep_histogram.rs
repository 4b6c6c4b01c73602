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

//! Optimum-depth histogram over every permutation of a small path,
//! comparing CNOT-based and SWAP-based exact synthesis.
//!
//! The CNOT histogram measures depth in CNOT layers; each SWAP layer
//! expands to 3 CNOT layers, so a SWAP optimum of d corresponds to CNOT
//! depth 3d. The tally at the end counts how many permutations do strictly
//! better with CNOTs than with SWAPs.
//!
//! ```text
//! cargo run --release --example sweep_histogram -- [n]
//! ```

use permsynth::optimal::{sweep_all, ExactOptions, Sampler};
use permsynth::{CouplingGraph, GateKind, Objective};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let g = CouplingGraph::path(n).unwrap();
    let opts = ExactOptions::default();

    let cnot = sweep_all(&g, GateKind::Cnot, Objective::Depth, Sampler::All, &opts).unwrap();
    let swap = sweep_all(&g, GateKind::Swap, Objective::Depth, Sampler::All, &opts).unwrap();

    println!("path:{n}, all {} permutations\n", cnot.rows.len());
    println!("CNOT depth histogram:");
    for (depth, count) in &cnot.histogram {
        println!("  {depth:2}: {count:5} {}", "#".repeat((*count).min(60)));
    }
    println!("SWAP depth histogram:");
    for (depth, count) in &swap.histogram {
        println!("  {depth:2}: {count:5} {}", "#".repeat((*count).min(60)));
    }
    if let Some((witness, optimum)) = &cnot.max_witness {
        println!("\nhardest permutation for CNOT depth: {witness} (depth {optimum})");
    }

    let better = cnot
        .rows
        .iter()
        .zip(&swap.rows)
        .filter(|(c, s)| {
            c.optimum.unwrap() < 3 * s.optimum.unwrap()
        })
        .count();
    println!(
        "{better}/{} permutations have strictly better depth with CNOTs than with SWAPs",
        cnot.rows.len()
    );
}
