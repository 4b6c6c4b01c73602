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

//! Depth-oriented SWAP synthesis with LR-Synth on a ring.
//!
//! Shows the divide-and-conquer machinery piece by piece: the balanced
//! connected 2-partition with its removed routing lanes, the per-round swap
//! layers that move tokens to their correct half, and the recursive totals.
//! Then compares plain LR-Synth, the single-partition variant, and the
//! hybrid with the exact SWAP-depth solver at the bottom.
//!
//! ```text
//! cargo run --release --example lr_synth_ring -- [n] [seed]
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permsynth::lrsynth::{lr_synth, routing_rounds, LrOptions};
use permsynth::topology::partition_graph;
use permsynth::{CouplingGraph, Permutation};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);
    let g = CouplingGraph::ring(n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Permutation::random(n, &mut rng);
    println!("ring:{n}, permutation {p}\n");

    let part = partition_graph(&g, n).into_iter().next().unwrap();
    println!("top-level split: left {:?}, right {:?}", part.left, part.right);
    println!("routing lanes (removed edges): {:?}", part.removed_edges);
    let (rounds, _, misplaced) =
        routing_rounds(&g, &p, &part, 4 * n).expect("round cap not hit");
    for (i, round) in rounds.iter().enumerate() {
        println!("  crossing round {i}: {round:?}");
    }
    println!("  tokens still misplaced inside their halves: {misplaced}\n");

    for (name, opts) in [
        ("all partitions ", LrOptions::default()),
        ("single partition", LrOptions { samples: Some(1), ..Default::default() }),
        ("hybrid bottom   ", LrOptions::hybrid()),
    ] {
        let r = lr_synth(&g, &p, &opts).unwrap();
        assert!(r.circuit.verify_permutation(&g, &p).passed());
        println!(
            "{name} -> {:3} swaps, depth {:2}  ({} ms, {})",
            r.circuit.size(),
            r.circuit.depth(),
            r.wall_time.as_millis(),
            r.method,
        );
    }
}
