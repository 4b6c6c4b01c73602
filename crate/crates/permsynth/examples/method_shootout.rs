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

//! Every synthesis method on the same instance, side by side, with the
//! small-instance BFS oracle as ground truth where it is feasible.
//!
//! ```text
//! cargo run --release --example method_shootout -- [graph] [perm]
//! cargo run --release --example method_shootout -- path:6 random:3
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permsynth::baselines::{bfs_oracle_cnot, bfs_oracle_swap};
use permsynth::{
    synthesize, CouplingGraph, Gf2Matrix, MethodOptions, Objective, Permutation, SynthMethod,
};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let graph_spec = args.get(1).map(String::as_str).unwrap_or("path:6");
    let g = CouplingGraph::parse(graph_spec).expect("valid graph spec");
    let p = match args.get(2).map(String::as_str) {
        None => Permutation::reversal(g.n()),
        Some("reversal") => Permutation::reversal(g.n()),
        Some(s) if s.starts_with("random:") => {
            let seed: u64 = s["random:".len()..].parse().expect("seed");
            Permutation::random(g.n(), &mut ChaCha8Rng::seed_from_u64(seed))
        }
        Some(csv) => Permutation::parse(csv).expect("valid permutation"),
    };
    println!("{graph_spec}, permutation {p}\n");
    println!("{:<16} {:>6} {:>6} {:>10} {:>10} {:>8}", "method", "size", "depth", "cnot-size", "cnot-depth", "ms");

    let opts = MethodOptions::default();
    for method in SynthMethod::ALL {
        if method == SynthMethod::OddEven && !g.is_path() {
            continue;
        }
        if matches!(method, SynthMethod::CnotOpt | SynthMethod::SwapOpt) && g.n() > 8 {
            continue; // keep the demo quick on big graphs
        }
        let r = synthesize(&g, &p, method, Objective::Depth, &opts).unwrap();
        assert!(r.circuit.verify_permutation(&g, &p).passed());
        println!(
            "{:<16} {:>6} {:>6} {:>10} {:>10} {:>8}",
            r.method,
            r.circuit.size(),
            r.circuit.depth(),
            r.circuit.cnot_equivalent_size().unwrap(),
            r.circuit.cnot_equivalent_depth().unwrap(),
            r.wall_time.as_millis()
        );
    }

    if g.n() <= 4 {
        let m = Gf2Matrix::from_permutation(&p);
        println!("\nBFS oracle ground truth:");
        println!(
            "  cnot: size {}, depth {}",
            bfs_oracle_cnot(&g, &m, Objective::Size).unwrap(),
            bfs_oracle_cnot(&g, &m, Objective::Depth).unwrap()
        );
        println!(
            "  swap: size {}, depth {}",
            bfs_oracle_swap(&g, &p, Objective::Size).unwrap(),
            bfs_oracle_swap(&g, &p, Objective::Depth).unwrap()
        );
    }
}
