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

//! Tour of the coupling-graph toolbox the synthesizers are built on:
//! parsing, distances, non-cut vertices, Steiner trees, and balanced
//! connected 2-partitions with their removed routing lanes.
//!
//! ```text
//! cargo run --release --example graph_tools -- [graph]
//! cargo run --release --example graph_tools -- grid:4x3
//! ```

use permsynth::topology::partition_graph;
use permsynth::CouplingGraph;

fn main() {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "grid:4x3".to_string());
    let g = CouplingGraph::parse(&spec).expect("valid graph spec");
    println!("{spec}: {} vertices, {} edges", g.n(), g.edges().len());
    println!("edges: {:?}", g.edges());

    let far = (0..g.n())
        .flat_map(|a| (0..g.n()).map(move |b| (a, b)))
        .max_by_key(|&(a, b)| g.distance(a, b).unwrap())
        .unwrap();
    println!(
        "diameter: {} (between {} and {}, path {:?})",
        g.distance(far.0, far.1).unwrap(),
        far.0,
        far.1,
        g.shortest_path(far.0, far.1).unwrap()
    );

    println!("non-cut vertices: {:?}", g.non_cut_vertices());

    let terminals: Vec<usize> = vec![0, g.n() / 2, g.n() - 1];
    let tree = g.steiner_tree(&terminals).unwrap();
    println!("steiner tree over {terminals:?}: {tree:?}");

    println!("\nbalanced connected 2-partitions (up to 4):");
    for (i, part) in partition_graph(&g, 4).iter().enumerate() {
        println!(
            "  #{i}: left {:?} | right {:?}, lanes {:?}",
            part.left, part.right, part.removed_edges
        );
    }
}
