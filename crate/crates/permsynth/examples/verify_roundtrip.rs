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

//! The ground-truth verification oracle and the circuit JSON round trip.
//!
//! Builds a circuit, serializes it, reads it back, and checks it against
//! the coupling graph and the target permutation; then demonstrates the two
//! failure diagnostics (off-graph gate, wrong function) and the SWAP to
//! CNOT conversion identity.
//!
//! ```text
//! cargo run --release --example verify_roundtrip
//! ```

use permsynth::lrsynth::{lr_synth, LrOptions};
use permsynth::{Circuit, CouplingGraph, Gate, Gf2Matrix, Permutation, VerifyOutcome};

fn main() {
    let g = CouplingGraph::grid(3, 2).unwrap();
    let p = Permutation::parse("5,4,3,2,1,0").unwrap();
    let r = lr_synth(&g, &p, &LrOptions::default()).unwrap();
    println!("synthesized {} swaps for {p} on grid:3x2", r.circuit.size());

    let json = r.circuit.to_json().unwrap();
    println!("\ncircuit JSON:\n{json}\n");
    let restored = Circuit::from_json(&json).unwrap();
    assert_eq!(restored, r.circuit);
    assert!(restored.verify_permutation(&g, &p).passed());
    println!("round trip verified against the target permutation");

    // Convert SWAPs to the 3-CNOT pattern; the accumulated matrix is
    // bit-identical.
    let cnots = restored.to_cnots().unwrap();
    assert_eq!(
        cnots.accumulated_matrix().unwrap(),
        restored.accumulated_matrix().unwrap()
    );
    println!(
        "CNOT expansion: {} swaps -> {} CNOTs (depth {} -> {})",
        restored.size(),
        cnots.size(),
        restored.depth(),
        cnots.depth()
    );

    // Failure diagnostics.
    let off_graph = Circuit::from_gates(6, vec![Gate::cnot(0, 5)]);
    println!(
        "\noff-graph gate diagnostic: {:?}",
        off_graph.verify(&g, &Gf2Matrix::identity(6))
    );
    let mut corrupted = restored.clone();
    corrupted.gates.pop();
    let outcome = corrupted.verify_permutation(&g, &p);
    assert_eq!(outcome, VerifyOutcome::WrongFunction);
    println!("dropped-gate diagnostic: {outcome:?}");
}
