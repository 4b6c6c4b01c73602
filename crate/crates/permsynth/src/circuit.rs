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

//! Circuit intermediate representation: gate lists, size/depth accounting,
//! SWAP to CNOT conversion, and the ground-truth verification oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Permutation};
use crate::topology::CouplingGraph;

/// A gate on named physical qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    Cnot {
        qubits: [usize; 2], // [control, target]
    },
    Swap {
        qubits: [usize; 2],
    },
    /// Opaque two-qubit unitary; `mirrored` records an absorbed SWAP.
    U2 {
        qubits: [usize; 2],
        id: u64,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        mirrored: bool,
    },
    /// Permutation block over `qubits`; `perm` is local to the listed
    /// qubits (position i moves to position `perm[i]` within `qubits`).
    /// `original_swaps` records the swap network the block replaced.
    Perm {
        qubits: Vec<usize>,
        perm: Vec<usize>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        original_swaps: Vec<(usize, usize)>,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { qubits: [control, target] }
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::Swap { qubits: [a, b] }
    }

    /// The touched qubits.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Cnot { qubits } | Gate::Swap { qubits } | Gate::U2 { qubits, .. } => {
                qubits.to_vec()
            }
            Gate::Perm { qubits, .. } => qubits.clone(),
        }
    }

    /// The two-qubit pair for CNOT/SWAP/U2 gates.
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self {
            Gate::Cnot { qubits } | Gate::Swap { qubits } | Gate::U2 { qubits, .. } => {
                Some((qubits[0], qubits[1]))
            }
            Gate::Perm { .. } => None,
        }
    }
}

/// Ordered gate list on `n` qubits. Size is the gate count; depth is the
/// greedy ASAP layer count (a gate enters the earliest layer after the last
/// layer touching any of its qubits).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
}

/// Outcome of the verification oracle, with a diagnostic reason on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Pass,
    /// Gate at this index acts on a vertex pair that is not a graph edge.
    OffGraphGate(usize),
    /// On-graph but the accumulated matrix differs from the target.
    WrongFunction,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, VerifyOutcome::Pass)
    }
}

impl Circuit {
    pub fn empty(n: usize) -> Circuit {
        Circuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit { n, gates }
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    /// ASAP layering count; 0 for the empty circuit. Every gate, opaque
    /// unitaries and permutation blocks included, occupies one layer slot on
    /// each of its qubits.
    pub fn depth(&self) -> usize {
        let mut last = vec![0usize; self.n]; // layers are 1-based here
        let mut depth = 0;
        for gate in &self.gates {
            let layer = gate.qubits().iter().map(|&q| last[q]).max().unwrap_or(0) + 1;
            for q in gate.qubits() {
                last[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// Replace each SWAP(a, b) in place with CNOT(a,b); CNOT(b,a);
    /// CNOT(a,b). Only CNOT/SWAP circuits are convertible.
    pub fn to_cnots(&self) -> Result<Circuit> {
        let mut gates = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            match gate {
                Gate::Cnot { .. } => gates.push(gate.clone()),
                Gate::Swap { qubits: [a, b] } => {
                    gates.push(Gate::cnot(*a, *b));
                    gates.push(Gate::cnot(*b, *a));
                    gates.push(Gate::cnot(*a, *b));
                }
                Gate::U2 { .. } => return Err(Error::UnsupportedGate("u2")),
                Gate::Perm { .. } => return Err(Error::UnsupportedGate("perm")),
            }
        }
        Ok(Circuit { n: self.n, gates })
    }

    /// Accumulate the gates in temporal order onto the identity (CNOT: row
    /// XOR, SWAP: row exchange). Only CNOT/SWAP circuits have a matrix.
    pub fn accumulated_matrix(&self) -> Result<Gf2Matrix> {
        let mut m = Gf2Matrix::identity(self.n);
        for gate in &self.gates {
            match gate {
                Gate::Cnot { qubits: [c, t] } => m.apply_cnot(*c, *t)?,
                Gate::Swap { qubits: [a, b] } => {
                    if *a >= self.n || *b >= self.n {
                        return Err(Error::VertexOutOfRange {
                            vertex: *a.max(b),
                            n: self.n,
                        });
                    }
                    if a == b {
                        return Err(Error::ControlEqualsTarget(*a));
                    }
                    m.swap_rows(*a, *b);
                }
                Gate::U2 { .. } => return Err(Error::UnsupportedGate("u2")),
                Gate::Perm { .. } => return Err(Error::UnsupportedGate("perm")),
            }
        }
        Ok(m)
    }

    /// Ground-truth oracle: true iff every gate pair is an edge of `g` and
    /// the accumulated matrix equals `target`.
    pub fn verify(&self, g: &CouplingGraph, target: &Gf2Matrix) -> VerifyOutcome {
        for (i, gate) in self.gates.iter().enumerate() {
            match gate.pair() {
                Some((a, b)) if a < g.n() && b < g.n() && g.has_edge(a, b) => {}
                _ => return VerifyOutcome::OffGraphGate(i),
            }
        }
        match self.accumulated_matrix() {
            Ok(m) if m == *target => VerifyOutcome::Pass,
            _ => VerifyOutcome::WrongFunction,
        }
    }

    /// Convenience wrapper for permutation targets.
    pub fn verify_permutation(&self, g: &CouplingGraph, p: &Permutation) -> VerifyOutcome {
        self.verify(g, &Gf2Matrix::from_permutation(p))
    }

    /// Concatenated gate list; qubit counts must match.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit { n: self.n, gates })
    }

    /// Relabel every gate's qubits through `embedding` (local label i maps
    /// to `embedding[i]`) onto a circuit of `n` qubits.
    pub fn remap(&self, embedding: &[usize], n: usize) -> Result<Circuit> {
        if embedding.len() < self.n {
            return Err(Error::BadEmbedding);
        }
        let used = &embedding[..self.n];
        let mut seen = vec![false; n];
        for &e in used {
            if e >= n || seen[e] {
                return Err(Error::BadEmbedding);
            }
            seen[e] = true;
        }
        let map = |q: usize| embedding[q];
        let gates = self
            .gates
            .iter()
            .map(|gate| match gate {
                Gate::Cnot { qubits: [c, t] } => Gate::cnot(map(*c), map(*t)),
                Gate::Swap { qubits: [a, b] } => Gate::swap(map(*a), map(*b)),
                Gate::U2 { qubits: [a, b], id, mirrored } => Gate::U2 {
                    qubits: [map(*a), map(*b)],
                    id: *id,
                    mirrored: *mirrored,
                },
                Gate::Perm { qubits, perm, original_swaps } => Gate::Perm {
                    qubits: qubits.iter().map(|&q| map(q)).collect(),
                    perm: perm.clone(),
                    original_swaps: original_swaps.iter().map(|&(a, b)| (map(a), map(b))).collect(),
                },
            })
            .collect();
        Ok(Circuit { n, gates })
    }

    /// Size after SWAP expansion (CNOT count); only for CNOT/SWAP circuits.
    pub fn cnot_equivalent_size(&self) -> Result<usize> {
        Ok(self.to_cnots()?.size())
    }

    pub fn cnot_equivalent_depth(&self) -> Result<usize> {
        Ok(self.to_cnots()?.depth())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        Ok(serde_json::from_str(text)?)
    }
}
