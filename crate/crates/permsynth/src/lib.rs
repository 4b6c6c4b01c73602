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

//! Synthesis of qubit permutations (and general invertible GF(2) linear
//! functions) on limited-connectivity coupling graphs.
//!
//! The crate provides three families of synthesizers plus a compilation
//! pipeline that applies them to permutation blocks inside larger circuits:
//!
//! * **Exact SAT-based synthesis** ([`optimal::exact_synth`]): CNOT- or
//!   SWAP-based circuits with provably minimal size or depth, found by
//!   iterative deepening over an embedded CDCL solver (or an external
//!   DIMACS solver).
//! * **ROWCOL-Hybrid** ([`rowcol::rowcol_synth`]): scalable CNOT-count
//!   optimization by recursive row/column elimination over non-cut
//!   vertices, with elimination-order search and an exact solver on the
//!   last few qubits.
//! * **LR-Synth** ([`lrsynth::lr_synth`]): scalable SWAP-depth optimization
//!   by divide and conquer: route tokens to the correct half of a balanced
//!   connected 2-partition with weighted matchings, then recurse on the
//!   halves in parallel.
//!
//! Every synthesizer's output is checked against the same ground-truth
//! oracle, [`circuit::Circuit::verify`].
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod baselines;
pub mod circuit;
pub mod cli;
pub mod compile;
pub mod error;
pub mod gf2;
pub mod lrsynth;
pub mod optimal;
pub mod rowcol;
pub mod sat;
pub mod topology;

pub use circuit::{Circuit, Gate, VerifyOutcome};
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Permutation};
pub use optimal::SynthesisResult;
pub use topology::{partition_graph, CouplingGraph, Partition};

use serde::{Deserialize, Serialize};

/// Primitive gate family a synthesizer emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Cnot,
    Swap,
}

/// Cost function being minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Size,
    Depth,
}

impl std::fmt::Display for GateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateKind::Cnot => write!(f, "cnot"),
            GateKind::Swap => write!(f, "swap"),
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::Size => write!(f, "size"),
            Objective::Depth => write!(f, "depth"),
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "size" => Ok(Objective::Size),
            "depth" => Ok(Objective::Depth),
            other => Err(Error::InvalidInput(format!("unknown objective `{other}`"))),
        }
    }
}

/// One of the synthesis methods this crate offers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynthMethod {
    CnotOpt,
    SwapOpt,
    Rowcol,
    RowcolHybrid,
    LrSynth,
    LrSynthHybrid,
    OddEven,
}

impl SynthMethod {
    pub const ALL: [SynthMethod; 7] = [
        SynthMethod::CnotOpt,
        SynthMethod::SwapOpt,
        SynthMethod::Rowcol,
        SynthMethod::RowcolHybrid,
        SynthMethod::LrSynth,
        SynthMethod::LrSynthHybrid,
        SynthMethod::OddEven,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SynthMethod::CnotOpt => "cnot-opt",
            SynthMethod::SwapOpt => "swap-opt",
            SynthMethod::Rowcol => "rowcol",
            SynthMethod::RowcolHybrid => "rowcol-hybrid",
            SynthMethod::LrSynth => "lr-synth",
            SynthMethod::LrSynthHybrid => "lr-synth-hybrid",
            SynthMethod::OddEven => "odd-even",
        }
    }
}

impl std::fmt::Display for SynthMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SynthMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SynthMethod::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method `{s}`")))
    }
}

/// Shared knobs for [`synthesize`].
#[derive(Debug, Clone)]
pub struct MethodOptions {
    pub exact: optimal::ExactOptions,
    /// Elimination-order search for the ROWCOL methods.
    pub rowcol_order: rowcol::OrderStrategy,
    /// Residual size where ROWCOL-Hybrid switches to the exact solver.
    pub rowcol_threshold: usize,
    /// Partition samples per LR-Synth level (`None` = default rule).
    pub lr_samples: Option<usize>,
    /// Half size where LR-Synth-Hybrid switches to the exact solver.
    pub lr_threshold: usize,
}

impl Default for MethodOptions {
    fn default() -> Self {
        MethodOptions {
            exact: optimal::ExactOptions::default(),
            rowcol_order: rowcol::OrderStrategy::Sample { k: 5, seed: 0 },
            rowcol_threshold: 4,
            lr_samples: None,
            lr_threshold: 8,
        }
    }
}

/// Synthesize a permutation with the chosen method. The objective selects
/// the cost function for the exact methods; the heuristics keep their own
/// native objective (ROWCOL: size, LR-Synth: depth).
pub fn synthesize(
    g: &CouplingGraph,
    p: &Permutation,
    method: SynthMethod,
    objective: Objective,
    opts: &MethodOptions,
) -> Result<SynthesisResult> {
    match method {
        SynthMethod::CnotOpt => optimal::exact_synth(
            g,
            optimal::ExactTarget::Perm(p),
            GateKind::Cnot,
            objective,
            &opts.exact,
        ),
        SynthMethod::SwapOpt => optimal::exact_synth(
            g,
            optimal::ExactTarget::Perm(p),
            GateKind::Swap,
            objective,
            &opts.exact,
        ),
        SynthMethod::Rowcol | SynthMethod::RowcolHybrid => {
            let threshold = if method == SynthMethod::Rowcol {
                1
            } else {
                opts.rowcol_threshold
            };
            rowcol::rowcol_synth(
                g,
                &Gf2Matrix::from_permutation(p),
                &rowcol::RowcolOptions {
                    strategy: opts.rowcol_order.clone(),
                    hybrid_threshold: threshold,
                    exact: opts.exact.clone(),
                },
            )
        }
        SynthMethod::LrSynth | SynthMethod::LrSynthHybrid => {
            let threshold = if method == SynthMethod::LrSynth {
                1
            } else {
                opts.lr_threshold
            };
            lrsynth::lr_synth(
                g,
                p,
                &lrsynth::LrOptions {
                    samples: opts.lr_samples,
                    hybrid_threshold: threshold,
                    exact: opts.exact.clone(),
                    iteration_cap_factor: 4,
                },
            )
        }
        SynthMethod::OddEven => {
            let started = std::time::Instant::now();
            let circuit = baselines::odd_even_sort(g, p)?;
            let optimum = match objective {
                Objective::Size => circuit.size(),
                Objective::Depth => circuit.depth(),
            };
            Ok(SynthesisResult {
                circuit,
                method: "odd-even".to_string(),
                objective,
                optimum,
                queries: Vec::new(),
                wall_time: started.elapsed(),
                flags: Vec::new(),
            })
        }
    }
}
