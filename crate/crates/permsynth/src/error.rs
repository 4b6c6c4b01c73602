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

use thiserror::Error;

/// Errors shared across the synthesis toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph spec: {0}")]
    GraphParse(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("matrix is not invertible over GF(2)")]
    NotInvertible,

    #[error("destination table is not a bijection")]
    NotBijective,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("control and target must differ (got {0})")]
    ControlEqualsTarget(usize),

    #[error("vertex {0} is a cut vertex and cannot be eliminated")]
    CutVertex(usize),

    #[error("circuit contains a gate unsupported by this operation: {0}")]
    UnsupportedGate(&'static str),

    #[error("embedding is not injective or maps out of range")]
    BadEmbedding,

    #[error("solver produced an inconsistent model: {0}")]
    SolverInconsistent(String),

    #[error("external solver failed: {0}")]
    ExternalSolver(String),

    #[error("synthesis timed out; every bound below {refuted_below} is refuted")]
    SynthTimeout { refuted_below: usize },

    #[error("state space too large for exhaustive search (n = {0})")]
    StateSpaceTooLarge(usize),

    #[error("variable budget exceeded ({0} variables requested)")]
    VariableBudget(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
