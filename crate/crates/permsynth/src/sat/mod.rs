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

//! CNF construction for the circuit-synthesis encodings and a
//! satisfiability backend interface: an embedded CDCL solver plus DIMACS
//! export for external SAT-competition-format solvers.

mod cdcl;
mod dimacs;
mod encode;

pub use cdcl::Cdcl;
pub use dimacs::{parse_solver_output, solve_external, write_dimacs};
pub use encode::{decode, encode_cnot, encode_cnot_plain, encode_swap, encode_swap_plain, VarMap};

use std::path::PathBuf;
use std::time::Duration;

use crate::error::{Error, Result};

/// Environment variable naming an external SAT solver binary. The solver is
/// invoked with the DIMACS path as its single argument and must print
/// `s SATISFIABLE`/`s UNSATISFIABLE` plus `v` value lines.
pub const SOLVER_ENV_VAR: &str = "PERMSYNTH_SAT_SOLVER";

/// CNF in DIMACS conventions: variables are dense 1-based ids, literals are
/// signed non-zero integers.
#[derive(Debug, Clone, Default)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula { num_vars, clauses: Vec::new() }
    }

    /// Add a clause. Empty clauses are rejected at construction; literals
    /// must reference allocated variables.
    pub fn add_clause(&mut self, lits: impl Into<Vec<i32>>) {
        let lits = lits.into();
        assert!(!lits.is_empty(), "empty clause at construction");
        debug_assert!(lits
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars));
        self.clauses.push(lits);
    }

    /// Re-evaluate a total assignment; `model[v]` is the value of variable
    /// `v` (index 0 unused).
    pub fn eval(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&l| model[l.unsigned_abs() as usize] == (l > 0))
        })
    }
}

/// Where a query runs.
#[derive(Debug, Clone)]
pub enum Backend {
    /// In-process CDCL solver; deterministic for a fixed seed.
    Embedded { seed: u64 },
    /// Subprocess speaking the SAT-competition output format.
    External { solver: PathBuf },
}

impl Backend {
    /// External solver from `PERMSYNTH_SAT_SOLVER` when set, otherwise the
    /// embedded solver with seed 0.
    pub fn from_env() -> Backend {
        match std::env::var_os(SOLVER_ENV_VAR) {
            Some(path) if !path.is_empty() => Backend::External { solver: path.into() },
            _ => Backend::Embedded { seed: 0 },
        }
    }
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Embedded { seed: 0 }
    }
}

/// Outcome of one satisfiability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Total assignment indexed by variable id (index 0 unused).
    Sat(Vec<bool>),
    Unsat,
    Timeout,
}

/// Run one query. Every SAT model is re-evaluated against all clauses
/// before being returned.
pub fn solve(
    formula: &CnfFormula,
    backend: &Backend,
    time_limit: Option<Duration>,
) -> Result<SolveOutcome> {
    let outcome = match backend {
        Backend::Embedded { seed } => {
            let mut solver = Cdcl::new(formula.num_vars, *seed);
            let mut ok = true;
            for clause in &formula.clauses {
                if !solver.add_clause(clause) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                SolveOutcome::Unsat
            } else {
                solver.solve(time_limit)
            }
        }
        Backend::External { solver } => solve_external(formula, solver, time_limit)?,
    };
    if let SolveOutcome::Sat(model) = &outcome {
        if model.len() != formula.num_vars + 1 {
            return Err(Error::SolverInconsistent(format!(
                "model has {} entries for {} variables",
                model.len(),
                formula.num_vars
            )));
        }
        if !formula.eval(model) {
            return Err(Error::SolverInconsistent(
                "model does not satisfy every clause".into(),
            ));
        }
    }
    Ok(outcome)
}
