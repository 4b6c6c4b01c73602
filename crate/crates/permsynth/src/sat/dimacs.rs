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

//! DIMACS CNF export and the external-solver backend. The external solver
//! is invoked with the CNF path as its single argument and must emit the
//! standard SAT-competition format: an `s SATISFIABLE`/`s UNSATISFIABLE`
//! status line and `v` value lines.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

use super::{CnfFormula, SolveOutcome};

/// Write the formula as DIMACS CNF: `p cnf <nvars> <nclauses>` header, one
/// zero-terminated clause per line, LF endings.
pub fn write_dimacs(formula: &CnfFormula, w: &mut impl Write) -> Result<()> {
    writeln!(w, "p cnf {} {}", formula.num_vars, formula.clauses.len())?;
    let mut line = String::new();
    for clause in &formula.clauses {
        line.clear();
        for &lit in clause {
            line.push_str(&lit.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Parse SAT-competition output: the `s` status line and, for SAT, the `v`
/// value lines (unlisted variables default to false).
pub fn parse_solver_output(output: &str, num_vars: usize) -> Result<SolveOutcome> {
    let mut status: Option<&str> = None;
    let mut model = vec![false; num_vars + 1];
    for line in output.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim());
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| Error::ExternalSolver(format!("bad value token `{tok}`")))?;
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var <= num_vars {
                    model[var] = lit > 0;
                }
            }
        }
    }
    match status {
        Some("SATISFIABLE") => Ok(SolveOutcome::Sat(model)),
        Some("UNSATISFIABLE") => Ok(SolveOutcome::Unsat),
        Some("UNKNOWN") => Ok(SolveOutcome::Timeout),
        Some(other) => Err(Error::ExternalSolver(format!("unknown status `{other}`"))),
        None => Err(Error::ExternalSolver("no `s` status line in output".into())),
    }
}

static QUERY_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Run one query through an external solver binary.
pub fn solve_external(
    formula: &CnfFormula,
    solver: &Path,
    time_limit: Option<Duration>,
) -> Result<SolveOutcome> {
    let tag = QUERY_COUNTER.fetch_add(1, Ordering::Relaxed);
    let dir = std::env::temp_dir();
    let cnf_path = dir.join(format!("permsynth-{}-{tag}.cnf", std::process::id()));
    let out_path = dir.join(format!("permsynth-{}-{tag}.out", std::process::id()));
    {
        let mut file = std::io::BufWriter::new(std::fs::File::create(&cnf_path)?);
        write_dimacs(formula, &mut file)?;
    }
    let stdout_file = std::fs::File::create(&out_path)?;
    let mut child = Command::new(solver)
        .arg(&cnf_path)
        .stdout(Stdio::from(stdout_file))
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| Error::ExternalSolver(format!("failed to spawn {}: {e}", solver.display())))?;

    let deadline = time_limit.map(|d| Instant::now() + d);
    let timed_out = loop {
        match child.try_wait()? {
            Some(_) => break false,
            None => {
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    let _ = child.kill();
                    let _ = child.wait();
                    break true;
                }
                std::thread::sleep(Duration::from_millis(5));
            }
        }
    };
    let result = if timed_out {
        Ok(SolveOutcome::Timeout)
    } else {
        let text = std::fs::read_to_string(&out_path)?;
        parse_solver_output(&text, formula.num_vars)
    };
    let _ = std::fs::remove_file(&cnf_path);
    let _ = std::fs::remove_file(&out_path);
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_format() {
        let mut f = CnfFormula::new(3);
        f.add_clause([1, -2]);
        f.add_clause([3]);
        let mut buf = Vec::new();
        write_dimacs(&f, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "p cnf 3 2\n1 -2 0\n3 0\n");
    }

    #[test]
    fn parses_sat_output() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2 3 0\n";
        match parse_solver_output(out, 3).unwrap() {
            SolveOutcome::Sat(m) => assert_eq!(m[1..], [true, false, true]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n", 2).unwrap(),
            SolveOutcome::Unsat
        );
        assert!(parse_solver_output("c nothing\n", 2).is_err());
    }

    #[test]
    fn external_backend_via_stub_script() {
        // A stub solver that answers SAT with an all-true model.
        let dir = std::env::temp_dir();
        let script = dir.join(format!("permsynth-stub-{}.sh", std::process::id()));
        std::fs::write(
            &script,
            "#!/bin/sh\necho 's SATISFIABLE'\necho 'v 1 2 0'\n",
        )
        .unwrap();
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();
        }
        let mut f = CnfFormula::new(2);
        f.add_clause([1, 2]);
        let got = solve_external(&f, &script, Some(Duration::from_secs(10))).unwrap();
        match got {
            SolveOutcome::Sat(m) => assert!(m[1] && m[2]),
            other => panic!("unexpected {other:?}"),
        }
        let _ = std::fs::remove_file(&script);
    }
}
