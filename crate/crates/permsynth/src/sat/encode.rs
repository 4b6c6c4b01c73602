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

//! CNF encodings of bounded circuit synthesis. A query asks: is there a
//! circuit on the coupling graph with at most `depth` layers (depth
//! objective) or exactly `depth` gates laid one per layer (size objective)
//! that maps the identity to the target?
//!
//! Matrix variables track every state entry per layer; gate variables mark
//! which gate fires between consecutive layers. Four clause families
//! constrain the transitions:
//!
//! * C1 — every non-final layer has at least one gate (depth objective).
//! * C2 — each qubit is involved in at most one gate per layer. The "at
//!   most" is deliberate: exactly-one would forbid idle qubits.
//! * C3 — a firing gate rewrites its target row (XOR of the control row for
//!   CNOT, row exchange for SWAP).
//! * C4 — a row entry that changes between layers implies a gate targeting
//!   that row, which also pins unchanged rows in place.
//!
//! For the size objective C1/C2 are replaced by exactly-one gate per layer.
//!
//! Boundary layers are fixed by unit clauses (layer 0 = identity, layer D =
//! target) and those constants are substituted into C1-C4 at build time to
//! keep the formulas small.

use std::collections::HashMap;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Permutation};
use crate::topology::CouplingGraph;
use crate::{GateKind, Objective};

use super::CnfFormula;

const VARIABLE_BUDGET: usize = 8_000_000;

/// Dense 1-based variable ids for one bounded-synthesis query.
///
/// Matrix variable `(d, i, k)` tracks state entry `(i, k)` at layer `d`
/// (`0..=depth`); gate variable `(d, pair)` marks a gate firing between
/// layers `d` and `d+1`. For CNOT both orientations of each edge get a
/// variable; for SWAP one per edge.
#[derive(Debug, Clone)]
pub struct VarMap {
    n: usize,
    depth: usize,
    kind: GateKind,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    num_vars: usize,
}

impl VarMap {
    fn new(g: &CouplingGraph, depth: usize, kind: GateKind) -> Result<VarMap> {
        let n = g.n();
        let pairs: Vec<(usize, usize)> = match kind {
            GateKind::Cnot => g
                .edges()
                .iter()
                .flat_map(|&(a, b)| [(a, b), (b, a)])
                .collect(),
            GateKind::Swap => g.edges().to_vec(),
        };
        let num_vars = (depth + 1) * n * n + depth * pairs.len();
        if num_vars > VARIABLE_BUDGET {
            return Err(Error::VariableBudget(num_vars));
        }
        let pair_index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Ok(VarMap { n, depth, kind, pairs, pair_index, num_vars })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Variable id of state entry `(i, k)` at layer `d`.
    pub fn matrix_var(&self, d: usize, i: usize, k: usize) -> i32 {
        debug_assert!(d <= self.depth && i < self.n && k < self.n);
        (d * self.n * self.n + i * self.n + k + 1) as i32
    }

    /// Variable id of the gate on `pair` between layers `d` and `d+1`. For
    /// CNOT the pair is directed `(control, target)`.
    pub fn gate_var(&self, d: usize, pair: (usize, usize)) -> i32 {
        debug_assert!(d < self.depth);
        let idx = self.pair_index[&pair];
        ((self.depth + 1) * self.n * self.n + d * self.pairs.len() + idx + 1) as i32
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Constant value of a matrix variable pinned by the boundary layers.
fn boundary_const(vm: &VarMap, target: &Gf2Matrix, var: i32) -> Option<bool> {
    let v = var as usize - 1;
    let nn = vm.n * vm.n;
    if v < nn {
        // layer 0 = identity
        let (i, k) = ((v % nn) / vm.n, v % vm.n);
        return Some(i == k);
    }
    if v >= vm.depth * nn && v < (vm.depth + 1) * nn {
        let r = v - vm.depth * nn;
        return Some(target.get(r / vm.n, r % vm.n));
    }
    None
}

/// Add a clause with boundary constants substituted: satisfied clauses are
/// dropped, false literals removed. Never produces an empty clause because
/// every filtered clause keeps at least one gate literal.
fn add_filtered(f: &mut CnfFormula, vm: &VarMap, target: &Gf2Matrix, lits: &[i32]) {
    let mut out = Vec::with_capacity(lits.len());
    for &l in lits {
        match boundary_const(vm, target, l.abs()) {
            Some(value) => {
                if value == (l > 0) {
                    return; // clause satisfied
                }
            }
            None => out.push(l),
        }
    }
    debug_assert!(!out.is_empty(), "constant filtering emptied a clause");
    f.add_clause(out);
}

fn encode(
    g: &CouplingGraph,
    target: &Gf2Matrix,
    depth: usize,
    kind: GateKind,
    objective: Objective,
    strengthen: bool,
) -> Result<(CnfFormula, VarMap)> {
    if target.n() != g.n() {
        return Err(Error::DimensionMismatch(target.n(), g.n()));
    }
    if !target.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let vm = VarMap::new(g, depth, kind)?;
    let n = vm.n;
    let mut f = CnfFormula::new(vm.num_vars);

    // Boundary units: layer 0 is the identity, layer D the target. For
    // D = 0 both apply to the same layer; a mismatch yields contradictory
    // units and an immediately unsatisfiable formula.
    for i in 0..n {
        for k in 0..n {
            let v0 = vm.matrix_var(0, i, k);
            f.add_clause([if i == k { v0 } else { -v0 }]);
            let vd = vm.matrix_var(depth, i, k);
            f.add_clause([if target.get(i, k) { vd } else { -vd }]);
        }
    }

    for d in 0..depth {
        let gate_vars: Vec<i32> = vm.pairs.iter().map(|&p| vm.gate_var(d, p)).collect();
        match objective {
            Objective::Depth => {
                // C1: at least one gate per non-final layer.
                f.add_clause(gate_vars.clone());
                // C2: per qubit, at most one incident gate.
                for q in 0..n {
                    let incident: Vec<i32> = vm
                        .pairs
                        .iter()
                        .filter(|&&(a, b)| a == q || b == q)
                        .map(|&p| vm.gate_var(d, p))
                        .collect();
                    for x in 0..incident.len() {
                        for y in x + 1..incident.len() {
                            f.add_clause([-incident[x], -incident[y]]);
                        }
                    }
                }
            }
            Objective::Size => {
                // Exactly one gate per layer: one gate = one unit of size.
                f.add_clause(gate_vars.clone());
                for x in 0..gate_vars.len() {
                    for y in x + 1..gate_vars.len() {
                        f.add_clause([-gate_vars[x], -gate_vars[y]]);
                    }
                }
            }
        }

        // C3: transition semantics per firing gate.
        for &pair in &vm.pairs {
            let gv = vm.gate_var(d, pair);
            match kind {
                GateKind::Cnot => {
                    let (c, t) = pair;
                    for j in 0..n {
                        let a = vm.matrix_var(d, t, j);
                        let b = vm.matrix_var(d, c, j);
                        let next = vm.matrix_var(d + 1, t, j);
                        // next = a XOR b
                        add_filtered(&mut f, &vm, target, &[-gv, -next, a, b]);
                        add_filtered(&mut f, &vm, target, &[-gv, -next, -a, -b]);
                        add_filtered(&mut f, &vm, target, &[-gv, next, -a, b]);
                        add_filtered(&mut f, &vm, target, &[-gv, next, a, -b]);
                    }
                }
                GateKind::Swap => {
                    let (x, y) = pair;
                    for j in 0..n {
                        for (t, s) in [(x, y), (y, x)] {
                            let next = vm.matrix_var(d + 1, t, j);
                            let src = vm.matrix_var(d, s, j);
                            add_filtered(&mut f, &vm, target, &[-gv, -next, src]);
                            add_filtered(&mut f, &vm, target, &[-gv, next, -src]);
                        }
                    }
                }
            }
        }

        // C4: a changed row entry implies an incident gate targeting it
        // (and, contrapositively, rows with no incident gate stay fixed).
        for t in 0..n {
            let targeting: Vec<i32> = vm
                .pairs
                .iter()
                .filter(|&&p| match kind {
                    GateKind::Cnot => p.1 == t,
                    GateKind::Swap => p.0 == t || p.1 == t,
                })
                .map(|&p| vm.gate_var(d, p))
                .collect();
            for j in 0..n {
                let cur = vm.matrix_var(d, t, j);
                let next = vm.matrix_var(d + 1, t, j);
                let mut up = vec![cur, -next];
                up.extend_from_slice(&targeting);
                add_filtered(&mut f, &vm, target, &up);
                let mut down = vec![-cur, next];
                down.extend_from_slice(&targeting);
                add_filtered(&mut f, &vm, target, &down);
            }
        }
    }

    if strengthen {
        add_reachability_clauses(&mut f, &vm, g, target, kind);
    }
    Ok((f, vm))
}

/// Implied constraints that sharpen propagation without changing
/// satisfiability: a row that still differs from its target value must be
/// targeted by a gate in some later layer (and symmetrically, a row that
/// differs from the identity must have been targeted earlier). For SWAP
/// queries, where every state row is a unit vector tracking one token,
/// graph distances additionally pin entries: a token cannot sit farther
/// from its start than the layers elapsed, or farther from its destination
/// than the layers remaining.
fn add_reachability_clauses(
    f: &mut CnfFormula,
    vm: &VarMap,
    g: &CouplingGraph,
    target: &Gf2Matrix,
    kind: GateKind,
) {
    let n = vm.n;
    let depth = vm.depth;
    if depth < 2 {
        return;
    }
    // pairs whose gate targets row t
    let targeting: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|t| {
            vm.pairs
                .iter()
                .copied()
                .filter(|&p| match kind {
                    GateKind::Cnot => p.1 == t,
                    GateKind::Swap => p.0 == t || p.1 == t,
                })
                .collect()
        })
        .collect();

    let dist_from: Vec<Vec<usize>> = (0..n)
        .map(|v| g.distances_within(&vec![true; n], v))
        .collect();
    let token_dest = target.to_permutation();

    for d in 1..depth {
        for i in 0..n {
            let later: Vec<i32> = (d..depth)
                .flat_map(|dl| targeting[i].iter().map(move |&p| (dl, p)))
                .map(|(dl, p)| vm.gate_var(dl, p))
                .collect();
            let earlier: Vec<i32> = (0..d)
                .flat_map(|dl| targeting[i].iter().map(move |&p| (dl, p)))
                .map(|(dl, p)| vm.gate_var(dl, p))
                .collect();
            for j in 0..n {
                let var = vm.matrix_var(d, i, j);
                if kind == GateKind::Swap {
                    if let Some(p) = &token_dest {
                        // Token j sits at row i only when both endpoints of
                        // its journey are still reachable.
                        if dist_from[j][i] > d || dist_from[i][p.dest(j)] > depth - d {
                            f.add_clause([-var]);
                            continue;
                        }
                    }
                }
                // wrong vs target => some later gate targets this row
                let target_lit = if target.get(i, j) { var } else { -var };
                let mut clause = Vec::with_capacity(1 + later.len());
                clause.push(target_lit);
                clause.extend_from_slice(&later);
                f.add_clause(clause);
                // wrong vs identity => some earlier gate targeted this row
                let id_lit = if i == j { var } else { -var };
                let mut clause = Vec::with_capacity(1 + earlier.len());
                clause.push(id_lit);
                clause.extend_from_slice(&earlier);
                f.add_clause(clause);
            }
        }
    }
}

/// Formula satisfiable iff a CNOT circuit on `g` of at most `depth` layers
/// (depth objective) or exactly `depth` gates (size objective) maps the
/// identity to `target`.
pub fn encode_cnot(
    g: &CouplingGraph,
    target: &Gf2Matrix,
    depth: usize,
    objective: Objective,
) -> Result<(CnfFormula, VarMap)> {
    encode(g, target, depth, GateKind::Cnot, objective, true)
}

/// [`encode_cnot`] without the implied reachability clauses: exactly the
/// C1-C4 clause families plus boundaries. Same satisfiability, weaker
/// propagation.
pub fn encode_cnot_plain(
    g: &CouplingGraph,
    target: &Gf2Matrix,
    depth: usize,
    objective: Objective,
) -> Result<(CnfFormula, VarMap)> {
    encode(g, target, depth, GateKind::Cnot, objective, false)
}

/// SWAP variant over permutation targets; the state variables track the
/// permutation matrix and a SWAP exchanges two rows.
pub fn encode_swap(
    g: &CouplingGraph,
    target: &Permutation,
    depth: usize,
    objective: Objective,
) -> Result<(CnfFormula, VarMap)> {
    if target.len() != g.n() {
        return Err(Error::DimensionMismatch(target.len(), g.n()));
    }
    encode(g, &Gf2Matrix::from_permutation(target), depth, GateKind::Swap, objective, true)
}

/// [`encode_swap`] without the implied reachability and token-distance
/// clauses. Same satisfiability, weaker propagation.
pub fn encode_swap_plain(
    g: &CouplingGraph,
    target: &Permutation,
    depth: usize,
    objective: Objective,
) -> Result<(CnfFormula, VarMap)> {
    if target.len() != g.n() {
        return Err(Error::DimensionMismatch(target.len(), g.n()));
    }
    encode(g, &Gf2Matrix::from_permutation(target), depth, GateKind::Swap, objective, false)
}

/// Read a circuit back out of a model: for each layer in ascending order,
/// emit the gates whose variables are true, ordered by (min qubit, max
/// qubit) within the layer.
pub fn decode(model: &[bool], vm: &VarMap) -> Result<Circuit> {
    let mut circuit = Circuit::empty(vm.n);
    for d in 0..vm.depth {
        let mut layer: Vec<(usize, usize)> = vm
            .pairs
            .iter()
            .copied()
            .filter(|&p| model[vm.gate_var(d, p) as usize])
            .collect();
        layer.sort_by_key(|&(a, b)| (a.min(b), a.max(b)));
        let mut used = vec![false; vm.n];
        for &(a, b) in &layer {
            if used[a] || used[b] {
                return Err(Error::SolverInconsistent(format!(
                    "two gates share a qubit in layer {d}"
                )));
            }
            used[a] = true;
            used[b] = true;
            circuit.push(match vm.kind {
                GateKind::Cnot => Gate::cnot(a, b),
                GateKind::Swap => Gate::swap(a, b),
            });
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{bfs_cnot_distances, bfs_swap_distances, matrix_key, swap_state_key_of_permutation};
    use crate::sat::{solve, Backend, SolveOutcome};

    fn query(
        g: &CouplingGraph,
        target: &Gf2Matrix,
        depth: usize,
        kind: GateKind,
        objective: Objective,
    ) -> (SolveOutcome, VarMap) {
        let (f, vm) = encode(g, target, depth, kind, objective, true).unwrap();
        (solve(&f, &Backend::default(), None).unwrap(), vm)
    }

    fn first_sat(
        g: &CouplingGraph,
        target: &Gf2Matrix,
        kind: GateKind,
        objective: Objective,
    ) -> (usize, Circuit) {
        for d in 0.. {
            let (outcome, vm) = query(g, target, d, kind, objective);
            if let SolveOutcome::Sat(model) = outcome {
                return (d, decode(&model, &vm).unwrap());
            }
        }
        unreachable!()
    }

    #[test]
    fn identity_at_depth_zero_is_sat() {
        let g = CouplingGraph::path(3).unwrap();
        let id = Gf2Matrix::identity(3);
        for kind in [GateKind::Cnot, GateKind::Swap] {
            for obj in [Objective::Depth, Objective::Size] {
                let (outcome, vm) = query(&g, &id, 0, kind, obj);
                match outcome {
                    SolveOutcome::Sat(model) => {
                        assert_eq!(decode(&model, &vm).unwrap().size(), 0);
                    }
                    other => panic!("expected SAT, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn non_identity_at_depth_zero_is_unsat() {
        let g = CouplingGraph::path(2).unwrap();
        let target = Gf2Matrix::from_permutation(&Permutation::reversal(2));
        let (outcome, _) = query(&g, &target, 0, GateKind::Cnot, Objective::Depth);
        assert_eq!(outcome, SolveOutcome::Unsat);
    }

    #[test]
    fn transposition_on_path2_needs_depth_3() {
        let g = CouplingGraph::path(2).unwrap();
        let target = Gf2Matrix::from_permutation(&Permutation::reversal(2));
        let (o2, _) = query(&g, &target, 2, GateKind::Cnot, Objective::Depth);
        assert_eq!(o2, SolveOutcome::Unsat);
        let (o3, vm) = query(&g, &target, 3, GateKind::Cnot, Objective::Depth);
        match o3 {
            SolveOutcome::Sat(model) => {
                let c = decode(&model, &vm).unwrap();
                assert_eq!(c.size(), 3);
                assert!(c.verify(&g, &target).passed());
                // The 3-CNOT swap pattern alternates directions.
                let dirs: Vec<(usize, usize)> =
                    c.gates.iter().map(|g| g.pair().unwrap()).collect();
                assert!(dirs == [(0, 1), (1, 0), (0, 1)] || dirs == [(1, 0), (0, 1), (1, 0)]);
            }
            other => panic!("expected SAT, got {other:?}"),
        }
    }

    #[test]
    fn cnot_first_sat_matches_bfs_on_all_3x3() {
        let g = CouplingGraph::path(3).unwrap();
        let size_oracle = bfs_cnot_distances(&g, Objective::Size).unwrap();
        let depth_oracle = bfs_cnot_distances(&g, Objective::Depth).unwrap();
        // All 168 invertible 3x3 matrices, via the oracle's own key set.
        let mut checked = 0;
        for (&key, &size_opt) in &size_oracle {
            let mut m = Gf2Matrix::zero(3);
            for i in 0..3 {
                for k in 0..3 {
                    m.set(i, k, key & (1 << (i * 3 + k)) != 0);
                }
            }
            let depth_opt = depth_oracle[&matrix_key(&m)];
            let (ds, cs) = first_sat(&g, &m, GateKind::Cnot, Objective::Size);
            assert_eq!(ds, size_opt as usize, "size mismatch for {m:?}");
            assert!(cs.verify(&g, &m).passed());
            let (dd, cd) = first_sat(&g, &m, GateKind::Cnot, Objective::Depth);
            assert_eq!(dd, depth_opt as usize, "depth mismatch for {m:?}");
            assert!(cd.verify(&g, &m).passed());
            checked += 1;
        }
        assert_eq!(checked, 168);
    }

    #[test]
    fn swap_encoding_matches_token_swapping_oracle() {
        let g = CouplingGraph::path(3).unwrap();
        let depth_oracle = bfs_swap_distances(&g, Objective::Depth).unwrap();
        let size_oracle = bfs_swap_distances(&g, Objective::Size).unwrap();
        let perms = [
            Permutation::identity(3),
            Permutation::reversal(3),
            Permutation::new(vec![1, 0, 2]).unwrap(),
            Permutation::new(vec![0, 2, 1]).unwrap(),
            Permutation::new(vec![1, 2, 0]).unwrap(),
            Permutation::new(vec![2, 0, 1]).unwrap(),
        ];
        for p in &perms {
            let m = Gf2Matrix::from_permutation(p);
            let key = swap_state_key_of_permutation(p);
            let (d, c) = first_sat(&g, &m, GateKind::Swap, Objective::Depth);
            assert_eq!(d, depth_oracle[&key] as usize, "depth mismatch for {p}");
            assert!(c.verify(&g, &m).passed());
            let (s, _) = first_sat(&g, &m, GateKind::Swap, Objective::Size);
            assert_eq!(s, size_oracle[&key] as usize, "size mismatch for {p}");
        }
        // Reversal on path:3 has minimal depth 3.
        let m = Gf2Matrix::from_permutation(&Permutation::reversal(3));
        assert_eq!(first_sat(&g, &m, GateKind::Swap, Objective::Depth).0, 3);
    }

    #[test]
    fn single_adjacent_transposition_size_one() {
        for n in [3, 5] {
            let g = CouplingGraph::path(n).unwrap();
            let mut dest: Vec<usize> = (0..n).collect();
            dest.swap(1, 2);
            let p = Permutation::new(dest).unwrap();
            let m = Gf2Matrix::from_permutation(&p);
            let (o0, _) = query(&g, &m, 0, GateKind::Swap, Objective::Size);
            assert_eq!(o0, SolveOutcome::Unsat);
            let (s, c) = first_sat(&g, &m, GateKind::Swap, Objective::Size);
            assert_eq!(s, 1);
            assert_eq!(c.gates, vec![Gate::swap(1, 2)]);
        }
    }

    #[test]
    fn decode_rejects_overlapping_gates() {
        // A hand-corrupted model that fires two gates sharing qubit 1 in
        // the same layer must hard-fail.
        let g = CouplingGraph::path(3).unwrap();
        let target = Gf2Matrix::from_permutation(&Permutation::reversal(3));
        let (_, vm) = encode_swap(&g, &Permutation::reversal(3), 3, Objective::Depth).unwrap();
        let mut model = vec![false; vm.num_vars() + 1];
        model[vm.gate_var(0, (0, 1)) as usize] = true;
        model[vm.gate_var(0, (1, 2)) as usize] = true;
        assert!(decode(&model, &vm).is_err());
        let _ = target;
    }

    #[test]
    fn rejects_singular_target() {
        let g = CouplingGraph::path(2).unwrap();
        let m = Gf2Matrix::zero(2);
        assert!(encode_cnot(&g, &m, 1, Objective::Depth).is_err());
    }

    #[test]
    fn no_model_assigns_two_gates_to_one_qubit() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let g = CouplingGraph::ring(4).unwrap();
        for _ in 0..10 {
            let m = Gf2Matrix::random_invertible(4, &mut rng);
            let (d, c) = first_sat(&g, &m, GateKind::Cnot, Objective::Depth);
            // decode() hard-fails if a model packs two gates onto a qubit
            // in one layer; reaching here means every scanned model passed.
            assert!(c.verify(&g, &m).passed());
            assert!(c.depth() <= d);
        }
    }
}
