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

//! Reference algorithms: odd-even transposition sort on paths and a BFS
//! brute-force oracle for exact small-instance optima. The oracle is kept
//! deliberately independent of the SAT path it cross-checks.

use std::collections::HashMap;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Permutation};
use crate::topology::CouplingGraph;
use crate::{GateKind, Objective};

/// Odd-even transposition sort on a path: alternating layers of adjacent
/// compare-swaps, at most n layers, SWAP-only.
pub fn odd_even_sort(g: &CouplingGraph, p: &Permutation) -> Result<Circuit> {
    let n = g.n();
    if !g.is_path() || g.edges() != (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(
            "odd-even sort requires the path topology with consecutive labels".into(),
        ));
    }
    if p.len() != n {
        return Err(Error::DimensionMismatch(p.len(), n));
    }
    let mut occupant: Vec<usize> = (0..n).collect();
    let mut circuit = Circuit::empty(n);
    for round in 0..n {
        if occupant.iter().enumerate().all(|(x, &t)| p.dest(t) == x) {
            break;
        }
        let start = round % 2; // even rounds compare (0,1),(2,3),...
        let mut i = start;
        while i + 1 < n {
            if p.dest(occupant[i]) > p.dest(occupant[i + 1]) {
                occupant.swap(i, i + 1);
                circuit.push(Gate::swap(i, i + 1));
            }
            i += 2;
        }
    }
    Ok(circuit)
}

const MAX_CNOT_ORACLE_N: usize = 4;
const MAX_SWAP_ORACLE_N: usize = 6;

/// Bit key of a matrix state (row-major), valid for n <= 8.
pub fn matrix_key(m: &Gf2Matrix) -> u64 {
    let n = m.n();
    debug_assert!(n * n <= 64);
    let mut key = 0u64;
    for i in 0..n {
        for k in 0..n {
            if m.get(i, k) {
                key |= 1 << (i * n + k);
            }
        }
    }
    key
}

fn occupant_key(occ: &[usize]) -> u64 {
    let mut key = 0u64;
    for (i, &t) in occ.iter().enumerate() {
        key |= (t as u64) << (4 * i);
    }
    key
}

/// All non-empty vertex-disjoint gate sets; for CNOT both orientations of
/// each edge are enumerated.
fn layer_moves(g: &CouplingGraph, kind: GateKind) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let mut layers = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();
    fn recurse(
        edges: &[(usize, usize)],
        idx: usize,
        used: u64,
        kind: GateKind,
        current: &mut Vec<(usize, usize)>,
        layers: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if idx == edges.len() {
            if !current.is_empty() {
                layers.push(current.clone());
            }
            return;
        }
        let (a, b) = edges[idx];
        // skip this edge
        recurse(edges, idx + 1, used, kind, current, layers);
        if used & (1 << a) == 0 && used & (1 << b) == 0 {
            let used2 = used | (1 << a) | (1 << b);
            match kind {
                GateKind::Swap => {
                    current.push((a, b));
                    recurse(edges, idx + 1, used2, kind, current, layers);
                    current.pop();
                }
                GateKind::Cnot => {
                    for (c, t) in [(a, b), (b, a)] {
                        current.push((c, t));
                        recurse(edges, idx + 1, used2, kind, current, layers);
                        current.pop();
                    }
                }
            }
        }
    }
    recurse(edges, 0, 0, kind, &mut current, &mut layers);
    layers
}

/// Distances (gate count or layer count) from the identity to every
/// reachable state, over on-graph CNOTs acting on GF(2) matrices. Keys are
/// [`matrix_key`] values.
pub fn bfs_cnot_distances(g: &CouplingGraph, objective: Objective) -> Result<HashMap<u64, u32>> {
    let n = g.n();
    if n > MAX_CNOT_ORACLE_N {
        return Err(Error::StateSpaceTooLarge(n));
    }
    let moves: Vec<Vec<(usize, usize)>> = match objective {
        Objective::Size => g
            .edges()
            .iter()
            .flat_map(|&(a, b)| [vec![(a, b)], vec![(b, a)]])
            .collect(),
        Objective::Depth => layer_moves(g, GateKind::Cnot),
    };
    let start = Gf2Matrix::identity(n);
    let mut dist: HashMap<u64, u32> = HashMap::new();
    dist.insert(matrix_key(&start), 0);
    let mut frontier = vec![start];
    let mut d = 0u32;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for m in &frontier {
            for layer in &moves {
                let mut m2 = m.clone();
                for &(c, t) in layer {
                    m2.apply_cnot(c, t)?;
                }
                if let std::collections::hash_map::Entry::Vacant(slot) =
                    dist.entry(matrix_key(&m2))
                {
                    slot.insert(d);
                    next.push(m2);
                }
            }
        }
        frontier = next;
    }
    Ok(dist)
}

/// Distances from the identity placement to every permutation state, over
/// on-graph SWAPs. Keys are occupant packings; use
/// [`swap_state_key_of_permutation`] to look up a target.
pub fn bfs_swap_distances(g: &CouplingGraph, objective: Objective) -> Result<HashMap<u64, u32>> {
    let n = g.n();
    if n > MAX_SWAP_ORACLE_N {
        return Err(Error::StateSpaceTooLarge(n));
    }
    let moves: Vec<Vec<(usize, usize)>> = match objective {
        Objective::Size => g.edges().iter().map(|&e| vec![e]).collect(),
        Objective::Depth => layer_moves(g, GateKind::Swap),
    };
    let start: Vec<usize> = (0..n).collect();
    let mut dist: HashMap<u64, u32> = HashMap::new();
    dist.insert(occupant_key(&start), 0);
    let mut frontier = vec![start];
    let mut d = 0u32;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for occ in &frontier {
            for layer in &moves {
                let mut o2 = occ.clone();
                for &(a, b) in layer {
                    o2.swap(a, b);
                }
                if let std::collections::hash_map::Entry::Vacant(slot) =
                    dist.entry(occupant_key(&o2))
                {
                    slot.insert(d);
                    next.push(o2);
                }
            }
        }
        frontier = next;
    }
    Ok(dist)
}

/// Occupant-state key of the placement realizing `p`: the token starting at
/// `v` sits at `dest[v]`.
pub fn swap_state_key_of_permutation(p: &Permutation) -> u64 {
    let inv = p.inverse();
    occupant_key(inv.as_slice())
}

/// Exact minimum gate count (size) or layer count (depth) to synthesize
/// `target` with on-graph CNOTs. Exhaustive BFS; refuses n > 4.
pub fn bfs_oracle_cnot(
    g: &CouplingGraph,
    target: &Gf2Matrix,
    objective: Objective,
) -> Result<usize> {
    if target.n() != g.n() {
        return Err(Error::DimensionMismatch(target.n(), g.n()));
    }
    if !target.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let dist = bfs_cnot_distances(g, objective)?;
    dist.get(&matrix_key(target))
        .map(|&d| d as usize)
        .ok_or_else(|| Error::SolverInconsistent("target unreachable in CNOT BFS".into()))
}

/// Exact minimum SWAP count (size) or round count (depth) realizing `target`
/// with on-graph SWAPs. Exhaustive BFS; refuses n > 6.
pub fn bfs_oracle_swap(
    g: &CouplingGraph,
    target: &Permutation,
    objective: Objective,
) -> Result<usize> {
    if target.len() != g.n() {
        return Err(Error::DimensionMismatch(target.len(), g.n()));
    }
    let dist = bfs_swap_distances(g, objective)?;
    dist.get(&swap_state_key_of_permutation(target))
        .map(|&d| d as usize)
        .ok_or_else(|| Error::SolverInconsistent("target unreachable in SWAP BFS".into()))
}
