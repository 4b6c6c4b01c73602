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

//! ROWCOL recursive CNOT synthesis with vertex-elimination-order search and
//! hybridization with the CNOT-size-optimal solver.
//!
//! One elimination turns row `v` and column `v` of the state matrix into
//! the unit vector using only CNOTs on edges of the current residual graph,
//! then drops `v` from the graph. Only non-cut vertices are eligible so the
//! residual stays connected. The elimination order matters for circuit
//! size, so orders can be searched exhaustively or sampled.
//!
//! Column step: walk a 1 into the pivot along a shortest path if needed,
//! build a Steiner tree over the rows carrying a 1 in column `v`, then
//! sweep parent-to-child twice (fill, then clear). Row step: solve over
//! GF(2) for the set of rows whose sum flips row `v` to the unit vector
//! (Gaussian elimination on the residual transpose), build a Steiner tree
//! over that set, then sweep child-to-parent twice so the root accumulates
//! exactly the chosen rows.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::optimal::{ExactOptions, ExactTarget, SynthCache, SynthesisResult};
use crate::topology::CouplingGraph;
use crate::{GateKind, Objective};

/// How elimination orders are chosen.
#[derive(Debug, Clone)]
pub enum OrderStrategy {
    /// One explicit order; every prefix element must be non-cut at its
    /// turn.
    Fixed(Vec<usize>),
    /// Every valid order (down to the hybrid threshold).
    Exhaustive,
    /// `k` uniformly random valid orders.
    Sample { k: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct RowcolOptions {
    pub strategy: OrderStrategy,
    /// Stop eliminating when this many vertices remain and hand the
    /// residual matrix to the exact size solver; 1 disables the hybrid.
    pub hybrid_threshold: usize,
    pub exact: ExactOptions,
}

impl Default for RowcolOptions {
    fn default() -> Self {
        RowcolOptions {
            strategy: OrderStrategy::Sample { k: 5, seed: 0 },
            hybrid_threshold: 4,
            exact: ExactOptions::default(),
        }
    }
}

/// Cap on exhaustively enumerated orders.
const MAX_EXHAUSTIVE_ORDERS: usize = 50_000;

struct TreeSweep {
    /// (parent, child) edges in DFS preorder.
    preorder: Vec<(usize, usize)>,
    /// (parent, child) edges with each child edge before its parent edge.
    postorder: Vec<(usize, usize)>,
}

/// Root the tree at `root` and lay out both sweep orders.
fn rooted_sweeps(edges: &[(usize, usize)], root: usize, n: usize) -> TreeSweep {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut preorder = Vec::with_capacity(edges.len());
    let mut postorder = Vec::with_capacity(edges.len());
    let mut visited = vec![false; n];
    visited[root] = true;
    // (node, parent, next child index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    while let Some(top) = stack.last_mut() {
        let (node, parent, idx) = (top.0, top.1, top.2);
        if idx < adj[node].len() {
            top.2 += 1;
            let child = adj[node][idx];
            if !visited[child] {
                visited[child] = true;
                preorder.push((node, child));
                stack.push((child, node, 0));
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                postorder.push((parent, node));
            }
        }
    }
    TreeSweep { preorder, postorder }
}

/// Eliminate vertex `v`: emitted CNOTs lie on edges of the residual graph
/// (the `alive` vertices of `g`); afterwards row `v` and column `v` of the
/// returned matrix equal the unit vector and the matrix restricted to the
/// remaining vertices is invertible.
pub fn eliminate_vertex(
    m: &Gf2Matrix,
    g: &CouplingGraph,
    alive: &[bool],
    v: usize,
) -> Result<(Vec<(usize, usize)>, Gf2Matrix)> {
    if v >= g.n() || !alive[v] {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if !m.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let mut remaining = alive.to_vec();
    remaining[v] = false;
    let alive_count = alive.iter().filter(|&&a| a).count();
    if alive_count > 1 && !g.connected_within(&remaining) {
        return Err(Error::CutVertex(v));
    }
    let mut m = m.clone();
    let mut ops: Vec<(usize, usize)> = Vec::new();
    let cnot = |m: &mut Gf2Matrix, c: usize, t: usize, ops: &mut Vec<(usize, usize)>| {
        debug_assert!(alive[c] && alive[t]);
        debug_assert!(g.has_edge(c, t));
        m.xor_row_into(c, t);
        ops.push((c, t));
    };

    // Column step: make column v the unit vector.
    if !m.get(v, v) {
        // Closest row carrying a 1 in column v; walk the 1 down to v.
        let dist = g.distances_within(alive, v);
        let source = (0..g.n())
            .filter(|&i| alive[i] && i != v && m.get(i, v))
            .min_by_key(|&i| (dist[i], i))
            .ok_or(Error::NotInvertible)?;
        let path = g.shortest_path_within(alive, source, v)?;
        for w in path.windows(2) {
            let (cur, next) = (w[0], w[1]);
            if !m.get(next, v) {
                cnot(&mut m, cur, next, &mut ops);
            }
        }
        debug_assert!(m.get(v, v));
    }
    let carriers: Vec<usize> = (0..g.n())
        .filter(|&i| alive[i] && i != v && m.get(i, v))
        .collect();
    if !carriers.is_empty() {
        let mut terminals = carriers.clone();
        terminals.push(v);
        let tree = g.steiner_tree_within(alive, &terminals)?;
        let sweep = rooted_sweeps(&tree, v, g.n());
        // Fill: every tree node gets a 1 in column v.
        for &(p, c) in &sweep.preorder {
            if !m.get(c, v) {
                cnot(&mut m, p, c, &mut ops);
            }
        }
        // Clear: children absorb their parent's row, deepest first.
        for &(p, c) in &sweep.postorder {
            cnot(&mut m, p, c, &mut ops);
        }
    }
    debug_assert!((0..g.n()).all(|i| m.get(i, v) == (i == v)));

    // Row step: add the set of rows whose sum equals row v + e_v.
    let live: Vec<usize> = (0..g.n()).filter(|&i| alive[i]).collect();
    let k = live.len();
    let needs_fix = live.iter().any(|&j| m.get(v, j) != (j == v));
    if needs_fix {
        let mut local = vec![usize::MAX; g.n()];
        for (idx, &i) in live.iter().enumerate() {
            local[i] = idx;
        }
        // Solve (residual block)^T x = row_v + e_v.
        let mut at = Gf2Matrix::zero(k);
        for &i in &live {
            for &j in &live {
                at.set(local[j], local[i], m.get(i, j));
            }
        }
        let rhs: Vec<bool> = live.iter().map(|&j| m.get(v, j) ^ (j == v)).collect();
        let x = at.solve(&rhs).ok_or(Error::NotInvertible)?;
        debug_assert!(!x[local[v]], "pivot row cannot appear in its own sum");
        let summands: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&i| i != v && x[local[i]])
            .collect();
        if !summands.is_empty() {
            let mut terminals = summands.clone();
            terminals.push(v);
            let tree = g.steiner_tree_within(alive, &terminals)?;
            let sweep = rooted_sweeps(&tree, v, g.n());
            let mut in_summands = vec![false; g.n()];
            for &s in &summands {
                in_summands[s] = true;
            }
            // Pre-charge Steiner nodes so the upward accumulation cancels
            // their own rows.
            for &(p, c) in &sweep.preorder {
                if !in_summands[c] {
                    cnot(&mut m, c, p, &mut ops);
                }
            }
            // Accumulate children into parents; the root ends with exactly
            // the chosen rows added.
            for &(p, c) in &sweep.postorder {
                cnot(&mut m, c, p, &mut ops);
            }
        }
    }
    debug_assert!((0..g.n()).all(|j| m.get(v, j) == (j == v)));
    debug_assert!((0..g.n()).all(|i| m.get(i, v) == (i == v)));
    Ok((ops, m))
}

/// Valid orders under a strategy, each listing every vertex once; entries
/// beyond the hybrid threshold are filled in ascending label order (they
/// are only eliminated when the residual solver falls back).
fn enumerate_orders(
    g: &CouplingGraph,
    strategy: &OrderStrategy,
    threshold: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let stop_at = threshold.max(1);
    match strategy {
        OrderStrategy::Fixed(order) => {
            let mut seen = vec![false; n];
            if order.len() != n {
                return Err(Error::InvalidInput(format!(
                    "fixed order lists {} of {} vertices",
                    order.len(),
                    n
                )));
            }
            for &v in order {
                if v >= n || seen[v] {
                    return Err(Error::InvalidInput("fixed order is not a permutation".into()));
                }
                seen[v] = true;
            }
            Ok(vec![order.clone()])
        }
        OrderStrategy::Exhaustive => {
            fn recurse(
                g: &CouplingGraph,
                alive: &mut Vec<bool>,
                prefix: &mut Vec<usize>,
                stop_at: usize,
                orders: &mut Vec<Vec<usize>>,
            ) -> Result<()> {
                let remaining = alive.iter().filter(|&&a| a).count();
                if remaining <= stop_at {
                    let mut order = prefix.clone();
                    order.extend((0..g.n()).filter(|&v| alive[v]));
                    orders.push(order);
                    if orders.len() > MAX_EXHAUSTIVE_ORDERS {
                        return Err(Error::InvalidInput(
                            "exhaustive order enumeration too large; use sample:k".into(),
                        ));
                    }
                    return Ok(());
                }
                for v in g.non_cut_vertices_within(alive) {
                    alive[v] = false;
                    prefix.push(v);
                    recurse(g, alive, prefix, stop_at, orders)?;
                    prefix.pop();
                    alive[v] = true;
                }
                Ok(())
            }
            let mut orders = Vec::new();
            let mut alive = vec![true; n];
            let mut prefix = Vec::with_capacity(n);
            recurse(g, &mut alive, &mut prefix, stop_at, &mut orders)?;
            Ok(orders)
        }
        OrderStrategy::Sample { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut orders = Vec::with_capacity(*k);
            for _ in 0..*k {
                let mut alive = vec![true; n];
                let mut order = Vec::with_capacity(n);
                let mut remaining = n;
                while remaining > stop_at {
                    let choices = g.non_cut_vertices_within(&alive);
                    let v = choices[rng.gen_range(0..choices.len())];
                    alive[v] = false;
                    order.push(v);
                    remaining -= 1;
                }
                order.extend((0..n).filter(|&v| alive[v]));
                orders.push(order);
            }
            Ok(orders)
        }
    }
}

/// Run one elimination order to completion.
fn run_order(
    g: &CouplingGraph,
    target: &Gf2Matrix,
    order: &[usize],
    threshold: usize,
    exact: &ExactOptions,
    cache: &SynthCache,
) -> Result<(Circuit, Vec<String>)> {
    let n = g.n();
    let mut m = target.clone();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut ops: Vec<(usize, usize)> = Vec::new();
    let mut flags = Vec::new();
    let mut prefix_circuit = Circuit::empty(n);
    let mut stop_at = threshold.max(1);
    let mut idx = 0;

    loop {
        while remaining > stop_at && idx < order.len() {
            let v = order[idx];
            idx += 1;
            if !alive[v] {
                return Err(Error::InvalidInput("order repeats a vertex".into()));
            }
            let (new_ops, new_m) = eliminate_vertex(&m, g, &alive, v)?;
            ops.extend(new_ops);
            m = new_m;
            alive[v] = false;
            remaining -= 1;
        }
        if remaining <= 1 {
            debug_assert!(m.is_identity());
            break;
        }
        if stop_at == 1 {
            debug_assert!(m.is_identity());
            break;
        }
        // Hand the residual block to the exact CNOT-size solver.
        let live: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let (sub, embedding) = g.induced(&live)?;
        let mut local = vec![usize::MAX; n];
        for (i, &v) in embedding.iter().enumerate() {
            local[v] = i;
        }
        let mut block = Gf2Matrix::zero(live.len());
        for &i in &live {
            for &j in &live {
                block.set(local[i], local[j], m.get(i, j));
            }
        }
        match cache.exact_synth(
            &sub,
            ExactTarget::Matrix(&block),
            GateKind::Cnot,
            Objective::Size,
            exact,
        ) {
            Ok(local_circuit) => {
                prefix_circuit = local_circuit.remap(&embedding, n)?;
                break;
            }
            Err(Error::SynthTimeout { .. }) => {
                // Keep eliminating down to a single vertex instead.
                flags.push(format!(
                    "residual solver timed out at {remaining} vertices; eliminated to completion"
                ));
                stop_at = 1;
            }
            Err(e) => return Err(e),
        }
    }

    // The eliminations reduce the target to (a block of) the identity, so
    // the circuit is the residual solution followed by the elimination ops
    // reversed.
    let mut circuit = prefix_circuit;
    for &(c, t) in ops.iter().rev() {
        circuit.push(Gate::cnot(c, t));
    }
    Ok((circuit, flags))
}

/// ROWCOL synthesis of `target` on `g`. Under exhaustive/sample strategies
/// the candidate with the smallest size wins, tie-broken by smaller depth,
/// then by lexicographically smallest order.
pub fn rowcol_synth(
    g: &CouplingGraph,
    target: &Gf2Matrix,
    opts: &RowcolOptions,
) -> Result<SynthesisResult> {
    let started = Instant::now();
    if target.n() != g.n() {
        return Err(Error::DimensionMismatch(target.n(), g.n()));
    }
    if !target.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let threshold = opts.hybrid_threshold.max(1);
    let method = if threshold > 1 { "rowcol-hybrid" } else { "rowcol" };
    let cache = SynthCache::new();

    if target.is_identity() {
        return Ok(SynthesisResult {
            circuit: Circuit::empty(g.n()),
            method: method.to_string(),
            objective: Objective::Size,
            optimum: 0,
            queries: Vec::new(),
            wall_time: started.elapsed(),
            flags: Vec::new(),
        });
    }

    let orders = enumerate_orders(g, &opts.strategy, threshold)?;
    let mut best: Option<(Circuit, Vec<usize>, Vec<String>)> = None;
    for order in orders {
        let (circuit, flags) = run_order(g, target, &order, threshold, &opts.exact, &cache)?;
        let better = match &best {
            None => true,
            Some((b, border, _)) => {
                (circuit.size(), circuit.depth(), &order) < (b.size(), b.depth(), border)
            }
        };
        if better {
            best = Some((circuit, order, flags));
        }
    }
    let (circuit, _, flags) = best.expect("at least one order");
    if !circuit.verify(g, target).passed() {
        return Err(Error::SolverInconsistent("rowcol output fails verification".into()));
    }
    let optimum = circuit.size();
    Ok(SynthesisResult {
        circuit,
        method: method.to_string(),
        objective: Objective::Size,
        optimum,
        queries: Vec::new(),
        wall_time: started.elapsed(),
        flags,
    })
}
