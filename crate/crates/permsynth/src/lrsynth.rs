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

//! LR-Synth: depth-optimizing divide-and-conquer SWAP synthesis for
//! arbitrary connected topologies.
//!
//! Each level partitions the graph into two balanced connected halves,
//! routes every token to its correct half through the removed crossing
//! edges (one maximum-weight matching of candidate swaps per round), then
//! recurses on the two halves; the halves act on disjoint vertices so their
//! circuits share depth slots. Swap candidates are weighted 1.3 when they
//! settle a token together with everything between it and the graph
//! periphery, 1.2 when they exchange an opposed pair across a removed edge,
//! and 1 otherwise. Small residual halves can be handed to the exact
//! SWAP-depth solver (the hybrid variant).

use std::collections::HashMap;
use std::time::Instant;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::Permutation;
use crate::optimal::{ExactOptions, ExactTarget, SynthCache, SynthesisResult};
use crate::topology::{partition_graph, CouplingGraph, Partition};
use crate::{GateKind, Objective};

#[derive(Debug, Clone)]
pub struct LrOptions {
    /// Partition samples per level; `None` applies the default rule: all
    /// DFS-start partitions when the level has at most 16 vertices, one
    /// otherwise.
    pub samples: Option<usize>,
    /// Hand halves of at most this many vertices to the exact SWAP-depth
    /// solver instead of recursing; values below 2 disable the hybrid.
    pub hybrid_threshold: usize,
    pub exact: ExactOptions,
    /// Routing rounds allowed per split, as a multiple of the level size.
    pub iteration_cap_factor: usize,
}

impl Default for LrOptions {
    fn default() -> Self {
        LrOptions {
            samples: None,
            hybrid_threshold: 1,
            exact: ExactOptions::default(),
            iteration_cap_factor: 4,
        }
    }
}

impl LrOptions {
    pub fn hybrid() -> Self {
        LrOptions { hybrid_threshold: 8, ..Default::default() }
    }
}

/// Lane assignment for every token that must cross the cut.
#[derive(Debug, Clone)]
pub struct PathAssignment {
    /// token -> index into the partition's removed edges.
    pub lane_of: Vec<Option<usize>>,
    /// tokens assigned per lane (both directions counted).
    pub load: Vec<usize>,
    pub move_to_right: Vec<usize>,
    pub move_to_left: Vec<usize>,
}

/// Routing state for one split attempt at one recursion level. Tokens are
/// named by their start vertex at this level.
struct SplitState<'a> {
    g: &'a CouplingGraph,
    in_left: Vec<bool>,
    lanes: &'a [(usize, usize)],
    /// occ[x] = token at vertex x
    occ: Vec<usize>,
    /// pos[t] = vertex of token t
    pos: Vec<usize>,
    /// target[t] = destination vertex of token t
    target: Vec<usize>,
    /// distance to lane r within leftG + removed edges, per lane
    dist_gl_r: Vec<Vec<usize>>,
    /// distance to lane l within rightG + removed edges, per lane
    dist_gr_l: Vec<Vec<usize>>,
    /// full-graph distance from each lane's r / l
    dist_full_r: Vec<Vec<usize>>,
    dist_full_l: Vec<Vec<usize>>,
    /// distance to lane l within the left side only
    dist_left_l: Vec<Vec<usize>>,
    /// distance to lane r within the right side only
    dist_right_r: Vec<Vec<usize>>,
    /// graph periphery used by the weight-1.3 rule
    terminals: Vec<usize>,
    lock_l: bool,
    lock_r: bool,
}

/// BFS distances to `from` inside one side of the cut plus the removed
/// edges: a step is allowed within the side or across a lane.
fn lane_side_distances(
    g: &CouplingGraph,
    in_side: &[bool],
    lanes: &[(usize, usize)],
    from: usize,
) -> Vec<usize> {
    let n = g.n();
    let is_lane = |a: usize, b: usize| {
        lanes
            .iter()
            .any(|&(l, r)| (l == a && r == b) || (l == b && r == a))
    };
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            let allowed = (in_side[v] && in_side[w]) || is_lane(v, w);
            if allowed && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Terminals for the settling rule, per topology: leaves on paths and
/// trees; the corner periphery on grids; the designated split-boundary
/// vertices (lane endpoints) on rings and other 2-connected graphs, where
/// every vertex looks alike and the cut is the only landmark.
fn settle_terminals(g: &CouplingGraph, lanes: &[(usize, usize)]) -> Vec<usize> {
    let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    if !leaves.is_empty() {
        return leaves;
    }
    if g.grid_dims().is_some() {
        let min_deg = (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0);
        return (0..g.n()).filter(|&v| g.degree(v) == min_deg).collect();
    }
    let mut ends: Vec<usize> = lanes.iter().flat_map(|&(l, r)| [l, r]).collect();
    ends.sort_unstable();
    ends.dedup();
    ends
}

impl<'a> SplitState<'a> {
    fn new(g: &'a CouplingGraph, q: &Permutation, part: &'a Partition) -> SplitState<'a> {
        let n = g.n();
        let mut in_left = vec![false; n];
        for &v in &part.left {
            in_left[v] = true;
        }
        let in_right: Vec<bool> = in_left.iter().map(|&b| !b).collect();
        let lanes = part.removed_edges.as_slice();
        let all = vec![true; n];
        let dist_gl_r = lanes
            .iter()
            .map(|&(_, r)| lane_side_distances(g, &in_left, lanes, r))
            .collect();
        let dist_gr_l = lanes
            .iter()
            .map(|&(l, _)| lane_side_distances(g, &in_right, lanes, l))
            .collect();
        let dist_full_r = lanes
            .iter()
            .map(|&(_, r)| g.distances_within(&all, r))
            .collect();
        let dist_full_l = lanes
            .iter()
            .map(|&(l, _)| g.distances_within(&all, l))
            .collect();
        let dist_left_l = lanes
            .iter()
            .map(|&(l, _)| g.distances_within(&in_left, l))
            .collect();
        let dist_right_r = lanes
            .iter()
            .map(|&(_, r)| g.distances_within(&in_right, r))
            .collect();
        SplitState {
            g,
            in_left,
            lanes,
            occ: (0..n).collect(),
            pos: (0..n).collect(),
            target: (0..n).map(|t| q.dest(t)).collect(),
            dist_gl_r,
            dist_gr_l,
            dist_full_r,
            dist_full_l,
            dist_left_l,
            dist_right_r,
            terminals: settle_terminals(g, lanes),
            lock_l: false,
            lock_r: false,
        }
    }

    fn movers(&self) -> (Vec<usize>, Vec<usize>) {
        let mut right = Vec::new();
        let mut left = Vec::new();
        for t in 0..self.g.n() {
            let here_left = self.in_left[self.pos[t]];
            let home_left = self.in_left[self.target[t]];
            if here_left && !home_left {
                right.push(t);
            } else if !here_left && home_left {
                left.push(t);
            }
        }
        (right, left)
    }

    fn apply_swap(&mut self, x: usize, y: usize) {
        let (tx, ty) = (self.occ[x], self.occ[y]);
        self.occ[x] = ty;
        self.occ[y] = tx;
        self.pos[tx] = y;
        self.pos[ty] = x;
    }
}

/// Read-only view of the routing state consumed by [`assign_paths`].
pub struct AssignInput<'a> {
    pub lanes: &'a [(usize, usize)],
    pub pos: &'a [usize],
    pub move_to_right: &'a [usize],
    pub move_to_left: &'a [usize],
    /// per lane, distance of each vertex to the lane's left endpoint
    /// within the left side
    pub dist_left_l: &'a [Vec<usize>],
    /// per lane, distance of each vertex to the lane's right endpoint
    /// within the right side
    pub dist_right_r: &'a [Vec<usize>],
}

/// Assign each crossing token a removed edge. Tokens are assigned in
/// opposed pairs: a right-mover `v` picks the lane minimizing
/// `max(D(leftG, v, l), D(rightG, w, r)) + n_lane / 2` (compared exactly as
/// `2*max + n_lane`), where `w` is the nearest still-unassigned left-mover
/// to that lane; `w` joins the same lane. Loads update as assignments are
/// made.
pub fn assign_paths(input: &AssignInput<'_>) -> PathAssignment {
    let n = input.pos.len();
    let mut lane_of: Vec<Option<usize>> = vec![None; n];
    let mut load = vec![0usize; input.lanes.len()];
    let mut unassigned_left: Vec<usize> = input.move_to_left.to_vec();

    for &v in input.move_to_right {
        let mut best: Option<(usize, usize, usize)> = None; // (2*max + load, lane, w)
        for (lane, &load_here) in load.iter().enumerate() {
            let dl = input.dist_left_l[lane][input.pos[v]];
            if dl == usize::MAX {
                continue;
            }
            let Some(w) = unassigned_left
                .iter()
                .copied()
                .min_by_key(|&w| (input.dist_right_r[lane][input.pos[w]], w))
            else {
                continue;
            };
            let dr = input.dist_right_r[lane][input.pos[w]];
            if dr == usize::MAX {
                continue;
            }
            let score = 2 * dl.max(dr) + load_here;
            if best.is_none_or(|(s, ln, _)| (score, lane) < (s, ln)) {
                best = Some((score, lane, w));
            }
        }
        let (_, lane, w) = best.expect("connected partition always offers a lane");
        lane_of[v] = Some(lane);
        lane_of[w] = Some(lane);
        load[lane] += 2;
        unassigned_left.retain(|&t| t != w);
    }
    PathAssignment {
        lane_of,
        load,
        move_to_right: input.move_to_right.to_vec(),
        move_to_left: input.move_to_left.to_vec(),
    }
}

fn mask(n: usize, items: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in items {
        m[i] = true;
    }
    m
}

/// Result of routing one split: the vertex-disjoint swap layers, the
/// destination vertex still owed to each vertex's token, and the
/// misplaced-token count.
pub type RoutedSplit = (Vec<Vec<(usize, usize)>>, Vec<usize>, usize);

/// One split attempt: route every token to its correct side. `None` when
/// the round cap is exceeded.
pub fn routing_rounds(
    g: &CouplingGraph,
    q: &Permutation,
    part: &Partition,
    cap: usize,
) -> Option<RoutedSplit> {
    let mut st = SplitState::new(g, q, part);
    let (movers_right, movers_left) = st.movers();
    let assignment = assign_paths(&AssignInput {
        lanes: st.lanes,
        pos: &st.pos,
        move_to_right: &movers_right,
        move_to_left: &movers_left,
        dist_left_l: &st.dist_left_l,
        dist_right_r: &st.dist_right_r,
    });
    let lane_of = assignment.lane_of;

    let is_path = g.is_path();
    let is_ring = g.is_ring();
    let coords = if is_path || is_ring {
        Some(linear_coords(g, &st.in_left, is_ring))
    } else {
        None
    };
    // nearest-periphery data for the settling rule
    let all = vec![true; g.n()];
    let mut dist_terminal = vec![usize::MAX; g.n()];
    let mut near_terminal = vec![usize::MAX; g.n()];
    for &t in st.terminals.clone().iter() {
        let d = g.distances_within(&all, t);
        for v in 0..g.n() {
            if (d[v], t) < (dist_terminal[v], near_terminal[v]) {
                dist_terminal[v] = d[v];
                near_terminal[v] = t;
            }
        }
    }

    let mut rounds: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut iterations = 0usize;
    loop {
        let (movers_right, movers_left) = st.movers();
        if movers_right.is_empty() && movers_left.is_empty() {
            break;
        }
        iterations += 1;
        if iterations > cap {
            return None;
        }
        let is_mover_r = mask(g.n(), &movers_right);
        let is_mover_l = mask(g.n(), &movers_left);

        // weight x10 per candidate swap, keyed by the vertex pair
        let mut candidates: HashMap<(usize, usize), u32> = HashMap::new();
        let consider = |cand: &mut HashMap<(usize, usize), u32>, x: usize, y: usize, w: u32| {
            let key = (x.min(y), x.max(y));
            let entry = cand.entry(key).or_insert(0);
            *entry = (*entry).max(w);
        };

        // Settling swaps (weight 1.3): the token lands home and everything
        // from there to the nearest periphery vertex is already in place.
        for &(a, b) in st.g.edges() {
            for (xp, yp) in [(a, b), (b, a)] {
                let u = st.occ[xp];
                if st.target[u] != yp {
                    continue;
                }
                // The displaced token must still be free to reach its goal:
                // displacing a crossing token backward (or stranding one on
                // the wrong side) would keep traffic flowing through the
                // supposedly settled region.
                let displaced = st.occ[yp];
                if is_mover_r[displaced] || is_mover_l[displaced] {
                    continue;
                }
                if st.in_left[xp] != st.in_left[yp]
                    && st.in_left[st.target[displaced]] != st.in_left[xp]
                {
                    continue;
                }
                let t_near = near_terminal[yp];
                if t_near == usize::MAX {
                    continue;
                }
                let Ok(path) = st.g.shortest_path(yp, t_near) else { continue };
                let settled = path.iter().all(|&z| {
                    let token = if z == xp {
                        st.occ[yp]
                    } else if z == yp {
                        u
                    } else {
                        st.occ[z]
                    };
                    st.target[token] == z
                });
                if settled {
                    consider(&mut candidates, xp, yp, 13);
                }
            }
        }

        let mut unlock_l = false;
        let mut unlock_r = false;
        for &(a, b) in st.g.edges() {
            for (up, vp) in [(a, b), (b, a)] {
                let u = st.occ[up];
                let v = st.occ[vp];
                if is_mover_r[u] {
                    let lane = lane_of[u].expect("mover has a lane");
                    let (l, _r) = st.lanes[lane];
                    let du = st.dist_gl_r[lane][up];
                    let dv = st.dist_gl_r[lane][vp];
                    if du == usize::MAX || dv == usize::MAX || du <= dv {
                        // not closer to the lane exit
                    } else if is_mover_r[v]
                        && lane_of[v] == Some(lane)
                        && st.dist_full_r[lane][st.target[u]]
                            <= st.dist_full_r[lane][st.target[v]]
                    {
                        // u belongs nearer the cut than v, so it crosses
                        // after v: no overtake this round
                    } else {
                        if st.lock_l
                            && is_mover_r[v]
                            && lane_of[v] != Some(lane)
                            && st.g.neighbors(vp).iter().any(|&nb| {
                                !is_mover_r[st.occ[nb]] && du > st.dist_gl_r[lane][nb]
                            })
                        {
                            consider(&mut candidates, up, vp, 10);
                            unlock_l = true;
                        }
                        if is_mover_r[v] && lane_of[v] != Some(lane) {
                            let vlane = lane_of[v].expect("mover has a lane");
                            if st.dist_gl_r[vlane][vp] != usize::MAX
                                && st.dist_gl_r[vlane][up] != usize::MAX
                                && st.dist_gl_r[vlane][vp] > st.dist_gl_r[vlane][up]
                            {
                                consider(&mut candidates, up, vp, 10);
                            }
                        } else if up != l {
                            // slide toward the lane; never strand the
                            // displaced token on its wrong side
                            if st.in_left[up] == st.in_left[vp]
                                || st.in_left[st.target[v]] == st.in_left[up]
                            {
                                consider(&mut candidates, up, vp, 10);
                            }
                        } else if (up, vp) == st.lanes[lane]
                            && is_mover_l[v]
                            && lane_of[v] == Some(lane)
                        {
                            consider(&mut candidates, up, vp, 12);
                        }
                    }
                }
                if is_mover_l[u] {
                    // mirrored branch for left-movers
                    let lane = lane_of[u].expect("mover has a lane");
                    let (_l, r) = st.lanes[lane];
                    let du = st.dist_gr_l[lane][up];
                    let dv = st.dist_gr_l[lane][vp];
                    if du == usize::MAX || dv == usize::MAX || du <= dv {
                        // not closer to the lane exit
                    } else if is_mover_l[v]
                        && lane_of[v] == Some(lane)
                        && st.dist_full_l[lane][st.target[u]]
                            <= st.dist_full_l[lane][st.target[v]]
                    {
                        // ordering guard, mirrored
                    } else {
                        if st.lock_r
                            && is_mover_l[v]
                            && lane_of[v] != Some(lane)
                            && st.g.neighbors(vp).iter().any(|&nb| {
                                !is_mover_l[st.occ[nb]] && du > st.dist_gr_l[lane][nb]
                            })
                        {
                            consider(&mut candidates, up, vp, 10);
                            unlock_r = true;
                        }
                        if is_mover_l[v] && lane_of[v] != Some(lane) {
                            let vlane = lane_of[v].expect("mover has a lane");
                            if st.dist_gr_l[vlane][vp] != usize::MAX
                                && st.dist_gr_l[vlane][up] != usize::MAX
                                && st.dist_gr_l[vlane][vp] > st.dist_gr_l[vlane][up]
                            {
                                consider(&mut candidates, up, vp, 10);
                            }
                        } else if up != r {
                            // mirrored slide with the same stranding guard
                            if st.in_left[up] == st.in_left[vp]
                                || st.in_left[st.target[v]] == st.in_left[up]
                            {
                                consider(&mut candidates, up, vp, 10);
                            }
                        } else if (vp, up) == st.lanes[lane]
                            && is_mover_r[v]
                            && lane_of[v] == Some(lane)
                        {
                            consider(&mut candidates, up, vp, 12);
                        }
                    }
                }
            }
        }
        if unlock_l {
            st.lock_l = false;
        }
        if unlock_r {
            st.lock_r = false;
        }

        // Maximum-weight matching, greedy: weight descending, smallest
        // vertex pair on ties, keep only vertex-disjoint swaps.
        let mut sorted: Vec<((usize, usize), u32)> = candidates.into_iter().collect();
        sorted.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut used = vec![false; g.n()];
        let mut matching: Vec<(usize, usize)> = Vec::new();
        for ((x, y), _) in sorted {
            if !used[x] && !used[y] {
                used[x] = true;
                used[y] = true;
                matching.push((x, y));
            }
        }
        if matching.is_empty() {
            st.lock_l = true;
            st.lock_r = true;
        }

        // On paths and rings, also flip settled neighbors whose order is
        // inverted in the target whenever they still fit the matching.
        if let Some(coords) = &coords {
            for &(x, y) in st.g.edges() {
                if used[x] || used[y] {
                    continue;
                }
                let (u, v) = (st.occ[x], st.occ[y]);
                if is_mover_r[u] || is_mover_l[u] || is_mover_r[v] || is_mover_l[v] {
                    continue;
                }
                let (Some(cx), Some(cy)) = (coords[x], coords[y]) else { continue };
                let (Some(ctu), Some(ctv)) = (coords[st.target[u]], coords[st.target[v]]) else {
                    continue;
                };
                // require a shared coordinate line (same arc on a ring)
                if cx.0 != cy.0 || cx.0 != ctu.0 || cx.0 != ctv.0 {
                    continue;
                }
                let flipped = if cx.1 < cy.1 { ctu.1 > ctv.1 } else { ctv.1 > ctu.1 };
                if flipped {
                    used[x] = true;
                    used[y] = true;
                    matching.push((x, y));
                }
            }
        }

        if !matching.is_empty() {
            matching.sort_unstable();
            for &(x, y) in &matching {
                st.apply_swap(x, y);
            }
            rounds.push(matching);
        }
    }

    let q_after: Vec<usize> = (0..g.n()).map(|x| st.target[st.occ[x]]).collect();
    let misplaced = q_after.iter().enumerate().filter(|&(x, &d)| x != d).count();
    Some((rounds, q_after, misplaced))
}

/// Coordinates along a path, or along each side arc of a partitioned ring:
/// vertex -> (line id, offset).
fn linear_coords(
    g: &CouplingGraph,
    in_left: &[bool],
    is_ring: bool,
) -> Vec<Option<(usize, usize)>> {
    let n = g.n();
    let mut coords = vec![None; n];
    if !is_ring {
        let start = (0..n).filter(|&v| g.degree(v) == 1).min();
        let Some(start) = start else { return coords };
        let mut prev = usize::MAX;
        let mut cur = start;
        for offset in 0..n {
            coords[cur] = Some((0, offset));
            match g.neighbors(cur).iter().copied().find(|&w| w != prev) {
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        return coords;
    }
    for (line, side_left) in [(0usize, true), (1usize, false)] {
        let side: Vec<usize> = (0..n).filter(|&v| in_left[v] == side_left).collect();
        if side.is_empty() {
            continue;
        }
        let in_side = mask(n, &side);
        let start = side
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().filter(|&&w| in_side[w]).count() <= 1)
            .min();
        let Some(start) = start else { continue };
        let mut prev = usize::MAX;
        let mut cur = start;
        for offset in 0..side.len() {
            coords[cur] = Some((line, offset));
            match g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| in_side[w] && w != prev && coords[w].is_none())
            {
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
    }
    coords
}

/// Deterministic total fallback: repeatedly pick the smallest non-cut
/// vertex of the remaining graph, walk its token home along a shortest path
/// inside the remaining graph, then retire the vertex.
fn greedy_route(g: &CouplingGraph, q: &Permutation) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut occ: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let target: Vec<usize> = (0..n).map(|t| q.dest(t)).collect();
    let mut belongs = vec![0usize; n];
    for (t, &dest) in target.iter().enumerate() {
        belongs[dest] = t;
    }
    let mut alive = vec![true; n];
    let mut swaps = Vec::new();
    for _ in 0..n.saturating_sub(1) {
        let w = *g
            .non_cut_vertices_within(&alive)
            .first()
            .expect("connected graph has a non-cut vertex");
        let t = belongs[w];
        if pos[t] != w {
            let path = g
                .shortest_path_within(&alive, pos[t], w)
                .expect("remaining graph stays connected");
            for step in path.windows(2) {
                let (x, y) = (step[0], step[1]);
                let (tx, ty) = (occ[x], occ[y]);
                occ[x] = ty;
                occ[y] = tx;
                pos[tx] = y;
                pos[ty] = x;
                swaps.push((x.min(y), x.max(y)));
            }
        }
        alive[w] = false;
    }
    swaps
}

fn synth_level(
    g: &CouplingGraph,
    q: &Permutation,
    opts: &LrOptions,
    cache: &SynthCache,
    flags: &mut Vec<String>,
) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    if n <= 1 || q.is_identity() {
        return Ok(Vec::new());
    }
    if opts.hybrid_threshold >= 2 && n <= opts.hybrid_threshold {
        match cache.exact_synth(
            g,
            ExactTarget::Perm(q),
            GateKind::Swap,
            Objective::Depth,
            &opts.exact,
        ) {
            Ok(circuit) => {
                return Ok(circuit
                    .gates
                    .iter()
                    .map(|gate| gate.pair().expect("swap circuit"))
                    .collect());
            }
            Err(Error::SynthTimeout { .. }) => {
                flags.push(format!("hybrid solver timed out at {n} vertices; recursing"));
            }
            Err(e) => return Err(e),
        }
    }
    if n == 2 {
        return Ok(vec![(0, 1)]);
    }

    let samples = opts.samples.unwrap_or(if n <= 16 { n } else { 1 });
    let partitions = partition_graph(g, samples.max(1));
    if partitions.is_empty() {
        flags.push(format!("no connected split at {n} vertices; greedy fallback"));
        return Ok(greedy_route(g, q));
    }
    let cap = opts.iteration_cap_factor.max(1) * n;
    type Best = (usize, usize, usize, Vec<Vec<(usize, usize)>>, Vec<usize>);
    let mut best: Option<Best> = None;
    for (idx, part) in partitions.iter().enumerate() {
        if let Some((rounds, q_after, misplaced)) = routing_rounds(g, q, part, cap) {
            let score = (rounds.len(), misplaced, idx);
            if best.as_ref().is_none_or(|b| score < (b.0, b.1, b.2)) {
                best = Some((rounds.len(), misplaced, idx, rounds, q_after));
            }
        }
    }
    let Some((_, _, idx, rounds, q_after)) = best else {
        flags.push(format!(
            "all {} splits exceeded the {cap}-round cap at {n} vertices; greedy fallback",
            partitions.len()
        ));
        return Ok(greedy_route(g, q));
    };
    let part = &partitions[idx];

    let mut swaps: Vec<(usize, usize)> = rounds.into_iter().flatten().collect();
    for side in [&part.left, &part.right] {
        if side.len() <= 1 {
            continue;
        }
        let (sub, embedding) = g.induced(side)?;
        let mut local = vec![usize::MAX; n];
        for (i, &v) in embedding.iter().enumerate() {
            local[v] = i;
        }
        let dest: Vec<usize> = embedding.iter().map(|&gx| local[q_after[gx]]).collect();
        let local_q = Permutation::new(dest).map_err(|_| {
            Error::SolverInconsistent("crossing left a token on the wrong side".into())
        })?;
        let sub_swaps = synth_level(&sub, &local_q, opts, cache, flags)?;
        swaps.extend(sub_swaps.into_iter().map(|(a, b)| (embedding[a], embedding[b])));
    }
    Ok(swaps)
}

/// LR-Synth: SWAP-only, on-graph synthesis of `target` on `g`, optimizing
/// depth. The output is verified against the target before being returned.
pub fn lr_synth(
    g: &CouplingGraph,
    target: &Permutation,
    opts: &LrOptions,
) -> Result<SynthesisResult> {
    let started = Instant::now();
    if target.len() != g.n() {
        return Err(Error::DimensionMismatch(target.len(), g.n()));
    }
    let cache = SynthCache::new();
    let mut flags = Vec::new();
    let swaps = synth_level(g, target, opts, &cache, &mut flags)?;
    let circuit = Circuit::from_gates(
        g.n(),
        swaps.into_iter().map(|(a, b)| Gate::swap(a, b)).collect(),
    );
    if !circuit.verify_permutation(g, target).passed() {
        return Err(Error::SolverInconsistent("lr-synth output fails verification".into()));
    }
    let optimum = circuit.depth();
    let method = if opts.hybrid_threshold >= 2 { "lr-synth-hybrid" } else { "lr-synth" };
    Ok(SynthesisResult {
        circuit,
        method: method.to_string(),
        objective: Objective::Depth,
        optimum,
        queries: Vec::new(),
        wall_time: started.elapsed(),
        flags,
    })
}
