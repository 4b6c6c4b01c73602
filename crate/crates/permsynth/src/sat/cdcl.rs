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

//! Self-contained conflict-driven clause-learning solver: two-watched
//! literals, 1UIP learning with recursive minimization, VSIDS branching with
//! phase saving, Luby restarts, and LBD-based learned-clause deletion.
//! Deterministic for a fixed seed.

use std::time::{Duration, Instant};

use super::SolveOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    fn new(var: u32, neg: bool) -> Lit {
        Lit(var << 1 | u32::from(neg))
    }

    fn from_dimacs(x: i32) -> Lit {
        debug_assert!(x != 0);
        Lit::new(x.unsigned_abs() - 1, x < 0)
    }

    fn var(self) -> u32 {
        self.0 >> 1
    }

    fn neg(self) -> bool {
        self.0 & 1 == 1
    }

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

const VAL_UNDEF: u8 = 0;
const VAL_TRUE: u8 = 1;
const VAL_FALSE: u8 = 2;

const NO_REASON: u32 = u32::MAX;

#[inline]
fn lit_value(assigns: &[u8], l: Lit) -> u8 {
    let v = assigns[l.var() as usize];
    if v == VAL_UNDEF {
        VAL_UNDEF
    } else if (v == VAL_TRUE) ^ l.neg() {
        VAL_TRUE
    } else {
        VAL_FALSE
    }
}

struct Clause {
    lits: Box<[Lit]>,
    lbd: u32,
}

#[derive(Clone, Copy)]
struct Watch {
    cref: u32,
    blocker: Lit,
}

/// Indexed max-heap over variable activities.
struct VarHeap {
    heap: Vec<u32>,
    position: Vec<i32>, // -1 when absent
}

impl VarHeap {
    fn new(num_vars: usize) -> VarHeap {
        VarHeap {
            heap: Vec::with_capacity(num_vars),
            position: vec![-1; num_vars],
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.position[v as usize] >= 0
    }

    fn insert(&mut self, v: u32, activity: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.position[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, activity);
    }

    fn pop_max(&mut self, activity: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.position[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0, activity);
        }
        Some(top)
    }

    fn bumped(&mut self, v: u32, activity: &[f64]) {
        let pos = self.position[v as usize];
        if pos >= 0 {
            self.sift_up(pos as usize, activity);
        }
    }

    fn sift_up(&mut self, mut i: usize, activity: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if activity[self.heap[i] as usize] <= activity[self.heap[parent] as usize] {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, activity: &[f64]) {
        loop {
            let l = 2 * i + 1;
            let r = 2 * i + 2;
            let mut largest = i;
            if l < self.heap.len()
                && activity[self.heap[l] as usize] > activity[self.heap[largest] as usize]
            {
                largest = l;
            }
            if r < self.heap.len()
                && activity[self.heap[r] as usize] > activity[self.heap[largest] as usize]
            {
                largest = r;
            }
            if largest == i {
                break;
            }
            self.swap(i, largest);
            i = largest;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.position[self.heap[a] as usize] = a as i32;
        self.position[self.heap[b] as usize] = b as i32;
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn luby(mut x: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) / 2;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}

/// Embedded CDCL solver.
pub struct Cdcl {
    num_vars: usize,
    clauses: Vec<Option<Clause>>,
    free: Vec<u32>,
    learned_refs: Vec<u32>,
    num_originals: usize,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    saved_phase: Vec<bool>,
    seen: Vec<bool>,
    to_clear: Vec<Lit>,
    lbd_stamp: Vec<u32>,
    lbd_tick: u32,
    conflicts: u64,
    max_learnts: f64,
    ok: bool,
}

impl Cdcl {
    pub fn new(num_vars: usize, seed: u64) -> Cdcl {
        let mut activity = vec![0.0; num_vars];
        // Tiny seed-dependent jitter fixes the initial branching order.
        for (v, a) in activity.iter_mut().enumerate() {
            *a = (splitmix64(seed ^ (v as u64)) % 1024) as f64 * 1e-9;
        }
        let mut heap = VarHeap::new(num_vars);
        for v in 0..num_vars as u32 {
            heap.insert(v, &activity);
        }
        Cdcl {
            num_vars,
            clauses: Vec::new(),
            free: Vec::new(),
            learned_refs: Vec::new(),
            num_originals: 0,
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![VAL_UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            heap,
            saved_phase: vec![false; num_vars],
            seen: vec![false; num_vars],
            to_clear: Vec::new(),
            lbd_stamp: vec![0; num_vars],
            lbd_tick: 0,
            conflicts: 0,
            max_learnts: 0.0,
            ok: true,
        }
    }

    /// Add a clause of DIMACS literals at decision level 0. Returns false
    /// once the formula is trivially unsatisfiable.
    pub fn add_clause(&mut self, lits: &[i32]) -> bool {
        if !self.ok {
            return false;
        }
        let mut clause: Vec<Lit> = lits.iter().map(|&l| Lit::from_dimacs(l)).collect();
        clause.sort_unstable_by_key(|l| l.0);
        clause.dedup();
        // Tautology or satisfied at level 0.
        for pair in clause.windows(2) {
            if pair[0].var() == pair[1].var() {
                return true;
            }
        }
        clause.retain(|&l| lit_value(&self.assigns, l) != VAL_FALSE);
        if clause.iter().any(|&l| lit_value(&self.assigns, l) == VAL_TRUE) {
            return true;
        }
        match clause.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.unchecked_enqueue(clause[0], NO_REASON);
                // Keep level-0 consequences visible to later add_clause calls.
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.alloc_clause(clause, false);
                true
            }
        }
    }

    fn alloc_clause(&mut self, lits: Vec<Lit>, learned: bool) -> u32 {
        let clause = Clause {
            lits: lits.into_boxed_slice(),
            lbd: 0,
        };
        let cref = if let Some(slot) = self.free.pop() {
            self.clauses[slot as usize] = Some(clause);
            slot
        } else {
            self.clauses.push(Some(clause));
            (self.clauses.len() - 1) as u32
        };
        if learned {
            self.learned_refs.push(cref);
        } else {
            self.num_originals += 1;
        }
        let c = self.clauses[cref as usize].as_ref().unwrap();
        let (l0, l1) = (c.lits[0], c.lits[1]);
        self.watches[l0.index()].push(Watch { cref, blocker: l1 });
        self.watches[l1.index()].push(Watch { cref, blocker: l0 });
        cref
    }

    fn detach_clause(&mut self, cref: u32) {
        let c = self.clauses[cref as usize].as_ref().unwrap();
        let (l0, l1) = (c.lits[0], c.lits[1]);
        self.watches[l0.index()].retain(|w| w.cref != cref);
        self.watches[l1.index()].retain(|w| w.cref != cref);
        self.clauses[cref as usize] = None;
        self.free.push(cref);
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn unchecked_enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var() as usize;
        debug_assert_eq!(self.assigns[v], VAL_UNDEF);
        self.assigns[v] = if l.neg() { VAL_FALSE } else { VAL_TRUE };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let fl = p.not();
            let mut ws = std::mem::take(&mut self.watches[fl.index()]);
            let mut j = 0;
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == VAL_TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref;
                let c = self.clauses[cref as usize].as_mut().expect("live clause");
                if c.lits[0] == fl {
                    c.lits.swap(0, 1);
                }
                debug_assert_eq!(c.lits[1], fl);
                let first = c.lits[0];
                let keep = Watch { cref, blocker: first };
                if first != w.blocker && lit_value(&self.assigns, first) == VAL_TRUE {
                    ws[j] = keep;
                    j += 1;
                    continue;
                }
                let mut found = usize::MAX;
                for k in 2..c.lits.len() {
                    if lit_value(&self.assigns, c.lits[k]) != VAL_FALSE {
                        found = k;
                        break;
                    }
                }
                if found != usize::MAX {
                    c.lits.swap(1, found);
                    let nw = c.lits[1];
                    self.watches[nw.index()].push(keep);
                    continue;
                }
                // Unit or conflicting.
                ws[j] = keep;
                j += 1;
                if lit_value(&self.assigns, first) == VAL_FALSE {
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                    self.qhead = self.trail.len();
                    conflict = Some(cref);
                    break;
                }
                let v = first.var() as usize;
                self.assigns[v] = if first.neg() { VAL_FALSE } else { VAL_TRUE };
                self.level[v] = self.trail_lim.len() as u32;
                self.reason[v] = cref;
                self.trail.push(first);
            }
            ws.truncate(j);
            self.watches[fl.index()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn abstract_level(&self, v: u32) -> u32 {
        1 << (self.level[v as usize] & 31)
    }

    /// True when `q` is implied by literals already in the learned clause;
    /// MiniSat-style recursive check with an explicit stack.
    fn lit_redundant(&mut self, q: Lit, abstract_levels: u32) -> bool {
        let mut stack = vec![q];
        let top = self.to_clear.len();
        while let Some(p) = stack.pop() {
            let cr = self.reason[p.var() as usize];
            if cr == NO_REASON {
                for &l in &self.to_clear[top..] {
                    self.seen[l.var() as usize] = false;
                }
                self.to_clear.truncate(top);
                return false;
            }
            let clause = self.clauses[cr as usize].as_ref().unwrap();
            let mut failed = false;
            for idx in 1..clause.lits.len() {
                let r = clause.lits[idx];
                let v = r.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    if self.reason[v] != NO_REASON
                        && ((1u32 << (self.level[v] & 31)) & abstract_levels) != 0
                    {
                        self.seen[v] = true;
                        stack.push(r);
                        self.to_clear.push(r);
                    } else {
                        failed = true;
                        break;
                    }
                }
            }
            if failed {
                for &l in &self.to_clear[top..] {
                    self.seen[l.var() as usize] = false;
                }
                self.to_clear.truncate(top);
                return false;
            }
        }
        true
    }

    /// First-UIP conflict analysis. Returns (learned clause, backtrack
    /// level, LBD); the asserting literal is at index 0.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut counter = 0u32;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current_level = self.decision_level();

        loop {
            let clause = self.clauses[confl as usize]
                .as_ref()
                .expect("conflict clause");
            let start = usize::from(p.is_some());
            for idx in start..clause.lits.len() {
                let q = clause.lits[idx];
                let v = q.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    // bump_var, inlined to keep the clause borrow local
                    self.activity[v] += self.var_inc;
                    if self.activity[v] > 1e100 {
                        for a in &mut self.activity {
                            *a *= 1e-100;
                        }
                        self.var_inc *= 1e-100;
                    }
                    self.heap.bumped(v as u32, &self.activity);
                    if self.level[v] >= current_level {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var() as usize] {
                    break;
                }
            }
            let pl = self.trail[index];
            self.seen[pl.var() as usize] = false;
            counter -= 1;
            p = Some(pl);
            if counter == 0 {
                break;
            }
            confl = self.reason[pl.var() as usize];
            debug_assert_ne!(confl, NO_REASON);
        }
        learnt[0] = p.unwrap().not();

        // Minimize: drop literals implied by the rest of the clause.
        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt[1..]);
        let abstract_levels = learnt[1..]
            .iter()
            .fold(0u32, |acc, &l| acc | self.abstract_level(l.var()));
        let keep: Vec<Lit> = learnt[1..]
            .iter()
            .copied()
            .filter(|&l| {
                self.reason[l.var() as usize] == NO_REASON
                    || !self.lit_redundant(l, abstract_levels)
            })
            .collect();
        learnt.truncate(1);
        learnt.extend(keep);
        for i in 0..self.to_clear.len() {
            self.seen[self.to_clear[i].var() as usize] = false;
        }
        self.to_clear.clear();

        // Backtrack level: highest level among the non-asserting literals.
        let bt_level = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var() as usize] > self.level[learnt[max_i].var() as usize] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var() as usize]
        };

        // LBD: number of distinct decision levels in the clause.
        self.lbd_tick += 1;
        let mut lbd = 0;
        for &l in &learnt {
            let lev = self.level[l.var() as usize] as usize;
            if self.lbd_stamp[lev.min(self.num_vars - 1)] != self.lbd_tick {
                self.lbd_stamp[lev.min(self.num_vars - 1)] = self.lbd_tick;
                lbd += 1;
            }
        }
        (learnt, bt_level, lbd)
    }

    fn backtrack(&mut self, target_level: u32) {
        if self.decision_level() <= target_level {
            return;
        }
        let lim = self.trail_lim[target_level as usize];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var() as usize;
            self.saved_phase[v] = self.assigns[v] == VAL_TRUE;
            self.assigns[v] = VAL_UNDEF;
            self.reason[v] = NO_REASON;
            self.heap.insert(l.var(), &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(target_level as usize);
        self.qhead = lim;
    }

    /// Pick the next decision variable; false when every variable is
    /// assigned (model found).
    fn decide(&mut self) -> bool {
        while let Some(v) = self.heap.pop_max(&self.activity) {
            if self.assigns[v as usize] == VAL_UNDEF {
                self.trail_lim.push(self.trail.len());
                let phase = self.saved_phase[v as usize];
                self.unchecked_enqueue(Lit::new(v, !phase), NO_REASON);
                return true;
            }
        }
        false
    }

    fn is_locked(&self, cref: u32) -> bool {
        let c = self.clauses[cref as usize].as_ref().unwrap();
        let l0 = c.lits[0];
        self.reason[l0.var() as usize] == cref
            && lit_value(&self.assigns, l0) == VAL_TRUE
    }

    fn reduce_db(&mut self) {
        let mut removable: Vec<(u32, u32, usize)> = Vec::new(); // (lbd, len, ref index)
        for (i, &cref) in self.learned_refs.iter().enumerate() {
            let c = self.clauses[cref as usize].as_ref().unwrap();
            if c.lbd > 2 && c.lits.len() > 2 && !self.is_locked(cref) {
                removable.push((c.lbd, c.lits.len() as u32, i));
            }
        }
        // Worst clauses first: high LBD, then long.
        removable.sort_unstable_by(|a, b| b.cmp(a));
        removable.truncate(removable.len() / 2);
        let mut dead: Vec<usize> = removable.iter().map(|&(_, _, i)| i).collect();
        dead.sort_unstable_by(|a, b| b.cmp(a));
        for i in dead {
            let cref = self.learned_refs.swap_remove(i);
            self.detach_clause(cref);
        }
    }

    /// Solve the accumulated formula; deterministic for a fixed seed.
    pub fn solve(&mut self, time_limit: Option<Duration>) -> SolveOutcome {
        if !self.ok {
            return SolveOutcome::Unsat;
        }
        let deadline = time_limit.map(|d| Instant::now() + d);
        if self.propagate().is_some() {
            self.ok = false;
            return SolveOutcome::Unsat;
        }
        self.max_learnts = (self.num_originals as f64 * 0.4).max(4000.0);
        let mut restarts = 0u64;
        loop {
            restarts += 1;
            let budget = luby(restarts) * 128;
            let mut conflicts_here = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.conflicts += 1;
                    conflicts_here += 1;
                    if self.decision_level() == 0 {
                        self.ok = false;
                        return SolveOutcome::Unsat;
                    }
                    let (learnt, bt_level, lbd) = self.analyze(confl);
                    self.backtrack(bt_level);
                    if learnt.len() == 1 {
                        self.unchecked_enqueue(learnt[0], NO_REASON);
                    } else {
                        let asserting = learnt[0];
                        let cref = self.alloc_clause(learnt, true);
                        self.clauses[cref as usize].as_mut().unwrap().lbd = lbd;
                        self.unchecked_enqueue(asserting, cref);
                    }
                    self.var_inc /= 0.95;
                    if self.conflicts.is_multiple_of(2048) {
                        if let Some(d) = deadline {
                            if Instant::now() >= d {
                                self.backtrack(0);
                                return SolveOutcome::Timeout;
                            }
                        }
                    }
                } else {
                    if conflicts_here >= budget {
                        self.backtrack(0);
                        break;
                    }
                    if self.learned_refs.len() as f64
                        >= self.max_learnts + self.trail.len() as f64
                    {
                        self.reduce_db();
                        self.max_learnts *= 1.3;
                    }
                    if !self.decide() {
                        let model = self.model();
                        self.backtrack(0);
                        return SolveOutcome::Sat(model);
                    }
                }
            }
        }
    }

    /// Total assignment, 1-indexed by variable id.
    fn model(&self) -> Vec<bool> {
        let mut model = vec![false; self.num_vars + 1];
        for v in 0..self.num_vars {
            model[v + 1] = self.assigns[v] == VAL_TRUE;
        }
        model
    }

    pub fn num_conflicts(&self) -> u64 {
        self.conflicts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_clauses(num_vars: usize, clauses: &[&[i32]]) -> SolveOutcome {
        let mut s = Cdcl::new(num_vars, 0);
        for c in clauses {
            if !s.add_clause(c) {
                return SolveOutcome::Unsat;
            }
        }
        s.solve(None)
    }

    #[test]
    fn trivial_sat_unsat() {
        assert!(matches!(solve_clauses(1, &[&[1]]), SolveOutcome::Sat(_)));
        assert_eq!(solve_clauses(1, &[&[1], &[-1]]), SolveOutcome::Unsat);
        assert_eq!(solve_clauses(2, &[&[1, 2], &[-1], &[-2]]), SolveOutcome::Unsat);
    }

    #[test]
    fn implication_chain() {
        // x1 and (x_i -> x_{i+1}) forces all true.
        let mut clauses: Vec<Vec<i32>> = vec![vec![1]];
        for i in 1..50 {
            clauses.push(vec![-i, i + 1]);
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        match solve_clauses(50, &refs) {
            SolveOutcome::Sat(model) => assert!((1..=50).all(|v| model[v])),
            other => panic!("expected SAT, got {other:?}"),
        }
    }

    #[test]
    fn pigeonhole_5_into_4_unsat() {
        let holes = 4;
        let pigeons = 5;
        let var = |p: usize, h: usize| (p * holes + h + 1) as i32;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for p in 0..pigeons {
            clauses.push((0..holes).map(|h| var(p, h)).collect());
        }
        for h in 0..holes {
            for a in 0..pigeons {
                for b in a + 1..pigeons {
                    clauses.push(vec![-var(a, h), -var(b, h)]);
                }
            }
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        assert_eq!(solve_clauses(pigeons * holes, &refs), SolveOutcome::Unsat);
    }

    #[test]
    fn xor_chain_parity_unsat() {
        // x1 ^ x2 = 1, x2 ^ x3 = 1, ..., x_{n-1} ^ x_n = 1, x1 = x_n for odd
        // chain length is unsatisfiable.
        let n = 9; // odd number of xor constraints
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for i in 1..=n {
            let (a, b) = (i as i32, (i % n + 1) as i32);
            clauses.push(vec![a, b]);
            clauses.push(vec![-a, -b]);
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        assert_eq!(solve_clauses(n, &refs), SolveOutcome::Unsat);
    }

    #[test]
    fn random_3sat_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let nv = rng.gen_range(3..=10);
            let nc = rng.gen_range(1..=40);
            let mut clauses: Vec<Vec<i32>> = Vec::new();
            for _ in 0..nc {
                let mut clause = Vec::new();
                for _ in 0..3 {
                    let v = rng.gen_range(1..=nv) as i32;
                    clause.push(if rng.gen() { v } else { -v });
                }
                clauses.push(clause);
            }
            // brute force
            let mut brute_sat = false;
            'outer: for mask in 0u32..(1 << nv) {
                for c in &clauses {
                    if !c.iter().any(|&l| {
                        let v = l.unsigned_abs() as usize - 1;
                        (mask >> v) & 1 == u32::from(l > 0)
                    }) {
                        continue 'outer;
                    }
                }
                brute_sat = true;
                break;
            }
            let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
            let got = solve_clauses(nv, &refs);
            match (brute_sat, got) {
                (true, SolveOutcome::Sat(model)) => {
                    for c in &clauses {
                        assert!(c.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0)));
                    }
                }
                (false, SolveOutcome::Unsat) => {}
                (expected, got) => panic!("brute={expected} solver={got:?}"),
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let nv = 30;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for _ in 0..100 {
            let mut clause = Vec::new();
            for _ in 0..3 {
                let v = rng.gen_range(1..=nv) as i32;
                clause.push(if rng.gen() { v } else { -v });
            }
            clauses.push(clause);
        }
        let run = |seed: u64| {
            let mut s = Cdcl::new(nv, seed);
            for c in &clauses {
                s.add_clause(c);
            }
            (s.solve(None), s.num_conflicts())
        };
        assert_eq!(run(7), run(7));
    }
}
