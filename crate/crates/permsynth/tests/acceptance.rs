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

//! Acceptance suite: every release-gating claim, one test per criterion,
//! each printing a single PASS line (run with `--nocapture` to see them).
//! Tolerances are pinned here, in code.
//!
//! The heavyweight statistical criteria (3 and 4) run hundreds of exact
//! solver instances; expect the full suite to take on the order of hours on
//! a small machine. Set `PERMSYNTH_ACCEPT_EXTENDED=1` to also run the
//! hours-scale full-enumeration extension of criterion 3.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use permsynth::baselines::{
    bfs_cnot_distances, bfs_swap_distances, matrix_key, odd_even_sort, swap_state_key_of_permutation,
};
use permsynth::compile::{absorb_swaps, collapse_swap_blocks, generate_qv, resynthesize, route};
use permsynth::gf2::{Gf2Matrix, Permutation};
use permsynth::lrsynth::{lr_synth, LrOptions};
use permsynth::optimal::{exact_synth, ExactOptions, ExactTarget};
use permsynth::rowcol::{rowcol_synth, OrderStrategy, RowcolOptions};
use permsynth::topology::CouplingGraph;
use permsynth::{synthesize, GateKind, MethodOptions, Objective, SynthMethod};

fn opts() -> ExactOptions {
    ExactOptions::default()
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::new(idx.clone()).unwrap());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| idx[i] < idx[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| idx[j] > idx[i]).unwrap();
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
    out
}

fn seeded_perms(n: usize, count: usize, seed: u64) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Permutation::random(n, &mut rng)).collect()
}

/// Criterion 1: exact solver optima equal the BFS brute-force oracle, with
/// zero tolerance, over all 168 invertible 3x3 matrices on path:3 and the
/// triangle, and all 24 permutations of path:4 (both gate kinds, both
/// objectives).
#[test]
fn acceptance_01_oracle_equivalence() {
    let mut checked = 0usize;
    for g in [CouplingGraph::path(3).unwrap(), CouplingGraph::ring(3).unwrap()] {
        for objective in [Objective::Size, Objective::Depth] {
            let oracle = bfs_cnot_distances(&g, objective).unwrap();
            assert_eq!(oracle.len(), 168, "GL(3, F2) has 168 elements");
            let results: Vec<(u64, usize)> = oracle
                .par_iter()
                .map(|(&key, _)| {
                    let mut m = Gf2Matrix::zero(3);
                    for i in 0..3 {
                        for k in 0..3 {
                            m.set(i, k, key & (1 << (i * 3 + k)) != 0);
                        }
                    }
                    let r = exact_synth(&g, ExactTarget::Matrix(&m), GateKind::Cnot, objective, &opts())
                        .unwrap();
                    (key, r.optimum)
                })
                .collect();
            for (key, got) in results {
                assert_eq!(got, oracle[&key] as usize, "matrix key {key:#x} on {g:?}");
                checked += 1;
            }
        }
    }
    let g4 = CouplingGraph::path(4).unwrap();
    for objective in [Objective::Size, Objective::Depth] {
        let cnot_oracle = bfs_cnot_distances(&g4, objective).unwrap();
        let swap_oracle = bfs_swap_distances(&g4, objective).unwrap();
        for p in all_permutations(4) {
            let m = Gf2Matrix::from_permutation(&p);
            let rc = exact_synth(&g4, ExactTarget::Perm(&p), GateKind::Cnot, objective, &opts())
                .unwrap();
            assert_eq!(rc.optimum, cnot_oracle[&matrix_key(&m)] as usize, "cnot {p}");
            let rs = exact_synth(&g4, ExactTarget::Perm(&p), GateKind::Swap, objective, &opts())
                .unwrap();
            assert_eq!(
                rs.optimum,
                swap_oracle[&swap_state_key_of_permutation(&p)] as usize,
                "swap {p}"
            );
            checked += 2;
        }
    }
    println!("CRITERION 1: PASS - {checked} exact optima equal the BFS oracle");
}

/// Criterion 2: SWAP-size optima on paths equal permutation inversion
/// counts for every permutation with n <= 5. Zero tolerance.
#[test]
fn acceptance_02_inversion_identity() {
    let mut checked = 0usize;
    for n in 2..=5 {
        let g = CouplingGraph::path(n).unwrap();
        for p in all_permutations(n) {
            let r = exact_synth(&g, ExactTarget::Perm(&p), GateKind::Swap, Objective::Size, &opts())
                .unwrap();
            assert_eq!(r.optimum, p.inversions(), "{p} on path:{n}");
            checked += 1;
        }
    }
    println!("CRITERION 2: PASS - swap-size equals inversions on {checked} permutations");
}

/// Criterion 3: over 500 seeded-random permutations on path:8, the
/// CNOT-depth optimum never exceeds three times the SWAP-depth optimum, and
/// is strictly smaller for 96% +/- 4% of the sample. The optional extended
/// run (PERMSYNTH_ACCEPT_EXTENDED=1) additionally reproduces max CNOT depth
/// 2n+3 = 19 over the full 8! enumeration and reversal depth <= 2n+2 = 18.
#[test]
fn acceptance_03_cnot_vs_swap_depth() {
    let g = CouplingGraph::path(8).unwrap();
    let perms = seeded_perms(8, 500, 0xC3);
    let rows: Vec<(usize, usize)> = perms
        .par_iter()
        .map(|p| {
            let cnot =
                exact_synth(&g, ExactTarget::Perm(p), GateKind::Cnot, Objective::Depth, &opts())
                    .unwrap()
                    .optimum;
            let swap =
                exact_synth(&g, ExactTarget::Perm(p), GateKind::Swap, Objective::Depth, &opts())
                    .unwrap()
                    .optimum;
            (cnot, swap)
        })
        .collect();
    let mut strictly_better = 0usize;
    for (i, &(cnot, swap)) in rows.iter().enumerate() {
        assert!(
            cnot <= 3 * swap,
            "perm {}: cnot depth {cnot} exceeds 3x swap depth {swap}",
            perms[i]
        );
        if cnot < 3 * swap {
            strictly_better += 1;
        }
    }
    let fraction = strictly_better as f64 / rows.len() as f64;
    assert!(
        (0.92..=1.0).contains(&fraction),
        "strictly-better fraction {fraction:.3} outside 96% +/- 4%"
    );
    println!(
        "CRITERION 3: PASS - cnot depth <= 3x swap depth on 500/500; strictly smaller on {:.1}%",
        100.0 * fraction
    );

    if std::env::var("PERMSYNTH_ACCEPT_EXTENDED").as_deref() == Ok("1") {
        let reversal = exact_synth(
            &g,
            ExactTarget::Perm(&Permutation::reversal(8)),
            GateKind::Cnot,
            Objective::Depth,
            &opts(),
        )
        .unwrap();
        assert!(reversal.optimum <= 18, "reversal depth {}", reversal.optimum);
        let all = all_permutations(8);
        let max = all
            .par_iter()
            .map(|p| {
                exact_synth(&g, ExactTarget::Perm(p), GateKind::Cnot, Objective::Depth, &opts())
                    .unwrap()
                    .optimum
            })
            .max()
            .unwrap();
        assert_eq!(max, 19, "full sweep max CNOT depth");
        println!("CRITERION 3 (extended): PASS - full sweep max depth 19, reversal <= 18");
    }
}

/// Criterion 4: over 1000 seeded-random permutations on path:8,
/// ROWCOL-Hybrid with exhaustive order search beats the SWAP-size optimum
/// (3 CNOTs per SWAP; on a path that optimum equals the inversion count,
/// the identity criterion 2 proves) for 88.8% +/- 4% of instances.
#[test]
fn acceptance_04_rowcol_hybrid_vs_swap_size() {
    let g = CouplingGraph::path(8).unwrap();
    let perms = seeded_perms(8, 1000, 0xC4);
    let rowcol_opts = RowcolOptions {
        strategy: OrderStrategy::Exhaustive,
        hybrid_threshold: 4,
        exact: opts(),
    };
    let wins: usize = perms
        .par_iter()
        .map(|p| {
            let m = Gf2Matrix::from_permutation(p);
            let r = rowcol_synth(&g, &m, &rowcol_opts).unwrap();
            assert!(r.circuit.verify(&g, &m).passed());
            usize::from(r.circuit.size() < 3 * p.inversions())
        })
        .sum();
    let fraction = wins as f64 / perms.len() as f64;
    assert!(
        (0.848..=0.928).contains(&fraction),
        "win fraction {fraction:.3} outside 88.8% +/- 4%"
    );
    println!(
        "CRITERION 4: PASS - rowcol-hybrid beats swap-size-optimal on {:.1}% of 1000",
        100.0 * fraction
    );
}

/// Criterion 5: vertex elimination order matters. Over 200 random path:8
/// permutations, the best and worst fixed orders differ in mean circuit
/// size by a strictly positive margin.
#[test]
fn acceptance_05_order_sensitivity() {
    let g = CouplingGraph::path(8).unwrap();
    let perms = seeded_perms(8, 200, 0xC5);
    // all valid full elimination orders of a path:8 (choose an end each step)
    fn orders(g: &CouplingGraph, alive: &mut Vec<bool>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let remaining = alive.iter().filter(|&&a| a).count();
        if remaining == 1 {
            let mut order = prefix.clone();
            order.extend((0..g.n()).filter(|&v| alive[v]));
            out.push(order);
            return;
        }
        for v in g.non_cut_vertices_within(alive) {
            alive[v] = false;
            prefix.push(v);
            orders(g, alive, prefix, out);
            prefix.pop();
            alive[v] = true;
        }
    }
    let mut all_orders = Vec::new();
    orders(&g, &mut vec![true; 8], &mut Vec::new(), &mut all_orders);
    assert_eq!(all_orders.len(), 128);

    let means: Vec<f64> = all_orders
        .par_iter()
        .map(|order| {
            let ro = RowcolOptions {
                strategy: OrderStrategy::Fixed(order.clone()),
                hybrid_threshold: 1,
                exact: opts(),
            };
            let total: usize = perms
                .iter()
                .map(|p| {
                    rowcol_synth(&g, &Gf2Matrix::from_permutation(p), &ro)
                        .unwrap()
                        .circuit
                        .size()
                })
                .sum();
            total as f64 / perms.len() as f64
        })
        .collect();
    let best = means.iter().cloned().fold(f64::INFINITY, f64::min);
    let worst = means.iter().cloned().fold(0.0, f64::max);
    assert!(best < worst, "best {best} not better than worst {worst}");
    println!(
        "CRITERION 5: PASS - mean size spans {best:.2}..{worst:.2} across 128 orders"
    );
}

/// Criterion 6: universal correctness. Every circuit from every method on
/// randomized suites over paths, rings, trees, and grids passes the verify
/// oracle and uses only on-graph gates. 100% tolerance.
#[test]
fn acceptance_06_universal_correctness() {
    let mut suites: Vec<CouplingGraph> = Vec::new();
    for n in [4usize, 8, 16, 32] {
        suites.push(CouplingGraph::path(n).unwrap());
        suites.push(CouplingGraph::ring(n).unwrap());
    }
    suites.push(CouplingGraph::grid(2, 2).unwrap());
    suites.push(CouplingGraph::grid(4, 4).unwrap());
    suites.push(CouplingGraph::grid(4, 8).unwrap());
    for (i, n) in [4usize, 8, 16, 32].iter().enumerate() {
        suites.push(random_tree_for_test(*n, 0xC6 + i as u64));
    }

    let method_opts = MethodOptions {
        rowcol_order: OrderStrategy::Sample { k: 3, seed: 0 },
        ..Default::default()
    };
    let mut total = 0usize;
    for g in &suites {
        let perms = seeded_perms(g.n(), 50, 0x66 ^ g.n() as u64);
        let mut methods = vec![
            SynthMethod::Rowcol,
            SynthMethod::RowcolHybrid,
            SynthMethod::LrSynth,
            SynthMethod::LrSynthHybrid,
        ];
        if g.is_path() {
            methods.push(SynthMethod::OddEven);
        }
        // exact methods join on the sizes where exhaustive refutation is
        // tractable; the scalable methods cover the full size range
        if g.n() <= 4 {
            methods.push(SynthMethod::CnotOpt);
            methods.push(SynthMethod::SwapOpt);
        }
        let count: usize = perms
            .par_iter()
            .map(|p| {
                let mut c = 0;
                for &m in &methods {
                    let r = synthesize(g, p, m, Objective::Depth, &method_opts).unwrap();
                    let outcome = r.circuit.verify_permutation(g, p);
                    assert!(
                        outcome.passed(),
                        "{m} failed on {p} over {g:?}: {outcome:?}"
                    );
                    c += 1;
                }
                c
            })
            .sum();
        total += count;
    }
    println!("CRITERION 6: PASS - {total} circuits verified across {} graphs", suites.len());
}

fn random_tree_for_test(n: usize, seed: u64) -> CouplingGraph {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    CouplingGraph::new(n, edges).unwrap()
}

/// Criterion 7: on path reversals with n in {8, 16, 32, 64}, LR-Synth's
/// SWAP count stays within 10% of odd-even's n(n-1)/2 and its depth within
/// 30% of odd-even's n.
#[test]
fn acceptance_07_lr_synth_vs_odd_even_reversals() {
    for n in [8usize, 16, 32, 64] {
        let g = CouplingGraph::path(n).unwrap();
        let p = Permutation::reversal(n);
        let r = lr_synth(&g, &p, &LrOptions::default()).unwrap();
        let oe = odd_even_sort(&g, &p).unwrap();
        assert!(r.circuit.verify_permutation(&g, &p).passed());
        let (size, oe_size) = (r.circuit.size() as f64, oe.size() as f64);
        assert!(
            (size - oe_size).abs() <= 0.10 * oe_size,
            "n={n}: size {size} vs odd-even {oe_size}"
        );
        assert!(
            (r.circuit.depth() as f64) <= 1.30 * n as f64,
            "n={n}: depth {} vs 1.3n",
            r.circuit.depth()
        );
    }
    println!("CRITERION 7: PASS - reversal size within 10% and depth within 30% of odd-even");
}

/// Criterion 8a: LR-Synth runtime on rings grows smoothly with n: the
/// max/median ratio over 50 random permutations stays <= 3 for n in
/// {16, 32, 64, 100} (each instance timed as the median of 3 runs to damp
/// scheduler jitter), and a 100-qubit instance completes in under 60 s.
#[test]
fn acceptance_08a_lr_synth_scaling() {
    for n in [16usize, 32, 64, 100] {
        let g = CouplingGraph::ring(n).unwrap();
        let perms = seeded_perms(n, 50, 0x8A ^ n as u64);
        let lr_opts = LrOptions::default();
        let mut times: Vec<f64> = Vec::with_capacity(perms.len());
        for p in &perms {
            let mut samples = [0f64; 3];
            for slot in &mut samples {
                let t = Instant::now();
                let r = lr_synth(&g, p, &lr_opts).unwrap();
                *slot = t.elapsed().as_secs_f64();
                assert!(r.circuit.verify_permutation(&g, p).passed());
            }
            samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
            times.push(samples[1]);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2].max(1e-9);
        let max = *times.last().unwrap();
        assert!(
            max / median <= 3.0,
            "ring:{n}: max {max:.4}s / median {median:.4}s = {:.2} > 3",
            max / median
        );
        if n == 100 {
            assert!(max < 60.0, "100-qubit instance took {max:.1}s");
        }
        println!(
            "CRITERION 8a (ring:{n}): max/median = {:.2} (median {:.4}s)",
            max / median,
            median
        );
    }
    println!("CRITERION 8a: PASS - LR-Synth ring runtimes are smooth; 100q under 60 s");
}

/// Criterion 8b: contrast run. The exact SWAP-depth solver (paper-faithful
/// core encoding) should exhibit >= 10x per-instance runtime spread on
/// ring:24 over 50 random permutations. A ring:32 demonstration is printed
/// first for context: the spread phenomenon reproduces clearly there.
#[test]
fn acceptance_08b_exact_swap_depth_spread() {
    let exact = ExactOptions {
        plain_encoding: true,
        time_limit: Some(Duration::from_secs(120)),
        ..Default::default()
    };
    let run_ring = |n: usize, count: usize, seed: u64| -> Vec<f64> {
        let g = CouplingGraph::ring(n).unwrap();
        let perms = seeded_perms(n, count, seed);
        perms
            .par_iter()
            .map(|p| {
                let t = Instant::now();
                let _ = exact_synth(&g, ExactTarget::Perm(p), GateKind::Swap, Objective::Depth, &exact);
                t.elapsed().as_secs_f64()
            })
            .collect()
    };
    let spread = |times: &mut Vec<f64>| -> (f64, f64, f64) {
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2].max(1e-9);
        let max = *times.last().unwrap();
        (median, max, max / median)
    };

    let mut demo = run_ring(32, 20, 0x8B32);
    let (dm, dx, dr) = spread(&mut demo);
    println!(
        "CRITERION 8b (context, ring:32, 20 perms): median {dm:.2}s max {dx:.2}s ratio {dr:.1}"
    );

    let mut times = run_ring(24, 50, 0x8B24);
    let (median, max, ratio) = spread(&mut times);
    println!(
        "CRITERION 8b (ring:24, 50 perms): median {median:.3}s max {max:.3}s ratio {ratio:.1}"
    );
    assert!(
        ratio >= 10.0,
        "exact SWAP-depth spread on ring:24 is {ratio:.1}x (< 10x); the hard-permutation \
         regime begins above 24 qubits for this solver (see the ring:32 context line)"
    );
    println!("CRITERION 8b: PASS - exact solver spread on ring:24 is {ratio:.1}x");
}

/// Criterion 9: compile pipeline on 20 seeded QV circuits (n = 8, path).
/// Size-objective resynthesis never increases global size; the
/// depth-objective block audit surfaces at least one instance where a
/// locally accepted depth improvement fails to improve global depth.
#[test]
fn acceptance_09_compile_pipeline() {
    let g = CouplingGraph::path(8).unwrap();
    let method_opts = MethodOptions::default();
    let mut local_win_global_loss = 0usize;
    for seed in 0..20u64 {
        let logical = generate_qv(8, 8, 0x90 + seed).unwrap();
        let routed = route(&logical, &g, 0x90 + seed).unwrap();
        let (absorbed, _) = absorb_swaps(&routed);
        let collapsed = collapse_swap_blocks(&absorbed, &g).unwrap();

        let (_, size_report) =
            resynthesize(&collapsed, &g, SynthMethod::RowcolHybrid, Objective::Size, &method_opts)
                .unwrap();
        assert!(
            size_report.after.size <= size_report.before.size,
            "seed {seed}: size grew {} -> {}",
            size_report.before.size,
            size_report.after.size
        );

        let (_, depth_report) =
            resynthesize(&collapsed, &g, SynthMethod::SwapOpt, Objective::Depth, &method_opts)
                .unwrap();
        let any_accepted = depth_report.blocks.iter().any(|b| b.accepted);
        if any_accepted && depth_report.after.depth >= depth_report.before.depth {
            local_win_global_loss += 1;
        }
    }
    assert!(
        local_win_global_loss >= 1,
        "no instance showed a local depth win without a global one"
    );
    println!(
        "CRITERION 9: PASS - size never grew; {local_win_global_loss}/20 instances show local \
         depth wins that fail globally"
    );
}

/// Criterion 10: figure-only paper data is recorded, not asserted. LR-Synth
/// must verify and stay within 3n depth on paths; tree and grid mean depths
/// are printed for inspection only.
#[test]
fn acceptance_10_recorded_means() {
    // asserted part: paths
    for n in [8usize, 16, 32] {
        let g = CouplingGraph::path(n).unwrap();
        for p in seeded_perms(n, 20, 0xA0 ^ n as u64) {
            let r = lr_synth(&g, &p, &LrOptions::default()).unwrap();
            assert!(r.circuit.verify_permutation(&g, &p).passed());
            assert!(
                r.circuit.depth() <= 3 * n,
                "path:{n} depth {} above 3n",
                r.circuit.depth()
            );
        }
    }
    // recorded part: trees and grids
    for (label, g) in [
        ("tree:16", random_tree_for_test(16, 0xA16)),
        ("tree:32", random_tree_for_test(32, 0xA32)),
        ("grid:4x4", CouplingGraph::grid(4, 4).unwrap()),
        ("grid:6x6", CouplingGraph::grid(6, 6).unwrap()),
    ] {
        let perms = seeded_perms(g.n(), 20, 0xAA);
        let (mut sizes, mut depths) = (0usize, 0usize);
        for p in &perms {
            let r = lr_synth(&g, p, &LrOptions::default()).unwrap();
            assert!(r.circuit.verify_permutation(&g, p).passed());
            sizes += r.circuit.size();
            depths += r.circuit.depth();
        }
        println!(
            "CRITERION 10 (recorded, {label}): mean size {:.1}, mean depth {:.1} over 20 perms",
            sizes as f64 / 20.0,
            depths as f64 / 20.0
        );
    }
    println!("CRITERION 10: PASS - paths within 3n depth; tree/grid means recorded above");
}
