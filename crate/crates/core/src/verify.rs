//! Randomized cross-checks of the fast paths against the oracle.
//!
//! Every claim runs as independent trials with seeds derived from one base
//! seed, so a failure is reproducible from the reported trial seed alone.
//! Trials regenerate their instances instead of sharing state; the harness
//! has no knobs beyond trial count, base seed, and a size cap.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Multigraph, Weight};
use crate::oracle::{brute_solve, enumerate_cs_cuts, verify_min_cut_connected, BruteObjective};
use crate::solver::{solve, solve_unguarded, Objective};
use crate::sp::{build_from_script, random_sp_script, SeriesLabeling};
use crate::two_sum::{cs_cut_family_two_sum, solve_two_sum, two_sum, Subsolver};

/// One verifiable claim, named for what it checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// Solver optima match the oracle: Max on positive and signed weights,
    /// Min against the minimum over all cuts.
    OracleEquiv,
    /// The composed cut family from the parts equals direct enumeration on
    /// the composition.
    TwoSumFamily,
    /// Every minimum cut of a positive-weight connected graph has both
    /// sides connected.
    MinCutConnected,
    /// At each contraction step, the optimum either survives contraction or
    /// is the cut isolating the step's vertex.
    StepRecursion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: u64,
    /// Derived seeds of the failing trials; empty means the claim held.
    pub failures: Vec<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index))
}

/// Runs `trials` independent trials of `claim` and collects failing seeds.
pub fn run_claim(claim: Claim, trials: u64, base_seed: u64, max_n: usize) -> VerifyReport {
    let mut failures = Vec::new();
    for index in 0..trials {
        let seed = trial_seed(base_seed, index);
        let ok = match claim {
            Claim::OracleEquiv => {
                max_cs_trial(seed, max_n, false)
                    && max_cs_trial(splitmix64(seed), max_n, true)
                    && min_cut_trial(seed, max_n)
            }
            Claim::TwoSumFamily => two_sum_family_trial(seed, max_n),
            Claim::MinCutConnected => min_cut_connected_trial(seed, max_n),
            Claim::StepRecursion => step_recursion_trial(seed, max_n),
        };
        if !ok {
            failures.push(seed);
        }
    }
    VerifyReport { trials, failures }
}

/// Random series parallel instance with at most `max_n` vertices; creation
/// order is the series labeling.
pub fn random_sp_instance(
    seed: u64,
    max_n: usize,
    weights: (Weight, Weight),
    signed: bool,
) -> (Multigraph, SeriesLabeling) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops = rng.random_range(1..=max_n.saturating_sub(2).max(1));
    let script = random_sp_script(rng.random(), ops, weights, signed)
        .expect("weight range is fixed and valid");
    build_from_script(&script).expect("generated scripts replay cleanly")
}

/// Random connected multigraph, not necessarily series parallel: a random
/// spanning tree plus a few extra edges, positive weights.
pub fn random_connected_graph(seed: u64, max_n: usize) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_n.max(2));
    let mut edges: Vec<(usize, usize, Weight)> = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v, rng.random_range(1..=100)));
    }
    let extra = rng.random_range(0..=n);
    while edges.len() < n - 1 + extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u, v, rng.random_range(1..=100)));
        }
    }
    Multigraph::build(n, &edges).expect("spanning tree construction is valid")
}

// A part suitable for gluing: at least three vertices and at least one
// non-bridge edge, with the glued edge drawn from the non-bridge ones.
// Gluing on a bridge makes the composed cut family degenerate, so the
// harness stays on the meaningful side of the construction.
fn random_part(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    weights: (Weight, Weight),
    signed: bool,
) -> (Multigraph, usize) {
    loop {
        let ops = rng.random_range(1..=max_n.saturating_sub(2).max(1));
        let script = random_sp_script(rng.random(), ops, weights, signed)
            .expect("weight range is fixed and valid");
        let (g, _) = build_from_script(&script).expect("generated scripts replay cleanly");
        if g.n() < 3 {
            continue;
        }
        let cycle_edges: Vec<usize> = (0..g.m())
            .filter(|&id| !g.is_bridge(id).expect("edge id in range"))
            .collect();
        if cycle_edges.is_empty() {
            continue;
        }
        let e = cycle_edges[rng.random_range(0..cycle_edges.len())];
        return (g, e);
    }
}

/// The part pair a two-sum trial works on; both claims about compositions
/// draw from here so they see the same instances for the same seed.
pub fn random_part_pair(
    seed: u64,
    max_n: usize,
    signed: bool,
) -> (Multigraph, usize, Multigraph, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = if signed { (-50, 50) } else { (1, 100) };
    let (g1, e1) = random_part(&mut rng, max_n, weights, signed);
    let (g2, e2) = random_part(&mut rng, max_n, weights, signed);
    (g1, e1, g2, e2)
}

// The solver's answer revalidated from scratch: the claimed edge set must
// be a genuine connected sides cut of the claimed weight.
fn cut_checks_out(g: &Multigraph, edge_ids: &BTreeSet<usize>, weight: Weight) -> bool {
    match g.cut_from_edge_set(edge_ids) {
        Ok(rebuilt) => rebuilt.is_connected_sides() && rebuilt.weight == weight,
        Err(_) => false,
    }
}

/// Maximum connected sides cut agrees with the oracle on one random SP
/// instance, and the returned cut withstands independent revalidation.
pub fn max_cs_trial(seed: u64, max_n: usize, signed: bool) -> bool {
    let weights = if signed { (-50, 50) } else { (1, 100) };
    let (g, labeling) = random_sp_instance(seed, max_n, weights, signed);
    let Ok(cut) = solve(&g, &labeling, Objective::Max) else {
        return false;
    };
    let Ok(best) = brute_solve(&g, BruteObjective::MaxCs) else {
        return false;
    };
    cut.weight == best.weight && cut_checks_out(&g, &cut.edge_ids, cut.weight)
}

/// Minimum cut agrees with the oracle's minimum over ALL cuts, not just the
/// connected-sides ones, on one random positive-weight SP instance.
pub fn min_cut_trial(seed: u64, max_n: usize) -> bool {
    let (g, labeling) = random_sp_instance(seed, max_n, (1, 100), false);
    let Ok(cut) = solve(&g, &labeling, Objective::Min) else {
        return false;
    };
    let Ok(best) = brute_solve(&g, BruteObjective::MinAllCuts) else {
        return false;
    };
    cut.weight == best.weight && cut_checks_out(&g, &cut.edge_ids, cut.weight)
}

/// Every minimum cut of one random connected (not necessarily SP) graph has
/// connected sides.
pub fn min_cut_connected_trial(seed: u64, max_n: usize) -> bool {
    let g = random_connected_graph(seed, max_n);
    verify_min_cut_connected(&g) == Ok(true)
}

/// The composed cut family built from the parts equals direct enumeration
/// on the composition, as sets of edge-id sets.
pub fn two_sum_family_trial(seed: u64, max_n: usize) -> bool {
    let (g1, e1, g2, e2) = random_part_pair(seed, max_n, false);
    let Ok(family) = cs_cut_family_two_sum(&g1, e1, &g2, e2) else {
        return false;
    };
    let Ok(composed) = two_sum(&g1, e1, &g2, e2) else {
        return false;
    };
    let Ok(direct) = enumerate_cs_cuts(&composed.graph) else {
        return false;
    };
    let family_sets: BTreeSet<BTreeSet<usize>> =
        family.iter().map(|c| c.edge_ids.clone()).collect();
    let direct_sets: BTreeSet<BTreeSet<usize>> =
        direct.iter().map(|c| c.edge_ids.clone()).collect();
    family_sets == direct_sets && family.len() == family_sets.len()
}

/// The four-call composition solver matches the oracle on the composed
/// graph for both objectives, with the advertised effort counters; the Max
/// objective is exercised on signed weights too.
pub fn two_sum_solver_trial(seed: u64, max_n: usize) -> bool {
    let (g1, e1, g2, e2) = random_part_pair(seed, max_n, false);
    let Ok(composed) = two_sum(&g1, e1, &g2, e2) else {
        return false;
    };
    for (objective, brute) in [
        (Objective::Max, BruteObjective::MaxCs),
        (Objective::Min, BruteObjective::MinCs),
    ] {
        let Ok(best) = brute_solve(&composed.graph, brute) else {
            return false;
        };
        for subsolver in [Subsolver::Sp, Subsolver::Oracle] {
            let Ok(sol) = solve_two_sum(&g1, e1, &g2, e2, objective, subsolver) else {
                return false;
            };
            if sol.cut.weight != best.weight
                || sol.subsolver_calls != 4
                || sol.candidates_compared != 3
                || !cut_checks_out(&composed.graph, &sol.cut.edge_ids, sol.cut.weight)
            {
                return false;
            }
        }
    }
    // Positive-weight minimum over all cuts must coincide as well.
    let Ok(min_all) = brute_solve(&composed.graph, BruteObjective::MinAllCuts) else {
        return false;
    };
    let Ok(min_cs) = brute_solve(&composed.graph, BruteObjective::MinCs) else {
        return false;
    };
    if min_all.weight != min_cs.weight {
        return false;
    }

    let (s1, f1, s2, f2) = random_part_pair(splitmix64(seed), max_n, true);
    let Ok(signed_composed) = two_sum(&s1, f1, &s2, f2) else {
        return false;
    };
    let Ok(best) = brute_solve(&signed_composed.graph, BruteObjective::MaxCs) else {
        return false;
    };
    let Ok(sol) = solve_two_sum(&s1, f1, &s2, f2, Objective::Max, Subsolver::Sp) else {
        return false;
    };
    sol.cut.weight == best.weight && sol.subsolver_calls == 4 && sol.candidates_compared == 3
}

/// Replays the contraction independently of the solver and checks the step
/// recursion: the optimum of the current graph is the better of the next
/// graph's optimum and the step's own cut when its far side holds together.
pub fn step_recursion_trial(seed: u64, max_n: usize) -> bool {
    let (g, labeling) = random_sp_instance(seed, max_n, (-50, 50), true);
    let n = g.n();
    let mut quotient = g.clone();
    // Original id of each quotient vertex's class representative, and where
    // each original vertex currently lives.
    let mut rep_of: Vec<usize> = (0..n).collect();
    let mut loc: Vec<usize> = (0..n).collect();
    let Ok(initial) = brute_solve(&quotient, BruteObjective::MaxCs) else {
        return false;
    };
    let mut opt_cur = initial.weight;
    for j in (2..n).rev() {
        let qv = loc[labeling.order[j]];
        let nbrs: Vec<usize> = quotient.neighbors(qv).into_iter().collect();
        if nbrs.len() != 2 {
            return false;
        }
        // P0 leads to the smaller original rep, mirroring the solver.
        let (r0, r1) = if rep_of[nbrs[0]] < rep_of[nbrs[1]] {
            (nbrs[0], nbrs[1])
        } else {
            (nbrs[1], nbrs[0])
        };
        let c0 = quotient.closure(qv, r0).expect("neighbor has a closure");
        let c1 = quotient.closure(qv, r1).expect("neighbor has a closure");
        let candidate = c0.weight + c1.weight;
        let coside: BTreeSet<usize> = (0..quotient.n()).filter(|&v| v != qv).collect();
        let valid = quotient
            .is_connected_induced(&coside)
            .expect("coside is nonempty");

        let closure = if c0.weight <= c1.weight { &c0 } else { &c1 };
        let Ok(contraction) = quotient.contract_edge(closure.edge_ids[0]) else {
            return false;
        };
        let vertex_map = contraction.vertex_map;
        quotient = contraction.graph;
        // Only qv collides with its survivor under the map, so skipping it
        // leaves each new vertex the rep of its surviving class.
        let mut next_rep = vec![usize::MAX; quotient.n()];
        for old in 0..vertex_map.len() {
            if old != qv {
                next_rep[vertex_map[old]] = rep_of[old];
            }
        }
        rep_of = next_rep;
        for slot in loc.iter_mut() {
            *slot = vertex_map[*slot];
        }

        let Ok(after) = brute_solve(&quotient, BruteObjective::MaxCs) else {
            return false;
        };
        let mut expected = after.weight;
        if valid {
            expected = expected.max(candidate);
        }
        if opt_cur != expected {
            return false;
        }
        opt_cur = after.weight;
    }
    true
}

/// Median wall-clock seconds of the lean solve (no validity guard, no
/// per-step materialization) on one generated instance per op count.
/// Generation and graph construction happen outside the timed region.
pub fn scaling_medians(op_counts: &[usize], reps: usize, seed: u64) -> Vec<(usize, f64)> {
    let mut out = Vec::with_capacity(op_counts.len());
    for (i, &ops) in op_counts.iter().enumerate() {
        let script = random_sp_script(trial_seed(seed, i as u64), ops, (1, 100), false)
            .expect("weight range is fixed and valid");
        let (g, labeling) = build_from_script(&script).expect("generated scripts replay cleanly");
        let mut times: Vec<f64> = (0..reps.max(1))
            .map(|_| {
                let start = Instant::now();
                let cut = solve_unguarded(&g, &labeling, Objective::Max)
                    .expect("creation labeling is valid");
                let elapsed = start.elapsed().as_secs_f64();
                std::hint::black_box(cut.weight);
                elapsed
            })
            .collect();
        times.sort_by(f64::total_cmp);
        out.push((ops, times[times.len() / 2]));
    }
    out
}
