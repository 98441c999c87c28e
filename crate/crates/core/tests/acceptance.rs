//! End-to-end gate for the solver stack. Each criterion prints one
//! pass/fail line; trial seeds are derived so reruns see the same
//! instances.

use std::time::Instant;

use spcut_core::oracle::{brute_solve, enumerate_cs_cuts, BruteObjective};
use spcut_core::solver::{solve, solve_unguarded, Objective};
use spcut_core::sp::{build_from_script, SpOp, SpScript};
use spcut_core::verify::{
    max_cs_trial, min_cut_connected_trial, min_cut_trial, scaling_medians, step_recursion_trial,
    trial_seed, two_sum_family_trial, two_sum_solver_trial,
};

fn run_trials(name: &str, trials: u64, base: u64, trial: impl Fn(u64) -> bool) {
    let start = Instant::now();
    let failures: Vec<u64> = (0..trials)
        .map(|i| trial_seed(base, i))
        .filter(|&seed| !trial(seed))
        .collect();
    let status = if failures.is_empty() { "pass" } else { "FAIL" };
    println!(
        "{name}: {status} ({trials} trials, {:.1}s)",
        start.elapsed().as_secs_f64()
    );
    assert!(failures.is_empty(), "{name}: failing seeds {failures:?}");
}

#[test]
fn criterion_1_max_agrees_with_oracle_on_positive_weights() {
    run_trials("criterion 1 (max, positive weights)", 1000, 0xA1, |seed| {
        max_cs_trial(seed, 12, false)
    });
}

#[test]
fn criterion_2_max_agrees_with_oracle_on_signed_weights() {
    run_trials("criterion 2 (max, signed weights)", 1000, 0xA2, |seed| {
        max_cs_trial(seed, 12, true)
    });
}

#[test]
fn criterion_3_min_agrees_with_oracle_over_all_cuts() {
    run_trials("criterion 3 (min vs all cuts)", 1000, 0xA3, |seed| {
        min_cut_trial(seed, 12)
    });
}

#[test]
fn criterion_4_minimum_cuts_have_connected_sides_beyond_sp() {
    run_trials("criterion 4 (min cuts connected)", 500, 0xA4, |seed| {
        min_cut_connected_trial(seed, 9)
    });
}

#[test]
fn criterion_5_composed_family_matches_direct_enumeration() {
    run_trials("criterion 5 (composition family)", 200, 0xA5, |seed| {
        two_sum_family_trial(seed, 8)
    });
}

#[test]
fn criterion_6_composition_solver_matches_oracle_with_fixed_effort() {
    // Same seed base as criterion 5, so the solver sees the same pairs.
    run_trials("criterion 6 (composition solver)", 200, 0xA5, |seed| {
        two_sum_solver_trial(seed, 8)
    });
}

#[test]
fn criterion_7_step_recursion_holds_under_replay() {
    run_trials("criterion 7 (step recursion)", 200, 0xA7, |seed| {
        step_recursion_trial(seed, 9)
    });
}

#[test]
fn criterion_8_guard_witness_reproduces_exactly() {
    let script = SpScript {
        base_weight: 2,
        ops: vec![
            SpOp::SeriesSplit {
                edge: 0,
                left: 2,
                right: 3,
            },
            SpOp::ParallelAdd { edge: 1, weight: 4 },
        ],
    };
    let (g, labeling) = build_from_script(&script).unwrap();

    let guarded = solve(&g, &labeling, Objective::Max).unwrap();
    assert_eq!(guarded.weight, 6);
    assert!(guarded.is_connected_sides());

    let literal = solve_unguarded(&g, &labeling, Objective::Max).unwrap();
    assert_eq!(literal.weight, 9);
    assert!(!literal.coside_connected);

    // The oracle certifies the literal answer: no connected sides cut
    // reaches 9, and the best one is the guarded 6.
    let family = enumerate_cs_cuts(&g).unwrap();
    assert!(family.iter().all(|c| c.weight != literal.weight));
    assert!(family.iter().all(|c| c.edge_ids != literal.edge_ids));
    assert_eq!(brute_solve(&g, BruteObjective::MaxCs).unwrap().weight, 6);
    println!("criterion 8 (guard witness): pass (guarded 6, unguarded 9, 9 not a connected sides cut)");
}

#[test]
fn criterion_9_lean_solve_scales_linearly() {
    let start = Instant::now();
    let sizes = [1 << 14, 1 << 15, 1 << 16, 1 << 17];
    let medians = scaling_medians(&sizes, 5, 0xA9);
    let mut ratios = Vec::new();
    for pair in medians.windows(2) {
        ratios.push(pair[1].1 / pair[0].1.max(1e-9));
    }
    let ok = ratios.iter().all(|&r| r <= 3.0);
    let status = if ok { "pass" } else { "FAIL" };
    let shown: Vec<String> = medians
        .iter()
        .map(|(ops, t)| format!("{ops}:{:.1}ms", t * 1e3))
        .collect();
    println!(
        "criterion 9 (scaling): {status} (medians {}, ratios {:?}, {:.1}s)",
        shown.join(" "),
        ratios.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>(),
        start.elapsed().as_secs_f64()
    );
    assert!(ok, "doubling the size more than tripled the median: {ratios:?}");
}
