//! Structural invariants checked across generated instances.

use std::collections::BTreeSet;

use proptest::prelude::*;

use spcut_core::graph::Multigraph;
use spcut_core::oracle::{brute_solve, BruteObjective};
use spcut_core::solver::{solve, Objective};
use spcut_core::sp::{build_from_script, random_sp_script, recognize, validate_labeling, SpOp};
use spcut_core::verify::{random_part_pair, random_sp_instance, trial_seed};
use spcut_core::two_sum::two_sum;

fn instance(seed: u64, max_n: usize, signed: bool) -> (Multigraph, spcut_core::sp::SeriesLabeling) {
    let weights = if signed { (-50, 50) } else { (1, 100) };
    random_sp_instance(seed, max_n, weights, signed)
}

#[test]
fn scripts_replay_and_recognize_round_trip() {
    for seed in 0..1000u64 {
        let ops = (seed % 12) as usize;
        let signed = seed % 3 == 0;
        let weights = if signed { (-50, 50) } else { (1, 100) };
        let script = random_sp_script(seed, ops, weights, signed).unwrap();
        let (g, creation) = build_from_script(&script).unwrap();

        let splits = script
            .ops
            .iter()
            .filter(|op| matches!(op, SpOp::SeriesSplit { .. }))
            .count();
        assert_eq!(g.m(), 1 + ops, "seed {seed}");
        assert_eq!(g.n(), 2 + splits, "seed {seed}");
        assert!(g.is_connected(), "seed {seed}");
        assert!(validate_labeling(&g, &creation), "seed {seed}");

        let recognized = recognize(&g).unwrap();
        assert!(validate_labeling(&g, &recognized), "seed {seed}");
    }
}

#[test]
fn recognition_verdict_survives_edge_reordering() {
    for seed in 0..100u64 {
        let (g, _) = instance(seed, 9, false);
        let mut edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
        edges.reverse();
        let reordered = Multigraph::build(g.n(), &edges).unwrap();
        assert!(recognize(&reordered).is_ok(), "seed {seed}");
    }
    // A non-SP graph stays non-SP under reordering.
    let k4: Vec<_> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(u, v)| (u, v, 1))
        .collect();
    for rot in 0..k4.len() {
        let mut edges = k4.clone();
        edges.rotate_left(rot);
        let g = Multigraph::build(4, &edges).unwrap();
        assert!(recognize(&g).is_err());
    }
}

#[test]
fn cut_flags_agree_with_induced_connectivity_exhaustively() {
    for seed in 0..50u64 {
        let (g, _) = instance(seed, 8, false);
        let n = g.n();
        for mask in 1..(1u32 << n) - 1 {
            let side: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let coside: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            let cut = g.cut_of_side(&side).unwrap();
            let side_ok = g.is_connected_induced(&side).unwrap();
            let coside_ok = g.is_connected_induced(&coside).unwrap();
            // The cut stores the canonical side (no vertex 0), so the flags
            // may be swapped relative to the query side.
            let (want_side, want_co) = if side.contains(&0) {
                (coside_ok, side_ok)
            } else {
                (side_ok, coside_ok)
            };
            assert_eq!(cut.side_connected, want_side, "seed {seed} mask {mask}");
            assert_eq!(cut.coside_connected, want_co, "seed {seed} mask {mask}");
        }
    }
}

proptest! {
    #[test]
    fn closure_weights_partition_edge_weights(seed in any::<u64>()) {
        let (g, _) = instance(seed, 12, true);
        let mut closure_total = 0i64;
        let mut seen = BTreeSet::new();
        for v in 0..g.n() {
            let nbrs = g.neighbors(v);
            prop_assert_eq!(g.series_degree(v), nbrs.len());
            for u in nbrs {
                if seen.insert((v.min(u), v.max(u))) {
                    let c = g.closure(v, u).unwrap();
                    let member_sum: i64 =
                        c.edge_ids.iter().map(|&id| g.edges()[id].weight).sum();
                    prop_assert_eq!(c.weight, member_sum);
                    closure_total += c.weight;
                }
            }
        }
        let edge_total: i64 = g.edges().iter().map(|e| e.weight).sum();
        prop_assert_eq!(closure_total, edge_total);
    }

    #[test]
    fn complementary_sides_give_the_same_cut(seed in any::<u64>(), pick in any::<u64>()) {
        let (g, _) = instance(seed, 12, true);
        let n = g.n();
        let mask = 1 + pick % ((1 << n) - 2) as u64;
        let side: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let coside: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        prop_assert_eq!(g.cut_of_side(&side).unwrap(), g.cut_of_side(&coside).unwrap());
    }

    #[test]
    fn solve_weight_is_labeling_invariant(seed in any::<u64>(), signed in any::<bool>()) {
        let (g, creation) = instance(seed, 12, signed);
        let recognized = recognize(&g).unwrap();
        let by_creation = solve(&g, &creation, Objective::Max).unwrap();
        let by_recognition = solve(&g, &recognized, Objective::Max).unwrap();
        prop_assert_eq!(by_creation.weight, by_recognition.weight);
        if !signed {
            let min_creation = solve(&g, &creation, Objective::Min).unwrap();
            let min_recognition = solve(&g, &recognized, Objective::Min).unwrap();
            prop_assert_eq!(min_creation.weight, min_recognition.weight);
        }
    }

    #[test]
    fn solve_scales_with_the_weights(seed in any::<u64>(), lambda in 2i64..=7) {
        let (g, labeling) = instance(seed, 10, true);
        let scaled_edges: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.weight * lambda))
            .collect();
        let scaled = Multigraph::build(g.n(), &scaled_edges).unwrap();
        let base = solve(&g, &labeling, Objective::Max).unwrap();
        let big = solve(&scaled, &labeling, Objective::Max).unwrap();
        prop_assert_eq!(big.weight, base.weight * lambda);
        prop_assert_eq!(big.edge_ids, base.edge_ids);
        prop_assert_eq!(big.side, base.side);
    }

    #[test]
    fn solve_returns_a_self_consistent_cut(seed in any::<u64>(), signed in any::<bool>()) {
        let (g, labeling) = instance(seed, 12, signed);
        let cut = solve(&g, &labeling, Objective::Max).unwrap();
        prop_assert!(cut.is_connected_sides());
        let from_side = g.cut_of_side(&cut.side).unwrap();
        prop_assert_eq!(&from_side, &cut);
        let from_edges = g.cut_from_edge_set(&cut.edge_ids).unwrap();
        prop_assert_eq!(&from_edges, &cut);
        prop_assert!(!cut.side.contains(&0));
    }

    #[test]
    fn solve_matches_oracle_on_small_instances(seed in any::<u64>()) {
        let (g, labeling) = instance(seed, 9, true);
        let cut = solve(&g, &labeling, Objective::Max).unwrap();
        let best = brute_solve(&g, BruteObjective::MaxCs).unwrap();
        prop_assert_eq!(cut.weight, best.weight);
    }

    #[test]
    fn composition_counts_add_up(seed in any::<u64>()) {
        let (g1, e1, g2, e2) = random_part_pair(trial_seed(seed, 0), 8, false);
        let composed = two_sum(&g1, e1, &g2, e2).unwrap();
        prop_assert_eq!(composed.graph.n(), g1.n() + g2.n() - 2);
        prop_assert_eq!(composed.graph.m(), g1.m() + g2.m() - 2);
        let mut targets: Vec<usize> = composed
            .left_map
            .iter()
            .chain(composed.right_map.iter())
            .flatten()
            .copied()
            .collect();
        targets.sort_unstable();
        let expected: Vec<usize> = (0..composed.graph.m()).collect();
        prop_assert_eq!(targets, expected);
        prop_assert_eq!(composed.left_map[e1], None);
        prop_assert_eq!(composed.right_map[e2], None);
    }
}
