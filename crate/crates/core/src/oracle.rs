//! Brute-force reference answers for small graphs.
//!
//! Sides are enumerated as bitmasks over the vertices with vertex 0 pinned
//! to the complement, so each cut shows up exactly once. Connectivity inside
//! a mask runs on packed neighbor masks, a deliberately different route from
//! the adjacency-list search in [`crate::graph`], which keeps the oracle and
//! the fast solver from sharing a blind spot.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Cut, Multigraph, Weight};

/// Largest vertex count `enumerate_cs_cuts` and `brute_solve` accept.
pub const ENUMERATION_LIMIT: usize = 16;
/// Largest vertex count `verify_min_cut_connected` accepts; it inspects
/// every mask twice, so it stops two vertices earlier.
pub const MIN_CUT_CHECK_LIMIT: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph too large for exhaustive search (n = {n}, limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("oracle needs a connected graph")]
    Disconnected,
    #[error("minimum cut check needs strictly positive weights")]
    NotPositiveWeights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteObjective {
    /// Maximum weight over cuts with both sides connected.
    MaxCs,
    /// Minimum weight over cuts with both sides connected.
    MinCs,
    /// Minimum weight over all cuts, connected sides or not.
    MinAllCuts,
}

fn guard(g: &Multigraph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        return Err(OracleError::TooLarge { n: g.n(), limit });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(())
}

fn neighbor_masks(g: &Multigraph) -> Vec<u32> {
    let mut nbr = vec![0u32; g.n()];
    for e in g.edges() {
        nbr[e.u] |= 1 << e.v;
        nbr[e.v] |= 1 << e.u;
    }
    nbr
}

// Flood fill restricted to `mask`.
fn mask_connected(mask: u32, nbr: &[u32]) -> bool {
    debug_assert!(mask != 0);
    let mut seen = 1u32 << mask.trailing_zeros();
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            next |= nbr[v] & mask;
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen == mask
}

fn mask_cut_weight(g: &Multigraph, mask: u32) -> Weight {
    g.edges()
        .iter()
        .filter(|e| ((mask >> e.u) ^ (mask >> e.v)) & 1 == 1)
        .map(|e| e.weight)
        .sum()
}

fn mask_side(mask: u32) -> BTreeSet<usize> {
    let mut side = BTreeSet::new();
    let mut rest = mask;
    while rest != 0 {
        side.insert(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    side
}

// Ascending-vertex-list order of the two sides, decided at the lowest
// differing vertex without materializing either list.
fn mask_lex_less(a: u32, b: u32) -> bool {
    if a == b {
        return false;
    }
    let d = (a ^ b).trailing_zeros();
    if (a >> d) & 1 == 1 {
        // `a` holds the first vertex the sides disagree on, so it precedes
        // `b` unless `b` is a strict prefix (nothing past d).
        (b >> d) >> 1 != 0
    } else {
        (a >> d) >> 1 == 0
    }
}

/// Every cut with both sides connected, sides canonical (vertex 0 on the
/// complement), ordered by ascending vertex list of the side.
pub fn enumerate_cs_cuts(g: &Multigraph) -> Result<Vec<Cut>, OracleError> {
    guard(g, ENUMERATION_LIMIT)?;
    let n = g.n();
    let nbr = neighbor_masks(g);
    let full = (1u32 << n) - 1;
    let mut cuts = Vec::new();
    for raw in 1..1u32 << (n - 1) {
        let mask = raw << 1;
        if mask_connected(mask, &nbr) && mask_connected(full & !mask, &nbr) {
            let cut = g
                .cut_of_side(&mask_side(mask))
                .expect("masks are proper vertex subsets");
            debug_assert!(cut.is_connected_sides());
            cuts.push(cut);
        }
    }
    cuts.sort_by(|a, b| a.side.cmp(&b.side));
    Ok(cuts)
}

/// Exhaustive optimum for the given objective. Weight ties go to the side
/// whose ascending vertex list comes first.
pub fn brute_solve(g: &Multigraph, objective: BruteObjective) -> Result<Cut, OracleError> {
    guard(g, ENUMERATION_LIMIT)?;
    let n = g.n();
    let nbr = neighbor_masks(g);
    let full = (1u32 << n) - 1;
    let needs_cs = !matches!(objective, BruteObjective::MinAllCuts);
    let mut best: Option<(Weight, u32)> = None;
    for raw in 1..1u32 << (n - 1) {
        let mask = raw << 1;
        if needs_cs && !(mask_connected(mask, &nbr) && mask_connected(full & !mask, &nbr)) {
            continue;
        }
        let w = mask_cut_weight(g, mask);
        let take = match best {
            None => true,
            Some((bw, bm)) => {
                let better = match objective {
                    BruteObjective::MaxCs => w > bw,
                    BruteObjective::MinCs | BruteObjective::MinAllCuts => w < bw,
                };
                better || (w == bw && mask_lex_less(mask, bm))
            }
        };
        if take {
            best = Some((w, mask));
        }
    }
    // Connected graphs always have a connected-sides cut: isolate a leaf of
    // any spanning tree other than vertex 0.
    let (_, mask) = best.expect("connected graph has at least one cut");
    Ok(g.cut_of_side(&mask_side(mask))
        .expect("masks are proper vertex subsets"))
}

/// Checks that under strictly positive weights every minimum-weight cut has
/// both sides connected, by inspecting the full cut lattice.
pub fn verify_min_cut_connected(g: &Multigraph) -> Result<bool, OracleError> {
    guard(g, MIN_CUT_CHECK_LIMIT)?;
    if g.edges().iter().any(|e| e.weight <= 0) {
        return Err(OracleError::NotPositiveWeights);
    }
    let n = g.n();
    let nbr = neighbor_masks(g);
    let full = (1u32 << n) - 1;
    let mut min_weight = None;
    for raw in 1..1u32 << (n - 1) {
        let w = mask_cut_weight(g, raw << 1);
        if min_weight.is_none_or(|m| w < m) {
            min_weight = Some(w);
        }
    }
    let min_weight = min_weight.expect("connected graph has at least one cut");
    for raw in 1..1u32 << (n - 1) {
        let mask = raw << 1;
        if mask_cut_weight(g, mask) == min_weight
            && !(mask_connected(mask, &nbr) && mask_connected(full & !mask, &nbr))
        {
            return Ok(false);
        }
    }
    Ok(true)
}
