//! Composing two graphs over a shared edge and solving on the composition.
//!
//! The composition identifies one edge of each part endpoint to endpoint
//! (lower id to lower id) and drops both glued edges; everything else keeps
//! its weight and gets a composed edge id. Cuts of the composition decompose
//! along the parts: a cut either avoids the glue seam and lives in one part,
//! or crosses it and splits into one cut per part, each containing its glued
//! edge. `solve_two_sum` exploits that to answer optimum-cut queries with
//! four subsolver calls, never touching the composition itself.
//!
//! The cut decomposition assumes each glued edge lies on a cycle of its
//! part. Gluing on a bridge lets some "cuts" of the family fall apart into
//! three pieces; those surface as `NotACutSet` errors rather than silently
//! wrong answers.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Cut, GraphError, Multigraph, Weight};
use crate::oracle::{brute_solve, enumerate_cs_cuts, BruteObjective, OracleError};
use crate::solver::{solve_cs, Objective, SolveError};
use crate::sp::{recognize, RecognizeError};

/// Largest part size `cs_cut_family_two_sum` enumerates.
pub const FAMILY_LIMIT: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoSumError {
    #[error("edge {0} does not exist in its part")]
    MissingEdge(usize),
    #[error("each part must be connected with at least two edges")]
    DegeneratePart,
    #[error("composition is disconnected")]
    Disconnected,
    #[error("part too large to enumerate (n = {n}, limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A composed graph plus the bookkeeping to move edge ids across it.
/// `left_map[i]`/`right_map[i]` give the composed id of part edge `i`,
/// `None` exactly for the glued edge; `glue` is the identified vertex pair
/// in composed ids.
#[derive(Debug, Clone)]
pub struct TwoSumResult {
    pub graph: Multigraph,
    pub left_map: Vec<Option<usize>>,
    pub right_map: Vec<Option<usize>>,
    pub glue: (usize, usize),
}

/// How `solve_two_sum` answers queries on the parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsolver {
    /// Recognize a series labeling and run the contraction solver.
    Sp,
    /// Exhaustive enumeration; parts must stay within the oracle bound.
    Oracle,
}

/// A solved composition together with the effort counters: the procedure
/// always makes two subsolver calls per part and compares one candidate per
/// part plus the combined one.
#[derive(Debug, Clone)]
pub struct TwoSumSolution {
    pub cut: Cut,
    pub subsolver_calls: usize,
    pub candidates_compared: usize,
}

fn sorted(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_part(g: &Multigraph, e: usize) -> Result<(), TwoSumError> {
    if e >= g.m() {
        return Err(TwoSumError::MissingEdge(e));
    }
    if g.m() < 2 || !g.is_connected() {
        return Err(TwoSumError::DegeneratePart);
    }
    Ok(())
}

/// Glues `g1` and `g2` along `e1`/`e2`: lower-id endpoints are identified
/// with each other, both glued edges are deleted, left edges come before
/// right edges in the composed numbering, and the right part's remaining
/// vertices get fresh ids above `g1`'s range in ascending order.
pub fn two_sum(
    g1: &Multigraph,
    e1: usize,
    g2: &Multigraph,
    e2: usize,
) -> Result<TwoSumResult, TwoSumError> {
    check_part(g1, e1)?;
    check_part(g2, e2)?;
    let glued1 = g1.edges()[e1];
    let glued2 = g2.edges()[e2];
    let (a_lo, a_hi) = sorted(glued1.u, glued1.v);
    let (b_lo, b_hi) = sorted(glued2.u, glued2.v);

    let mut vertex_map = vec![usize::MAX; g2.n()];
    vertex_map[b_lo] = a_lo;
    vertex_map[b_hi] = a_hi;
    let mut next = g1.n();
    for v in 0..g2.n() {
        if vertex_map[v] == usize::MAX {
            vertex_map[v] = next;
            next += 1;
        }
    }

    let mut edges = Vec::with_capacity(g1.m() + g2.m() - 2);
    let mut left_map = vec![None; g1.m()];
    let mut right_map = vec![None; g2.m()];
    for e in g1.edges() {
        if e.id != e1 {
            left_map[e.id] = Some(edges.len());
            edges.push((e.u, e.v, e.weight));
        }
    }
    for e in g2.edges() {
        if e.id != e2 {
            right_map[e.id] = Some(edges.len());
            edges.push((vertex_map[e.u], vertex_map[e.v], e.weight));
        }
    }

    let graph = Multigraph::build(g1.n() + g2.n() - 2, &edges)?;
    if !graph.is_connected() {
        return Err(TwoSumError::Disconnected);
    }
    Ok(TwoSumResult {
        graph,
        left_map,
        right_map,
        glue: (a_lo, a_hi),
    })
}

fn lift(ids: &BTreeSet<usize>, map: &[Option<usize>], glued: usize) -> BTreeSet<usize> {
    ids.iter()
        .filter(|&&i| i != glued)
        .map(|&i| map[i].expect("only the glued edge maps to nothing"))
        .collect()
}

/// The connected sides cuts of the composition, assembled from the parts:
/// part cuts avoiding their glued edge carry over as they are, and pairs of
/// part cuts each containing its glued edge merge into one. Deduplicated by
/// edge set, ordered by side.
pub fn cs_cut_family_two_sum(
    g1: &Multigraph,
    e1: usize,
    g2: &Multigraph,
    e2: usize,
) -> Result<Vec<Cut>, TwoSumError> {
    for g in [g1, g2] {
        if g.n() > FAMILY_LIMIT {
            return Err(TwoSumError::TooLarge {
                n: g.n(),
                limit: FAMILY_LIMIT,
            });
        }
    }
    let composed = two_sum(g1, e1, g2, e2)?;
    let cuts1 = enumerate_cs_cuts(g1)?;
    let cuts2 = enumerate_cs_cuts(g2)?;

    let mut sets = Vec::new();
    for c in cuts1.iter().filter(|c| !c.edge_ids.contains(&e1)) {
        sets.push(lift(&c.edge_ids, &composed.left_map, e1));
    }
    for c in cuts2.iter().filter(|c| !c.edge_ids.contains(&e2)) {
        sets.push(lift(&c.edge_ids, &composed.right_map, e2));
    }
    for c1 in cuts1.iter().filter(|c| c.edge_ids.contains(&e1)) {
        for c2 in cuts2.iter().filter(|c| c.edge_ids.contains(&e2)) {
            let mut set = lift(&c1.edge_ids, &composed.left_map, e1);
            set.extend(lift(&c2.edge_ids, &composed.right_map, e2));
            sets.push(set);
        }
    }

    let mut seen = BTreeSet::new();
    let mut family = Vec::new();
    for set in sets {
        if seen.insert(set.clone()) {
            family.push(composed.graph.cut_from_edge_set(&set)?);
        }
    }
    family.sort_by(|a, b| a.side.cmp(&b.side));
    Ok(family)
}

fn run_subsolver(
    g: &Multigraph,
    objective: Objective,
    which: Subsolver,
    calls: &mut usize,
) -> Result<Cut, TwoSumError> {
    *calls += 1;
    match which {
        Subsolver::Sp => {
            let labeling = recognize(g)?;
            Ok(solve_cs(g, &labeling, objective)?)
        }
        Subsolver::Oracle => {
            let brute = match objective {
                Objective::Max => BruteObjective::MaxCs,
                Objective::Min => BruteObjective::MinCs,
            };
            Ok(brute_solve(g, brute)?)
        }
    }
}

// Optimum cut of the part avoiding its glued edge, as a composed edge set.
// The glued edge is repelled by weight: pushed to the extreme the objective
// shuns, no optimum can afford to cut it, so its endpoints end up on one
// side and the whole closure stays uncut. (Contracting it instead can merge
// the only two branch points of the part, leaving pendant bundles that no
// series labeling covers.) None when the part has only the two glued
// endpoints, where every cut contains the glued edge.
fn avoid_candidate(
    g: &Multigraph,
    e: usize,
    map: &[Option<usize>],
    objective: Objective,
    forcing: Weight,
    which: Subsolver,
    calls: &mut usize,
) -> Result<Option<BTreeSet<usize>>, TwoSumError> {
    if g.n() == 2 {
        return Ok(None);
    }
    let signed = match objective {
        Objective::Max => -forcing,
        Objective::Min => forcing,
    };
    let repelled = g.with_edge_weight(e, signed)?;
    let sub = run_subsolver(&repelled, objective, which, calls)?;
    debug_assert!(
        !sub.edge_ids.contains(&e),
        "repelling weight failed to push the glued edge out of the optimum"
    );
    Ok(Some(lift(&sub.edge_ids, map, e)))
}

// Optimum cut of the part forced to contain its glued edge, already
// stripped of it and mapped to composed ids. Forcing works by making the
// glued edge outweigh everything else combined, in the direction the
// objective favors; the true weight is recomputed later, so the inflated
// value never reaches the caller.
fn forced_candidate(
    g: &Multigraph,
    e: usize,
    map: &[Option<usize>],
    objective: Objective,
    forcing: Weight,
    which: Subsolver,
    calls: &mut usize,
) -> Result<BTreeSet<usize>, TwoSumError> {
    let signed = match objective {
        Objective::Max => forcing,
        Objective::Min => -forcing,
    };
    let forced = g.with_edge_weight(e, signed)?;
    let sub = run_subsolver(&forced, objective, which, calls)?;
    debug_assert!(
        sub.edge_ids.contains(&e),
        "forcing weight failed to pull the glued edge into the optimum"
    );
    Ok(lift(&sub.edge_ids, map, e))
}

/// Optimum connected sides cut of the composition (for `Min`, the minimum
/// cut; weights must then be strictly positive), computed from the parts:
/// the best cut avoiding each glued edge, and the best combination of cuts
/// through them. Weights stay well inside `i64` territory or the internal
/// forcing value overflows.
pub fn solve_two_sum(
    g1: &Multigraph,
    e1: usize,
    g2: &Multigraph,
    e2: usize,
    objective: Objective,
    subsolver: Subsolver,
) -> Result<TwoSumSolution, TwoSumError> {
    let composed = two_sum(g1, e1, g2, e2)?;
    if objective == Objective::Min
        && g1
            .edges()
            .iter()
            .chain(g2.edges())
            .any(|edge| edge.weight <= 0)
    {
        return Err(TwoSumError::Solve(SolveError::NotPositiveWeights));
    }
    // Strictly outweighs every other edge combined, so one reweighted edge
    // steers the optimum wherever it points, toward or away.
    let forcing: Weight = 1 + g1
        .edges()
        .iter()
        .chain(g2.edges())
        .map(|edge| edge.weight.abs())
        .sum::<Weight>();

    let mut calls = 0;
    let a = avoid_candidate(
        g1,
        e1,
        &composed.left_map,
        objective,
        forcing,
        subsolver,
        &mut calls,
    )?;
    let b = avoid_candidate(
        g2,
        e2,
        &composed.right_map,
        objective,
        forcing,
        subsolver,
        &mut calls,
    )?;
    let mut combined = forced_candidate(
        g1,
        e1,
        &composed.left_map,
        objective,
        forcing,
        subsolver,
        &mut calls,
    )?;
    combined.extend(forced_candidate(
        g2,
        e2,
        &composed.right_map,
        objective,
        forcing,
        subsolver,
        &mut calls,
    )?);

    let mut compared = 0;
    let mut best: Option<Cut> = None;
    for set in a.into_iter().chain(b).chain(Some(combined)) {
        let cut = composed.graph.cut_from_edge_set(&set)?;
        compared += 1;
        let better = match &best {
            None => true,
            Some(cur) => match objective {
                Objective::Max => cut.weight > cur.weight,
                Objective::Min => cut.weight < cur.weight,
            },
        };
        if better {
            best = Some(cut);
        }
    }
    Ok(TwoSumSolution {
        cut: best.expect("the combined candidate always exists"),
        subsolver_calls: calls,
        candidates_compared: compared,
    })
}
