//! Two-phase contraction solver for optimum connected sides cuts.
//!
//! Phase one walks the series labeling from the highest label down. At each
//! step the current vertex has exactly two parallel closures left; the cut
//! isolating its merged class is recorded as a candidate, and then the
//! closure picked by the objective is contracted (the vertex melts into the
//! surviving neighbor, the other closure re-attaches there). After the walk
//! only two classes remain and the closure between them is the base cut.
//!
//! Phase two scans the candidates in ascending step order against the base
//! cut and keeps the first strict improvement. A candidate only counts when
//! its complement side is connected in the input graph; without that guard
//! the scan can pick an edge set whose far side falls apart, which is heavier
//! (or lighter) than any genuine connected sides cut. `solve_unguarded`
//! keeps the unfiltered scan available as a diagnostic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{Cut, GraphError, Multigraph, Weight};
use crate::sp::SeriesLabeling;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("labeling invalid at step {step} (vertex {vertex})")]
    BadLabeling { step: usize, vertex: usize },
    #[error("minimum cut needs strictly positive weights")]
    NotPositiveWeights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

/// The cut recorded at one contraction step: `side` is the class merged
/// into `vertex` so far, `edge_ids` the edges leaving it in the input graph
/// (the two closures of the step), `valid` whether the complement side is
/// connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub step: usize,
    pub vertex: usize,
    pub side: BTreeSet<usize>,
    pub edge_ids: BTreeSet<usize>,
    pub weight: Weight,
    pub valid: bool,
}

/// Everything phase one learns: candidates in walk order (highest step
/// first), the final two-class cut, and the preimage classes of the two
/// surviving vertices.
#[derive(Debug, Clone)]
pub struct ReductionLog {
    pub candidates: Vec<Candidate>,
    pub base_cut: Cut,
    pub preimage: BTreeMap<usize, BTreeSet<usize>>,
}

/// Counters reported alongside a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveStats {
    pub candidates: usize,
    pub invalid_candidates: usize,
}

// One recorded step of the contraction walk, before any sides are
// materialized.
struct Stub {
    step: usize,
    vertex: usize,
    weight: Weight,
    valid: Option<bool>,
}

struct Walk {
    stubs: Vec<Stub>,
    parent: Vec<Option<usize>>,
    base_weight: Weight,
}

fn bad(step: usize, vertex: usize) -> SolveError {
    SolveError::BadLabeling { step, vertex }
}

/// The contraction walk shared by every solve flavor. Closure weights are
/// tracked per surviving class pair; edge sets are not materialized here, so
/// the walk stays near linear when `check_validity` is off.
fn walk(
    g: &Multigraph,
    labeling: &SeriesLabeling,
    objective: Objective,
    check_validity: bool,
) -> Result<Walk, SolveError> {
    let n = g.n();
    if labeling.order.len() != n {
        return Err(bad(0, labeling.order.first().copied().unwrap_or(0)));
    }
    let mut seen = vec![false; n];
    for (j, &v) in labeling.order.iter().enumerate() {
        if v >= n || seen[v] {
            return Err(bad(j, v));
        }
        seen[v] = true;
    }

    // Closure slots indexed densely; adjacency maps neighbor class -> slot.
    let mut weights: Vec<Weight> = Vec::with_capacity(g.m());
    let mut adj: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for e in g.edges() {
        match adj[e.u].get(&e.v) {
            Some(&slot) => weights[slot] += e.weight,
            None => {
                let slot = weights.len();
                weights.push(e.weight);
                adj[e.u].insert(e.v, slot);
                adj[e.v].insert(e.u, slot);
            }
        }
    }

    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut stubs = Vec::with_capacity(n.saturating_sub(2));
    let mut alive = n;
    let mut stamp = vec![0u32; n];
    let mut generation = 0u32;
    let mut queue = Vec::new();

    for step in (2..n).rev() {
        let v = labeling.order[step];
        if adj[v].len() != 2 {
            return Err(bad(step, v));
        }
        let mut it = adj[v].iter();
        let (&x, &sx) = it.next().unwrap();
        let (&y, &sy) = it.next().unwrap();
        // P0 leads to the smaller surviving class id, P1 to the larger.
        let (r0, s0, r1, s1) = if x < y { (x, sx, y, sy) } else { (y, sy, x, sx) };
        let (w0, w1) = (weights[s0], weights[s1]);

        let valid = if check_validity {
            // The complement side is connected exactly when the class graph
            // stays connected after dropping v.
            generation += 1;
            queue.clear();
            queue.push(r0);
            stamp[r0] = generation;
            let mut reached = 1;
            let mut head = 0;
            while head < queue.len() {
                let c = queue[head];
                head += 1;
                for (&nb, _) in adj[c].iter() {
                    if nb != v && stamp[nb] != generation {
                        stamp[nb] = generation;
                        reached += 1;
                        queue.push(nb);
                    }
                }
            }
            Some(reached == alive - 1)
        } else {
            None
        };
        stubs.push(Stub {
            step,
            vertex: v,
            weight: w0 + w1,
            valid,
        });

        // Contract the closure the objective picks; ties take P0, so the
        // vertex melts into the smaller class id.
        let contract_p0 = match objective {
            Objective::Max => w0 <= w1,
            Objective::Min => w0 >= w1,
        };
        let (survivor, other, carried) = if contract_p0 {
            (r0, r1, s1)
        } else {
            (r1, r0, s0)
        };
        parent[v] = Some(survivor);
        adj[r0].remove(&v);
        adj[r1].remove(&v);
        adj[v].clear();
        match adj[survivor].get(&other) {
            Some(&slot) => {
                weights[slot] += weights[carried];
            }
            None => {
                adj[survivor].insert(other, carried);
                adj[other].insert(survivor, carried);
            }
        }
        alive -= 1;
    }

    let (a, b) = (labeling.order[0], labeling.order[1]);
    let base_slot = *adj[a].get(&b).ok_or_else(|| bad(1, b))?;
    if adj[a].len() != 1 || adj[b].len() != 1 {
        return Err(bad(1, b));
    }
    Ok(Walk {
        stubs,
        parent,
        base_weight: weights[base_slot],
    })
}

// Children lists of the merge forest; the class of a surviving vertex is its
// whole subtree.
fn forest_children(parent: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut children = vec![Vec::new(); parent.len()];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            children[*p].push(v);
        }
    }
    children
}

fn subtree(children: &[Vec<usize>], root: usize) -> BTreeSet<usize> {
    let mut side = BTreeSet::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        side.insert(v);
        stack.extend(children[v].iter().copied());
    }
    side
}

enum Winner {
    Base,
    Candidate(usize),
}

// Ascending step order with strict improvement: the base cut wins ties, and
// among candidates the smallest step does.
fn scan(
    base_weight: Weight,
    stubs: &[Stub],
    objective: Objective,
    enforce_valid: bool,
) -> Winner {
    let mut best = base_weight;
    let mut winner = Winner::Base;
    for (idx, stub) in stubs.iter().enumerate().rev() {
        if enforce_valid && stub.valid != Some(true) {
            continue;
        }
        let better = match objective {
            Objective::Max => stub.weight > best,
            Objective::Min => stub.weight < best,
        };
        if better {
            best = stub.weight;
            winner = Winner::Candidate(idx);
        }
    }
    winner
}

fn winning_cut(g: &Multigraph, labeling: &SeriesLabeling, w: &Walk, pick: Winner) -> Cut {
    let children = forest_children(&w.parent);
    let side = match pick {
        Winner::Base => subtree(&children, labeling.order[0]),
        Winner::Candidate(idx) => subtree(&children, w.stubs[idx].vertex),
    };
    let cut = g
        .cut_of_side(&side)
        .expect("walk sides are proper vertex subsets");
    if let Winner::Candidate(idx) = pick {
        debug_assert_eq!(cut.weight, w.stubs[idx].weight);
    } else {
        debug_assert_eq!(cut.weight, w.base_weight);
    }
    cut
}

fn check_positive(g: &Multigraph) -> Result<(), SolveError> {
    if g.edges().iter().any(|e| e.weight <= 0) {
        return Err(SolveError::NotPositiveWeights);
    }
    Ok(())
}

/// Optimum connected sides cut for either objective, any weight signs.
/// This is the guarded two-phase algorithm; the returned cut always has
/// both sides connected.
pub fn solve_cs(
    g: &Multigraph,
    labeling: &SeriesLabeling,
    objective: Objective,
) -> Result<Cut, SolveError> {
    let w = walk(g, labeling, objective, true)?;
    let pick = scan(w.base_weight, &w.stubs, objective, true);
    Ok(winning_cut(g, labeling, &w, pick))
}

/// Front door: `Max` is the maximum connected sides cut; `Min` is the
/// minimum cut, which demands strictly positive weights (under those the
/// minimum over all cuts is attained by a connected sides cut, a fact the
/// oracle suite re-checks empirically).
pub fn solve(
    g: &Multigraph,
    labeling: &SeriesLabeling,
    objective: Objective,
) -> Result<Cut, SolveError> {
    if objective == Objective::Min {
        check_positive(g)?;
    }
    solve_cs(g, labeling, objective)
}

/// Diagnostic variant that skips the complement-connectivity guard: the
/// scan considers every recorded candidate. The returned cut's flags are
/// still computed honestly, so a broken far side is visible to the caller.
pub fn solve_unguarded(
    g: &Multigraph,
    labeling: &SeriesLabeling,
    objective: Objective,
) -> Result<Cut, SolveError> {
    if objective == Objective::Min {
        check_positive(g)?;
    }
    let w = walk(g, labeling, objective, false)?;
    let pick = scan(w.base_weight, &w.stubs, objective, false);
    Ok(winning_cut(g, labeling, &w, pick))
}

/// Like [`solve`]/[`solve_unguarded`] but also reports candidate counters.
/// Validity is computed either way so the counters mean the same thing in
/// both modes; only the scan changes.
pub fn solve_with_stats(
    g: &Multigraph,
    labeling: &SeriesLabeling,
    objective: Objective,
    unguarded: bool,
) -> Result<(Cut, SolveStats), SolveError> {
    if objective == Objective::Min {
        check_positive(g)?;
    }
    let w = walk(g, labeling, objective, true)?;
    let stats = SolveStats {
        candidates: w.stubs.len(),
        invalid_candidates: w.stubs.iter().filter(|s| s.valid == Some(false)).count(),
    };
    let pick = scan(w.base_weight, &w.stubs, objective, !unguarded);
    Ok((winning_cut(g, labeling, &w, pick), stats))
}

/// Full phase-one record with materialized candidate sides and edge sets.
pub fn phase1(
    g: &Multigraph,
    labeling: &SeriesLabeling,
    objective: Objective,
) -> Result<ReductionLog, SolveError> {
    let w = walk(g, labeling, objective, true)?;
    let children = forest_children(&w.parent);
    let mut member = vec![false; g.n()];
    let mut candidates = Vec::with_capacity(w.stubs.len());
    for stub in &w.stubs {
        let side = subtree(&children, stub.vertex);
        for &v in &side {
            member[v] = true;
        }
        let mut edge_ids = BTreeSet::new();
        let mut weight = 0;
        for e in g.edges() {
            if member[e.u] != member[e.v] {
                edge_ids.insert(e.id);
                weight += e.weight;
            }
        }
        for &v in &side {
            member[v] = false;
        }
        debug_assert_eq!(weight, stub.weight);
        candidates.push(Candidate {
            step: stub.step,
            vertex: stub.vertex,
            side,
            edge_ids,
            weight,
            valid: stub.valid.unwrap_or_default(),
        });
    }
    let class0 = subtree(&children, labeling.order[0]);
    let class1 = subtree(&children, labeling.order[1]);
    let base_cut = g
        .cut_of_side(&class0)
        .expect("surviving classes are proper vertex subsets");
    debug_assert_eq!(base_cut.weight, w.base_weight);
    let mut preimage = BTreeMap::new();
    preimage.insert(labeling.order[0], class0);
    preimage.insert(labeling.order[1], class1);
    Ok(ReductionLog {
        candidates,
        base_cut,
        preimage,
    })
}

/// Recomputes a candidate's validity straight from the input graph: the
/// complement of its side must induce a connected subgraph. Independent of
/// the walk's incremental bookkeeping, which is what makes it useful as a
/// cross-check.
pub fn validate_candidate(g: &Multigraph, candidate: &Candidate) -> Result<bool, GraphError> {
    let complement: BTreeSet<usize> = (0..g.n())
        .filter(|v| !candidate.side.contains(v))
        .collect();
    g.is_connected_induced(&complement)
}
