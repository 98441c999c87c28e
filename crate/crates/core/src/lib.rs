//! Optimum cuts with connected sides on series parallel multigraphs.
//!
//! The solver contracts the graph along a series labeling and reads the
//! optimum cut off the contraction trace; no flow computation is involved.
//! A brute-force oracle and a composition of two graphs over a shared edge
//! round out the toolkit, mostly so the fast path can be checked against
//! slow-but-obvious enumeration.

#![forbid(unsafe_code)]

pub mod graph;
pub mod oracle;
pub mod solver;
pub mod sp;
pub mod two_sum;
pub mod verify;

pub use graph::{Cut, Edge, GraphError, Multigraph, ParallelClosure, Weight};
pub use oracle::{
    brute_solve, enumerate_cs_cuts, verify_min_cut_connected, BruteObjective, OracleError,
};
pub use solver::{
    phase1, solve, solve_cs, solve_unguarded, solve_with_stats, validate_candidate, Candidate,
    Objective, ReductionLog, SolveError, SolveStats,
};
pub use sp::{
    build_from_script, random_sp_script, recognize, validate_labeling, RecognizeError,
    ScriptError, SeriesLabeling, SpOp, SpScript,
};
pub use two_sum::{
    cs_cut_family_two_sum, solve_two_sum, two_sum, Subsolver, TwoSumError, TwoSumResult,
    TwoSumSolution,
};
pub use verify::{run_claim, scaling_medians, trial_seed, Claim, VerifyReport};
