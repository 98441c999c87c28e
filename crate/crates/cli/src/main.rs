//! Command line front end: solve instances, cross-check against the
//! enumeration oracle, generate scripts, compose graphs, and rerun the
//! verification harness.
//!
//! Exit codes: 0 success, 2 usage, 3 bad input (including objective
//! preconditions), 4 not series parallel, 5 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spcut_cli::format::{self, FormatError};
use spcut_cli::output;
use spcut_core::graph::{GraphError, Multigraph};
use spcut_core::oracle::{brute_solve, enumerate_cs_cuts, BruteObjective, OracleError};
use spcut_core::solver::{solve_with_stats, Objective, SolveError};
use spcut_core::sp::{
    build_from_script, random_sp_script, recognize, RecognizeError, ScriptError, SeriesLabeling,
};
use spcut_core::two_sum::{solve_two_sum, two_sum, Subsolver, TwoSumError};
use spcut_core::verify::{run_claim, scaling_medians, Claim};

#[derive(Parser)]
#[command(name = "spcut", version, about = "Optimum cuts on series parallel multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveObjective {
    /// Heaviest cut with both sides connected.
    MaxCsCut,
    /// Lightest cut; weights must be strictly positive.
    MinCut,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleObjective {
    MaxCsCut,
    MinCut,
    /// Minimum over every bipartition, connected sides or not.
    MinAllCuts,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    /// `p edge` header plus `e u v w` lines.
    Edges,
    /// `base w` plus `s`/`p` construction lines.
    Script,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubsolverArg {
    /// The contraction solver on a recognized labeling.
    Sp,
    /// Exhaustive enumeration.
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    /// Composed cut family equals direct enumeration.
    #[value(name = "lemma-3.1")]
    Lemma31,
    /// Minimum cuts of positive-weight graphs have connected sides.
    #[value(name = "thm-4.1")]
    Thm41,
    /// Stepwise optimum recursion under independent replay.
    #[value(name = "recursion-2.1")]
    Recursion21,
    /// Solver optima match the oracle on random instances.
    #[value(name = "oracle-equiv")]
    OracleEquiv,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file.
    #[arg(long)]
    input: PathBuf,
    /// How the file is encoded.
    #[arg(long, value_enum, default_value_t = InputFormat::Edges)]
    format: InputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Solve with the contraction solver.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        objective: SolveObjective,
        /// Skip the complement-connectivity guard (diagnostic only; the
        /// reported cut may have a disconnected side).
        #[arg(long)]
        unguarded: bool,
        /// Compact one-line JSON instead of pretty.
        #[arg(long)]
        json: bool,
    },
    /// Solve by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        objective: OracleObjective,
        #[arg(long)]
        json: bool,
    },
    /// Write a random construction script to stdout.
    Gen {
        /// Number of operations after the base edge.
        #[arg(long)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smallest weight, as a decimal.
        #[arg(long, default_value = "1", value_parser = weight_arg, allow_hyphen_values = true)]
        wmin: i64,
        /// Largest weight, as a decimal.
        #[arg(long, default_value = "100", value_parser = weight_arg, allow_hyphen_values = true)]
        wmax: i64,
        /// Draw signed weights (zero is skipped).
        #[arg(long)]
        signed: bool,
    },
    /// Glue two instances on an edge and solve the composition.
    Twosum {
        /// Left instance, EDGE format.
        #[arg(long)]
        left: PathBuf,
        /// Glued edge id in the left instance.
        #[arg(long)]
        edge_left: usize,
        /// Right instance, EDGE format.
        #[arg(long)]
        right: PathBuf,
        /// Glued edge id in the right instance.
        #[arg(long)]
        edge_right: usize,
        #[arg(long, value_enum)]
        objective: SolveObjective,
        #[arg(long, value_enum, default_value_t = SubsolverArg::Sp)]
        subsolver: SubsolverArg,
        #[arg(long)]
        json: bool,
    },
    /// Rerun a verification claim on fresh seeded trials.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance size cap; defaults per claim.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Time the lean solver across sizes, CSV on stdout.
    Bench {
        /// Operation counts, comma separated or repeated.
        #[arg(long, required = true, value_delimiter = ',', num_args = 1..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    TwoSum(#[from] TwoSumError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Recognize(RecognizeError::NotSeriesParallel(_))
            | AppError::TwoSum(TwoSumError::Recognize(RecognizeError::NotSeriesParallel(_))) => 4,
            _ => 3,
        }
    }
}

fn weight_arg(s: &str) -> Result<i64, String> {
    format::parse_weight(s).map_err(|e| e.to_string())
}

fn read_file(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_instance(args: &InputArgs) -> Result<(Multigraph, Option<SeriesLabeling>), AppError> {
    let text = read_file(&args.input)?;
    match args.format {
        InputFormat::Edges => Ok((format::parse_graph_file(&text)?, None)),
        InputFormat::Script => {
            let script = format::parse_script_file(&text)?;
            let (g, labeling) = build_from_script(&script)?;
            Ok((g, Some(labeling)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, AppError> {
    match command {
        Command::Solve {
            input,
            objective,
            unguarded,
            json,
        } => {
            let (g, labeling) = load_instance(&input)?;
            let labeling = match labeling {
                Some(l) => l,
                None => recognize(&g)?,
            };
            let (name, objective) = match objective {
                SolveObjective::MaxCsCut => ("max-cs-cut", Objective::Max),
                SolveObjective::MinCut => ("min-cut", Objective::Min),
            };
            let (cut, stats) = solve_with_stats(&g, &labeling, objective, unguarded)?;
            let doc = output::cut_document(
                name,
                &cut,
                json!({
                    "n": g.n(),
                    "m": g.m(),
                    "candidates": stats.candidates,
                    "invalid_candidates": stats.invalid_candidates,
                }),
            );
            println!("{}", output::render(&doc, json));
            Ok(0)
        }
        Command::Oracle {
            input,
            objective,
            json,
        } => {
            let (g, _) = load_instance(&input)?;
            let (name, brute) = match objective {
                OracleObjective::MaxCsCut => ("max-cs-cut", BruteObjective::MaxCs),
                OracleObjective::MinCut => ("min-cut", BruteObjective::MinCs),
                OracleObjective::MinAllCuts => ("min-all-cuts", BruteObjective::MinAllCuts),
            };
            let cut = brute_solve(&g, brute)?;
            let inspected = (1usize << (g.n() - 1)) - 1;
            let invalid = match brute {
                BruteObjective::MinAllCuts => 0,
                _ => inspected - enumerate_cs_cuts(&g)?.len(),
            };
            let doc = output::cut_document(
                name,
                &cut,
                json!({
                    "n": g.n(),
                    "m": g.m(),
                    "candidates": inspected,
                    "invalid_candidates": invalid,
                }),
            );
            println!("{}", output::render(&doc, json));
            Ok(0)
        }
        Command::Gen {
            ops,
            seed,
            wmin,
            wmax,
            signed,
        } => {
            let script = random_sp_script(seed, ops, (wmin, wmax), signed)?;
            print!("{}", format::print_script(&script));
            Ok(0)
        }
        Command::Twosum {
            left,
            edge_left,
            right,
            edge_right,
            objective,
            subsolver,
            json,
        } => {
            let g1 = format::parse_graph_file(&read_file(&left)?)?;
            let g2 = format::parse_graph_file(&read_file(&right)?)?;
            let (name, objective) = match objective {
                SolveObjective::MaxCsCut => ("max-cs-cut", Objective::Max),
                SolveObjective::MinCut => ("min-cut", Objective::Min),
            };
            let subsolver = match subsolver {
                SubsolverArg::Sp => Subsolver::Sp,
                SubsolverArg::Oracle => Subsolver::Oracle,
            };
            let composed = two_sum(&g1, edge_left, &g2, edge_right)?;
            let sol = solve_two_sum(&g1, edge_left, &g2, edge_right, objective, subsolver)?;
            let doc = output::cut_document(
                name,
                &sol.cut,
                json!({
                    "n": composed.graph.n(),
                    "m": composed.graph.m(),
                    "subsolver_calls": sol.subsolver_calls,
                    "candidates_compared": sol.candidates_compared,
                }),
            );
            println!("{}", output::render(&doc, json));
            Ok(0)
        }
        Command::Verify {
            claim,
            trials,
            seed,
            max_n,
            json,
        } => {
            let (claim, default_n) = match claim {
                ClaimArg::Lemma31 => (Claim::TwoSumFamily, 8),
                ClaimArg::Thm41 => (Claim::MinCutConnected, 9),
                ClaimArg::Recursion21 => (Claim::StepRecursion, 9),
                ClaimArg::OracleEquiv => (Claim::OracleEquiv, 12),
            };
            let report = run_claim(claim, trials, seed, max_n.unwrap_or(default_n));
            let doc = json!({
                "trials": report.trials,
                "failures": report.failures,
            });
            println!("{}", output::render(&doc, json));
            Ok(if report.passed() { 0 } else { 5 })
        }
        Command::Bench { sizes, reps, seed } => {
            println!("size,median_seconds");
            for (ops, median) in scaling_medians(&sizes, reps, seed) {
                println!("{ops},{median:.6}");
            }
            Ok(0)
        }
    }
}
