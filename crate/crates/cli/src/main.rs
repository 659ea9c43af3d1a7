//! `distinguish`: generate tournaments, compute exact minima, build and
//! check distinguishing labelings.
//!
//! Exit status: 0 success, 1 a negative verification result, 2 usage or
//! input errors, 3 search budget exhausted.

mod io;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use distinguish_core::certificate::WitnessText;
use distinguish_core::construct::{
    construct_determining_arc_labeling, construct_hk_arc_labeling, ConstructionError,
};
use distinguish_core::format::{render_alab, render_trn};
use distinguish_core::labeling::{is_distinguishing_arc, is_distinguishing_vertex};
use distinguish_core::search::{det_exact, rho_exact, rho_prime_exact};
use distinguish_core::tournament::MAX_HK_DEPTH;
use distinguish_core::{
    rho_prime_bound, Certificate, Minimum, Quantity, SearchBudget, SearchError, Tournament, Verdict,
};

#[derive(Parser)]
#[command(
    name = "distinguish",
    version,
    about = "Distinguishing labelings and determining sets of tournaments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Largest subset size to try.
    #[arg(long)]
    budget_size: Option<usize>,
    /// Most candidates to verify across all sizes.
    #[arg(long)]
    budget_candidates: Option<u64>,
    /// On exhaustion, report a verified non-minimal witness if one exists.
    #[arg(long)]
    return_best: bool,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        let mut b = SearchBudget::unlimited();
        b.max_subset_size = self.budget_size;
        b.max_candidates = self.budget_candidates;
        if self.return_best {
            b = b.returning_best();
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the tournament H_k.
    GenHk {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random tournament.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distinguishing vertex class.
    Rho {
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distinguishing arc class.
    RhoPrime {
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Skip arc sets that leave an H_k basic module untouched.
        #[arg(long)]
        optimize_module_filter: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum determining set.
    Det {
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a vertex labeling (.vlab).
    VerifyVertex {
        input: PathBuf,
        labels: PathBuf,
        /// Print the witness in cycle notation.
        #[arg(long)]
        cycles: bool,
    },
    /// Check an arc labeling (.alab).
    VerifyArc {
        input: PathBuf,
        labels: PathBuf,
        #[arg(long)]
        cycles: bool,
    },
    /// Arc labeling with at most floor(7n/36) + 3 black arcs, built from a
    /// small determining set.
    #[command(name = "construct-thm4")]
    ConstructFromDeterminingSet {
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Where to write the .alab; the certificate goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The recursive arc labeling of H_k.
    ConstructHkArcs {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of exact values against their bounds.
    Report {
        #[arg(long, default_value_t = 2)]
        max_k: u32,
        /// Number of random tournaments to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Largest random order; orders cycle through 1..=n.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        optimize_module_filter: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Negative,
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.into()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::DeterminingSetBudget { .. } => Failure::Budget(e.to_string()),
            ConstructionError::Search(s) => s.into(),
            ConstructionError::VerificationFailed { ref trace, .. } => {
                eprintln!("error: {e}");
                if let Some(trace) = trace {
                    for (k, v) in trace.to_key_values() {
                        eprintln!("{k}: {v}");
                    }
                }
                Failure::Negative
            }
            other => Failure::Usage(other.into()),
        }
    }
}

impl From<distinguish_core::SymmetryError> for Failure {
    fn from(e: distinguish_core::SymmetryError) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn check_depth(k: u32) -> Result<(), Failure> {
    if k > MAX_HK_DEPTH {
        return Err(Failure::Usage(anyhow!(
            "--k must be at most {MAX_HK_DEPTH}"
        )));
    }
    Ok(())
}

fn minimum<W: WitnessText>(
    t: &Tournament,
    quantity: Quantity,
    result: Result<Minimum<W>, SearchError>,
    out: Option<&Path>,
) -> Outcome {
    let m = result?;
    io::emit(out, &Certificate::for_minimum(t, quantity, &m).to_string())?;
    if m.exact {
        Ok(())
    } else {
        Err(Failure::Budget(format!(
            "{quantity}: budget exhausted; reported witness is an upper bound"
        )))
    }
}

fn verdict(t: &Tournament, v: Verdict, cycles: bool) -> Outcome {
    let mut c = Certificate::new(t);
    match v {
        Verdict::Distinguishing => {
            c.push("verdict", "distinguishing");
            print!("{c}");
            Ok(())
        }
        Verdict::Preserved(p) => {
            c.push("verdict", "preserved");
            c.push(
                "witness",
                if cycles {
                    p.to_cycle_string()
                } else {
                    p.to_string()
                },
            );
            print!("{c}");
            Err(Failure::Negative)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::GenHk { k, out } => {
            check_depth(k)?;
            let t = Tournament::hk(k).map_err(anyhow::Error::from)?;
            io::emit(out.as_deref(), &render_trn(&t))?;
        }
        Command::GenRandom { n, seed, out } => {
            let t = Tournament::random(n, seed).map_err(anyhow::Error::from)?;
            io::emit(out.as_deref(), &render_trn(&t))?;
        }
        Command::Rho { input, budget, out } => {
            let t = io::read_tournament(&input)?;
            minimum(
                &t,
                Quantity::Rho,
                rho_exact(&t, &budget.budget()),
                out.as_deref(),
            )?;
        }
        Command::RhoPrime {
            input,
            budget,
            optimize_module_filter,
            out,
        } => {
            let t = io::read_tournament(&input)?;
            let r = rho_prime_exact(&t, &budget.budget(), optimize_module_filter);
            minimum(&t, Quantity::RhoPrime, r, out.as_deref())?;
        }
        Command::Det { input, budget, out } => {
            let t = io::read_tournament(&input)?;
            minimum(
                &t,
                Quantity::Det,
                det_exact(&t, &budget.budget()),
                out.as_deref(),
            )?;
        }
        Command::VerifyVertex {
            input,
            labels,
            cycles,
        } => {
            let t = io::read_tournament(&input)?;
            let l = io::read_vertex_labels(&labels)?;
            verdict(&t, is_distinguishing_vertex(&t, &l)?, cycles)?;
        }
        Command::VerifyArc {
            input,
            labels,
            cycles,
        } => {
            let t = io::read_tournament(&input)?;
            let l = io::read_arc_labels(&labels)?;
            verdict(&t, is_distinguishing_arc(&t, &l)?, cycles)?;
        }
        Command::ConstructFromDeterminingSet { input, budget, out } => {
            let t = io::read_tournament(&input)?;
            let (labels, trace) = construct_determining_arc_labeling(&t, &budget.budget())?;
            if let Some(path) = &out {
                io::write_atomic(path, &render_alab(&labels))?;
            }
            let mut c = Certificate::new(&t);
            c.push("black_count", labels.black_count().to_string());
            c.push("bound", rho_prime_bound(t.order()).to_string());
            let arcs: Vec<(usize, usize)> = labels.black_arcs().iter().copied().collect();
            c.push("black_arcs", arcs.witness_text());
            for (k, v) in trace.to_key_values() {
                c.push(k, v);
            }
            c.push("verdict", "distinguishing");
            print!("{c}");
        }
        Command::ConstructHkArcs { k, out } => {
            check_depth(k)?;
            let labels = construct_hk_arc_labeling(k)?;
            io::emit(out.as_deref(), &render_alab(&labels))?;
        }
        Command::Report {
            max_k,
            random,
            n,
            seed,
            csv,
            budget,
            optimize_module_filter,
            out,
        } => {
            check_depth(max_k)?;
            if random > 0 && n == 0 {
                return Err(Failure::Usage(anyhow!("--n must be at least 1")));
            }
            let inputs = report::inputs(max_k, random, n, seed);
            let rows = report::rows(&inputs, &budget.budget(), optimize_module_filter)?;
            io::emit(out.as_deref(), &report::render(&rows, csv))?;
            if rows.iter().any(|r| r.is_violation()) {
                return Err(Failure::Negative);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
