//! Command-line front end: classification and order verification of
//! automaton groups, prime-cycle witnesses, sign-span bounds, and the
//! seeded distribution experiments.
//!
//! Exit codes: 0 on success, 2 for argument errors, 3 when the input
//! violates a precondition (unreadable or non-invertible automaton,
//! inadmissible generator tuple, out-of-range parameters), 4 when an
//! internal verification fails — the latter always indicates a defect.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use automaton_groups::experiments::{
    dixon_reference, exact_enumeration_2, sample_cyclic_distribution, same_order_probability,
    OrderStatsReport, TrialConfig, TrialMode,
};
use automaton_groups::mealy::{MealyAutomaton, StructureClass};
use automaton_groups::theory::{
    classify, cycle_tuples, union_exponent, witness_prime_cycle_n, ClassificationReport,
    TheoryError,
};

#[derive(Parser)]
#[command(name = "agroups", version, about = "Groups generated by Mealy automata: classify, verify, experiment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format; CSV keeps exactly one header and one row per record.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for experiment subcommands (default: all cores).
    /// Results are byte-identical for any value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the automaton in FILE: structure, signature prediction,
    /// verified group order, and whether they agree.
    Classify { file: PathBuf },
    /// Print only the verified group order of the automaton in FILE.
    Order { file: PathBuf },
    /// Find a membership-verified cycle of prime length inside the group
    /// of the cyclic automaton in FILE.
    Witness { file: PathBuf },
    /// Sample random cyclic automata and report the distribution of
    /// generated groups.
    Sample {
        /// States on the cycle.
        #[arg(long, default_value_t = 2)]
        states: usize,
        /// Alphabet size.
        #[arg(long)]
        letters: usize,
        /// Number of sampled automata.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Random seed; mandatory so every figure can be reproduced.
        #[arg(long)]
        seed: u64,
    },
    /// Enumerate every two-state cyclic automaton over the alphabet and
    /// report the exact distribution of generated groups.
    Enumerate {
        /// Alphabet size (at most 6).
        #[arg(long)]
        letters: usize,
    },
    /// Estimate k²·P(two random permutations of S_k share their order)
    /// against the conjectured limit band.
    OrderStats {
        /// Alphabet size k.
        #[arg(long)]
        letters: usize,
        /// Number of sampled pairs.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Random seed; mandatory so every figure can be reproduced.
        #[arg(long)]
        seed: u64,
    },
    /// Exponent u of the sign-span order 2^u for a disjoint union of
    /// cycles with the given sizes.
    UnionBound {
        /// Cycle sizes, e.g. `2 3 5`.
        #[arg(num_args = 1.., required = true)]
        sizes: Vec<u64>,
    },
    /// Truncated series for the probability that a random pair of
    /// permutations generates the symmetric or alternating group.
    DixonRef {
        /// Alphabet size k (at least 2).
        letters: usize,
    },
}

/// Application-level failures, separated by exit code: preconditions are
/// the caller's problem, verification failures are ours.
enum CliError {
    Precondition(String),
    Verification(String),
}

impl CliError {
    fn pre(msg: impl Into<String>) -> CliError {
        CliError::Precondition(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(3);
        }
        // The global pool can only have been initialized once; a second
        // initialization in the same process is a programming error.
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("global thread pool initialized twice");
    }
    match run(&cli) {
        Ok(report) => match emit(&report, cli.out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        },
        Err(CliError::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("internal verification failure: {msg}");
            ExitCode::from(4)
        }
    }
}

fn emit(report: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, report),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify { file } => {
            let report = classify_file(file)?;
            Ok(match cli.format {
                Format::Text => report.text(),
                Format::Csv => format!(
                    "{}\n{}\n",
                    ClassificationReport::CSV_HEADER,
                    report.csv_row()
                ),
            })
        }
        Command::Order { file } => {
            let report = classify_file(file)?;
            Ok(format!("{}\n", report.verified_order))
        }
        Command::Witness { file } => {
            let automaton = load_automaton(file)?;
            let tuple = match automaton.classify_structure() {
                StructureClass::Cyclic(_) => cycle_tuples(&automaton)
                    .map_err(|e| CliError::pre(e.to_string()))?
                    .remove(0),
                other => {
                    return Err(CliError::pre(format!(
                        "witness extraction needs a single-cycle automaton, \
                         but {} has shape {other}",
                        file.display()
                    )));
                }
            };
            match witness_prime_cycle_n(&tuple) {
                Ok(w) => Ok(format!(
                    "{}-cycle {} in coordinate {}\n",
                    w.prime, w.cycle, w.coordinate
                )),
                Err(TheoryError::WitnessNotFound) => Err(CliError::Verification(
                    "a witness should exist but failed membership".into(),
                )),
                Err(e) => Err(CliError::pre(e.to_string())),
            }
        }
        Command::Sample { states, letters, trials, seed } => {
            let cfg = TrialConfig {
                states: *states,
                letters: *letters,
                trials: *trials,
                seed: *seed,
                mode: TrialMode::Sample,
            };
            if cfg.states == 0 || cfg.letters == 0 {
                return Err(CliError::pre("need at least one state and letter"));
            }
            let report =
                sample_cyclic_distribution(&cfg).map_err(|e| CliError::pre(e.to_string()))?;
            // Sampling records one row per trial; CSV means that table.
            Ok(match cli.format {
                Format::Text => report.text(),
                Format::Csv => report.trial_csv(),
            })
        }
        Command::Enumerate { letters } => {
            if *letters == 0 {
                return Err(CliError::pre("need at least one letter"));
            }
            let report =
                exact_enumeration_2(*letters).map_err(|e| CliError::pre(e.to_string()))?;
            // An enumeration has no per-trial rows; CSV means the
            // aggregated table.
            Ok(match cli.format {
                Format::Text => report.text(),
                Format::Csv => report.summary_csv(),
            })
        }
        Command::OrderStats { letters, trials, seed } => {
            if *letters == 0 {
                return Err(CliError::pre("need at least one letter"));
            }
            if *trials == 0 {
                return Err(CliError::pre("need at least one trial"));
            }
            let report = same_order_probability(*letters, *trials, *seed);
            Ok(match cli.format {
                Format::Text => report.text(),
                Format::Csv => {
                    format!("{}\n{}\n", OrderStatsReport::CSV_HEADER, report.csv_row())
                }
            })
        }
        Command::UnionBound { sizes } => {
            if sizes.iter().any(|&s| s == 0) {
                return Err(CliError::pre("cycle sizes must be positive"));
            }
            if sizes.len() > 20 {
                return Err(CliError::pre("at most 20 cycle sizes are supported"));
            }
            Ok(format!("u = {}\n", union_exponent(sizes)))
        }
        Command::DixonRef { letters } => {
            if *letters < 2 {
                return Err(CliError::pre("the series needs at least two letters"));
            }
            Ok(format!("{:.10}\n", dixon_reference(*letters)))
        }
    }
}

fn load_automaton(path: &std::path::Path) -> Result<MealyAutomaton, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::pre(format!("cannot read {}: {e}", path.display())))?;
    MealyAutomaton::parse(&text)
        .map_err(|e| CliError::pre(format!("{}: {e}", path.display())))
}

fn classify_file(path: &std::path::Path) -> Result<ClassificationReport, CliError> {
    let automaton = load_automaton(path)?;
    classify(&automaton).map_err(|e| CliError::pre(format!("{}: {e}", path.display())))
}
