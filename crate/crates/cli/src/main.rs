//! `chipwalk` command-line front end.
//!
//! Exit status: 0 success, 1 invalid input or hypothesis failure, 2 a scan
//! found counterexamples, 3 a resource budget was exceeded.

mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use chipwalk_core::prob::{
    parse_fraction, ratio, simulate_with_cap, solve_absorption, Rational, DEFAULT_SOLVER_BUDGET,
};
use chipwalk_core::verify::{self, ScanReport};
use chipwalk_core::{reachable_set_with_budget, Error, GameParams, DEFAULT_STATE_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};

use render::Format;

/// Overrides both the search cell budget and the solver unknown budget.
const BUDGET_ENV: &str = "CHIPWALK_MAX_STATES";

#[derive(Debug, Parser)]
#[command(
    name = "chipwalk",
    version,
    about = "Reachability, winning probabilities and theorem scans for the modulo dependent chip-collecting game"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Low chip amount.
    #[arg(short = 'a')]
    a: u64,
    /// High chip amount.
    #[arg(short = 'b')]
    b: u64,
    /// Alice's modulus.
    #[arg(short = 'm')]
    m: u64,
    /// Bob's modulus.
    #[arg(short = 'n')]
    n: u64,
}

impl GameArgs {
    fn params(&self) -> Result<GameParams, Error> {
        GameParams::new(self.a, self.b, self.m, self.n)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarize the reachable set.
    Reach(GameArgs),
    /// Print a shortest move word landing on (x, y).
    Witness {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Print the reachability matrix.
    Grid(GameArgs),
    /// Exact winning probabilities.
    Prob {
        #[command(flatten)]
        game: GameArgs,
        /// Probability of the (+a,+b) move as an exact fraction p/q.
        #[arg(long, default_value = "1/2")]
        bias: String,
    },
    /// Seeded Monte Carlo simulation.
    Sim {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value = "1/2")]
        bias: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Moves per trial before it counts as truncated [default: 10*m*n].
        #[arg(long)]
        move_cap: Option<u64>,
    },
    /// Exhaustively check a theorem or invariant over a parameter range.
    Scan {
        #[arg(value_enum)]
        kind: ScanChoice,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Coin bias for the corollary scan, repeatable [default: 1/2 and 1/3].
        #[arg(long = "bias")]
        biases: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanChoice {
    Thm1,
    Thm2,
    Conjecture2,
    Corollary,
    Pair,
    Eq1,
    Qbij,
    Diagonal,
    Witness,
    Invariants,
}

struct Failure {
    code: &'static str,
    message: String,
    status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Resource { .. } => 3,
            _ => 1,
        };
        Failure {
            code: e.code(),
            message: e.to_string(),
            status,
        }
    }
}

fn budget_override() -> Result<Option<u64>, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text.trim().parse().map(Some).map_err(|_| Failure {
            code: "usage",
            message: format!("{BUDGET_ENV} must be a non-negative integer (got {text:?})"),
            status: 1,
        }),
        Err(_) => Ok(None),
    }
}

fn parse_bias(text: &str) -> Result<Rational, Failure> {
    Ok(parse_fraction(text)?)
}

/// Rendered output plus whether a scan found counterexamples.
struct Outcome {
    text: String,
    counterexamples: bool,
}

impl Outcome {
    fn plain(text: String) -> Self {
        Outcome {
            text,
            counterexamples: false,
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let budget = budget_override()?;
    let state_budget = budget.unwrap_or(DEFAULT_STATE_BUDGET);
    let solver_budget = budget.unwrap_or(DEFAULT_SOLVER_BUDGET);
    let format = cli.format;

    match &cli.command {
        Command::Reach(game) => {
            let report = reachable_set_with_budget(game.params()?, state_budget)?;
            Ok(Outcome::plain(render::reach(&report, format)))
        }
        Command::Witness { game, x, y } => {
            let params = game.params()?;
            if *x >= params.m() || *y >= params.n() {
                return Err(Error::Domain(format!(
                    "target ({x}, {y}) lies outside Z_{} x Z_{}",
                    params.m(),
                    params.n()
                ))
                .into());
            }
            let report = reachable_set_with_budget(params, state_budget)?;
            let target = params.position(*x as i128, *y as i128);
            let witness = report.witness_path(target)?;
            Ok(Outcome::plain(render::witness(params, &witness, format)))
        }
        Command::Grid(game) => {
            let report = reachable_set_with_budget(game.params()?, state_budget)?;
            Ok(Outcome::plain(render::grid(&report, format)))
        }
        Command::Prob { game, bias } => {
            let params = game.params()?;
            let bias = parse_bias(bias)?;
            if params.cell_count() > state_budget {
                return Err(Error::Resource {
                    required: params.cell_count(),
                    budget: state_budget,
                }
                .into());
            }
            let report = solve_absorption(params, &bias, solver_budget)?.report();
            Ok(Outcome::plain(render::prob(&report, format)))
        }
        Command::Sim {
            game,
            bias,
            trials,
            seed,
            move_cap,
        } => {
            let params = game.params()?;
            let bias = parse_bias(bias)?;
            let cap = move_cap.unwrap_or_else(|| chipwalk_core::prob::default_move_cap(params));
            let counts = simulate_with_cap(params, &bias, *trials, *seed, cap)?;
            Ok(Outcome::plain(render::sim(
                params, &bias, *seed, &counts, format,
            )))
        }
        Command::Scan {
            kind,
            m_max,
            n_max,
            biases,
        } => {
            let reports = scan(*kind, *m_max, *n_max, biases)?;
            let counterexamples = has_counterexamples(&reports);
            let text = reports
                .iter()
                .map(|r| match format {
                    Format::Text => r.render_text(),
                    Format::Json => r.render_records(),
                })
                .collect();
            Ok(Outcome {
                text,
                counterexamples,
            })
        }
    }
}

fn scan(
    kind: ScanChoice,
    m_max: Option<u64>,
    n_max: Option<u64>,
    biases: &[String],
) -> Result<Vec<ScanReport>, Failure> {
    let reports = match kind {
        ScanChoice::Thm1 => vec![verify::scan_thm1(n_max.unwrap_or(30))?],
        ScanChoice::Thm2 => vec![verify::scan_thm2(m_max.unwrap_or(20), n_max.unwrap_or(20))?],
        ScanChoice::Conjecture2 => vec![verify::scan_conjecture2(
            m_max.unwrap_or(20),
            n_max.unwrap_or(20),
        )?],
        ScanChoice::Corollary => {
            let biases = if biases.is_empty() {
                vec![ratio(1, 2), ratio(1, 3)]
            } else {
                biases
                    .iter()
                    .map(|b| parse_bias(b))
                    .collect::<Result<_, _>>()?
            };
            vec![verify::scan_corollary(
                m_max.unwrap_or(14),
                n_max.unwrap_or(14),
                &biases,
            )?]
        }
        ScanChoice::Pair => vec![verify::scan_never_reachable_pair(n_max.unwrap_or(30))?],
        ScanChoice::Eq1 => vec![verify::scan_eq1(n_max.unwrap_or(100))?],
        ScanChoice::Qbij => vec![verify::scan_q_bijection(n_max.unwrap_or(25))?],
        ScanChoice::Diagonal => vec![verify::scan_diagonal_containment(n_max.unwrap_or(30))?],
        ScanChoice::Witness => vec![verify::scan_witnesses(
            m_max.unwrap_or(12),
            n_max.unwrap_or(12),
        )?],
        ScanChoice::Invariants => verify::scan_invariants(n_max.unwrap_or(25))?,
    };
    Ok(reports)
}

fn has_counterexamples(reports: &[ScanReport]) -> bool {
    reports.iter().any(|r| !r.passed())
}

fn fail(failure: &Failure) -> ExitCode {
    eprintln!("error[{}]: {}", failure.code, failure.message);
    ExitCode::from(failure.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            eprint!("{rendered}");
            return ExitCode::from(1);
        }
    };

    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(failure) => return fail(&failure),
    };

    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| ("standard output".to_string(), e)),
    };
    if let Err((target, e)) = written {
        return fail(&Failure {
            code: "io",
            message: format!("could not write {target}: {e}"),
            status: 1,
        });
    }

    if outcome.counterexamples {
        eprintln!("error[counterexample]: scan found counterexamples");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

#[cfg(test)]
mod tests {
    use super::*;
    use chipwalk_core::verify::Counterexample;

    #[test]
    fn counterexamples_are_detected() {
        let mut report = verify::scan_thm1(5).unwrap();
        assert!(!has_counterexamples(std::slice::from_ref(&report)));
        report.counterexamples.push(Counterexample {
            a: 1,
            b: 2,
            m: 5,
            n: 5,
            predicted: "full_reachability=true".into(),
            observed: "full_reachability=false".into(),
        });
        assert!(has_counterexamples(&[
            verify::scan_thm1(4).unwrap(),
            report
        ]));
    }

    #[test]
    fn error_statuses() {
        let resource: Failure = Error::Resource {
            required: 2,
            budget: 1,
        }
        .into();
        assert_eq!((resource.code, resource.status), ("resource", 3));
        let domain: Failure = Error::Domain("x".into()).into();
        assert_eq!((domain.code, domain.status), ("domain", 1));
        let hypothesis: Failure = Error::Hypothesis("x".into()).into();
        assert_eq!((hypothesis.code, hypothesis.status), ("hypothesis", 1));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
