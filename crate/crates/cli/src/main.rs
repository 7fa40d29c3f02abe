use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use delball::commands::{self, BalancedMethod, CountInput, Method};
use delball::suites::{self, Scale};
use delball::sweep::{self, Format, SweepSpec, TRange};
use delball::{CliError, CliResult};
use delball_core::{BigCount, Word};

#[derive(Parser)]
#[command(
    name = "delball",
    version,
    about = "Sizes and bounds of deletion balls of q-ary words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact |D_t| of a word or run profile.
    Count {
        /// Word written with symbols 0-9, a-z.
        #[arg(long, conflicts_with = "runs")]
        word: Option<String>,
        /// Run profile "x1,..,xr;a1,..,ar".
        #[arg(long)]
        runs: Option<String>,
        /// Alphabet size; inferred from the largest symbol when omitted.
        #[arg(long)]
        q: Option<u32>,
        #[arg(short = 't', allow_negative_numbers = true)]
        t: i64,
        /// auto, enumerate, dp or canonical.
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Every bound for words of length n with r runs, as JSON.
    Bounds {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
        #[arg(short = 't')]
        t: i64,
        /// Also compute the largest exact ball size over all such words.
        #[arg(long)]
        exact: bool,
    },
    /// Bounds for a range of t, as CSV or JSON.
    Sweep {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
        /// Inclusive range "a..b".
        #[arg(long = "t")]
        t: TRange,
        /// Comma-separated subset of exact, lev_lower, lev_upper, hr_lower,
        /// hr_upper, ch_upper, new_lower, new_upper. Defaults to every bound.
        #[arg(long)]
        cols: Option<String>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Balancing chain from a word to the balanced word with the same runs.
    Chain {
        #[arg(long)]
        word: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(short = 't')]
        t: i64,
    },
    /// |D_t| of the balanced word with r runs of length k.
    Balanced {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
        #[arg(short = 't', allow_negative_numbers = true)]
        t: i64,
        /// Drop the first symbol of the balanced word.
        #[arg(long)]
        prime: bool,
        /// closed, recursive or dp.
        #[arg(long, default_value = "closed")]
        method: BalancedMethod,
    },
    /// Run the invariant suites.
    Selftest {
        /// small or full.
        #[arg(long, default_value = "small")]
        scale: Scale,
        /// Perturb the exact counter to confirm the suites notice.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn faulty_count(word: &Word, t: i64) -> BigCount {
    let c = suites::reference_count(word, t);
    if t == 2 && word.len() > 4 {
        c + 1u32
    } else {
        c
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Count {
            word,
            runs,
            q,
            t,
            method,
        } => {
            let input = CountInput::parse(word.as_deref(), runs.as_deref(), q)?;
            let budget = commands::enum_budget()?;
            println!("{}", commands::count(&input, t, method, budget)?);
        }
        Command::Bounds { q, n, r, t, exact } => {
            println!(
                "{}",
                commands::report_json(&commands::bounds(q, n, r, t, exact)?)
            );
        }
        Command::Sweep {
            q,
            n,
            r,
            t,
            cols,
            out,
            format,
        } => {
            let columns = match cols {
                Some(c) => sweep::parse_columns(&c)?,
                None => sweep::default_columns(),
            };
            let to_stdout = out.is_none();
            let spec = SweepSpec {
                q,
                n,
                r,
                t_range: t,
                columns,
                output: out,
                format,
            };
            let result = spec.run()?;
            if to_stdout {
                print!("{}", result.text);
            }
        }
        Command::Chain { word, q, t } => {
            let word = match q {
                Some(q) => Word::parse(&word, q),
                None => Word::parse_inferred(&word),
            }
            .map_err(CliError::from)?;
            print!("{}", commands::chain(&word, t)?);
        }
        Command::Balanced {
            r,
            k,
            q,
            t,
            prime,
            method,
        } => {
            println!("{}", commands::balanced(r, k, q, t, prime, method)?);
        }
        Command::Selftest {
            scale,
            inject_fault,
        } => {
            let count = if inject_fault {
                faulty_count
            } else {
                suites::reference_count
            };
            let outcomes = suites::selftest(scale, count);
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            println!("{} suites, {failed} failed", outcomes.len());
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} suites failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
