use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sumset_core::format::{parse_corpus, parse_set, SetLiteral};
use sumset_core::{Budget, Error};

mod commands;

use commands::{Outcome, Record};

#[derive(Debug, Parser)]
#[command(
    name = "sumset-lab",
    version,
    about = "Exact N-fold sumsets and their exceptional sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// A set: `0,3,5` or `(0,0);(2,0);(0,3);(1,1)`.
    #[arg(long, global = true, conflicts_with = "corpus")]
    set: Option<String>,
    /// File with one set per line.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<u64>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<u64>,
    /// Largest b for the built-in sweeps of `verify thm0` and `verify sylvester`.
    #[arg(long = "b-max", global = true)]
    pub b_max: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest number of lattice points held in one set.
    #[arg(long = "budget-points", global = true)]
    budget_points: Option<usize>,
    /// Largest interval length b*N for one-dimensional bitmaps.
    #[arg(long = "budget-range", global = true)]
    budget_range: Option<u64>,
}

impl Common {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_points: self.budget_points.unwrap_or(d.max_points),
            max_range: self.budget_range.unwrap_or(d.max_range),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Thm0,
    Thm1,
    Thm2,
    Sylvester,
    SavchevChen,
    Growth,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// N A for the given N.
    Sumset,
    /// E(A); in higher dimensions truncated to N H(A).
    Exceptional,
    /// Per-residue least elements, summand counts and thresholds.
    Profile,
    /// Least N0 from which the structural equality holds.
    Threshold,
    /// Check a structural statement on the given sets.
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// E(A) as a finite union of translated monoids.
    Decompose,
    /// Exact polynomial fit of #NA.
    Khovanskii,
    /// Time the main operations.
    Bench,
}

fn inputs(cli: &Cli) -> Result<Vec<(Option<usize>, SetLiteral)>, Error> {
    if let Some(s) = &cli.common.set {
        return Ok(vec![(None, parse_set(s)?)]);
    }
    if let Some(path) = &cli.common.corpus {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        return Ok(parse_corpus(&text)?
            .into_iter()
            .map(|(l, s)| (Some(l), s))
            .collect());
    }
    match cli.command {
        Command::Verify {
            target: Target::Thm0 | Target::Sylvester,
        } => {
            let b_max = cli.common.b_max.unwrap_or(30) as i64;
            let mut out = Vec::new();
            for b in 2..=b_max {
                for a in 1..b {
                    if num_gcd(a, b) == 1 {
                        out.push((None, SetLiteral::OneD(vec![0, a, b])));
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::InvalidInput(
            "one of --set or --corpus is required".into(),
        )),
    }
}

fn num_gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn configure_threads() {
    if let Some(n) = std::env::var("SUMSET_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn exit_code(outcomes: &[Outcome]) -> u8 {
    let mut code = 0;
    for o in outcomes {
        code = match (code, o.status()) {
            (1, _) | (_, 1) => 1,
            (3, _) | (_, 3) => 3,
            (c, s) => c.max(s),
        };
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let entries = match inputs(&cli) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcomes: Vec<Outcome> = entries
        .par_iter()
        .map(|(line, set)| {
            let result = commands::run(cli.command, set, &cli.common);
            Outcome {
                line: *line,
                set: set.clone(),
                result,
            }
        })
        .collect();

    let mut text = String::new();
    for o in &outcomes {
        match cli.common.format {
            Format::Json => {
                text.push_str(&serde_json::to_string(&o.to_json()).expect("serializable"));
                text.push('\n');
            }
            Format::Table => {
                text.push_str(&o.to_table(cli.common.corpus.is_some() || outcomes.len() > 1))
            }
        }
    }
    let written = match &cli.common.out {
        Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for o in &outcomes {
        if let Err(e) = &o.result {
            eprintln!(
                "error: {}{e}",
                o.line.map(|l| format!("line {l}: ")).unwrap_or_default()
            );
        } else if let Ok(Record {
            warning: Some(w), ..
        }) = &o.result
        {
            eprintln!("warning: {w}");
        }
    }
    ExitCode::from(exit_code(&outcomes))
}
