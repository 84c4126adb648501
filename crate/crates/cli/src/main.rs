mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use opercalc::enumerate::DEFAULT_MAX_RANK;

use crate::commands::SweepConfig;
use crate::report::{Format, Report};

/// Exact calculators and verifiers for Harder-Narasimhan polygons, opers and
/// Frobenius pushforwards on curves.
#[derive(Debug, Parser)]
#[command(name = "opercalc", version)]
struct Cli {
    /// Output format [default: table, or csv for sweep]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices (i, i(r-i)(g-1)) of the oper polygon.
    OperPolygon {
        #[arg(long)]
        rank: i64,
        #[arg(long)]
        genus: i64,
    },
    /// Rank, degree and slope of F_*(Q).
    Pushforward {
        #[arg(long)]
        rank: i64,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long)]
        genus: i64,
        #[arg(long = "char")]
        char_p: i64,
    },
    /// Subbundle slope guaranteed for rank m inside rank n, degree d.
    Hirschowitz {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        genus: i64,
    },
    /// Non-emptiness and dimension bounds for rank-r, degree-0 subsheaves of F_*(Q).
    Quot {
        #[arg(long)]
        q_rank: i64,
        #[arg(long, allow_negative_numbers = true)]
        q_degree: i64,
        #[arg(long)]
        rank: i64,
        #[arg(long)]
        genus: i64,
        #[arg(long = "char")]
        char_p: i64,
    },
    /// Maximum of Σ i·r_i over profiles of weight W with parts at most Q.
    Optimize {
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        cap: i64,
        /// Also run the exhaustive search and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Slope gap μ(F_*Q) - μ(W) forced by a filtration profile.
    SunBound {
        /// Weakly decreasing parts, e.g. 2,1,1
        #[arg(long)]
        profile: String,
        /// Bound on the parts [default: first part]
        #[arg(long)]
        cap: Option<i64>,
        #[arg(long)]
        genus: i64,
        #[arg(long = "char")]
        char_p: i64,
        /// Accept p = 2 without a warning.
        #[arg(long)]
        allow_p2: bool,
    },
    /// Admissible degree-0 polygons of rank R.
    Enumerate {
        #[arg(long)]
        rank: i64,
        #[arg(long)]
        genus: i64,
        /// Check that the oper polygon is the unique maximum.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: i64,
    },
    /// Hasse diagram of the admissible polygons under the Shatz order.
    Strata {
        #[arg(long)]
        rank: i64,
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: i64,
    },
    /// C(r,g), dim W_r, dim J(2) and expected Quot dimensions.
    Dims {
        #[arg(long)]
        rank: i64,
        #[arg(long)]
        genus: i64,
    },
    /// Run every cross-formula identity and inequality.
    CheckLaws,
    /// Tabulate numerics over a JSON grid {"rank": [..], "genus": [..], "char": [..]}.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(Report, Format)> {
    let format = cli.format.unwrap_or(Format::Table);
    let report = match cli.command {
        Command::OperPolygon { rank, genus } => commands::oper_polygon_cmd(rank, genus)?,
        Command::Pushforward {
            rank,
            degree,
            genus,
            char_p,
        } => commands::pushforward(rank, degree, genus, char_p)?,
        Command::Hirschowitz { n, d, m, genus } => commands::hirschowitz(n, d, m, genus)?,
        Command::Quot {
            q_rank,
            q_degree,
            rank,
            genus,
            char_p,
        } => commands::quot(q_rank, q_degree, rank, genus, char_p)?,
        Command::Optimize {
            weight,
            cap,
            oracle,
        } => commands::optimize(weight, cap, oracle)?,
        Command::SunBound {
            profile,
            cap,
            genus,
            char_p,
            allow_p2,
        } => commands::sun(&profile, cap, genus, char_p, allow_p2)?,
        Command::Enumerate {
            rank,
            genus,
            verify,
            jobs,
            max_rank,
        } => commands::enumerate(rank, genus, verify, jobs.into(), max_rank)?,
        Command::Strata {
            rank,
            genus,
            jobs,
            max_rank,
        } => commands::strata(rank, genus, jobs.into(), max_rank)?,
        Command::Dims { rank, genus } => commands::dims(rank, genus)?,
        Command::CheckLaws => commands::laws()?,
        Command::Sweep { config } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let parsed: SweepConfig = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", config.display()))?;
            return Ok((commands::sweep(&parsed)?, cli.format.unwrap_or(Format::Csv)));
        }
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors and prints usage to stderr
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = report
                .render(format, &mut stdout)
                .and_then(|_| stdout.flush())
            {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
