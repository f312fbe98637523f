//! `sumfree`: command-line access to the sum-free toolkit.
//!
//! Every operation prints one JSON document
//! `{version, group, op, params, result, elapsed_ms}` (or CSV for tables).
//! Exit status: 0 success, 1 failed assertion, 2 guard refusal, 3 bad input.

mod ops;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumfree_core::{Ctx, Exec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "sumfree", version, about = "Sum-free sets in finite abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest group order the exhaustive searches may touch (at most 128).
    #[arg(long, global = true)]
    pub guard_order: Option<usize>,
    /// Worker threads; 1 forces the sequential kernels.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report elapsed_ms as 0 so identical runs produce identical bytes.
    #[arg(long, global = true)]
    pub stable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    All,
    Extremal,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Auto,
    Enumerate,
    Construct,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// c(G), the largest size of a sum-free set.
    Cmax(GroupArg),
    /// Count sum-free sets, list extremal ones, or find one of largest size.
    Census {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = CensusMode::All)]
        mode: CensusMode,
    },
    /// Every sum-free set of size c(G).
    Extremal(GroupArg),
    /// Presentations of extremal sets (all of them, or the one given by --set).
    Classify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        set: Option<String>,
    },
    /// Recover the extremal family closest to a large sum-free set.
    Recover {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        set: String,
        /// Declared bound on the deficiency, e.g. 1/49.
        #[arg(long)]
        epsilon: Option<String>,
        /// Require the hypotheses of the recovery theorem.
        #[arg(long)]
        strict: bool,
    },
    /// Aut(G)-orbits on the extremal sets.
    Orbits {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = Source::Auto)]
        source: Source,
    },
    /// Closed-form orbit count for exponent m and supplement rank r.
    Orbi {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
    },
    /// Subgroups of G and their Aut(G)-orbits.
    Subgroups(GroupArg),
    /// The doubling table S(t,k1,k2,H).
    Doubling {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// a(t,H) by the table and by a streaming sum.
    Aofh {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Sum-free sets inside the window (H,[2k,4k]) against (1 + a(H))·2^c(G).
    Windowcount {
        #[command(flatten)]
        group: GroupArg,
        /// Check every splitting instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Sandwich bounds, the t-free bound and the bound calculators.
    Bounds {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Constant of the small-doubling and a(H) calculators.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Constant of the counting calculator.
        #[arg(long, default_value_t = 1.0)]
        cm: f64,
    },
    /// A largest family of disjoint pairs in L with sum or difference x.
    Paircover {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        set: String,
        /// Coordinates of x, e.g. [1,0].
        #[arg(long)]
        x: String,
    },
    /// Sum-free sets covered by some window f^-1[2k,4k+1].
    Windowcensus(GroupArg),
    /// Run the acceptance battery.
    Verify {
        #[arg(value_parser = ["fast", "full"], default_value = "fast")]
        suite: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Invariant factors, comma separated, e.g. 7,7.
    #[arg(long)]
    pub group: String,
}

/// A completed operation.
pub struct Outcome {
    pub group: Option<String>,
    pub params: serde_json::Value,
    pub result: serde_json::Value,
    /// CSV rendering for operations that have one.
    pub csv: Option<String>,
    /// False when the operation found a counterexample or a failed check.
    pub ok: bool,
}

/// The JSON envelope, fields in schema order.
#[derive(Serialize)]
struct Report<'a> {
    version: u32,
    group: Option<&'a str>,
    op: &'a str,
    params: &'a serde_json::Value,
    result: &'a serde_json::Value,
    elapsed_ms: u128,
}

/// Raised when a check the operation performs does not hold.
#[derive(Debug)]
pub struct AssertionFailed(pub String);

impl std::fmt::Display for AssertionFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "assertion failed: {}", self.0)
    }
}

impl std::error::Error for AssertionFailed {}

fn context(global: &Global) -> Result<Ctx> {
    let mut ctx = Ctx::default();
    if let Some(order) = global.guard_order {
        anyhow::ensure!(order > 0, ops::InputError("--guard-order must be positive".into()));
        ctx.guards.dfs_order = order.min(128);
        ctx.guards.census_order = order.min(128);
    }
    if let Some(w) = global.workers {
        anyhow::ensure!(w > 0, ops::InputError("--workers must be positive".into()));
        if w == 1 {
            ctx.exec = Exec::Sequential;
        }
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(ctx)
}

fn emit(global: &Global, op: &str, outcome: &Outcome, elapsed_ms: u128) -> Result<()> {
    let text = match (global.format, &outcome.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => anyhow::bail!(ops::InputError(format!("{op} has no CSV form"))),
        (Format::Json, _) => {
            let doc = Report {
                version: SCHEMA_VERSION,
                group: outcome.group.as_deref(),
                op,
                params: &outcome.params,
                result: &outcome.result,
                elapsed_ms: if global.stable { 0 } else { elapsed_ms },
            };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    match &global.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let ctx = context(&cli.global)?;
    let op = ops::name(&cli.command);
    let start = Instant::now();
    let outcome = ops::dispatch(&cli.command, &ctx)?;
    emit(&cli.global, op, &outcome, start.elapsed().as_millis())?;
    if !outcome.ok {
        return Err(AssertionFailed(format!("{op} reported a failed check")).into());
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<AssertionFailed>() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<sumfree_core::Error>() {
            return if e.is_violation() {
                1
            } else if e.is_guard() {
                2
            } else {
                3
            };
        }
    }
    3
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        let guard: anyhow::Error = sumfree_core::Error::GuardExceeded {
            what: "group order",
            value: 200,
            limit: 49,
        }
        .into();
        assert_eq!(exit_code(&guard), 2);
        let violation: anyhow::Error = sumfree_core::Error::TheoremViolation("x".into()).into();
        assert_eq!(exit_code(&violation), 1);
        assert_eq!(exit_code(&AssertionFailed("y".into()).into()), 1);
        assert_eq!(exit_code(&ops::InputError("z".into()).into()), 3);
        assert_eq!(exit_code(&anyhow::anyhow!("io")), 3);
    }

    #[test]
    fn command_line_parses() {
        let cli = Cli::try_parse_from(["sumfree", "census", "--group", "7", "--mode", "max", "--workers", "2"]).unwrap();
        assert_eq!(cli.global.workers, Some(2));
        assert!(matches!(cli.command, Command::Census { mode: CensusMode::Max, .. }));
        assert!(Cli::try_parse_from(["sumfree", "frobnicate"]).is_err());
    }
}
