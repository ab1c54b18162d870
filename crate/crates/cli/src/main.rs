use std::io::{stderr, stdout};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use normone::Limits;
use normone_cli::cache::Cache;
use normone_cli::commands::{
    cmd_classes, cmd_compute, cmd_sha_oracle, cmd_verify_paper, cmd_verify_schur, CliError, Outcome, SubgroupChoice,
};

#[derive(Parser)]
#[command(name = "normone", version, about = "Norm-one tori of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args)]
struct Caps {
    /// Largest group order handled.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    max_order: u64,
    /// Coset table size limit.
    #[arg(long, global = true, default_value_t = Limits::default().max_cosets)]
    max_cosets: usize,
    /// Largest lattice rank built.
    #[arg(long, global = true, default_value_t = Limits::default().max_rank)]
    max_rank: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Which {
    /// Subgroup generators in cycle notation, e.g. "(1 2 3),(1 2)(3 4)".
    #[arg(long)]
    subgroup: Option<String>,
    /// Stabilizer of this point (1-based).
    #[arg(long)]
    point_stabilizer: Option<usize>,
    /// Index into the list printed by `classes` (0-based).
    #[arg(long)]
    class: Option<usize>,
    /// Every subgroup class of index at least 2, one line each.
    #[arg(long)]
    all_classes: bool,
}

impl Which {
    fn choice(&self) -> SubgroupChoice {
        if let Some(s) = &self.subgroup {
            SubgroupChoice::Generators(s.clone())
        } else if let Some(k) = self.point_stabilizer {
            SubgroupChoice::PointStabilizer(k)
        } else if let Some(i) = self.class {
            SubgroupChoice::Class(i)
        } else {
            SubgroupChoice::AllClasses
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// H^1(G, M) for the flasque module of J_{G/H}, as JSON lines.
    Compute {
        /// Group: A n, S n, D n, C n or C a x b x ...
        spec: String,
        #[command(flatten)]
        which: Which,
        /// Cache directory (defaults to $NORMONE_CACHE).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Recompute the alternating-group table and report PASS/FAIL.
    VerifyPaper,
    /// Conjugacy classes of subgroups, as JSON lines.
    Classes { spec: String },
    /// Check the preimage of A_n in the Schur cover of S_n.
    VerifySchur { n: usize },
    /// Compare H^1(G, M) with Sha^2_omega(G, J_{G/H}).
    ShaOracle {
        spec: String,
        #[command(flatten)]
        which: Which,
    },
}

fn limits(c: &Caps) -> Limits {
    Limits { max_order: c.max_order, max_cosets: c.max_cosets, max_rank: c.max_rank, ..Limits::default() }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let limits = limits(&cli.caps);
    let (mut out, mut err) = (stdout().lock(), stderr().lock());
    match cli.command {
        Command::Compute { spec, which, cache_dir } => {
            let cache = Cache::from_flag(cache_dir.as_deref());
            cmd_compute(&spec, &which.choice(), &limits, cache.as_ref(), &mut out, &mut err)?;
            Ok(0)
        }
        Command::VerifyPaper => {
            let outcomes = cmd_verify_paper(&limits, &mut out)?;
            Ok(if outcomes.contains(&Outcome::Fail) { 1 } else { 0 })
        }
        Command::Classes { spec } => {
            cmd_classes(&spec, &limits, &mut out)?;
            Ok(0)
        }
        Command::VerifySchur { n } => {
            let r = cmd_verify_schur(n, &limits, &mut out)?;
            Ok(if r.ok { 0 } else { 4 })
        }
        Command::ShaOracle { spec, which } => {
            cmd_sha_oracle(&spec, &which.choice(), &limits, &mut out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
