//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use stratpi_core::fpgroup::Effort;

use crate::commands::{
    cmd_cat, cmd_cyclotomic, cmd_dedekind_batch, cmd_dedekind_verify, cmd_group, cmd_pi1, cmd_poset, GroupOp,
    RunConfig, DEFAULT_SEED,
};
use crate::format::{read_json, CategoryJson, GroupJson, InputError, ModelJson, PosetJson, SiteJson};
use crate::report::{Exit, Report};

#[derive(Debug, Parser)]
#[command(name = "stratpi", version, about = "Fundamental groups of finite stratified models")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum coset-table size.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub effort_cosets: u64,
    /// Largest permutation degree searched for nontrivial quotients.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub effort_degree: u64,
    /// Node budget of the permutation search.
    #[arg(long, global = true, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub effort_search_nodes: u64,
    /// Tietze simplification passes.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub tietze_passes: u64,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Compute pi1 even when the base is not certified simply connected.
    #[arg(long, global = true)]
    pub override_index_check: bool,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            effort: Effort {
                max_cosets: self.effort_cosets as usize,
                max_degree: self.effort_degree as usize,
                search_nodes: self.effort_search_nodes as usize,
                tietze_passes: self.tietze_passes as usize,
            },
            json: self.json,
            seed: self.seed,
            override_index_check: self.override_index_check,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order-theoretic summary of a poset file.
    Poset { file: PathBuf },
    /// Fundamental group of a stratified site file.
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Dedekind-domain models.
    #[command(subcommand)]
    Dedekind(DedekindCommand),
    /// Quotient of (Z/m)× by the inertia factors at the given primes.
    Cyclotomic {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Predicates of a finite category file.
    Cat { file: PathBuf },
    /// Computations on a group file.
    #[command(subcommand)]
    Group(GroupCommand),
}

#[derive(Debug, Subcommand)]
pub enum DedekindCommand {
    /// Compare the computed fundamental group with the inertia quotient.
    Verify {
        /// Model file; omit with --batch.
        file: Option<PathBuf>,
        /// Verify this many sampled models instead of a file.
        #[arg(long)]
        batch: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Abelianize { file: PathBuf },
    Simplify { file: PathBuf },
    /// Coset enumeration over the subgroup generated by --subgroup words.
    Tc {
        file: PathBuf,
        #[arg(long)]
        subgroup: Vec<String>,
    },
    Istrivial { file: PathBuf },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load<J, T>(command: &str, path: &Path, build: impl FnOnce(&J) -> Result<T, InputError>) -> Result<T, Report>
where
    J: serde::de::DeserializeOwned,
{
    read_json::<J>(path)
        .and_then(|j| build(&j))
        .map_err(|e| Report::failure(command, Exit::Input, "input", e.to_string()))
}

pub fn execute(cli: &Cli) -> Report {
    let cfg = cli.global.config();
    let result = match &cli.command {
        Command::Poset { file } => load::<PosetJson, _>("poset", file, PosetJson::build).map(|p| cmd_poset(&p, &cfg)),
        Command::Pi1 { file, basepoint } => {
            load::<SiteJson, _>("pi1", file, SiteJson::build).map(|s| cmd_pi1(&s, basepoint.as_deref(), &cfg))
        }
        Command::Dedekind(DedekindCommand::Verify { file, batch }) => match (file, batch) {
            (None, Some(n)) => Ok(cmd_dedekind_batch(*n, &cfg)),
            (Some(f), None) => {
                load::<ModelJson, _>("dedekind verify", f, ModelJson::build).map(|m| cmd_dedekind_verify(&m, &cfg))
            }
            _ => Err(Report::failure(
                "dedekind verify",
                Exit::Input,
                "usage",
                "give exactly one of a model file or --batch N",
            )),
        },
        Command::Cyclotomic { modulus, primes } => Ok(cmd_cyclotomic(*modulus, primes)),
        Command::Cat { file } => load::<CategoryJson, _>("cat", file, CategoryJson::build).map(|c| cmd_cat(&c)),
        Command::Group(g) => {
            let (op, file, subgroup) = match g {
                GroupCommand::Abelianize { file } => (GroupOp::Abelianize, file, &[][..]),
                GroupCommand::Simplify { file } => (GroupOp::Simplify, file, &[][..]),
                GroupCommand::Tc { file, subgroup } => (GroupOp::Tc, file, subgroup.as_slice()),
                GroupCommand::Istrivial { file } => (GroupOp::IsTrivial, file, &[][..]),
            };
            load::<GroupJson, _>("group", file, |j| j.build("group"))
                .map(|grp| cmd_group(op, &grp, subgroup, &cfg))
        }
    };
    result.unwrap_or_else(|r| r)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Output {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let report = execute(&cli);
    if cli.global.json {
        return Output {
            code: report.exit.code(),
            stdout: report.render(true),
            stderr: String::new(),
        };
    }
    // text mode: diagnostics go to stderr
    let (errors, lines): (Vec<&String>, Vec<&String>) = report.lines.iter().partition(|l| l.starts_with("error"));
    let join = |ls: Vec<&String>| ls.into_iter().map(|l| format!("{l}\n")).collect::<String>();
    Output {
        code: report.exit.code(),
        stdout: join(lines),
        stderr: join(errors),
    }
}
