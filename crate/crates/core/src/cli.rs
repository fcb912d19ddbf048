//! Command-line front end.
//!
//! Exit codes: 10 satisfiable, 20 unsatisfiable (solve, oracle); 0 proof
//! accepted, 1 proof rejected (check); 2 usage, I/O or parse error; 3
//! resource budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::builder::{buildresol, BuildError, BuildOptions, BuildStats, ResourceBudget, SelectionStrategy, SolveOutcome};
use crate::check::check_dag;
use crate::clause::{Assignment, ClauseSet};
use crate::dimacs::{format_dimacs, parse_dimacs};
use crate::export::{parse_trace, to_dot, to_structured_json, to_trace};
use crate::gen::GenSpec;
use crate::oracle::{truth_table_sat, OracleVerdict, DEFAULT_MAX_ATOMS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "resproof", version, about = "Certifying propositional resolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a CNF, printing a model or a resolution refutation.
    Solve(SolveArgs),
    /// Verify a trace-format refutation against a CNF.
    Check(CheckArgs),
    /// Write a generated instance as DIMACS.
    Gen(GenArgs),
    /// Decide a CNF by truth table.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    FirstFit,
    MaxWidth,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Emit {
    #[default]
    None,
    Dot,
    Trace,
    Structured,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// DIMACS input; stdin when omitted or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StrategyName::FirstFit)]
    pub strategy: StrategyName,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Emit::None)]
    pub emit: Emit,
    /// Write the emitted proof here instead of stdout.
    #[arg(long)]
    pub proof: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_depth: usize,
    /// Print counters to stderr.
    #[arg(long)]
    pub stats: bool,
    /// Compute both branches of every split before combining them.
    #[arg(long)]
    pub eager: bool,
    /// Turn off the unit-clause shortcuts; every split then comes from the strategy.
    #[arg(long)]
    pub no_early_exits: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// The DIMACS premises.
    #[arg(long)]
    pub cnf: PathBuf,
    /// Trace-format proof; stdin when omitted or `-`.
    pub proof: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Output file; stdout when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    Pigeonhole {
        #[arg(long)]
        holes: usize,
    },
    Random {
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ATOMS)]
    pub max_atoms: usize,
}

/// Standard streams, injectable for in-process tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_ERROR, e.to_string())
    }
}

pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                io.stderr.write_all(text.as_bytes())
            } else {
                io.stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a, io),
        Command::Check(a) => check(a, io),
        Command::Gen(a) => gen(a, io),
        Command::Oracle(a) => oracle(a, io),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(io.stderr, "c error: {msg}");
            code
        }
    }
}

fn read_input(path: Option<&Path>, io: &mut Io<'_>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io.stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_cnf(path: Option<&Path>, io: &mut Io<'_>) -> Result<ClauseSet, Failure> {
    let text = read_input(path, io)?;
    let parsed = parse_dimacs(&text)?;
    for w in &parsed.warnings {
        writeln!(io.stderr, "c warning: {w}")?;
    }
    Ok(parsed.clauses)
}

fn model_line(model: &Assignment) -> String {
    let mut line = String::from("v");
    for lit in model.true_literals() {
        line.push(' ');
        line.push_str(&lit.to_dimacs().to_string());
    }
    line.push_str(" 0\n");
    line
}

fn write_stats(out: &mut dyn Write, stats: &BuildStats) -> std::io::Result<()> {
    writeln!(out, "c recursive_calls {}", stats.recursive_calls)?;
    writeln!(out, "c dag_nodes {}", stats.dag_nodes)?;
    writeln!(out, "c max_depth {}", stats.max_depth)?;
    writeln!(out, "c percolations {}", stats.percolations)?;
    writeln!(out, "c grafts {}", stats.grafts)?;
    writeln!(out, "c shortcuts {}", stats.shortcuts)
}

fn solve(args: SolveArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let gamma = read_cnf(args.input.as_deref(), io)?;
    let strategy = match args.strategy {
        StrategyName::FirstFit => SelectionStrategy::FirstFit,
        StrategyName::MaxWidth => SelectionStrategy::MaxWidth,
        StrategyName::Random => SelectionStrategy::Random { seed: args.seed },
    };
    let options = BuildOptions {
        budget: ResourceBudget {
            max_nodes: args.max_nodes,
            max_depth: args.max_depth,
        },
        eager: args.eager,
        early_exits: !args.no_early_exits,
    };
    let (outcome, stats) = match buildresol(&gamma, strategy, options) {
        Ok(r) => r,
        Err(e @ BuildError::BudgetExhausted { .. }) => {
            writeln!(io.stderr, "c {e}")?;
            write_stats(io.stderr, e.stats().expect("budget errors carry stats"))?;
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    if args.stats {
        write_stats(io.stderr, &stats)?;
    }
    match outcome {
        SolveOutcome::Model(model) => {
            writeln!(io.stdout, "s SATISFIABLE")?;
            io.stdout.write_all(model_line(&model).as_bytes())?;
            Ok(EXIT_SAT)
        }
        SolveOutcome::Refutation(dag) => {
            writeln!(io.stdout, "s UNSATISFIABLE")?;
            let proof = match args.emit {
                Emit::None => None,
                Emit::Dot => Some(to_dot(&dag)),
                Emit::Trace => Some(to_trace(&dag)),
                Emit::Structured => Some(to_structured_json(&dag, &gamma)),
            };
            match (proof, args.proof) {
                (Some(text), Some(path)) => fs::write(&path, text)
                    .map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))?,
                (Some(text), None) => io.stdout.write_all(text.as_bytes())?,
                (None, _) => {}
            }
            Ok(EXIT_UNSAT)
        }
    }
}

fn check(args: CheckArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let gamma = read_cnf(Some(&args.cnf), io)?;
    let dag = parse_trace(&read_input(args.proof.as_deref(), io)?)?;
    let report = check_dag(&dag, Some(&gamma));
    for v in &report.violations {
        writeln!(io.stdout, "{v}")?;
    }
    if !report.is_refutation {
        writeln!(io.stdout, "proof does not end in a single empty clause")?;
    }
    if report.is_valid_refutation() {
        writeln!(io.stdout, "s VERIFIED")?;
        Ok(EXIT_OK)
    } else {
        writeln!(io.stdout, "s NOT VERIFIED")?;
        Ok(EXIT_REJECTED)
    }
}

fn gen(args: GenArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let spec = match args.family {
        Family::Pigeonhole { holes } => GenSpec::Pigeonhole { holes },
        Family::Random {
            atoms,
            clauses,
            k,
            seed,
        } => GenSpec::RandomKSat {
            atoms,
            clauses,
            k,
            seed,
        },
    };
    let text = format_dimacs(&spec.generate()?);
    match args.output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))?,
        None => io.stdout.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn oracle(args: OracleArgs, io: &mut Io<'_>) -> Result<i32, Failure> {
    let gamma = read_cnf(args.input.as_deref(), io)?;
    match truth_table_sat(&gamma, args.max_atoms)? {
        OracleVerdict::Unsat => {
            writeln!(io.stdout, "s UNSATISFIABLE")?;
            Ok(EXIT_UNSAT)
        }
        OracleVerdict::Sat { witness } => {
            writeln!(io.stdout, "s SATISFIABLE")?;
            io.stdout.write_all(model_line(&witness).as_bytes())?;
            Ok(EXIT_SAT)
        }
    }
}
