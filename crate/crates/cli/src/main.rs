//! `foliate`: command-line front end for foliation-core.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 not integrable,
//! 3 step budget exhausted or verdict inconclusive.

mod commands;
mod failure;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use foliation_core::groebner::Budget;
use foliation_core::poly::MonomialOrder;
use rayon::prelude::*;
use serde_json::Value;

use commands::{IdealSource, Outcome, SatMethod};
use failure::{Failure, EXIT_INVALID, EXIT_OK};

/// Overrides the default Gröbner step budget.
const BUDGET_ENV: &str = "FOLIATE_MAX_PAIR_REDUCTIONS";

#[derive(Parser)]
#[command(name = "foliate", version, about = "Exact analysis of codimension-one foliations on P² and P³")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum S-pair reductions per Gröbner computation.
    #[arg(long, global = true, value_name = "N")]
    max_pair_reductions: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a form file, test integrability and the codimension of the singular locus.
    Check { file: PathBuf },
    /// Saturation, curve, ACM and splitting verdicts.
    Classify(ClassifyArgs),
    /// Linear and constant syzygies among the coefficients.
    Syzygies { file: PathBuf },
    /// The distribution family of a split foliation and its integrable members.
    Family { file: PathBuf },
    /// Whether a split foliation is determined by its singular scheme.
    Determine { file: PathBuf },
    /// Write a form file from a constructor.
    #[command(subcommand)]
    Make(MakeCommand),
    /// Reduced Gröbner basis of an ideal.
    Gb(GbArgs),
    /// Saturation of a homogeneous ideal by the irrelevant ideal.
    Sat(SatArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(required_unless_present = "dir", conflicts_with = "dir")]
    file: Option<PathBuf>,
    /// Classify every `.form` file in a directory, in parallel.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Also re-classify under this many random projectivities.
    #[arg(long, value_name = "COUNT")]
    invariance: Option<usize>,
    /// Seed for the random projectivities.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum MakeCommand {
    /// Logarithmic form Π f_i · Σ λ_i df_i / f_i.
    Logarithmic {
        /// Comma-separated homogeneous factors.
        #[arg(long)]
        factors: String,
        /// Comma-separated weights (integers or p/q) with Σ λ_i deg f_i = 0.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Build a plane form in z0 z1 z2.
        #[arg(long)]
        plane: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Linear pull-back of a plane form to P³.
    Pullback {
        plane_form: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The exceptional foliation of the given parameter.
    Exceptional {
        #[arg(long, short = 'd')]
        degree: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The pencil z_j dz_i - z_i dz_j.
    Pencil {
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[arg(long)]
        plane: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the built-in fixture corpus into a directory.
    Corpus { dir: PathBuf },
}

#[derive(Args)]
struct IdealArgs {
    /// Generators, e.g. "z0*z1 - z2^2".
    #[arg(required_unless_present = "form", conflicts_with = "form")]
    generators: Vec<String>,
    /// Use the coefficient ideal of a form file.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Number of variables z0.. for explicit generators.
    #[arg(long, default_value_t = 4)]
    nvars: usize,
}

impl IdealArgs {
    fn source(&self) -> IdealSource<'_> {
        match &self.form {
            Some(p) => IdealSource::Form(p),
            None => IdealSource::Generators { gens: &self.generators, nvars: self.nvars },
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Args)]
struct GbArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    #[arg(long, value_enum, default_value = "grevlex")]
    order: Order,
}

#[derive(Args)]
struct SatArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    #[arg(long, value_enum, default_value = "colon")]
    method: SatMethod,
}

fn budget(flag: Option<u64>) -> Result<Budget, Failure> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        b.max_pair_reductions =
            v.trim().parse().map_err(|_| Failure::invalid(format!("{BUDGET_ENV}: not a count: {v:?}")))?;
    }
    if let Some(n) = flag {
        b.max_pair_reductions = n;
    }
    Ok(b)
}

fn timed(f: impl FnOnce() -> Result<Outcome, Failure>) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let mut out = f()?;
    out.report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(out)
}

fn emit(outcome: &Outcome, json: bool) {
    if json {
        println!("{}", outcome.report.to_json());
    } else {
        print!("{}", outcome.report.to_text());
    }
}

fn form_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "form"))
        .collect();
    files.sort();
    Ok(files)
}

fn classify_dir(dir: &Path, args: &ClassifyArgs, budget: &Budget, json: bool) -> Result<u8, Failure> {
    let files = form_files(dir)?;
    let invariance = args.invariance.map(|n| (n, args.seed));
    let results: Vec<(PathBuf, Result<Outcome, Failure>)> = files
        .into_par_iter()
        .map(|p| {
            let r = timed(|| commands::classify(&p, budget, invariance));
            (p, r)
        })
        .collect();
    let code = commands::combined_code(results.iter().map(|(_, r)| r.as_ref().map_or_else(|f| f.code, |o| o.code)));
    if json {
        let items: Vec<Value> = results
            .iter()
            .map(|(p, r)| match r {
                Ok(o) => serde_json::to_value(&o.report).expect("reports serialize"),
                Err(f) => commands::failure_json(&p.display().to_string(), f),
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&items).expect("values serialize"));
    } else {
        for (i, (p, r)) in results.iter().enumerate() {
            if i > 0 {
                println!();
            }
            match r {
                Ok(o) => print!("{}", o.report.to_text()),
                Err(f) => println!("input: {}\nerror: {f}", p.display()),
            }
        }
    }
    for (_, r) in &results {
        if let Err(f) = r {
            eprintln!("foliate: {f}");
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let budget = budget(cli.max_pair_reductions)?;
    let json = cli.json;
    let single = |out: Outcome| {
        emit(&out, json);
        Ok(out.code)
    };
    match cli.command {
        Command::Check { file } => single(timed(|| commands::check(&file, &budget))?),
        Command::Classify(args) => match (&args.dir, &args.file) {
            (Some(dir), _) => classify_dir(dir, &args, &budget, json),
            (None, Some(file)) => {
                single(timed(|| commands::classify(file, &budget, args.invariance.map(|n| (n, args.seed))))?)
            }
            (None, None) => Err(Failure::invalid("give a form file or --dir")),
        },
        Command::Syzygies { file } => single(timed(|| commands::syzygies(&file))?),
        Command::Family { file } => single(timed(|| commands::family(&file, &budget))?),
        Command::Determine { file } => single(timed(|| commands::determine(&file, &budget))?),
        Command::Make(make) => {
            match make {
                MakeCommand::Logarithmic { factors, weights, plane, output } => {
                    let file = commands::make_logarithmic(&factors, &weights, if plane { 3 } else { 4 })?;
                    commands::write_form_file(file, output.as_deref())?;
                }
                MakeCommand::Pullback { plane_form, output } => {
                    commands::write_form_file(commands::make_pullback(&plane_form)?, output.as_deref())?;
                }
                MakeCommand::Exceptional { degree, output } => {
                    commands::write_form_file(commands::make_exceptional(degree)?, output.as_deref())?;
                }
                MakeCommand::Pencil { i, j, plane, output } => {
                    let file = commands::make_pencil(i, j, if plane { 3 } else { 4 })?;
                    commands::write_form_file(file, output.as_deref())?;
                }
                MakeCommand::Corpus { dir } => {
                    for path in commands::make_corpus(&dir)? {
                        println!("{path}");
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Gb(args) => {
            let order = match args.order {
                Order::Grevlex => MonomialOrder::GrevLex,
                Order::Lex => MonomialOrder::Lex,
            };
            single(timed(|| commands::gb(&args.ideal.source(), order, &budget))?)
        }
        Command::Sat(args) => single(timed(|| commands::sat(&args.ideal.source(), args.method, &budget))?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("foliate: {f}");
            ExitCode::from(if f.code == EXIT_OK { EXIT_INVALID } else { f.code })
        }
    }
}
