//! Command-line front end: exact counts, dimension estimates, module
//! decomposition, and the named verification suites.

use std::path::PathBuf;
use std::{fs, process};

use anyhow::{anyhow, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use nilcomm::ff::Field;
use nilcomm::io as wire;
use nilcomm::matff::{EnumOpts, MatError, DEFAULT_BUDGET};
use nilcomm::modvar::{decompose, DecomposeOpts, ModvarError, PairModule};
use nilcomm::variety::count::{census, count_cent_nil, count_pairs};
use nilcomm::variety::{component_rep, ComponentId, VarietyError};
use nilcomm::verify::{run_suite, SuiteConfig, VerifyError, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "nilcomm",
    version,
    about = "Exact computations on commuting pairs of p-th-power-zero matrices over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count one size over several field orders and fit dimension and
    /// leading-coefficient estimates.
    Census(CensusArgs),
    /// Print a single exact count.
    #[command(subcommand)]
    Count(CountCmd),
    /// Print only the fitted estimates for counts over several orders.
    DimEst(DimEstArgs),
    /// Split a pair module into indecomposable summands and classify them.
    Decompose(DecomposeArgs),
    /// Run a named verification suite and report each check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnumArgs {
    /// Enumeration budget, in visited points.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; falls back to NILCOMM_WORKERS, then one per CPU.
    #[arg(long)]
    workers: Option<usize>,
}

impl EnumArgs {
    fn opts(&self) -> EnumOpts {
        let mut o = EnumOpts::with_budget(self.budget);
        if let Some(w) = resolve_workers(self.workers) {
            o.workers = w;
        }
        o
    }
}

/// Flag beats the NILCOMM_WORKERS environment variable; unset or
/// unparseable values mean "one worker per CPU".
fn resolve_workers(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("NILCOMM_WORKERS").ok()?.parse().ok())
        .filter(|&w| w > 0)
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CensusArgs {
    /// Matrix size.
    #[arg(short = 'n', long = "size")]
    n: usize,
    /// Rank of the canonical first coordinate; omit to count full pairs.
    #[arg(short = 'i', long = "stratum")]
    i: Option<usize>,
    /// Field orders, comma separated (e.g. 2,4,8).
    #[arg(short = 'q', long = "orders", value_delimiter = ',', required = true)]
    orders: Vec<u64>,
    #[command(flatten)]
    enumeration: EnumArgs,
    /// Record wall-clock timings in the report (off by default so that
    /// output bytes do not depend on the machine).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CountCmd {
    /// All commuting pairs of p-th-power-zero matrices of one size.
    Full {
        #[arg(short = 'n', long = "size")]
        n: usize,
        /// Field order.
        #[arg(short = 'q', long = "order")]
        q: u64,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second coordinates commuting with the canonical rank-i first
    /// coordinate.
    CentNil {
        #[arg(short = 'n', long = "size")]
        n: usize,
        /// Rank of the canonical first coordinate.
        #[arg(short = 'i', long = "stratum")]
        i: usize,
        /// Field order.
        #[arg(short = 'q', long = "order")]
        q: u64,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DimEstArgs {
    /// Matrix size.
    #[arg(short = 'n', long = "size")]
    n: usize,
    /// Rank of the canonical first coordinate; omit to count full pairs.
    #[arg(short = 'i', long = "stratum")]
    i: Option<usize>,
    /// Field orders, comma separated; at least two are needed for a fit.
    #[arg(short = 'q', long = "orders", value_delimiter = ',', required = true)]
    orders: Vec<u64>,
    #[command(flatten)]
    enumeration: EnumArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "component", "list"])))]
struct DecomposeArgs {
    /// Pair JSON file to decompose; '-' reads stdin.
    #[arg(long)]
    input: Option<String>,
    /// Component label to realize and decompose (see --list).
    #[arg(long, requires = "n")]
    component: Option<String>,
    /// List the component labels available at the given size.
    #[arg(long, requires = "n")]
    list: bool,
    /// Matrix size, for --component and --list.
    #[arg(short = 'n', long = "size")]
    n: Option<usize>,
    /// Field order, for --component.
    #[arg(short = 'q', long = "order", default_value_t = 2)]
    q: u64,
    /// Exhaustive idempotent search limit on the endomorphism algebra size.
    #[arg(long, default_value_t = DecomposeOpts::default().idempotent_budget)]
    budget: u64,
    /// Candidate endomorphisms for the randomized splitting fallback.
    #[arg(long, default_value_t = DecomposeOpts::default().fitting_trials)]
    samples: usize,
    /// Seed for the randomized splitting fallback.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
    suite: String,
    #[command(flatten)]
    enumeration: EnumArgs,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per randomized check.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Record wall-clock timings per check.
    #[arg(long)]
    timings: bool,
    /// Also write the report as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{}\n", text)
    };
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(())
}

fn parse_component(s: &str) -> Result<ComponentId> {
    let bad = || anyhow!("component labels look like X_0, X_1^+, X_2^- or X_half, got {:?}", s);
    if s == "X_half" {
        return Ok(ComponentId::XHalf);
    }
    let rest = s.strip_prefix("X_").ok_or_else(bad)?;
    if let Some(j) = rest.strip_suffix("^+") {
        return Ok(ComponentId::XPlus(j.parse().map_err(|_| bad())?));
    }
    if let Some(j) = rest.strip_suffix("^-") {
        return Ok(ComponentId::XMinus(j.parse().map_err(|_| bad())?));
    }
    Ok(ComponentId::X(rest.parse().map_err(|_| bad())?))
}

fn run_decompose(args: &DecomposeArgs) -> Result<i32> {
    if args.list {
        let n = args.n.expect("clap enforces --list requires -n");
        let labels: Vec<String> = ComponentId::all_for(n).iter().map(|c| c.label()).collect();
        emit(&args.out, &labels.join("\n"))?;
        return Ok(0);
    }
    let pair = if let Some(input) = &args.input {
        let text = if input == "-" {
            std::io::read_to_string(std::io::stdin()).context("reading stdin")?
        } else {
            fs::read_to_string(input).with_context(|| format!("reading {}", input))?
        };
        wire::parse_pair(&text)?
    } else {
        let label = args.component.as_deref().expect("clap enforces the source group");
        let n = args.n.expect("clap enforces --component requires -n");
        let field = Field::from_order(args.q)?;
        component_rep(&field, n, &parse_component(label)?)?
    };
    let field = pair.field().clone();
    let module = PairModule::new(pair);
    let opts = DecomposeOpts {
        idempotent_budget: args.budget,
        fitting_trials: args.samples,
        seed: args.seed,
    };
    let dec = decompose(&module, &opts)?;
    emit(&args.out, &wire::decomposition_to_json(&field, &dec))?;
    Ok(0)
}

fn run_verify(args: &VerifyArgs) -> Result<i32> {
    let cfg = SuiteConfig {
        budget: args.enumeration.budget,
        seed: args.seed,
        samples: args.samples,
        workers: resolve_workers(args.enumeration.workers).unwrap_or(0),
        timings: args.timings,
    };
    let report = run_suite(&args.suite, &cfg)?;
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        match c.elapsed_secs {
            Some(t) => println!("[{}] {}: {} ({:.2}s)", verdict, c.name, c.detail, t),
            None => println!("[{}] {}: {}", verdict, c.name, c.detail),
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    println!(
        "suite {}: {}/{} checks passed",
        report.suite,
        passed,
        report.checks.len()
    );
    if let Some(out) = &args.out {
        emit(&Some(out.clone()), &report.to_json())?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Census(a) => {
            let report = census(a.n, a.i, &a.orders, &a.enumeration.opts(), a.timings)?;
            let text = match a.format {
                Format::Json => wire::census_to_json(&report),
                Format::Csv => wire::census_to_csv(&report),
            };
            emit(&a.out, &text)?;
            Ok(0)
        }
        Cmd::Count(CountCmd::Full {
            n,
            q,
            enumeration,
            out,
        }) => {
            let count = count_pairs(*n, *q, &enumeration.opts())?;
            emit(out, &count.to_string())?;
            Ok(0)
        }
        Cmd::Count(CountCmd::CentNil {
            n,
            i,
            q,
            enumeration,
            out,
        }) => {
            let count = count_cent_nil(*n, *i, *q, &enumeration.opts())?;
            emit(out, &count.to_string())?;
            Ok(0)
        }
        Cmd::DimEst(a) => {
            let report = census(a.n, a.i, &a.orders, &a.enumeration.opts(), false)?;
            let est = report.estimate.as_ref().ok_or_else(|| {
                anyhow!("estimates need at least two distinct field orders with nonzero counts")
            })?;
            emit(&a.out, &wire::estimate_to_json(est))?;
            Ok(0)
        }
        Cmd::Decompose(a) => run_decompose(a),
        Cmd::Verify(a) => run_verify(a),
    }
}

/// Exit 3 distinguishes blown enumeration budgets from check failures.
fn is_budget(err: &anyhow::Error) -> bool {
    if let Some(e) = err.downcast_ref::<VerifyError>() {
        return e.is_budget_exceeded();
    }
    if let Some(e) = err.downcast_ref::<VarietyError>() {
        return matches!(e, VarietyError::Mat(MatError::BudgetExceeded { .. }));
    }
    if let Some(e) = err.downcast_ref::<ModvarError>() {
        return matches!(
            e,
            ModvarError::Mat(MatError::BudgetExceeded { .. })
                | ModvarError::Variety(VarietyError::Mat(MatError::BudgetExceeded { .. }))
        );
    }
    if let Some(e) = err.downcast_ref::<MatError>() {
        return matches!(e, MatError::BudgetExceeded { .. });
    }
    false
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {:#}", err);
            process::exit(if is_budget(&err) { 3 } else { 1 });
        }
    }
}
