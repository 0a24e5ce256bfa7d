use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use strat_core::bgg::bgg_suite;
use strat_core::harness::{chouinard_cases, run_sweep, SweepConfig, SweepKind};
use strat_core::json::{module_to_json, parse_module, CaseJson, CellJson, ReportJson, VarietyJson};
use strat_core::module::{ElementaryAbelian, Hopf};
use strat_core::random::{random_module, stream};
use strat_core::support::{check_chouinard, support_of_module, Truncation};
use strat_core::Error;

#[derive(Parser)]
#[command(name = "strat", version, about = "Support varieties for modules over elementary abelian p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the support variety of a module given as JSON.
    Support {
        #[arg(short, long)]
        input: PathBuf,
        /// Truncation degree for Ext, or `auto`.
        #[arg(long = "D", default_value = "auto")]
        d: String,
    },
    /// Run a seeded sweep or invariant suite and print a JSON report.
    Check(CheckArgs),
    /// Print a seeded random module as JSON.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dim: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tensor,
    Subgroup,
    Induction,
    Chouinard,
    Bgg,
    Oracle,
    Projectivity,
    Koszul,
}

#[derive(Clone, Copy, ValueEnum)]
enum HopfArg {
    Group,
    Lie,
}

#[derive(clap::Args)]
struct CheckArgs {
    kind: Kind,
    #[arg(long, num_args = 1.., default_values_t = [2u32])]
    p: Vec<u32>,
    #[arg(long, num_args = 1.., default_values_t = [2usize])]
    r: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    max_dim: usize,
    #[arg(long, num_args = 1.., default_values_t = [1usize])]
    corank: Vec<usize>,
    #[arg(long, value_enum, default_value_t = HopfArg::Group)]
    hopf: HopfArg,
    /// Degree window `LO..HI` for the BGG suite.
    #[arg(long, default_value = "-8..8", allow_hyphen_values = true)]
    window: String,
    /// Polynomial truncation for the BGG suite.
    #[arg(long, default_value_t = 6)]
    m: usize,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_support(input: &PathBuf, d: &str) -> Result<(), Failure> {
    let text = fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let m = parse_module(&text)?;
    let truncation = match d {
        "auto" => Truncation::Auto,
        n => Truncation::Fixed(n.parse().map_err(|_| Failure::Usage(format!("--D expects a number or auto, got {n}")))?),
    };
    let s = support_of_module(&m, truncation)?;
    emit(&serde_json::to_string(&VarietyJson::from_variety(&s.variety)).expect("serializes"), None)
}

fn parse_window(w: &str) -> Result<(i32, i32), Failure> {
    let bad = || Failure::Usage(format!("--window expects LO..HI, got {w}"));
    let (a, b) = w.split_once("..").ok_or_else(bad)?;
    let (lo, hi) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_check(args: &CheckArgs) -> Result<bool, Failure> {
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    if args.max_dim == 0 {
        return Err(Failure::Usage("--max-dim must be at least 1".into()));
    }
    let hopf = match args.hopf {
        HopfArg::Group => Hopf::Group,
        HopfArg::Lie => Hopf::Lie,
    };
    let sweep = match args.kind {
        Kind::Tensor => Some(SweepKind::Tensor),
        Kind::Subgroup => Some(SweepKind::Subgroup),
        Kind::Induction => Some(SweepKind::Induction),
        Kind::Oracle => Some(SweepKind::Oracle),
        Kind::Projectivity => Some(SweepKind::Projectivity),
        Kind::Koszul => Some(SweepKind::Koszul),
        Kind::Chouinard | Kind::Bgg => None,
    };
    let (name, cells, cases) = match (sweep, args.kind) {
        (Some(kind), _) => {
            let coranks = if matches!(kind, SweepKind::Subgroup | SweepKind::Induction) { args.corank.clone() } else { vec![1] };
            let mut cells = Vec::new();
            for &p in &args.p {
                for &r in &args.r {
                    for &corank in &coranks {
                        ElementaryAbelian::new(p, r)?;
                        let cfg = SweepConfig {
                            seed: args.seed,
                            trials: args.trials,
                            max_dim: args.max_dim,
                            corank,
                            hopf,
                            ..SweepConfig::new(kind, p, r)
                        };
                        cells.push(CellJson::from_outcome(&run_sweep(&cfg)?));
                    }
                }
            }
            (kind.name(), cells, vec![])
        }
        (None, Kind::Chouinard) => {
            let mut cases = Vec::new();
            for c in chouinard_cases()? {
                let rep = check_chouinard(&c.module, &c.subgroups)?;
                cases.push(CaseJson {
                    name: c.name,
                    pass: rep.pass,
                    details: vec![format!("projective={} restricted_projective={:?}", rep.projective, rep.restricted_projective)],
                });
            }
            ("chouinard", vec![], cases)
        }
        (None, _) => {
            let window = parse_window(&args.window)?;
            let mut cases = Vec::new();
            for &p in &args.p {
                for &r in &args.r {
                    for c in bgg_suite(p, r, window, args.m, args.seed)? {
                        cases.push(CaseJson { name: format!("p={p} r={r}: {}", c.name), pass: c.pass, details: c.details });
                    }
                }
            }
            ("bgg", vec![], cases)
        }
    };
    let report = ReportJson::new(name, cells, cases);
    emit(&serde_json::to_string_pretty(&report).expect("serializes"), args.output.as_ref())?;
    let s = &report.summary;
    eprintln!("{name}: {}/{} passed", s.passed, s.trials);
    Ok(s.pass)
}

fn cmd_random(seed: u64, p: u32, r: usize, dim: usize, output: Option<&PathBuf>) -> Result<(), Failure> {
    let alg = ElementaryAbelian::new(p, r)?;
    if dim == 0 {
        return Err(Failure::Usage("--dim must be at least 1".into()));
    }
    let mut rng = stream(seed, "random", 0);
    emit(&module_to_json(&random_module(&mut rng, alg, dim)), output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Support { input, d } => cmd_support(input, d).map(|_| true),
        Command::Check(args) => cmd_check(args),
        Command::Random { seed, p, r, dim, output } => cmd_random(*seed, *p, *r, *dim, output.as_ref()).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
