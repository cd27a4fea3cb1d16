//! `etkit`: command-line front-end for E-test space analysis.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use etkit::format::parse_eta;
use etkit::joinmeet::{join, meet};
use etkit::search::{parse_predicates, run_search, SearchConfig};
use etkit::structure::analyze;
use etkit::{EventSpace, IntVec, Limits, PiAlgebra, TestTable};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;
const BUDGET_VAR: &str = "ETKIT_BUDGET";

#[derive(Parser)]
#[command(name = "etkit", version, about = "Effect algebras from algebraic E-test spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a table and print it in canonical row order
    Validate(Common),
    /// List the events of a table
    Events(Common),
    /// Build the quotient effect algebra
    Pi(Common),
    /// Print the Hasse diagram (DOT by default)
    Hasse(Common),
    /// Join of two events
    Join(PairArgs),
    /// Meet of two events
    Meet(PairArgs),
    /// Structural report: homogeneity, sharp elements, lattice checks
    Check(CheckArgs),
    /// Enumerate small tables and keep those matching predicates
    Search(SearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct Common {
    /// Table file in .eta format
    input: Option<PathBuf>,
    /// Inline table, rows separated by ';' and entries by ','
    #[arg(long, conflicts_with = "input")]
    table: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for --format json
    #[arg(long)]
    json: bool,
}

impl Common {
    fn format(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    common: Common,
    /// First event, comma-separated in outcome order
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    /// Second event
    #[arg(long = "g", allow_hyphen_values = true)]
    g: String,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    homogeneous: bool,
    #[arg(long)]
    sharp: bool,
    #[arg(long)]
    lattice: bool,
    #[arg(long = "sharp-lattice")]
    sharp_lattice: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Number of outcomes
    #[arg(long)]
    atoms: usize,
    /// Largest number of tests
    #[arg(long)]
    tests: usize,
    #[arg(long = "max-entry")]
    max_entry: u32,
    /// Comma-separated predicates
    #[arg(long, default_value = "algebraic")]
    predicate: String,
    #[arg(long)]
    budget: Option<usize>,
    /// Write findings as JSON to this file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Core(etkit::Error),
    Input(String),
}

impl From<etkit::Error> for Failure {
    fn from(e: etkit::Error) -> Self {
        Failure::Core(e)
    }
}

fn env_budget() -> Result<Option<usize>, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure::Input(format!("{BUDGET_VAR} is not a count: {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn limits() -> Result<Limits, Failure> {
    let mut lim = Limits::default();
    if let Some(b) = env_budget()? {
        lim.max_events = b;
    }
    Ok(lim)
}

fn load(common: &Common, limits: &Limits) -> Result<TestTable, Failure> {
    match (&common.input, &common.table) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(parse_eta(&text, limits)?)
        }
        (None, Some(inline)) => Ok(parse_eta(&inline.replace(';', "\n").replace(',', " "), limits)?),
        (None, None) => Err(Failure::Input("no table given (pass a file or --table)".into())),
    }
}

fn build(common: &Common) -> Result<PiAlgebra, Failure> {
    let lim = limits()?;
    let table = load(common, &lim)?;
    Ok(PiAlgebra::build(EventSpace::new(table, &lim)?)?)
}

fn parse_vec(s: &str) -> Result<IntVec, Failure> {
    s.split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Failure::Input(format!("not an integer: {c:?}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(IntVec::new)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Validate(c) => {
            let table = load(&c, &limits()?)?;
            Ok(render::validated(&table, c.format(Format::Text)))
        }
        Command::Events(c) => {
            let lim = limits()?;
            let space = EventSpace::new(load(&c, &lim)?, &lim)?;
            Ok(render::events(&space, c.format(Format::Text)))
        }
        Command::Pi(c) => {
            let alg = build(&c)?;
            Ok(render::pi(&alg, c.format(Format::Text) == Format::Json))
        }
        Command::Hasse(c) => {
            let alg = build(&c)?;
            Ok(render::hasse(&alg, c.format(Format::Dot)))
        }
        Command::Join(p) => pair(p, "join"),
        Command::Meet(p) => pair(p, "meet"),
        Command::Check(c) => {
            let alg = build(&c.common)?;
            let report = analyze(&alg)?;
            if c.common.format(Format::Text) == Format::Json {
                return Ok(etkit::export::report_json(&alg, &report));
            }
            let none = !(c.homogeneous || c.sharp || c.lattice || c.sharp_lattice);
            let sections = render::Sections {
                homogeneous: none || c.homogeneous,
                sharp: none || c.sharp,
                lattice: none || c.lattice,
                sharp_lattice: none || c.sharp_lattice,
            };
            Ok(render::check(&alg, &report, sections))
        }
        Command::Search(s) => search(s),
    }
}

fn pair(p: PairArgs, op: &str) -> Result<String, Failure> {
    let alg = build(&p.common)?;
    let f = alg.table().event(parse_vec(&p.f)?)?;
    let g = alg.table().event(parse_vec(&p.g)?)?;
    let ans = if op == "join" { join(&alg, &f, &g) } else { meet(&alg, &f, &g) };
    if p.common.format(Format::Text) == Format::Json {
        Ok(etkit::export::answer_json(&alg, op, &ans))
    } else {
        Ok(render::answer(&alg, op, &ans))
    }
}

fn search(s: SearchArgs) -> Result<String, Failure> {
    let budget = match s.budget {
        Some(b) => b,
        None => env_budget()?.unwrap_or(1_000_000),
    };
    let cfg = SearchConfig::new(s.atoms, s.tests, s.max_entry)
        .with_predicates(parse_predicates(&s.predicate)?)
        .with_budget(budget);
    let outcome = run_search::<i64>(&cfg, &limits()?)?;
    let json = serde_json::to_string_pretty(&outcome).expect("serializable");
    if let Some(path) = &s.out {
        fs::write(path, format!("{json}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if s.json {
        Ok(json)
    } else {
        Ok(render::search_summary(&outcome))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) if e.is_internal() => {
            eprintln!("internal error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
