//! `autosg`: command line front end for automaton semigroups.
//!
//! Exit status is 0 on success, 1 when well-formed input fails a
//! mathematical check (a precondition, a capacity bound or a verification
//! suite) and 2 for usage and parse errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use autosg::constructions::{
    adjoin_identity_state, direct_power, free_product, free_product_adjoin_identity,
    wreath_initial_symbol, wreath_subsemigroup, RightDollarOutput,
};
use autosg::dot::export_dot;
use autosg::element::{enumerate, enumerate_generated, equal, growth};
use autosg::format::{parse_document, Document};
use autosg::verify::{self, Report};
use autosg::{Automaton, ConstructionOutput, Error, FiniteMonoid, Limits, Result, StateRole, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};

const MAX_ELEMENTS_VAR: &str = "AUTOSG_MAX_ELEMENTS";

#[derive(Parser)]
#[command(name = "autosg", version, about = "Compute with automaton semigroups")]
struct Cli {
    /// Largest tree level any command may tabulate.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Largest number of distinct elements an enumeration may collect
    /// (overrides AUTOSG_MAX_ELEMENTS).
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an automaton file and report every problem found.
    Validate {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Act with a word of states on a string, or print its action on a level.
    Act {
        #[arg(long)]
        automaton: PathBuf,
        /// Comma-separated state names.
        #[arg(long)]
        word: String,
        /// Input string; comma-separated or a concatenation of symbol names.
        #[arg(long, conflicts_with = "level", required_unless_present = "level")]
        input: Option<String>,
        /// Print the action on every string of this length instead.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Decide whether two words define the same element.
    Equal {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// List one shortest representative word per element.
    Enumerate {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Restrict to words over these states (default: all states, or the
        /// designated generators of a constructed automaton).
        #[arg(long)]
        generators: Option<String>,
    },
    /// Number of elements of length at most n, for n = 1..max-len.
    Growth {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Build the automaton of a semigroup construction.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Run a property suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Write the automaton as a Graphviz digraph.
    ExportDot {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RightDollar {
    /// Right states mark `$` as `$°`.
    Dollar,
    /// Right states write `#°` on `$`.
    Hash,
}

#[derive(Subcommand)]
enum Construction {
    /// Free product of two automaton semigroups with left identities.
    FreeProduct {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        left_id: String,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        right_id: String,
        #[command(flatten)]
        output: Output,
    },
    /// Free product with an identity adjoined.
    FreeProductIdentity {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_enum, default_value = "dollar")]
        right_dollar: RightDollar,
        #[command(flatten)]
        output: Output,
    },
    /// Direct power Sⁿ.
    DirectPower {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Wreath product as a subsemigroup of an automaton semigroup.
    WreathSubsemigroup {
        #[arg(long)]
        s_automaton: PathBuf,
        #[arg(long)]
        monoid: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Wreath product as an initial-symbol automaton semigroup.
    WreathInitialSymbol {
        #[arg(long)]
        s_automaton: PathBuf,
        #[arg(long)]
        monoid: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Add a state acting as the identity.
    AdjoinIdentity {
        #[arg(long)]
        automaton: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// A state is idempotent and a left identity of its factor.
    LeftIdentity {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        state: String,
    },
    /// Every state fixes every marked symbol.
    MarkedAbsorption {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Words over one factor are equal in the free product iff in the factor.
    FactorEmbedding {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// x_w and y_w against their case formulas.
    XwYw {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Wreath automaton against wreath arithmetic.
    WreathOracle {
        #[arg(long)]
        s_automaton: PathBuf,
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Initial-symbol automaton against wreath arithmetic.
    InitialSymbolOracle {
        #[arg(long)]
        s_automaton: PathBuf,
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

/// What a successful command produced.
enum Outcome {
    Text(String),
    Report(Report),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("{}: cannot read: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<(Document, Automaton)> {
    let name = path.display().to_string();
    let doc = parse_document(&read(path)?).map_err(|e| e.in_source(&name))?;
    let aut = doc.draft.build().map_err(|e| e.in_source(&name))?;
    Ok((doc, aut))
}

fn load_automaton(path: &Path) -> Result<Automaton> {
    load_document(path).map(|(_, aut)| aut)
}

fn load_construction(path: &Path) -> Result<ConstructionOutput> {
    let (doc, aut) = load_document(path)?;
    ConstructionOutput::from_annotated(aut, &doc.annotations)
        .map_err(|e| annotate_usage(e, path))
}

fn load_monoid(path: &Path) -> Result<FiniteMonoid> {
    FiniteMonoid::parse(&read(path)?).map_err(|e| e.in_source(&path.display().to_string()))
}

fn annotate_usage(e: Error, path: &Path) -> Error {
    match e {
        Error::Usage(m) => Error::Usage(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn state_list(aut: &Automaton, text: &str) -> Result<Vec<usize>> {
    Word::parse(aut, text).map(|w| w.states().to_vec())
}

fn limits(cli: &Cli) -> Result<Limits> {
    let mut limits = Limits::default();
    let from_env = match std::env::var(MAX_ELEMENTS_VAR) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
            Error::Usage(format!("{MAX_ELEMENTS_VAR} must be a nonnegative integer, found `{v}`"))
        })?),
        Err(_) => None,
    };
    if let Some(n) = cli.max_elements.or(from_env) {
        limits.max_elements = n;
    }
    Ok(limits)
}

fn check_depth(max_depth: Option<usize>, depth: usize) -> Result<()> {
    match max_depth {
        Some(max) if depth > max => Err(Error::Capacity {
            what: "tree level",
            requested: depth as u128,
            limit: max as u128,
        }),
        _ => Ok(()),
    }
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<Outcome> {
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Error::Usage(format!("{}: cannot write: {e}", path.display())))?;
            Ok(Outcome::Text(String::new()))
        }
        None => Ok(Outcome::Text(text)),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Validate { automaton } => {
            let name = automaton.display().to_string();
            let doc = parse_document(&read(automaton)?).map_err(|e| e.in_source(&name))?;
            let diagnostics = doc.draft.validate();
            if !diagnostics.is_empty() {
                let lines: Vec<String> = diagnostics.iter().map(|d| format!("{name}: {d}")).collect();
                return Err(Error::Parse { source_name: None, line: None, message: lines.join("\n") });
            }
            let aut = doc.draft.build()?;
            Ok(Outcome::Text(format!(
                "valid: {} states, {} symbols\n",
                aut.num_states(),
                aut.num_symbols()
            )))
        }
        Command::Act { automaton, word, input, level } => {
            let aut = load_automaton(automaton)?;
            let w = Word::parse(&aut, word)?;
            if let Some(depth) = level {
                check_depth(cli.max_depth, *depth)?;
                let table = aut.act_on_level(&w, *depth, &limits)?;
                let mut text = String::new();
                for (input, output) in table.iter() {
                    let _ = writeln!(text, "{} -> {}", aut.format_symbols(&input), aut.format_symbols(output));
                }
                return Ok(Outcome::Text(text));
            }
            let input = aut.parse_symbols(input.as_deref().unwrap_or_default())?;
            check_depth(cli.max_depth, input.len())?;
            Ok(Outcome::Text(format!("{}\n", aut.format_symbols(&aut.act(&w, &input)?))))
        }
        Command::Equal { automaton, left, right } => {
            let aut = load_automaton(automaton)?;
            let same = equal(&aut, &Word::parse(&aut, left)?, &Word::parse(&aut, right)?)?;
            Ok(Outcome::Text(if same { "equal\n" } else { "not equal\n" }.into()))
        }
        Command::Enumerate { automaton, max_len, generators } => {
            let (doc, aut) = load_document(automaton)?;
            let gens = match generators {
                Some(g) => state_list(&aut, g)?,
                None if !doc.annotations.generators.is_empty() => doc
                    .annotations
                    .generators
                    .iter()
                    .map(|g| aut.require_state(g))
                    .collect::<Result<_>>()?,
                None => (0..aut.num_states()).collect(),
            };
            let elems = if gens.len() == aut.num_states() {
                enumerate(&aut, *max_len, &limits)?
            } else {
                enumerate_generated(&aut, &gens, *max_len, &limits)?
            };
            let mut text = String::new();
            for e in &elems {
                let _ = writeln!(text, "{}", aut.format_word(&e.word));
            }
            let _ = writeln!(text, "{} elements", elems.len());
            Ok(Outcome::Text(text))
        }
        Command::Growth { automaton, max_len } => {
            let aut = load_automaton(automaton)?;
            let counts = growth(&aut, *max_len, &limits)?;
            let mut text = String::new();
            for (n, c) in counts.iter().enumerate() {
                let _ = writeln!(text, "{} {c}", n + 1);
            }
            Ok(Outcome::Text(text))
        }
        Command::Construct { kind } => construct(kind, &limits),
        Command::Verify { suite } => run_suite(suite, &limits).map(Outcome::Report),
        Command::ExportDot { automaton, out } => {
            let aut = load_automaton(automaton)?;
            emit(export_dot(&aut), out)
        }
    }
}

fn construct(kind: &Construction, limits: &Limits) -> Result<Outcome> {
    let (built, out) = match kind {
        Construction::FreeProduct { left, left_id, right, right_id, output } => {
            let (a1, a2) = (load_automaton(left)?, load_automaton(right)?);
            let (l, r) = (a1.require_state(left_id)?, a2.require_state(right_id)?);
            (free_product(&a1, l, &a2, r)?, &output.out)
        }
        Construction::FreeProductIdentity { left, right, right_dollar, output } => {
            let variant = match right_dollar {
                RightDollar::Dollar => RightDollarOutput::DollarMarked,
                RightDollar::Hash => RightDollarOutput::HashMarked,
            };
            let (a1, a2) = (load_automaton(left)?, load_automaton(right)?);
            (free_product_adjoin_identity(&a1, &a2, variant)?, &output.out)
        }
        Construction::DirectPower { automaton, n, output } => {
            (direct_power(&load_automaton(automaton)?, *n, limits)?, &output.out)
        }
        Construction::WreathSubsemigroup { s_automaton, monoid, output } => {
            let (aut, m) = (load_automaton(s_automaton)?, load_monoid(monoid)?);
            (wreath_subsemigroup(&aut, &m, limits)?, &output.out)
        }
        Construction::WreathInitialSymbol { s_automaton, monoid, output } => {
            let (aut, m) = (load_automaton(s_automaton)?, load_monoid(monoid)?);
            (wreath_initial_symbol(&aut, &m, limits)?.output, &output.out)
        }
        Construction::AdjoinIdentity { automaton, output } => {
            (adjoin_identity_state(&load_automaton(automaton)?)?, &output.out)
        }
    };
    emit(built.to_text(), out)
}

fn run_suite(suite: &Suite, limits: &Limits) -> Result<Report> {
    match suite {
        Suite::LeftIdentity { automaton, state } => {
            let (doc, aut) = load_document(automaton)?;
            let l = aut.require_state(state)?;
            let scope = if doc.annotations.states.is_empty() {
                (0..aut.num_states()).collect()
            } else {
                let out = load_construction(automaton)?;
                match out.roles[l] {
                    StateRole::Left(_) | StateRole::Right(_) => verify::factor_of(&out, l),
                    _ => (0..aut.num_states()).collect(),
                }
            };
            verify::left_identity(&aut, l, &scope)
        }
        Suite::MarkedAbsorption { automaton } => {
            let out = load_construction(automaton)?;
            let marked = verify::marked_symbols(&out);
            if marked.is_empty() {
                return Err(Error::Usage(format!(
                    "{}: no marked symbols in this automaton",
                    automaton.display()
                )));
            }
            Ok(verify::marked_absorption(&out.automaton, &marked))
        }
        Suite::FactorEmbedding { automaton, left, right, max_len } => {
            let out = load_construction(automaton)?;
            verify::factor_embedding(&out, &load_automaton(left)?, &load_automaton(right)?, *max_len)
        }
        Suite::XwYw { automaton, max_k } => verify::xw_yw(&load_construction(automaton)?, *max_k),
        Suite::WreathOracle { s_automaton, monoid, max_len } => verify::wreath_oracle(
            &load_automaton(s_automaton)?,
            &load_monoid(monoid)?,
            *max_len,
            limits,
        ),
        Suite::InitialSymbolOracle { s_automaton, monoid, max_len } => verify::initial_symbol_oracle(
            &load_automaton(s_automaton)?,
            &load_monoid(monoid)?,
            *max_len,
            limits,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Report(report)) => {
            print!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
