//! Command-line interface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxword_core::rewriting::{build_word_graph, graph_stats, GraphKind};
use coxword_core::{CoxeterGroup, GroupElement, PrimedWord};
use serde_json::json;

use crate::error::{HarnessError, Result};
use crate::registry::{LoadedSystem, REGISTRY};
use crate::suites::{run_suite, RunOptions, SuiteId};

#[derive(Parser, Debug)]
#[command(
    name = "coxword",
    version,
    about = "Involution words and their relations in twisted Coxeter systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the words or atoms attached to a twisted involution.
    Enumerate(EnumerateArgs),
    /// Draw the word graph of a twisted involution.
    Graph(GraphArgs),
    /// Set sizes and graph statistics for a twisted involution.
    Stats(GraphArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Show the built-in systems.
    ListSystems,
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    /// Registry name or path to a JSON system file.
    #[arg(long)]
    pub system: String,
    /// Window `[..]`, cycles `(a,b)(c,d)` or a word such as `s1s2` or `121`.
    #[arg(long)]
    pub z: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Inv,
    Primed,
    Hecke,
    HeckeRed,
    Atoms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    #[arg(long, value_enum, default_value = "inv")]
    pub kind: Kind,
    /// Longest Hecke word for `--kind hecke` (default `ℓ(z) + 2`).
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    #[arg(long, value_enum, default_value = "inv")]
    pub kind: Kind,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    /// Registry name or path to a JSON system file.
    #[arg(long)]
    pub system: String,
    /// Largest `ρ(z)` to sweep.
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Drop one relation component chosen by this seed.
    #[arg(long)]
    pub fault_seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the JSON-lines report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(args: &ElementArgs) -> Result<(LoadedSystem, GroupElement)> {
    let sys = LoadedSystem::load(&args.system)?;
    let z = sys.parse_twisted(&args.z)?;
    Ok((sys, z))
}

fn lines(items: &[String], format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(items.iter().map(|s| format!("{s}\n")).collect()),
        Format::Json => Ok(format!("{}\n", serde_json::to_string(items).expect("strings serialize"))),
        Format::Dot => Err(HarnessError::Usage("dot output is only for graphs".into())),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Enumerate(args) => {
            let (sys, z) = load(&args.element)?;
            let e = &sys.engine;
            let mut items: Vec<String> = match args.kind {
                Kind::Inv => e.involution_words(&z).iter().map(|w| w.to_string()).collect(),
                Kind::Primed => e.primed_words(&z).iter().map(PrimedWord::to_string).collect(),
                Kind::HeckeRed => e.reduced_hecke_words(&z)?.iter().map(|w| w.to_string()).collect(),
                Kind::Hecke => {
                    let bound = args.bound.unwrap_or(sys.group().length(&z) + 2);
                    e.hecke_words(&z, bound).iter().map(|w| w.to_string()).collect()
                }
                Kind::Atoms => e.hecke_atoms(&z)?.iter().map(|a| sys.format_element(a)).collect(),
            };
            if args.kind != Kind::Atoms {
                items.sort();
            }
            emit(&lines(&items, args.format)?, args.out.as_ref(), out)?;
            Ok(0)
        }
        Command::Graph(args) => {
            let (sys, z) = load(&args.element)?;
            let graph = build_word_graph(&sys.engine, &z, graph_kind(args.kind)?)?;
            let text = match args.format.unwrap_or(Format::Dot) {
                Format::Dot => graph.to_dot(),
                Format::Json => format!("{}\n", serde_json::to_string(&graph).expect("graphs serialize")),
                Format::Text => {
                    let mut s = String::new();
                    for e in graph.edges() {
                        s.push_str(&format!(
                            "{} {} {}\n",
                            graph.vertices()[e.a],
                            graph.vertices()[e.b],
                            e.kind
                        ));
                    }
                    s
                }
            };
            emit(&text, args.out.as_ref(), out)?;
            Ok(0)
        }
        Command::Stats(args) => {
            let (sys, z) = load(&args.element)?;
            let e = &sys.engine;
            let graph = build_word_graph(e, &z, graph_kind(args.kind)?)?;
            let stats = graph_stats(&graph);
            let length = sys.group().length(&z);
            let value = json!({
                "system": sys.name,
                "z": sys.format_element(&z),
                "length": length,
                "rho": e.rho(&z),
                "involution_words": e.involution_words(&z).len(),
                "primed_words": e.primed_words(&z).len(),
                "atoms": e.hecke_atoms(&z)?.len(),
                "reduced_hecke_words": e.reduced_hecke_words(&z)?.len(),
                "hecke_words_to_length_plus_2": e.count_hecke_words(&z, length + 2).to_string(),
                "graph": stats,
            });
            let text = match args.format.unwrap_or(Format::Text) {
                Format::Json => format!("{value}\n"),
                Format::Text => {
                    let map = value.as_object().expect("stats are an object");
                    map.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
                }
                Format::Dot => return Err(HarnessError::Usage("stats have no dot form".into())),
            };
            emit(&text, args.out.as_ref(), out)?;
            Ok(0)
        }
        Command::Verify(args) => {
            let suite: SuiteId = args.suite.parse()?;
            let sys = LoadedSystem::load(&args.system)?;
            let mut options = RunOptions::new(&sys);
            options.bounds = options.bounds.with_rho(args.bound);
            options.threads = args.threads;
            options.fault_seed = args.fault_seed;
            let report = run_suite(suite, &sys, &options)?;
            if let Some(path) = &args.out {
                std::fs::write(path, report.to_json_lines())?;
            }
            let text = match args.format {
                Format::Json => report.to_json_lines(),
                Format::Text => report.to_text(),
                Format::Dot => return Err(HarnessError::Usage("reports have no dot form".into())),
            };
            out.write_all(text.as_bytes())?;
            Ok(if report.pass() { 0 } else { 1 })
        }
        Command::ListSystems => {
            for name in REGISTRY {
                writeln!(out, "{}", LoadedSystem::load(name)?.describe())?;
            }
            Ok(0)
        }
    }
}

fn graph_kind(kind: Kind) -> Result<GraphKind> {
    match kind {
        Kind::Inv => Ok(GraphKind::Inv),
        Kind::Primed => Ok(GraphKind::Primed),
        Kind::Hecke | Kind::HeckeRed => Ok(GraphKind::Hecke),
        Kind::Atoms => Err(HarnessError::Usage("atoms have no word graph".into())),
    }
}
