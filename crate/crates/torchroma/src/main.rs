//! Command-line front end: construct, classify, color, enumerate, verify,
//! and export 6-regular torus triangulations `T(r, s, t)`.
//!
//! Exit codes: 0 on success, 2 on bad parameters or a format mismatch,
//! 3 on budget exhaustion, 4 when `verify` finds a rule-table mismatch or
//! `--check` fails.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use torchroma::lattice_canon::edge_kinds;
use torchroma::{
    best_coloring, canonical_form, classify, enumerate_order, export, normal_circuit_lengths,
    verify_coloring, Error, SolveBudget, TorusGraph, TorusParams,
};

/// Largest graph `color` will attempt (the pattern strategies stream the
/// verification, so memory stays proportional to the assignment itself).
const MAX_COLOR_N: u64 = 50_000_000;

/// Largest graph `export` will serialize and `--check` will rebuild.
const MAX_BUILD_N: u64 = 2_000_000;

#[derive(Parser)]
#[command(
    name = "torchroma",
    version,
    about = "Chromatic numbers and colorings of 6-regular torus triangulations T(r, s, t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The parameter triple naming a triangulation.
#[derive(Args)]
struct Triple {
    /// Number of columns (r >= 1).
    #[arg(short)]
    r: i64,
    /// Vertices per column (s >= 1).
    #[arg(short)]
    s: i64,
    /// Wrap-around shift (0 <= t < s).
    #[arg(short)]
    t: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, edge kinds, normal circuit lengths, and canonical form.
    Info(Triple),
    /// Decide the chromatic number; prints a JSON verdict.
    Classify {
        #[command(flatten)]
        triple: Triple,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
    },
    /// Produce a verified optimal coloring certificate.
    Color {
        #[command(flatten)]
        triple: Triple,
        /// Node budget for the exact-search fallback (overrides
        /// TORCHROMA_BUDGET_NODES).
        #[arg(long)]
        budget: Option<u64>,
        /// Rebuild the graph and re-verify the certificate before printing
        /// (orders up to 2,000,000).
        #[arg(long)]
        check: bool,
        /// Print a text grid (rows j = s..1 top to bottom, columns i = 1..r)
        /// instead of JSON.
        #[arg(long)]
        grid: bool,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List isomorphism classes with their normal circuit lengths as JSON.
    Enumerate {
        /// Only list classes of exactly this order.
        #[arg(short)]
        n: Option<u64>,
        /// List classes of every order up to this bound.
        #[arg(long, default_value_t = 48, conflicts_with = "n")]
        max_n: u64,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cross-check the classification rules against the exact solver for
    /// every class up to a bound; nonzero exit on any mismatch.
    Verify {
        /// Largest order to sweep.
        #[arg(long, default_value_t = 48)]
        max_n: u64,
        /// Node budget per exact solve (overrides TORCHROMA_BUDGET_NODES).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Write the graph in DOT, DIMACS, or JSON form.
    Export {
        #[command(flatten)]
        triple: Triple,
        /// Output format.
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Collapse parallel edges to single edges before exporting.
        #[arg(long)]
        simplify: bool,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Dimacs,
    Json,
}

/// A command failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Info(triple) => cmd_info(triple),
        Command::Classify { triple, pretty } => cmd_classify(triple, pretty),
        Command::Color {
            triple,
            budget,
            check,
            grid,
            pretty,
            output,
        } => cmd_color(triple, budget, check, grid, pretty, output),
        Command::Enumerate {
            n,
            max_n,
            pretty,
            output,
        } => cmd_enumerate(n, max_n, pretty, output),
        Command::Verify { max_n, budget } => cmd_verify(max_n, budget),
        Command::Export {
            triple,
            format,
            simplify,
            pretty,
            output,
        } => cmd_export(triple, format, simplify, pretty, output),
    }
}

fn parse_params(triple: &Triple) -> Result<TorusParams, Failure> {
    TorusParams::new(triple.r, triple.s, triple.t).map_err(|e| fail(2, e.to_string()))
}

/// Node budget precedence: `--budget` flag, then TORCHROMA_BUDGET_NODES,
/// then the library default. The time limit always stays at the default.
fn resolve_budget(flag: Option<u64>) -> Result<SolveBudget, Failure> {
    let mut budget = SolveBudget::default();
    if let Some(nodes) = flag {
        budget.node_limit = nodes;
    } else if let Ok(raw) = std::env::var("TORCHROMA_BUDGET_NODES") {
        budget.node_limit = raw
            .trim()
            .parse()
            .map_err(|_| fail(2, format!("TORCHROMA_BUDGET_NODES is not a number: {raw:?}")))?;
    }
    Ok(budget)
}

fn emit(output: Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(&path, content)
            .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_text(value: &serde_json::Value, pretty: bool) -> String {
    let mut text = if pretty {
        serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
    } else {
        serde_json::to_string(value).expect("JSON serialization cannot fail")
    };
    text.push('\n');
    text
}

fn cmd_info(triple: Triple) -> Result<(), Failure> {
    let p = parse_params(&triple)?;
    let kinds = edge_kinds(p);
    let kind_text = if kinds.is_simple {
        "simple".to_string()
    } else {
        let mut parts = Vec::new();
        if kinds.has_loops {
            parts.push("has loops");
        }
        if kinds.has_parallel_edges {
            parts.push("has parallel edges");
        }
        parts.join(", ")
    };
    println!("{p}");
    println!("  vertices: {}", p.n());
    println!("  edges: {} ({kind_text})", 3 * p.n());
    println!("  normal circuits: {}", normal_circuit_lengths(p));
    println!("  canonical form: {}", canonical_form(p));
    Ok(())
}

fn cmd_classify(triple: Triple, pretty: bool) -> Result<(), Failure> {
    let p = parse_params(&triple)?;
    let verdict = export::verdict_json(p, &classify(p));
    print!("{}", json_text(&verdict, pretty));
    Ok(())
}

fn cmd_color(
    triple: Triple,
    budget: Option<u64>,
    check: bool,
    grid: bool,
    pretty: bool,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let p = parse_params(&triple)?;
    if p.n() > MAX_COLOR_N {
        return Err(fail(
            2,
            format!("{p} has {} vertices; color handles at most {MAX_COLOR_N}", p.n()),
        ));
    }
    if check && p.n() > MAX_BUILD_N {
        return Err(fail(
            2,
            format!("--check rebuilds the graph and handles at most {MAX_BUILD_N} vertices"),
        ));
    }
    let budget = resolve_budget(budget)?;
    let (_, coloring) = best_coloring(p, &budget).map_err(|e| match e {
        Error::BudgetExceeded => fail(3, format!("budget exhausted while coloring {p}")),
        Error::HasLoops => fail(2, format!("{p} has loops, so no proper coloring exists")),
        other => fail(1, other.to_string()),
    })?;
    if check {
        let g = TorusGraph::build(p);
        match verify_coloring(&g, &coloring) {
            Ok(true) => {}
            Ok(false) => return Err(fail(4, format!("certificate for {p} failed re-verification"))),
            Err(e) => return Err(fail(4, format!("certificate for {p} is malformed: {e}"))),
        }
    }
    let text = if grid {
        export::render_grid(&coloring)
    } else {
        json_text(&export::coloring_json(&coloring), pretty)
    };
    emit(output, &text)
}

fn cmd_enumerate(
    n: Option<u64>,
    max_n: u64,
    pretty: bool,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let orders: Vec<u64> = match n {
        Some(0) => return Err(fail(2, "order must be at least 1")),
        Some(one) => vec![one],
        None => (1..=max_n).collect(),
    };
    let mut classes = Vec::new();
    for order in orders {
        classes.extend(enumerate_order(order));
    }
    let text = json_text(&export::enumeration_json(&classes), pretty);
    emit(output, &text)
}

fn cmd_verify(max_n: u64, budget: Option<u64>) -> Result<(), Failure> {
    if max_n < 1 {
        return Err(fail(2, "--max-n must be at least 1"));
    }
    let budget = resolve_budget(budget)?;
    let mut total = 0usize;
    let mut mismatches: Vec<String> = Vec::new();
    for n in 1..=max_n {
        let classes = enumerate_order(n);
        if classes.is_empty() {
            continue;
        }
        let mut loops = 0usize;
        let mut by_chi = [0usize; 5];
        for &p in &classes {
            total += 1;
            let classification = classify(p);
            let Some(rule_k) = classification.chromatic_number() else {
                loops += 1;
                continue;
            };
            let exact_k = exact_chromatic(p, &budget)?;
            if exact_k == rule_k {
                by_chi[usize::from(rule_k) - 3] += 1;
            } else {
                mismatches.push(format!(
                    "  {p}: rule {} says {rule_k}, solver says {exact_k}",
                    classification.rule
                ));
            }
        }
        let mut line = format!("n={n:2} classes={:2} loops={loops}", classes.len());
        for (idx, count) in by_chi.iter().enumerate() {
            let _ = write!(line, " chi{}={count}", idx + 3);
        }
        println!("{line}");
    }
    if mismatches.is_empty() {
        println!("checked {total} classes up to n={max_n}: rule table and solver agree");
        Ok(())
    } else {
        println!("mismatches:");
        for m in &mismatches {
            println!("{m}");
        }
        Err(fail(4, format!("{} mismatch(es) found", mismatches.len())))
    }
}

/// Exact chromatic number of the class representative, collapsing parallel
/// edges first (a multigraph and its underlying simple graph color alike).
fn exact_chromatic(p: TorusParams, budget: &SolveBudget) -> Result<u8, Failure> {
    let g = TorusGraph::build(p);
    let simple = if g.classify_edges().is_simple {
        g
    } else {
        g.underlying_simple_graph()
            .expect("loop classes are filtered out by the rule table")
    };
    torchroma::chromatic_number_exact(&simple, budget).map_err(|e| match e {
        Error::BudgetExceeded => fail(3, format!("budget exhausted while checking {p}")),
        other => fail(1, other.to_string()),
    })
}

fn cmd_export(
    triple: Triple,
    format: ExportFormat,
    simplify: bool,
    pretty: bool,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let p = parse_params(&triple)?;
    if p.n() > MAX_BUILD_N {
        return Err(fail(
            2,
            format!("{p} has {} vertices; export handles at most {MAX_BUILD_N}", p.n()),
        ));
    }
    let mut g = TorusGraph::build(p);
    if simplify {
        g = g.underlying_simple_graph().map_err(|_| {
            fail(2, format!("{p} has loops; --simplify only collapses parallel edges"))
        })?;
    }
    let text = match format {
        ExportFormat::Dot => export::to_dot(&g),
        ExportFormat::Dimacs => export::to_dimacs(&g).map_err(|_| {
            fail(
                2,
                format!("{p} is not simple; DIMACS needs --simplify or a simple graph"),
            )
        })?,
        ExportFormat::Json => json_text(&export::graph_json(&g), pretty),
    };
    emit(output, &text)
}
