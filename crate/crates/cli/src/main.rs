//! Command-line driver: tableau pairs, cell partitions, polynomial
//! lookups, character identification, and the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a
//! failure (or a computation cannot be carried out), 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use bncells::group::{group, SignedPermutation};
use bncells::kl::cells::{left_cells, CellPartition};
use bncells::kl::{cache, verify, KLStore};
use bncells::laurent::OrderSpec;
use bncells::reps;
use bncells::tableaux::rs;

#[derive(Parser)]
#[command(
    name = "bncells",
    version,
    about = "Cells of signed-permutation groups under unequal parameters"
)]
struct Args {
    /// Rank of the group.
    #[arg(long = "n", global = true, default_value_t = 3)]
    rank: usize,

    /// Order on the parameter monomials.
    #[arg(long, global = true, value_enum, default_value_t = OrderKind::Asymptotic)]
    order: OrderKind,

    /// Weight of the sign generator (weighted order only).
    #[arg(long, global = true)]
    c: Option<i64>,

    /// Weight of the swap generators (weighted order only).
    #[arg(long, global = true)]
    d: Option<i64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory holding polynomial table caches.
    #[arg(long, global = true, env = "BNCELLS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Budget tier: how large a rank the table commands accept.
    #[arg(long, global = true, value_enum, default_value_t = Tier::Fast)]
    tier: Tier,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderKind {
    Asymptotic,
    Weighted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tier {
    Fast,
    Slow,
}

#[derive(Subcommand)]
enum Command {
    /// Insert an element and print its tableau pair.
    Rs {
        /// A window like "-4,3,6,-1,7,-2,5" or a word like "t s1 s2".
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        element: Vec<String>,
    },
    /// Compute the cell partition.
    Cells,
    /// Look up the table entry for a pair of elements.
    Klpoly {
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Identify the character afforded by each cell.
    Chars,
    /// Run a verification suite and report pass/fail with examples.
    Verify {
        /// One of: bar-identity, m-conditions, inverse-symmetry,
        /// longest-identities, asymptotic-theorems, coset-translation,
        /// parabolic-induction, all.
        suite: String,
    },
}

/// Validated settings for the table-backed commands.
struct RunConfig {
    rank: usize,
    spec: OrderSpec,
    cache_dir: Option<PathBuf>,
    format: Format,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<bncells::Error> for CliError {
    fn from(err: bncells::Error) -> Self {
        CliError::Failure(err.to_string())
    }
}

fn usage<T>(message: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(message.into()))
}

fn main() -> ExitCode {
    // Die quietly when the reading end of a pipe closes, as a filter should.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let args = Args::parse();
    if let Some(threads) = args.threads {
        // Ignore a second initialization; the cap is best-effort.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&args) {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(args: &Args) -> Result<ExitCode, CliError> {
    match &args.command {
        Command::Rs { element } => cmd_rs(args, element),
        Command::Cells => cmd_cells(&config(args)?),
        Command::Klpoly { y, w } => cmd_klpoly(&config(args)?, y, w),
        Command::Chars => cmd_chars(&config(args)?),
        Command::Verify { suite } => cmd_verify(&config(args)?, suite),
    }
}

fn config(args: &Args) -> Result<RunConfig, CliError> {
    if args.rank == 0 {
        return usage("rank must be at least 1");
    }
    let budget = match args.tier {
        Tier::Fast => 3,
        Tier::Slow => 4,
    };
    if args.rank > budget {
        return usage(format!(
            "rank {} exceeds the {} tier budget of {budget}",
            args.rank,
            match args.tier {
                Tier::Fast => "fast",
                Tier::Slow => "slow",
            }
        ));
    }
    let spec = match args.order {
        OrderKind::Asymptotic => {
            if args.c.is_some() || args.d.is_some() {
                return usage("--c and --d only apply to the weighted order");
            }
            OrderSpec::Asymptotic
        }
        OrderKind::Weighted => {
            let (Some(c), Some(d)) = (args.c, args.d) else {
                return usage("the weighted order requires --c and --d");
            };
            OrderSpec::weighted(c, d).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    Ok(RunConfig {
        rank: args.rank,
        spec,
        cache_dir: args.cache_dir.clone(),
        format: args.format,
    })
}

/// Loads the polynomial tables, going through the cache directory when
/// one is configured. A stale or damaged cache is reported on stderr and
/// recomputed.
fn load_store(config: &RunConfig) -> Result<KLStore, CliError> {
    let group = group(config.rank)?;
    match &config.cache_dir {
        Some(dir) => {
            let (store, note) = cache::load_or_build(group, &config.spec, dir)?;
            if let Some(note) = note {
                eprintln!("warning: {note}");
            }
            Ok(store)
        }
        None => Ok(KLStore::build(group, config.spec.clone())?),
    }
}

fn parse_element(text: &str, rank: usize) -> Result<SignedPermutation, CliError> {
    let parsed = if text.contains(',') {
        SignedPermutation::parse_window(text)
    } else {
        SignedPermutation::parse_word(text, rank)
    };
    parsed.map_err(|e| CliError::Usage(e.to_string()))
}

fn shape_text(shape: &(Vec<usize>, Vec<usize>)) -> String {
    fn side(parts: &[usize]) -> String {
        if parts.is_empty() {
            "-".to_string()
        } else {
            parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }
    format!("{}|{}", side(&shape.0), side(&shape.1))
}

fn cmd_rs(args: &Args, element: &[String]) -> Result<ExitCode, CliError> {
    let text = element.join(" ");
    let w = parse_element(&text, args.rank)?;
    let pair = rs(&w);
    let shape = pair.insertion.shape();
    match args.format {
        Format::Text => {
            println!("window: {}", w.window_string());
            println!("insertion: {}", pair.insertion.text());
            println!("recording: {}", pair.recording.text());
            println!("shape: {}", shape_text(&shape));
        }
        Format::Json => {
            let value = serde_json::json!({
                "format": 1,
                "window": w.window_string(),
                "insertion": pair.insertion.text(),
                "recording": pair.recording.text(),
                "shape": [shape.0, shape.1],
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn order_text(spec: &OrderSpec) -> String {
    match spec {
        OrderSpec::Asymptotic => "asymptotic".to_string(),
        OrderSpec::Weighted { c, d } => format!("weighted c={c} d={d}"),
    }
}

fn cmd_cells(config: &RunConfig) -> Result<ExitCode, CliError> {
    let store = load_store(config)?;
    let partition = left_cells(&store);
    match config.format {
        Format::Text => print!("{}", partition_text(&store, &partition)),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&partition.to_json(&store)).expect("serializable")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn partition_text(store: &KLStore, partition: &CellPartition) -> String {
    let group = store.group();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n {}, {} order, {} cells",
        partition.rank,
        order_text(&partition.spec),
        partition.cell_count()
    );
    for (i, cell) in partition.cells.iter().enumerate() {
        let _ = write!(out, "cell {i}");
        if let Some(shapes) = &partition.shapes {
            let _ = write!(out, " (shape {})", shape_text(&shapes[i]));
        }
        let _ = write!(out, ":");
        for &w in cell {
            let _ = write!(out, " {}", group.element(w).window_string());
        }
        let _ = writeln!(out);
    }
    out
}

fn cmd_klpoly(config: &RunConfig, y: &str, w: &str) -> Result<ExitCode, CliError> {
    let y = parse_element(y, config.rank)?;
    let w = parse_element(w, config.rank)?;
    if y.rank() != config.rank || w.rank() != config.rank {
        return usage(format!(
            "elements have ranks {} and {}, expected {}",
            y.rank(),
            w.rank(),
            config.rank
        ));
    }
    let store = load_store(config)?;
    let group = store.group();
    let (y, w) = (group.index(&y), group.index(&w));
    let normalized = store.pstar(y, w);
    let plain = store.p_polynomial(y, w);
    match config.format {
        Format::Text => {
            println!("normalized: {normalized}");
            println!("plain: {plain}");
        }
        Format::Json => {
            let value = serde_json::json!({
                "format": 1,
                "y": group.element(y).window_string(),
                "w": group.element(w).window_string(),
                "normalized": normalized.to_string(),
                "plain": plain.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chars(config: &RunConfig) -> Result<ExitCode, CliError> {
    let store = load_store(config)?;
    let partition = left_cells(&store);
    match config.format {
        Format::Text => {
            let mut identified = reps::identify_cells(&store, &partition)?;
            identified.sort_by(|a, b| (&a.shape, a.cell).cmp(&(&b.shape, b.cell)));
            for id in identified {
                println!(
                    "cell {} shape {} dimension {} character {}",
                    id.cell, id.shape, id.dimension, id.character
                );
            }
        }
        Format::Json => {
            let report = reps::character_report(&store, &partition)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// All generator subsets, each sorted, in binary counting order.
fn generator_subsets(count: usize) -> Vec<Vec<usize>> {
    (0..1u32 << count)
        .map(|mask| (0..count).filter(|&g| mask & (1 << g) != 0).collect())
        .collect()
}

fn suite_reports(store: &Arc<KLStore>, suite: &str) -> Result<Vec<verify::Report>, CliError> {
    let reports = match suite {
        "bar-identity" => vec![verify::bar_identity(store)],
        "m-conditions" => vec![verify::m_conditions(store)],
        "inverse-symmetry" => vec![verify::inverse_symmetry(store)],
        "longest-identities" => vec![verify::longest_identities(store)],
        "asymptotic-theorems" => vec![verify::asymptotic_strata(store)],
        "coset-translation" => vec![verify::coset_translation(store)],
        "parabolic-induction" => generator_subsets(store.group().generator_count())
            .iter()
            .map(|subset| verify::parabolic_induction(store, subset))
            .collect(),
        "all" => {
            let mut all = Vec::new();
            for name in [
                "bar-identity",
                "m-conditions",
                "inverse-symmetry",
                "longest-identities",
                "asymptotic-theorems",
                "coset-translation",
                "parabolic-induction",
            ] {
                all.extend(suite_reports(store, name)?);
            }
            all
        }
        other => return usage(format!("unknown suite {other:?}")),
    };
    Ok(reports)
}

fn cmd_verify(config: &RunConfig, suite: &str) -> Result<ExitCode, CliError> {
    let store = Arc::new(load_store(config)?);
    let reports = suite_reports(&store, suite)?;
    let mut failed = false;
    for report in &reports {
        if report.passed() {
            println!("PASS {}: {} checks", report.name(), report.checked());
        } else {
            failed = true;
            println!(
                "FAIL {}: {} of {} checks failed",
                report.name(),
                report.failed(),
                report.checked()
            );
            let mut examples = report.examples().to_vec();
            examples.sort();
            for example in examples {
                println!("  counterexample: {example}");
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
