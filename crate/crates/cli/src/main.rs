//! Command-line front end: generate weighted graph sums, print them as
//! tables, cross-check them against brute-force enumeration, and manage
//! the on-disk result cache.

mod cache;
mod error;
mod record;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphgen::engine::{Engine, EngineConfig, Family, GenRequest};
use graphgen::oracle::verify;

use crate::error::CliError;
use crate::record::OutputRecord;

#[derive(Parser)]
#[command(
    name = "graphgen",
    version,
    about = "Generates connected multigraphs weighted by inverse automorphism-group order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one weighted sum of graph classes.
    Gen(GenArgs),
    /// Generate every (n, k) level up to an edge budget, one block each.
    Table(TableArgs),
    /// Check generated coefficients against independent enumeration.
    Verify(VerifyArgs),
    /// Inspect or empty the on-disk result cache.
    Cache(CacheArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct GenArgs {
    /// One of: connected, biconnected, simple, loopless, loopless-alt.
    #[arg(long, value_parser = Family::from_str)]
    family: Family,
    /// Vertex count (1-based vertices).
    #[arg(long)]
    n: usize,
    /// Number of independent cycles.
    #[arg(long)]
    k: usize,
    /// External leg count; labels run x1, x2, ...
    #[arg(long)]
    legs: usize,
    /// Keep only classes with every vertex degree at least this bound
    /// (loopless families only).
    #[arg(long)]
    min_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cache directory; else GRAPHGEN_CACHE_DIR, else ./.graphgen-cache.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Evaluate independent summands on the thread pool.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct TableArgs {
    /// One of: connected, biconnected, simple, loopless, loopless-alt.
    #[arg(long, value_parser = Family::from_str)]
    family: Family,
    /// Largest internal edge count m = n + k - 1 to include.
    #[arg(long)]
    max_edges: usize,
    /// External leg count for every level.
    #[arg(long, default_value_t = 0)]
    legs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluate independent summands on the thread pool.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: connected, biconnected, simple, loopless, loopless-alt.
    /// With --sweep, omitting it checks every family.
    #[arg(long, value_parser = Family::from_str)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    legs: Option<usize>,
    /// Check every (n, k, legs) tuple within the budgets below.
    #[arg(long)]
    sweep: bool,
    /// Sweep budget on m = n + k - 1.
    #[arg(long)]
    max_edges: Option<usize>,
    /// Sweep budget on legs (default 0).
    #[arg(long)]
    max_legs: Option<usize>,
    /// Evaluate independent summands on the thread pool.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
    /// Cache directory; else GRAPHGEN_CACHE_DIR, else ./.graphgen-cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CacheAction {
    /// List cache entries.
    Info,
    /// Remove every cache entry.
    Clear,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Cache(args) => cmd_cache(args),
    }
}

fn make_engine(parallel: bool) -> Engine {
    Engine::with_config(EngineConfig {
        parallel,
        ..EngineConfig::default()
    })
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, CliError> {
    let dir = cache::resolve_dir(args.cache.as_deref());
    let header =
        cache::CacheHeader::new(args.family.as_str(), args.n, args.k, args.legs, args.min_degree);
    let path = cache::entry_path(&dir, &header);
    let record = match cache::load(&path, &header)? {
        Some(record) => record,
        None => {
            let mut engine = make_engine(args.parallel);
            let mut req = GenRequest::new(args.family, args.n, args.k, args.legs);
            if let Some(nu) = args.min_degree {
                req = req.with_min_degree(nu);
            }
            let sum = engine.generate(&req)?;
            let record = OutputRecord::from_sum(args.family, &sum)?;
            cache::store(&path, &header, &record)?;
            record
        }
    };
    write_output(&render(&record, args.format), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    let mut engine = make_engine(args.parallel);
    let mut records = Vec::new();
    for m in 0..=args.max_edges {
        for n in (1..=m + 1).rev() {
            let k = m + 1 - n;
            let sum = engine.generate(&GenRequest::new(args.family, n, k, args.legs))?;
            records.push(OutputRecord::from_sum(args.family, &sum)?);
        }
    }
    let text = match args.format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(&records).expect("plain data serializes");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut text = String::new();
            for record in &records {
                text.push_str(&format!(
                    "# family={} n={} k={} edges={} legs={}\n",
                    record.family,
                    record.n,
                    record.k,
                    record.n + record.k - 1,
                    record.s
                ));
                text.push_str(&record.to_text());
                text.push('\n');
            }
            text
        }
        Format::Dot => {
            let mut text = String::new();
            for record in &records {
                text.push_str(&record.to_dot(&format!("n{}k{}c", record.n, record.k)));
            }
            text
        }
    };
    write_output(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let mut tuples = Vec::new();
    if args.sweep {
        if args.n.is_some() || args.k.is_some() || args.legs.is_some() {
            return Err(CliError::Usage(
                "--sweep covers whole ranges; drop --n, --k and --legs".to_owned(),
            ));
        }
        let max_edges = args.max_edges.ok_or_else(|| {
            CliError::Usage("--sweep needs --max-edges".to_owned())
        })?;
        let max_legs = args.max_legs.unwrap_or(0);
        let families = match args.family {
            Some(family) => vec![family],
            None => Family::ALL.to_vec(),
        };
        for family in families {
            for m in 0..=max_edges {
                for n in (1..=m + 1).rev() {
                    for s in 0..=max_legs {
                        tuples.push((family, n, m + 1 - n, s));
                    }
                }
            }
        }
    } else {
        if args.max_edges.is_some() || args.max_legs.is_some() {
            return Err(CliError::Usage(
                "--max-edges and --max-legs only apply with --sweep".to_owned(),
            ));
        }
        let missing = || CliError::Usage(
            "verify needs --family, --n, --k and --legs (or --sweep)".to_owned(),
        );
        let family = args.family.ok_or_else(missing)?;
        let n = args.n.ok_or_else(missing)?;
        let k = args.k.ok_or_else(missing)?;
        let s = args.legs.ok_or_else(missing)?;
        tuples.push((family, n, k, s));
    }

    let mut engine = make_engine(args.parallel);
    let mut total = 0usize;
    let mut bad = 0usize;
    for (family, n, k, s) in tuples {
        println!("# family={family} n={n} k={k} legs={s}");
        for report in verify(&mut engine, family, n, k, s)? {
            total += 1;
            if report.ok {
                println!(
                    "ok {} S={} key={}",
                    report.coefficient, report.symmetry_factor, report.key
                );
            } else {
                bad += 1;
                println!(
                    "MISMATCH got={} want=1/{} key={}",
                    report.coefficient, report.symmetry_factor, report.key
                );
            }
        }
    }
    println!("{total} classes checked, {bad} mismatches");
    Ok(if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_cache(args: CacheArgs) -> Result<ExitCode, CliError> {
    let dir = cache::resolve_dir(args.cache.as_deref());
    match args.action {
        CacheAction::Info => {
            let entries = cache::entries(&dir)?;
            println!("{} entries", entries.len());
            for (path, header) in entries {
                let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
                let mut line = format!(
                    "{name}: family={} n={} k={} legs={}",
                    header.family, header.n, header.k, header.s
                );
                if let Some(nu) = header.min_degree {
                    line.push_str(&format!(" min-degree={nu}"));
                }
                println!("{line}");
            }
        }
        CacheAction::Clear => {
            let removed = cache::clear(&dir)?;
            println!("removed {removed} files");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => record.to_json(),
        Format::Text => record.to_text(),
        Format::Dot => record.to_dot("class_"),
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => print!("{text}"),
        Some(path) => {
            let dir = match path.parent() {
                Some(parent) if !parent.as_os_str().is_empty() => parent,
                _ => Path::new("."),
            };
            fs::create_dir_all(dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|err| CliError::Io(err.error))?;
        }
    }
    Ok(())
}
