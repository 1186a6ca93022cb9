use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use distrep_core::linalg::{squared_distances, CAYLEY_MENGER_TOL};
use distrep_core::schoenberg::DEGENERACY_TOL;
use distrep_core::{
    affine_dimension_oracle, embed_with, embeddability, parse_colored, parse_graph, simplex_embedding,
    verify_representation, EmbedOptions, Embedding, Outcome, ParseError, Source, SymMatrix,
};
use serde_json::json;

mod doc;
mod json;
mod sweep;

const EXIT_ERROR: u8 = 1;
const EXIT_FALLBACK: u8 = 2;

/// Few-distance Euclidean representations of graphs.
#[derive(Debug, Parser)]
#[command(name = "distrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Realize a graph (or colored complete graph) in R^(n-2).
    Embed {
        path: PathBuf,
        /// Read the colored "u v c" format.
        #[arg(long)]
        colored: bool,
        /// Write the result document here instead of stdout.
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Tolerance on |Q| at the root, relative to the largest weight.
        #[arg(long, default_value_t = DEGENERACY_TOL)]
        tol: f64,
    },
    /// Evaluate the Schoenberg functional of a squared-distance matrix.
    Qvalue {
        path: PathBuf,
        #[arg(long, default_value_t = DEGENERACY_TOL)]
        tol: f64,
    },
    /// Check coordinates (CSV, one point per row) against a graph.
    Check {
        graph: PathBuf,
        coords: PathBuf,
        #[arg(long)]
        colored: bool,
        #[arg(long, default_value_t = distrep_core::representation::REL_TOL)]
        rel_tol: f64,
    },
    /// Embed every Mixed graph up to --max-n vertices (sampled at n = 7).
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=7))]
        max_n: u64,
        #[arg(long, default_value_t = 1000)]
        sample: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Coordinates of the regular unit simplex on N points.
    Simplex {
        #[arg(short = 'n')]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Embed { path, colored, json_out, tol } => cmd_embed(&path, colored, json_out.as_deref(), tol),
        Command::Qvalue { path, tol } => cmd_qvalue(&path, tol),
        Command::Check { graph, coords, colored, rel_tol } => cmd_check(&graph, &coords, colored, rel_tol),
        Command::Sweep { max_n, sample, seed } => cmd_sweep(max_n as usize, sample, seed),
        Command::Simplex { n } => cmd_simplex(n),
    }
}

fn parse_source(text: &str, colored: bool) -> Result<Source, ParseError> {
    if colored {
        parse_colored(text).map(Source::Colored)
    } else {
        parse_graph(text).map(Source::Graph)
    }
}

fn read_source(path: &Path, colored: bool) -> anyhow::Result<Source> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_source(&text, colored).with_context(|| format!("parsing {}", path.display()))
}

fn emit(value: &serde_json::Value, json_out: Option<&Path>) -> anyhow::Result<()> {
    let text = json::to_string(value);
    match json_out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_embed(path: &Path, colored: bool, json_out: Option<&Path>, tol: f64) -> anyhow::Result<ExitCode> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            let message = format!("reading {}: {e}", path.display());
            eprintln!("error: {message}");
            emit(&doc::error("read", &message, None, &[]), json_out)?;
            return Ok(ExitCode::from(EXIT_ERROR));
        }
    };
    let source = match parse_source(&text, colored) {
        Ok(source) => source,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            emit(&doc::error("parse", &e.to_string(), e.line(), &[]), json_out)?;
            return Ok(ExitCode::from(EXIT_ERROR));
        }
    };
    let opts = EmbedOptions { degeneracy_tol: tol, ..EmbedOptions::default() };
    match embed_with(&source, &opts) {
        Ok(out) => {
            emit(&doc::outcome(&source, &out), json_out)?;
            Ok(match out {
                Outcome::Represented(_) => ExitCode::SUCCESS,
                Outcome::Fallback { reason, .. } => {
                    eprintln!("fallback: {}", reason.note());
                    ExitCode::from(EXIT_FALLBACK)
                }
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            emit(&doc::embed_error(&e), json_out)?;
            Ok(ExitCode::from(EXIT_ERROR))
        }
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<SymMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_ascii_whitespace()
            .map(|t| t.parse::<f64>().with_context(|| format!("line {}: bad number {t:?}", i + 1)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        bail!("{}: empty matrix", path.display());
    }
    Ok(SymMatrix::from_rows(&rows)?)
}

fn cmd_qvalue(path: &Path, tol: f64) -> anyhow::Result<ExitCode> {
    let m = read_matrix(path)?;
    let (kind, value) = embeddability(&m, tol)?;
    let out = json!({
        "n": m.n(),
        "q": value.q,
        "maximizer": value.maximizer,
        "classification": kind.name(),
        "tol": tol,
    });
    emit(&out, None)?;
    Ok(ExitCode::SUCCESS)
}

fn read_coords(path: &Path) -> anyhow::Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut coords = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{}: row {}", path.display(), i + 1))?;
        let row = record
            .iter()
            .map(|t| t.parse::<f64>().with_context(|| format!("row {}: bad number {t:?}", i + 1)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        coords.push(row);
    }
    Ok(coords)
}

fn cmd_check(graph: &Path, coords: &Path, colored: bool, rel_tol: f64) -> anyhow::Result<ExitCode> {
    let source = read_source(graph, colored)?;
    let points = read_coords(coords)?;
    if points.len() != source.n() {
        bail!("{} has {} rows, graph has {} vertices", coords.display(), points.len(), source.n());
    }
    let emb = Embedding::from_coords(points)?;
    let report = verify_representation(&source, &emb, rel_tol)?;
    emit(&doc::report(&report), None)?;
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        for v in &report.violations {
            eprintln!("violation: {v}");
        }
        Ok(ExitCode::from(EXIT_ERROR))
    }
}

fn cmd_sweep(max_n: usize, sample: usize, seed: u64) -> anyhow::Result<ExitCode> {
    let (rows, failures) = sweep::run(max_n, sample, seed);
    print!("{}", sweep::table(&rows));
    if failures.is_empty() {
        println!("all passed");
        return Ok(ExitCode::SUCCESS);
    }
    for f in &failures {
        eprintln!("n = {}, mask {:#x}: {}", f.n, f.mask, f.message);
    }
    println!("{} failures", failures.len());
    Ok(ExitCode::from(EXIT_ERROR))
}

fn cmd_simplex(n: usize) -> anyhow::Result<ExitCode> {
    if n < 1 {
        bail!("-n must be at least 1");
    }
    let emb = simplex_embedding(n);
    let dim = affine_dimension_oracle(&squared_distances(&emb.coords), CAYLEY_MENGER_TOL);
    let mut max_error = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            max_error = max_error.max((emb.achieved.get(i, j) - 1.0).abs());
        }
    }
    let out = json!({
        "n": n,
        "dim": emb.dim,
        "coords": emb.coords,
        "affine_dimension": dim,
        "max_distance_error": max_error,
    });
    emit(&out, None)?;
    Ok(ExitCode::SUCCESS)
}
