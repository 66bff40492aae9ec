//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::{construction_count, lemma_binding, main_upper};
use crate::fixtures;
use crate::graph_model::{census, derive_edges, validate_spec, SpatialGraphSpec};
use crate::invariants::component_determinant;
use crate::io::{to_obj, EmbeddingDocument, InputDocument};
use crate::lattice::{build_full, BuildError};
use crate::validate::{audit, check_bound};

pub const EXIT_OK: u8 = 0;
pub const EXIT_SEMANTIC: u8 = 1;
pub const EXIT_SYNTAX: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "latstick", version, about = "Cubic-lattice stick embeddings of spatial graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Obj,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an embedding from an input document.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Audit an embedding against the input it was built from.
    Validate {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the census and the stick-number bounds of an input.
    Bound {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        crossings: Option<u64>,
    },
    /// Crossings and determinant of one knot component of an embedding.
    Invariant {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        component: String,
    },
    /// Convert an embedding for external viewers.
    Export {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        output: PathBuf,
    },
    /// Write one of the bundled input documents.
    Demo {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(fixtures::DEMO_NAMES))]
        name: String,
        #[arg(long)]
        output: PathBuf,
    },
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn semantic(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_SEMANTIC, message: message.into() }
}

fn syntax(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_SYNTAX, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| syntax(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| semantic(format!("cannot write {}: {e}", path.display())))
}

fn load_input(path: &Path) -> Result<SpatialGraphSpec, Failure> {
    let text = read(path)?;
    let doc = InputDocument::parse(&text).map_err(|e| syntax(e.to_string()))?;
    doc.to_spec().map_err(|e| syntax(e.to_string()))
}

fn load_embedding(path: &Path) -> Result<EmbeddingDocument, Failure> {
    EmbeddingDocument::parse(&read(path)?).map_err(|e| syntax(e.to_string()))
}

fn check_valid(spec: &SpatialGraphSpec) -> Result<(), Failure> {
    let report = validate_spec(spec);
    if report.is_clean() {
        Ok(())
    } else {
        Err(semantic(format!("invalid input:\n{report}")))
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn cmd_build(input: &Path, output: &Path) -> Result<(), Failure> {
    let spec = load_input(input)?;
    check_valid(&spec)?;
    let out = build_full(&spec).map_err(|e| match e {
        BuildError::Bound(b) => semantic(format!("bound violated: {b}")),
        other => semantic(other.to_string()),
    })?;
    write(output, &pretty(&EmbeddingDocument::from_build(&out)))?;
    let c = out.counts;
    println!("sticks: {} (x {}, y {}, z {})", c.total, c.x, c.y, c.z);
    println!("construction bound: {}", out.bounds.construction_bound);
    match out.bounds.theorem_bound {
        Some(t) => println!("crossing-number bound: {t}"),
        None => println!("crossing-number bound: not applicable"),
    }
    for b in &out.slides_blocked {
        println!("note: {b}");
    }
    for w in &out.straighten_warnings {
        println!("warning: {w}");
    }
    Ok(())
}

fn cmd_validate(embedding: &Path, input: &Path) -> Result<(), Failure> {
    let doc = load_embedding(embedding)?;
    let spec = load_input(input)?;
    check_valid(&spec)?;
    let emb = doc.embedding().map_err(|e| syntax(e.to_string()))?;
    let complex = emb.to_complex().map_err(|e| semantic(format!("edge polylines: {e}")))?;
    let mut listed = Vec::new();
    for (i, s) in emb.listed_sticks().into_iter().enumerate() {
        listed.push(s.ok_or_else(|| semantic(format!("stick {i} is not a positive-length stick along its axis")))?);
    }
    let mut derived = complex.sticks.clone();
    listed.sort();
    derived.sort();
    if listed != derived {
        return Err(semantic("consistency: listed sticks differ from the edge polylines"));
    }
    let report = audit(&complex, &spec);
    println!("self-avoiding: {}", report.self_avoiding);
    println!("junctions clean: {}", report.junctions.is_clean());
    println!("reconstruction: {}", if report.reconstruction.is_ok() { "ok" } else { "mismatch" });
    println!("sticks: {}", report.counts.total);
    if let Some(f) = report.first_failure() {
        return Err(semantic(f));
    }
    let census = census(&spec).map_err(|e| semantic(e.to_string()))?;
    let bounds = check_bound(&report.counts, &census, spec.declared_crossings).map_err(|e| semantic(format!("bound: {e}")))?;
    println!("construction bound: {}", bounds.construction_bound);
    Ok(())
}

fn cmd_bound(input: &Path, crossings: Option<u64>) -> Result<(), Failure> {
    let spec = load_input(input)?;
    check_valid(&spec)?;
    let c = census(&spec).map_err(|e| semantic(e.to_string()))?;
    println!("e = {}, v = {}, s = {}, b = {}, k = {}, alpha = {}", c.e, c.v, c.s, c.b, c.k, c.alpha_total);
    for comp in &spec.components {
        let p = &comp.presentation;
        let e = derive_edges(comp).map_err(|e| semantic(e.to_string()))?.len() as i64;
        let beta = lemma_binding(p.alpha() as i64, p.labeled_count() as i64, e).map_err(|e| semantic(e.to_string()))?;
        println!("component {}: alpha = {}, binding points = {} (lemma {beta})", comp.id, p.alpha(), p.beta());
    }
    let (e, v, s, b, k) = (c.e as i64, c.v as i64, c.s as i64, c.b as i64, c.k as i64);
    let n = construction_count(c.alpha_total as i64, e, v, s, k).map_err(|e| semantic(e.to_string()))?;
    println!("construction count: {n}");
    if let Some(cr) = crossings {
        println!("crossing-number bound: {}", main_upper(cr as i64, e, v, s, b, k));
    }
    Ok(())
}

fn cmd_invariant(embedding: &Path, component: &str) -> Result<(), Failure> {
    let doc = load_embedding(embedding)?;
    let emb = doc.embedding().map_err(|e| syntax(e.to_string()))?;
    let complex = emb.to_complex().map_err(|e| semantic(e.to_string()))?;
    let (crossings, det) = component_determinant(&complex, component).map_err(|e| semantic(e.to_string()))?;
    println!("crossings: {crossings}");
    println!("determinant: {det}");
    Ok(())
}

fn cmd_export(embedding: &Path, format: ExportFormat, output: &Path) -> Result<(), Failure> {
    let doc = load_embedding(embedding)?;
    let emb = doc.embedding().map_err(|e| syntax(e.to_string()))?;
    match format {
        ExportFormat::Obj => write(output, &to_obj(&emb)),
    }
}

fn cmd_demo(name: &str, output: &Path) -> Result<(), Failure> {
    let spec = fixtures::by_name(name).ok_or_else(|| syntax(format!("unknown demo {name}")))?;
    write(output, &pretty(&InputDocument::from_spec(&spec)))
}

pub fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Build { input, output } => cmd_build(&input, &output),
        Command::Validate { embedding, input } => cmd_validate(&embedding, &input),
        Command::Bound { input, crossings } => cmd_bound(&input, crossings),
        Command::Invariant { embedding, component } => cmd_invariant(&embedding, &component),
        Command::Export { embedding, format, output } => cmd_export(&embedding, format, &output),
        Command::Demo { name, output } => cmd_demo(&name, &output),
    }
}
