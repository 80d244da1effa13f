use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gridpoly::bijection::bijection_report_for;
use gridpoly::complex::{f_vector, h_from_f, DEFAULT_FACET_CAP};
use gridpoly::format::{self, Format};
use gridpoly::ideal::koenig_type;
use gridpoly::numeric::trim;
use gridpoly::rook::{rook_polynomial_with, AttackConvention};
use gridpoly::shelling::FacetList;
use gridpoly::verify::{self, hilbert_expansion, render_report, render_sweep, TheoremReport, VerifyOptions};
use gridpoly::{generate_grid, recognize_grid, GridSpec, Polyomino};

/// Exact combinatorics of grid polyominoes.
#[derive(Parser)]
#[command(name = "gridpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polyomino and report whether it is a grid polyomino.
    Validate { file: PathBuf },
    /// Print the grid polyomino with the given hole widths and heights.
    Generate {
        #[arg(long, value_delimiter = ',', required = true)]
        widths: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<u32>,
        #[arg(long, conflicts_with = "json")]
        ascii: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the facets of the initial complex in descending order.
    Facets {
        file: PathBuf,
        #[arg(long)]
        with_steps: bool,
        #[arg(long, default_value_t = DEFAULT_FACET_CAP)]
        max_facets: usize,
    },
    /// The h-vector by restriction numbers, by face counts, or both.
    Hvector {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_FACET_CAP)]
        max_facets: usize,
    },
    /// Coefficients of the rook polynomial.
    Rookpoly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Block)]
        convention: Convention,
    },
    /// Decide König type, with a certificate.
    Koenig { file: PathBuf },
    /// First terms of the Hilbert function.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Run every check on one polyomino.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        opts: CheckArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run every check on a family of grid polyominoes.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        opts: CheckArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Invariants and checks of one polyomino, or of the default family.
    Report {
        file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        opts: CheckArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct CheckArgs {
    /// Treat skipped checks as failures.
    #[arg(long)]
    strict: bool,
    #[arg(long, default_value_t = 60)]
    max_cells: usize,
    #[arg(long, default_value_t = DEFAULT_FACET_CAP)]
    max_facets: usize,
    /// Largest facet count checked by direct intersection.
    #[arg(long, default_value_t = 5000)]
    brute_force_cap: usize,
    /// Include per-check timings (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

impl CheckArgs {
    fn options(self) -> VerifyOptions {
        VerifyOptions {
            strict: self.strict,
            max_cells: self.max_cells,
            max_facets: self.max_facets,
            brute_force_cap: self.brute_force_cap,
            timings: self.timings,
            ..VerifyOptions::default()
        }
    }
}

#[derive(clap::Args, Clone, Copy)]
struct FamilyArgs {
    /// Largest number of hole columns and of hole rows.
    #[arg(long, default_value_t = 2)]
    max_rs: usize,
    /// Largest hole width and height.
    #[arg(long, default_value_t = 3)]
    max_size: u32,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Method {
    Shelling,
    Fvector,
    Both,
}

#[derive(ValueEnum, Clone, Copy)]
enum Convention {
    Block,
    Ambient,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Text,
    Json,
}

/// Exit status of a command that ran.
enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn read_polyomino(path: &PathBuf) -> anyhow::Result<Polyomino> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    format::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_grid(path: &PathBuf) -> anyhow::Result<Polyomino> {
    let p = read_polyomino(path)?;
    if let Err(e) = recognize_grid(&p) {
        bail!("{} is not a grid polyomino: {e}", path.display());
    }
    Ok(p)
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(v)?);
    Ok(())
}

fn h_by_faces(p: &Polyomino) -> anyhow::Result<Vec<i128>> {
    let f = f_vector(p)?;
    Ok(trim(&h_from_f(&f, f.top_size())?))
}

/// Invariants of one grid polyomino alongside its check report.
fn instance_report(p: &Polyomino, opts: &VerifyOptions) -> anyhow::Result<(Value, TheoremReport)> {
    let theorems = verify::verify_all(p, opts)?;
    let list = FacetList::new(p, opts.max_facets)?;
    let h_shell = FacetList::h_from_counts(&list.step_counts());
    let h_f = h_by_faces(p)?;
    let rook = rook_polynomial_with(p, AttackConvention::Block);
    let (algebraic, structural) = verify::gorenstein(p)?;
    let koenig = koenig_type(p)?;
    let bijection = bijection_report_for(&list);
    let value = json!({
        "schema": verify::SCHEMA_VERSION,
        "instance": theorems.instance,
        "cells": p.rank(),
        "vertices": p.vertices().len(),
        "holes": p.holes().len(),
        "krull_dim": p.vertices().len() - p.rank(),
        "facets": list.len(),
        "h_shelling": h_shell,
        "h_fvector": h_f,
        "rook_polynomial": rook,
        "regularity": h_f.len() - 1,
        "gorenstein": { "algebraic": algebraic, "structural": structural },
        "koenig": koenig,
        "bijection": bijection,
        "theorems": theorems,
    });
    Ok((value, theorems))
}

fn render_instance(v: &Value) -> String {
    let mut out = String::new();
    for key in [
        "instance",
        "cells",
        "vertices",
        "holes",
        "krull_dim",
        "facets",
        "h_shelling",
        "h_fvector",
        "rook_polynomial",
        "regularity",
    ] {
        let _ = writeln!(out, "{key:<16} {}", v[key]);
    }
    let _ = writeln!(
        out,
        "{:<16} algebraic {}, structural {}",
        "gorenstein", v["gorenstein"]["algebraic"], v["gorenstein"]["structural"]
    );
    let _ = writeln!(
        out,
        "{:<16} {} ({})",
        "koenig",
        v["koenig"]["is_koenig"],
        v["koenig"]["reason"].as_str().unwrap_or("")
    );
    out
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Validate { file } => {
            let p = read_polyomino(&file)?;
            match recognize_grid(&p) {
                Ok(g) => {
                    println!(
                        "grid polyomino {}: {} cells, {} vertices, {} holes",
                        g.spec(),
                        p.rank(),
                        p.vertices().len(),
                        g.r() * g.s()
                    );
                    Ok(Outcome::Pass)
                }
                Err(e) => {
                    println!("not a grid polyomino: {e}");
                    Ok(Outcome::Fail)
                }
            }
        }
        Command::Generate { widths, heights, ascii: _, json } => {
            let (p, _) = generate_grid(&GridSpec::new(widths, heights)?)?;
            print!("{}", format::emit(&p, if json { Format::Json } else { Format::Ascii })?);
            Ok(Outcome::Pass)
        }
        Command::Facets { file, with_steps, max_facets } => {
            let p = read_polyomino(&file)?;
            let list = FacetList::new(&p, max_facets)?;
            let facets: Vec<Value> = list
                .facets()
                .iter()
                .enumerate()
                .map(|(j, &f)| match with_steps {
                    true => json!({ "facet": list.face(j), "steps": list.steps_of(f) }),
                    false => json!(list.face(j)),
                })
                .collect();
            print_json(&json!({ "schema": verify::SCHEMA_VERSION, "count": facets.len(), "facets": facets }))?;
            Ok(Outcome::Pass)
        }
        Command::Hvector { file, method, max_facets } => {
            let p = read_grid(&file)?;
            let mut out = json!({ "schema": verify::SCHEMA_VERSION });
            if method != Method::Fvector {
                out["shelling"] = json!(FacetList::h_from_counts(&FacetList::new(&p, max_facets)?.step_counts()));
            }
            if method != Method::Shelling {
                out["fvector"] = json!(h_by_faces(&p)?);
            }
            let agree = method != Method::Both || out["shelling"] == out["fvector"];
            if method == Method::Both {
                out["agree"] = json!(agree);
            }
            print_json(&out)?;
            Ok(agree.into())
        }
        Command::Rookpoly { file, convention } => {
            let p = read_polyomino(&file)?;
            let (name, conv) = match convention {
                Convention::Block => ("block", AttackConvention::Block),
                Convention::Ambient => ("ambient", AttackConvention::Ambient),
            };
            print_json(
                &json!({ "schema": verify::SCHEMA_VERSION, "convention": name, "coefficients": rook_polynomial_with(&p, conv) }),
            )?;
            Ok(Outcome::Pass)
        }
        Command::Koenig { file } => {
            let p = read_grid(&file)?;
            let d = koenig_type(&p)?;
            let valid = !d.is_koenig || d.witness_is_valid(&p);
            let mut out = serde_json::to_value(&d)?;
            out["schema"] = json!(verify::SCHEMA_VERSION);
            print_json(&out)?;
            Ok(valid.into())
        }
        Command::Hilbert { file, terms } => {
            let p = read_grid(&file)?;
            let mut out = serde_json::to_value(hilbert_expansion(&p, terms)?)?;
            out["schema"] = json!(verify::SCHEMA_VERSION);
            print_json(&out)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { file, opts, format } => {
            let p = read_grid(&file)?;
            let opts = opts.options();
            let r = verify::verify_all(&p, &opts)?;
            match format {
                OutputFormat::Text => print!("{}", render_report(&r)),
                OutputFormat::Json => print_json(&serde_json::to_value(&r)?)?,
            }
            Ok(r.passed(opts.strict).into())
        }
        Command::Sweep { family, opts, format } => sweep(family, opts, format),
        Command::Report { file: None, family, opts, format } => sweep(family, opts, format),
        Command::Report { file: Some(file), opts, format, .. } => {
            let p = read_grid(&file)?;
            let opts = opts.options();
            let (value, theorems) = instance_report(&p, &opts)?;
            match format {
                OutputFormat::Text => print!("{}{}", render_instance(&value), render_report(&theorems)),
                OutputFormat::Json => print_json(&value)?,
            }
            Ok(theorems.passed(opts.strict).into())
        }
    }
}

fn sweep(family: FamilyArgs, opts: CheckArgs, format: OutputFormat) -> anyhow::Result<Outcome> {
    let specs = GridSpec::family(family.max_rs, family.max_size);
    let report = verify::sweep(&specs, &opts.options());
    match format {
        OutputFormat::Text => print!("{}", render_sweep(&report)),
        OutputFormat::Json => print_json(&serde_json::to_value(&report)?)?,
    }
    Ok(report.all_passed().into())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
