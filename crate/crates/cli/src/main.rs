use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use leray_cli::{parse_input, run};
use leray_core::field::FieldSpec;

/// Exact Leray spectral sequences, cosheaves, level-set barcodes, and
/// Reeb spaces of simplicial maps.
#[derive(Parser)]
#[command(name = "leray", version)]
struct Args {
    /// Input JSON document; read from standard input when omitted.
    input: Option<PathBuf>,

    /// Coefficient field, overriding the document: F2, F<p>, or Q.
    #[arg(long)]
    field: Option<String>,

    /// Emit the JSON report instead of the text table.
    #[arg(long)]
    json: bool,

    /// Page index for the pages command.
    #[arg(long)]
    r: Option<i64>,

    /// Homology degree filter.
    #[arg(long)]
    degree: Option<usize>,

    /// Fiber degree for the cosheaf and levelset commands.
    #[arg(long)]
    q: Option<usize>,
}

fn main() -> ExitCode {
    match try_main() {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn try_main() -> Result<bool> {
    let args = Args::parse();
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading standard input")?;
            buf
        }
    };
    let mut job = parse_input(&text)?;
    if let Some(field) = &args.field {
        job.field = FieldSpec::parse(field)?;
    }
    if args.r.is_some() {
        job.options.r = args.r;
    }
    if args.degree.is_some() {
        job.options.degree = args.degree;
    }
    if args.q.is_some() {
        job.options.q = args.q;
    }
    let report = run(&job)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report.json)?);
    } else {
        print!("{}", report.text);
    }
    Ok(report.ok)
}
