//! `projquant`: verification suites, quantization and symbol transforms,
//! operator application, classification queries and tables.
//!
//! Exit status: 0 on success, 1 on a failed verification or a dimension
//! mismatch, 2 on usage and parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use projquant::casimir::spectrum;
use projquant::operator::{apply, sigma_affine, sigma_affine_inv};
use projquant::quantization::{quantize, symbol_map, QCoefficients};
use projquant::scalar::pretty_rat;
use projquant::search::{sl_invariant_space, vect_invariant_space};
use projquant::serial::{
    diffop_from_json, diffop_to_json, invariant_space_to_json, parse_json, pform_from_json,
    poly_to_json, rat_to_json, symbol_from_json, symbol_to_json, to_canonical_string,
};
use projquant::verify::{run_suite, Suite, SuiteParams};
use projquant::Error;

#[derive(Parser)]
#[command(name = "projquant", version, about = "Exact projectively equivariant symbol calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        /// koszul, casimir, lieop, quantization, lemma or classification
        #[arg(long)]
        suite: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        max_order: u32,
        #[arg(long, default_value_t = 2)]
        max_xdeg: u32,
        /// Print the report as canonical JSON.
        #[arg(long)]
        json: bool,
    },
    /// Quantize a symbol into a differential operator.
    Quantize {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the equivariant symbol of a differential operator.
    Symbol {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply a differential operator to a form.
    Apply {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        form: PathBuf,
    },
    /// Dimension and generators of a space of invariant maps.
    InvariantDim {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: usize,
        /// Target ξ-degree (sl search only).
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        q: usize,
        /// Classify Vect-invariant operators instead of sl-invariant fiber maps.
        #[arg(long)]
        vect: bool,
    },
    /// Casimir spectra or quantization coefficients.
    Table {
        #[arg(long)]
        what: TableKind,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Spectrum,
    Qcoeff,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionMismatch { .. } | Error::DegreeMismatch { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Verify { suite, dim, max_order, max_xdeg, json } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, SuiteParams { n: dim, max_order, max_xdeg })?;
            if json {
                print!("{}", to_canonical_string(&report.to_json()));
            } else {
                print!("{report}");
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Quantize { input, output } => {
            let u = symbol_from_json(&read_json(&input)?)?;
            let text = to_canonical_string(&diffop_to_json(&sigma_affine_inv(&quantize(&u))));
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                None => print!("{text}"),
            }
        }
        Command::Symbol { input } => {
            let d = diffop_from_json(&read_json(&input)?)?;
            print!("{}", to_canonical_string(&symbol_to_json(&symbol_map(&sigma_affine(&d)))));
        }
        Command::Apply { op, form } => {
            let d = diffop_from_json(&read_json(&op)?)?;
            let w = pform_from_json(&read_json(&form)?)?;
            print!("{}", to_canonical_string(&poly_to_json(&apply(&d, &w)?)));
        }
        Command::InvariantDim { dim, k, p, l, q, vect } => {
            let space = if vect {
                vect_invariant_space(dim, k, p, q)?
            } else {
                let l = l.ok_or_else(|| Failure::Usage("--l is required without --vect".into()))?;
                sl_invariant_space(dim, k, p, l, q)?
            };
            print!("{}", to_canonical_string(&invariant_space_to_json(&space)));
        }
        Command::Table { what, dim, max_k, format } => {
            if dim < 1 {
                return Err(Failure::Usage("--dim must be positive".into()));
            }
            let (header, rows) = match what {
                TableKind::Spectrum => spectrum_rows(dim, max_k),
                TableKind::Qcoeff => qcoeff_rows(dim, max_k),
            };
            match format {
                Format::Json => {
                    let objs: Vec<Value> = rows
                        .iter()
                        .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                        .collect();
                    print!("{}", to_canonical_string(&json!({"n": dim, "rows": objs})));
                }
                Format::Text => print!("{}", aligned(&header, &rows)),
            }
        }
    }
    Ok(())
}

fn spectrum_rows(n: usize, max_k: u32) -> (Vec<&'static str>, Vec<Vec<Value>>) {
    let mut rows = Vec::new();
    for k in 0..=max_k {
        for p in 0..=n {
            let s = spectrum(n, k, p);
            rows.push(vec![json!(k), json!(p), rat_to_json(&s.alpha), rat_to_json(&s.beta)]);
        }
    }
    (vec!["k", "p", "alpha", "beta"], rows)
}

fn qcoeff_rows(n: usize, max_k: u32) -> (Vec<&'static str>, Vec<Vec<Value>>) {
    let mut rows = Vec::new();
    for k in 1..=max_k {
        for p in 0..=n {
            let c = QCoefficients::get(n, k, p);
            for (l, (a, b)) in c.a.iter().zip(&c.b).enumerate() {
                rows.push(vec![json!(k), json!(p), json!(l + 1), rat_to_json(a), rat_to_json(b)]);
            }
        }
    }
    (vec!["k", "p", "l", "a", "b"], rows)
}

fn aligned(header: &[&str], rows: &[Vec<Value>]) -> String {
    let cell = |v: &Value| match v {
        Value::String(s) => s.parse().map(|r| pretty_rat(&r)).unwrap_or_else(|_| s.clone()),
        other => other.to_string(),
    };
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|r| r[i].chars().count()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |r: Vec<String>| {
        let padded: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in cells {
        out += &line(r);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
