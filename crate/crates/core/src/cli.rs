//! Command-line front end.
//!
//! Output is deterministic: JSON objects have sorted keys and exact
//! coefficients are strings (`"3"`, `"-1/2"`), so re-serializing a parsed
//! record reproduces it byte for byte.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::engine::{Case, Method, SeriesOutput, SeriesRequest, DEFAULT_ORDER};
use crate::error::{Error, Result};
use crate::hn::{coprime, KleinTopType};
use crate::kernel::{fmt_rat, Poly};
use crate::series::ScaledSeries;
use crate::verification::{run_suite, total_betti_complex_moduli, total_betti_real_moduli};

#[derive(Parser, Debug)]
#[command(name = "klein-poincare", version, about = "Exact Poincaré series of moduli of real and quaternionic bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one series.
    Series(SeriesArgs),
    /// Compare two methods, or one method against a saved series.
    Compare(CompareArgs),
    /// Run the verification suite and print one JSON line per check.
    Verify(VerifyArgs),
    /// Tabulate complex and real total Betti numbers on maximal curves.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TauArg {
    Real,
    Quat,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recursion,
    Closed,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[arg(long)]
    pub genus: u32,
    /// Number of real ovals.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// 1 if the complement of the real locus is connected, else 0.
    #[arg(long, default_value_t = 1)]
    pub a: u8,
    #[arg(long)]
    pub rank: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub degree: i64,
    #[arg(long, value_enum)]
    pub tau: TauArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// The second method; ignored when `--golden` is given.
    #[arg(long, value_enum, default_value_t = MethodArg::Recursion)]
    pub against: MethodArg,
    /// A JSON record written by `series`, used as the reference.
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Only checks whose id contains this string.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2)]
    pub g_from: u32,
    #[arg(long, default_value_t = 3)]
    pub g_to: u32,
    #[arg(long, default_value_t = 2)]
    pub r_from: u32,
    #[arg(long, default_value_t = 4)]
    pub r_to: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Text for standard output (or `--out`), and the exit status.
pub struct Outcome {
    pub text: String,
    pub out: Option<PathBuf>,
    pub status: i32,
}

impl SeriesArgs {
    pub fn request(&self, method: MethodArg) -> SeriesRequest {
        SeriesRequest {
            case: match self.tau {
                TauArg::Real => Case::Real,
                TauArg::Quat => Case::Quat,
                TauArg::Complex => Case::Complex,
            },
            g: self.genus,
            n: self.n,
            a: self.a,
            r: self.rank,
            d: self.degree,
            order: self.order,
            method: match method {
                MethodArg::Recursion => Method::Recursion,
                MethodArg::Closed => Method::Closed,
                MethodArg::Product => Method::Product,
            },
        }
    }
}

fn poly_json(p: &Poly) -> Value {
    Value::from(p.coeffs().iter().map(fmt_rat).collect::<Vec<_>>())
}

/// The JSON record of one computed series.
pub fn series_record(req: &SeriesRequest, out: &SeriesOutput) -> Value {
    let s = out.expansion();
    let rational = match out {
        SeriesOutput::Series(_) => Value::Null,
        SeriesOutput::Rational { f, .. } => json!({ "num": poly_json(f.num()), "den": poly_json(f.den()) }),
    };
    json!({
        "request": serde_json::to_value(req).expect("requests serialize"),
        "coefficients": s.coeff_strings(),
        "scale": s.scale(),
        "rational": rational,
    })
}

/// Canonical serialization: sorted keys, no whitespace, trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

fn series_csv(s: &ScaledSeries) -> String {
    let mut text = String::from("k,coefficient\n");
    for (k, c) in s.coeff_strings().iter().enumerate() {
        text.push_str(&format!("{k},{c}\n"));
    }
    text
}

pub fn cmd_series(args: &SeriesArgs) -> Result<Outcome> {
    let req = args.request(args.method);
    let start = Instant::now();
    let out = req.run()?;
    log_runtime("series", start);
    let text = match args.format {
        Format::Json => canonical(&series_record(&req, &out)),
        Format::Csv => series_csv(out.expansion()),
    };
    Ok(Outcome { text, out: args.out.clone(), status: 0 })
}

fn log_runtime(what: &str, start: Instant) {
    eprintln!("{what}: {:.3}s", start.elapsed().as_secs_f64());
}

fn golden_coefficients(path: &PathBuf) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Unsupported(format!("{} is not a series record: {e}", path.display())))?;
    v["coefficients"]
        .as_array()
        .and_then(|a| a.iter().map(|c| c.as_str().map(str::to_owned)).collect())
        .ok_or_else(|| Error::Unsupported(format!("{} has no coefficient list", path.display())))
}

pub fn cmd_compare(args: &CompareArgs) -> Result<Outcome> {
    let req = args.series.request(args.series.method);
    let start = Instant::now();
    let left = req.run()?.expansion().coeff_strings();
    let (reference, right) = match &args.golden {
        Some(path) => (json!({ "golden": path.display().to_string() }), golden_coefficients(path)?),
        None => {
            let other = args.series.request(args.against);
            let right = other.run()?.expansion().coeff_strings();
            (json!({ "method": serde_json::to_value(other.method).expect("methods serialize") }), right)
        }
    };
    log_runtime("compare", start);
    let n = left.len().min(right.len());
    let mismatch = (0..n).find(|&k| left[k] != right[k]);
    let record = json!({
        "request": serde_json::to_value(&req).expect("requests serialize"),
        "reference": reference,
        "compared": n,
        "verdict": if mismatch.is_some() { "mismatch" } else { "match" },
        "first_mismatch": mismatch.map(|k| json!({ "k": k, "left": left[k], "right": right[k] })),
    });
    let text = match args.series.format {
        Format::Json => canonical(&record),
        Format::Csv => match mismatch {
            Some(k) => format!("verdict,k,left,right\nmismatch,{k},{},{}\n", left[k], right[k]),
            None => "verdict,k,left,right\nmatch,,,\n".into(),
        },
    };
    Ok(Outcome { text, out: args.series.out.clone(), status: i32::from(mismatch.is_some()) })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let reports = run_suite(args.filter.as_deref());
    let failed = reports.iter().filter(|r| !r.passed()).count();
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("{r}");
    }
    eprintln!("{} checks, {failed} failed", reports.len());
    log_runtime("verify", start);
    let text: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
    Ok(Outcome { text, out: args.out.clone(), status: i32::from(failed > 0) })
}

/// One maximality row: `(g, r, d, complex total, 2^g times real total, equal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub g: u32,
    pub r: u32,
    pub d: i64,
    pub complex_total: String,
    pub real_total: String,
    pub maximal: bool,
}

pub fn maximality_table(
    g_range: std::ops::RangeInclusive<u32>,
    r_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<TableRow>> {
    let mut keys = Vec::new();
    for g in g_range {
        for r in r_range.clone() {
            keys.extend((1..r as i64).filter(|&d| coprime(r, d)).map(|d| (g, r, d)));
        }
    }
    let mut rows = keys
        .into_par_iter()
        .map(|(g, r, d)| {
            let complex = total_betti_complex_moduli(g, r, d)?;
            let real = total_betti_real_moduli(&KleinTopType::maximal(g), r, d)?;
            Ok(TableRow {
                g,
                r,
                d,
                complex_total: fmt_rat(&complex),
                real_total: fmt_rat(&real),
                maximal: complex == real,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|row| (row.g, row.r, row.d));
    Ok(rows)
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome> {
    let rows = maximality_table(args.g_from..=args.g_to, args.r_from..=args.r_to)?;
    let text = match args.format {
        Format::Csv => {
            let mut text = String::from("g,r,d,complex_total,real_total,maximal\n");
            for row in &rows {
                let yes = if row.maximal { "yes" } else { "no" };
                text.push_str(&format!(
                    "{},{},{},{},{},{yes}\n",
                    row.g, row.r, row.d, row.complex_total, row.real_total
                ));
            }
            text
        }
        Format::Json => canonical(&Value::from(
            rows.iter()
                .map(|row| {
                    json!({
                        "g": row.g, "r": row.r, "d": row.d,
                        "complex_total": row.complex_total, "real_total": row.real_total, "maximal": row.maximal,
                    })
                })
                .collect::<Vec<_>>(),
        )),
    };
    Ok(Outcome { text, out: args.out.clone(), status: 0 })
}

/// Runs a parsed command line; returns the exit status.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Series(a) => cmd_series(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
    };
    match outcome {
        Ok(o) => {
            match &o.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &o.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{}", o.text),
            }
            o.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("klein-poincare").chain(line.iter().copied())).unwrap()
    }

    fn series_text(line: &[&str]) -> Result<String> {
        match args(line).command {
            Command::Series(a) => cmd_series(&a).map(|o| o.text),
            _ => unreachable!(),
        }
    }

    #[test]
    fn complex_rank_one() {
        let text = series_text(&["series", "--tau", "complex", "--rank", "1", "--genus", "2", "--order", "3"]).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["coefficients"], json!(["1", "4", "7", "8"]));
    }

    #[test]
    fn record_round_trips() {
        for method in ["closed", "recursion", "product"] {
            let text = series_text(&[
                "series", "--tau", "real", "--genus", "2", "--n", "3", "--a", "0", "--rank", "2", "--degree", "1",
                "--method", method, "--order", "8",
            ])
            .unwrap();
            let v: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(canonical(&v), text);
        }
    }

    #[test]
    fn constraint_named_in_error() {
        let err = series_text(&["series", "--tau", "quat", "--genus", "2", "--n", "1", "--rank", "3", "--degree", "2"])
            .err()
            .unwrap();
        assert!(err.to_string().contains("quaternionic with n>0 requires even rank"));
        let err =
            series_text(&["series", "--tau", "real", "--genus", "2", "--rank", "2", "--degree", "1"]).err().unwrap();
        assert!(err.to_string().contains("real n=0 requires even degree"));
    }

    #[test]
    fn table_contains_rank_two_row() {
        let rows = maximality_table(2..=2, 2..=3).unwrap();
        assert_eq!(rows.iter().map(|r| (r.r, r.d)).collect::<Vec<_>>(), [(2, 1), (3, 1), (3, 2)]);
        assert_eq!(
            (rows[0].complex_total.as_str(), rows[0].real_total.as_str(), rows[0].maximal),
            ("128", "128", true)
        );
    }
}
