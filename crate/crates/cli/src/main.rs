//! `selfx`: analyze self-intersections of Laurent-polynomial circle maps,
//! compute the theorem bound, generate extremal examples, approximate
//! sampled circle maps by Jordan curves, and render curves to SVG.
//!
//! Exit codes: 0 success, 1 solver failure, 2 exceptional input,
//! 3 approximation budget exceeded, 64 usage/malformed input,
//! 66 output write failure.

mod document;
mod svg;

use clap::{Parser, Subcommand};
use document::{CurveDocument, DocPayload, PolylinePayload};
use selfx_core::embed::{embed, EmbeddingRequest};
use selfx_core::error::Error;
use selfx_core::geometry::PlanarCurve;
use selfx_core::intersect::{self_intersections, upper_bound, ToleranceSet};
use selfx_core::laurent::unit;
use selfx_core::oracle::{oracle_self_intersections, OracleConfig};
use selfx_core::{C64, LaurentPolynomial};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_SOLVER: u8 = 1;
const EXIT_EXCEPTIONAL: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_WRITE: u8 = 66;

#[derive(Parser)]
#[command(name = "selfx", version, about = "Self-intersections of Laurent curves and Jordan-curve approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count and locate the self-intersections of a Laurent curve document.
    Analyze {
        input: PathBuf,
        /// Cross-check against the sampling oracle and report its count.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-6)]
        tol_unit: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_image: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_cluster: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the theorem's upper bound for exponent range [m, n].
    Bound { n: i32, m: i32 },
    /// Emit the extremal polynomial z^n + ε z^m (optionally verifying its count).
    Extremal {
        n: i32,
        m: i32,
        eps: f64,
        #[arg(long)]
        verify: bool,
    },
    /// Run the sampling oracle alone.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
    },
    /// Run both pipelines and report their agreement.
    Compare { input: PathBuf },
    /// Approximate a samples document by a simple closed curve in L^p.
    Embed {
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Render a curve document to SVG.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Mark distinct self-intersection image points (laurent documents).
        #[arg(long)]
        mark_crossings: bool,
    },
}

fn error_exit(e: &Error) -> u8 {
    match e {
        Error::ExceptionalInput(_) | Error::Saturation { .. } => EXIT_EXCEPTIONAL,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::Range(_) | Error::DegenerateInput(_) | Error::InsufficientSamples { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_SOLVER,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if let Error::ExceptionalInput(status) = e {
        let body = serde_json::json!({ "status": status.to_string(), "count": null });
        println!("{}", serde_json::to_string_pretty(&body).unwrap());
    }
    ExitCode::from(error_exit(e))
}

fn usage_fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn read_document(path: &PathBuf) -> Result<CurveDocument, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_fail(&format!("cannot read {}: {e}", path.display())))?;
    CurveDocument::parse(&text).map_err(|e| usage_fail(&format!("malformed document: {e}")))
}

fn laurent_of(doc: &CurveDocument) -> Result<LaurentPolynomial, ExitCode> {
    match &doc.payload {
        DocPayload::Laurent(p) => Ok(p.clone()),
        _ => Err(usage_fail("expected a laurent curve document")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success status
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Analyze { input, oracle, tol_unit, tol_image, tol_cluster, seed } => {
            let doc = match read_document(&input) {
                Ok(d) => d,
                Err(c) => return c,
            };
            let p = match laurent_of(&doc) {
                Ok(p) => p,
                Err(c) => return c,
            };
            let tol = ToleranceSet {
                unit: tol_unit,
                image_rel: tol_image,
                cluster: tol_cluster,
                seed,
                ..Default::default()
            };
            let report = match self_intersections(&p, &tol) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let mut body = serde_json::to_value(&report).unwrap();
            if oracle {
                match oracle_self_intersections(&p, &OracleConfig::default()) {
                    Ok(found) => {
                        body["oracle_count"] = serde_json::json!(found.len());
                    }
                    Err(e) => return fail(&e),
                }
            }
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
            ExitCode::SUCCESS
        }
        Command::Bound { n, m } => match upper_bound(n, m) {
            Ok(b) => {
                println!("{b}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Extremal { n, m, eps, verify } => {
            let p = match selfx_core::intersect::extremal(n, m, eps) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            };
            if verify {
                let expected = (n as i64 - 1) * (n as i64 - m as i64);
                let report = match self_intersections(&p, &ToleranceSet::default()) {
                    Ok(r) => r,
                    Err(e) => return fail(&e),
                };
                let body = serde_json::json!({
                    "polynomial": p,
                    "count": report.count,
                    "expected": expected,
                });
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
                if report.count as i64 != expected {
                    eprintln!(
                        "error: count {} does not match expected {expected} (ε may be too large)",
                        report.count
                    );
                    return ExitCode::from(EXIT_SOLVER);
                }
            } else {
                println!("{}", serde_json::to_string_pretty(&CurveDocument::laurent(p)).unwrap());
            }
            ExitCode::SUCCESS
        }
        Command::Oracle { input, grid } => {
            let doc = match read_document(&input) {
                Ok(d) => d,
                Err(c) => return c,
            };
            let p = match laurent_of(&doc) {
                Ok(p) => p,
                Err(c) => return c,
            };
            let cfg = OracleConfig { grid_size: grid, ..Default::default() };
            match oracle_self_intersections(&p, &cfg) {
                Ok(found) => {
                    let body = serde_json::json!({
                        "count": found.len(),
                        "intersections": found,
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Compare { input } => {
            let doc = match read_document(&input) {
                Ok(d) => d,
                Err(c) => return c,
            };
            let p = match laurent_of(&doc) {
                Ok(p) => p,
                Err(c) => return c,
            };
            match selfx_core::oracle::compare(&p) {
                Ok(r) => {
                    println!("{}", serde_json::to_string_pretty(&r).unwrap());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Embed { input, p, eps, seed, output } => {
            let doc = match read_document(&input) {
                Ok(d) => d,
                Err(c) => return c,
            };
            let target = match &doc.payload {
                DocPayload::Samples(s) => s.to_target(),
                _ => return usage_fail("embed expects a samples document"),
            };
            let request = EmbeddingRequest {
                target,
                p_exponent: p,
                epsilon: eps,
                seed,
                degree_range: None,
            };
            let result = match embed(&request) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let polyline = CurveDocument {
                payload: DocPayload::Polyline(PolylinePayload {
                    params: result.curve.params().to_vec(),
                    points: result.curve.points().map(|w| (w.re, w.im)).collect(),
                }),
                metadata: Default::default(),
            };
            let text = serde_json::to_string_pretty(&polyline).unwrap();
            if std::fs::write(&output, text).is_err() {
                eprintln!("error: cannot write {}", output.display());
                return ExitCode::from(EXIT_WRITE);
            }
            println!("{}", serde_json::to_string_pretty(&result).unwrap());
            ExitCode::SUCCESS
        }
        Command::Render { input, output, mark_crossings } => {
            let doc = match read_document(&input) {
                Ok(d) => d,
                Err(c) => return c,
            };
            let (points, closed, markers): (Vec<C64>, bool, Vec<C64>) = match &doc.payload {
                DocPayload::Laurent(p) => {
                    let n = 2048;
                    let pts: Vec<C64> = (0..n)
                        .map(|j| p.evaluate(unit(selfx_core::TAU * j as f64 / n as f64)).unwrap())
                        .collect();
                    let markers = if mark_crossings {
                        let report = match self_intersections(p, &ToleranceSet::default()) {
                            Ok(r) => r,
                            Err(e) => return fail(&e),
                        };
                        let images: Vec<C64> =
                            report.intersections.iter().map(|s| s.image).collect();
                        svg::dedup_markers(&images)
                    } else {
                        Vec::new()
                    };
                    (pts, true, markers)
                }
                DocPayload::Samples(s) => {
                    (s.to_target().into_iter().map(|(_, v)| v).collect(), true, Vec::new())
                }
                DocPayload::Polyline(pl) => {
                    let pts: Vec<C64> =
                        pl.points.iter().map(|&(x, y)| C64::new(x, y)).collect();
                    // validated: params strictly increasing means closed curve
                    let _ = PlanarCurve::new(
                        pts.clone(),
                        pl.params.clone(),
                    );
                    (pts, true, Vec::new())
                }
            };
            let svg_text = svg::render_svg(&points, closed, &markers);
            if std::fs::write(&output, svg_text).is_err() {
                eprintln!("error: cannot write {}", output.display());
                return ExitCode::from(EXIT_WRITE);
            }
            ExitCode::SUCCESS
        }
    }
}
