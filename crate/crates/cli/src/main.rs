//! `l1median` command-line interface.
//!
//! Subcommands: `solve`, `spm`, `eval`, `oracle`, `check`, `render`.
//! Instances are JSON files `{"outer": [[x,y],...], "holes": [...]}`.
//! Exit codes: 1 invalid instance, 2 solver precondition violated,
//! 3 internal degeneracy (retry with `--perturb`).

use clap::{Parser, Subcommand};
use l1median::geom::GeomError;
use l1median::instances::Instance;
use l1median::objective::{evaluate_f, gradient_f, ObjectiveError};
use l1median::oracle::{GridSpec, OracleContext};
use l1median::solver::{solve_holes, solve_simple, solve_straight, SolveRecord, SolverError};
use l1median::spm::{build_spm, SpmEngine, SpmError};
use l1median::{Metric, Point, PolygonalDomain};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "l1median", about = "Exact continuous 1-median solvers under L1 metrics")]
struct Cli {
    /// Worker threads for the oracle (default: single-threaded).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Suppress the timing/meta line on stderr.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Jitter all vertices by 1e-7 of the diameter before solving, to
    /// escape degenerate configurations.
    #[arg(long, global = true)]
    perturb: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance exactly and print the result record.
    Solve {
        #[arg(long, default_value = "l1-straight")]
        metric: String,
        file: PathBuf,
    },
    /// Evaluate objective and gradient at a point.
    Eval {
        #[arg(long, default_value = "l1-straight")]
        metric: String,
        /// Evaluation point as "x,y".
        #[arg(long)]
        at: String,
        file: PathBuf,
    },
    /// Build the shortest-path map of a source point.
    Spm {
        /// Source point as "x,y".
        #[arg(long)]
        source: String,
        /// Write an SVG rendering here instead of printing JSON.
        #[arg(long)]
        svg: Option<PathBuf>,
        file: PathBuf,
    },
    /// Grid verification: integrate at a point or search the optimum.
    Oracle {
        #[arg(long, default_value = "l1-straight")]
        metric: String,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Integrate at "x,y" instead of searching.
        #[arg(long)]
        at: Option<String>,
        file: PathBuf,
    },
    /// Validate an instance file.
    Check { file: PathBuf },
    /// Render the instance (with a source: its shortest-path map).
    Render {
        #[arg(long)]
        source: Option<String>,
        file: PathBuf,
        out: PathBuf,
    },
}

/// Round to 12 significant digits so printed records are stable.
fn sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let d = v.abs().log10().floor();
    let factor = 10f64.powf(11.0 - d);
    (v * factor).round() / factor
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    match s {
        "l1-straight" | "straight" => Ok(Metric::Straight),
        "l1-geodesic" | "geodesic" => Ok(Metric::Geodesic),
        other => Err(format!("unknown metric '{other}' (l1-straight | l1-geodesic)")),
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected 'x,y', got '{s}'"));
    }
    let x: f64 = parts[0].trim().parse().map_err(|e| format!("bad x: {e}"))?;
    let y: f64 = parts[1].trim().parse().map_err(|e| format!("bad y: {e}"))?;
    Ok(Point::new(x, y))
}

enum Failure {
    Invalid(String),
    Precondition(String),
    Degenerate(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Invalid(m) => (1, m),
            Failure::Precondition(m) => (2, m),
            Failure::Degenerate(m) => (3, m),
        };
        eprintln!("error: {msg}");
        ExitCode::from(code)
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Numerical(_) => Failure::Degenerate(e.to_string()),
            GeomError::PointOutsideDomain { .. } => Failure::Precondition(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<SpmError> for Failure {
    fn from(e: SpmError) -> Self {
        match e {
            SpmError::Geom(g) => g.into(),
            SpmError::PointOutsideDomain { .. } => Failure::Precondition(e.to_string()),
            SpmError::DegenerateBisector { .. } | SpmError::DegeneratePosition { .. } => {
                Failure::Degenerate(e.to_string())
            }
        }
    }
}

impl From<ObjectiveError> for Failure {
    fn from(e: ObjectiveError) -> Self {
        match e {
            ObjectiveError::Spm(s) => s.into(),
            ObjectiveError::IllConditionedFit | ObjectiveError::CellTooThin { .. } => {
                Failure::Degenerate(e.to_string())
            }
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Geom(g) => g.into(),
            SolverError::Objective(o) => o.into(),
            SolverError::HasHoles => Failure::Precondition(e.to_string()),
            SolverError::NoCandidates => Failure::Degenerate(e.to_string()),
        }
    }
}

fn load(file: &PathBuf, perturb: bool) -> Result<(Instance, PolygonalDomain), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", file.display())))?;
    let mut inst = Instance::from_json(&text)
        .map_err(|e| Failure::Invalid(format!("bad instance JSON: {e}")))?;
    if perturb {
        let rough: PolygonalDomain = inst.domain().map_err(Failure::from)?;
        inst = inst.perturbed(1e-7 * rough.diameter(), 0x1234);
    }
    let dom = inst.domain().map_err(Failure::from)?;
    Ok((inst, dom))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let no_meta = cli.no_meta;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .ok();

    match cli.cmd {
        Cmd::Check { file } => {
            let (inst, dom) = load(&file, cli.perturb)?;
            let out = serde_json::json!({
                "valid": true,
                "vertices": dom.vertex_count(),
                "holes": inst.holes.len(),
                "area": sig(dom.area()),
                "diameter": sig(dom.diameter()),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Cmd::Solve { metric, file } => {
            let metric = parse_metric(&metric).map_err(Failure::Invalid)?;
            let (_, dom) = load(&file, cli.perturb)?;
            let sol = match metric {
                Metric::Straight => solve_straight(&dom, true)?,
                Metric::Geodesic => {
                    if dom.holes().is_empty() {
                        solve_simple(&dom)?
                    } else {
                        solve_holes(&dom)?
                    }
                }
            };
            let mut rec = SolveRecord::new(metric, &sol);
            rec.optimum.x = sig(rec.optimum.x);
            rec.optimum.y = sig(rec.optimum.y);
            rec.optimum.f = sig(rec.optimum.f);
            for t in &mut rec.ties {
                t.x = sig(t.x);
                t.y = sig(t.y);
                t.f = sig(t.f);
            }
            println!("{}", serde_json::to_string_pretty(&rec).unwrap());
        }
        Cmd::Eval { metric, at, file } => {
            let metric = parse_metric(&metric).map_err(Failure::Invalid)?;
            let z = parse_point(&at).map_err(Failure::Invalid)?;
            let (_, dom) = load(&file, cli.perturb)?;
            let f = evaluate_f(&dom, &z, metric, None)?;
            // The gradient is undefined on the axis lines through reflex
            // vertices; report it as null there rather than failing the
            // whole evaluation.
            let grad = match gradient_f(&dom, &z, metric, None) {
                Ok((gx, gy)) => serde_json::json!([sig(gx), sig(gy)]),
                Err(ObjectiveError::Spm(SpmError::DegeneratePosition { .. })) => {
                    serde_json::Value::Null
                }
                Err(e) => return Err(e.into()),
            };
            let out = serde_json::json!({
                "metric": metric.as_str(),
                "x": sig(z.x), "y": sig(z.y),
                "f": sig(f),
                "gradient": grad,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Cmd::Spm { source, svg, file } => {
            let z = parse_point(&source).map_err(Failure::Invalid)?;
            let (_, dom) = load(&file, cli.perturb)?;
            let engine = SpmEngine::new(&dom)?;
            let spm = build_spm(&engine, &z, true)?;
            if let Some(path) = svg {
                std::fs::write(&path, l1median::svg::render_spm(&dom, &spm))
                    .map_err(|e| Failure::Invalid(format!("cannot write svg: {e}")))?;
            } else {
                let cells: Vec<_> = spm
                    .cells
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "root": format!("{:?}", c.root),
                            "root_dist": sig(c.root_dist.into()),
                            "area": sig(c.area()),
                        })
                    })
                    .collect();
                let bisectors: Vec<_> = spm
                    .bisectors
                    .iter()
                    .map(|b| {
                        serde_json::json!({
                            "roots": format!("{:?}", b.roots),
                            "watershed": b.watershed,
                            "points": b.polyline.len(),
                        })
                    })
                    .collect();
                let out = serde_json::json!({
                    "source": [sig(z.x), sig(z.y)],
                    "cells": cells,
                    "bisectors": bisectors,
                    "complexity": spm.complexity,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
        }
        Cmd::Oracle { metric, grid, at, file } => {
            let metric = parse_metric(&metric).map_err(Failure::Invalid)?;
            let (_, dom) = load(&file, cli.perturb)?;
            let spec = GridSpec::new(grid).map_err(|e| Failure::Invalid(e.to_string()))?;
            let ctx = OracleContext::new(&dom, spec)
                .map_err(|e| Failure::Degenerate(e.to_string()))?;
            let out = match at {
                Some(at) => {
                    let z = parse_point(&at).map_err(Failure::Invalid)?;
                    let (v, eb) = ctx
                        .average_from(&z, metric)
                        .map_err(|e| Failure::Precondition(e.to_string()))?;
                    serde_json::json!({
                        "metric": metric.as_str(), "grid": grid,
                        "x": sig(z.x), "y": sig(z.y),
                        "value": sig(v), "error_bound": sig(eb),
                    })
                }
                None => {
                    let r = ctx
                        .search(metric)
                        .map_err(|e| Failure::Degenerate(e.to_string()))?;
                    serde_json::json!({
                        "metric": metric.as_str(), "grid": grid,
                        "best": [sig(r.best.x), sig(r.best.y)],
                        "value": sig(r.value),
                        "error_bound": sig(r.error_bound),
                        "slack": sig(r.slack),
                        "lower": sig(r.lower()),
                        "upper": sig(r.upper()),
                        "candidates": r.candidates,
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Cmd::Render { source, file, out } => {
            let (_, dom) = load(&file, cli.perturb)?;
            let svg = match source {
                Some(src) => {
                    let z = parse_point(&src).map_err(Failure::Invalid)?;
                    let engine = SpmEngine::new(&dom)?;
                    let spm = build_spm(&engine, &z, true)?;
                    l1median::svg::render_spm(&dom, &spm)
                }
                None => {
                    let engine = SpmEngine::new(&dom)?;
                    let overlay = l1median::solver::build_overlay(&dom, &engine)?;
                    l1median::svg::render_overlay(&dom, &overlay)
                }
            };
            std::fs::write(&out, svg)
                .map_err(|e| Failure::Invalid(format!("cannot write svg: {e}")))?;
        }
    }
    if !no_meta {
        eprintln!("# elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
