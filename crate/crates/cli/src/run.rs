//! Command-line driver.

use std::path::PathBuf;

use clap::Parser;
use sheetfk::engine::{lowest_energy, solve_fk, SolveOptions};
use sheetfk::oracle::{self, Stability};
use sheetfk::Tolerances;

use crate::results;
use crate::scene_file::{self, SceneFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NO_SOLUTIONS: i32 = 3;

/// Static equilibria of an object on a robot-held deformable sheet.
#[derive(Debug, Parser)]
#[command(name = "sheetfk", version, about)]
pub struct Args {
    /// Scene file (JSON)
    #[arg(long)]
    pub scene: PathBuf,

    /// Output format for --out / stdout
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    pub format: String,

    /// Write results to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Print a human-readable statistics block
    #[arg(long)]
    pub stats: bool,

    /// Emit only the lowest-energy solution
    #[arg(long)]
    pub lowest_energy: bool,

    /// Run the brute-force oracle: classify solution stability and report
    /// independently found equilibria
    #[arg(long)]
    pub oracle: bool,

    /// Oracle grid points along the longest axis
    #[arg(long, default_value_t = 25)]
    pub grid_res: usize,

    /// Group solutions whose positions agree within this tolerance (meters)
    #[arg(long)]
    pub cluster: Option<f64>,

    /// Write an SVG figure of the solutions
    #[arg(long)]
    pub figure: Option<PathBuf>,

    /// Pivot cable index to prefer (taut sets not containing it fall back to
    /// their smallest index)
    #[arg(long)]
    pub pivot_index: Option<u32>,

    /// Tolerance overrides, e.g. "rank=1e-8,slack=1e-10"
    /// (keys: rank, height_gap, ground, slack, hull)
    #[arg(long)]
    pub tolerances: Option<String>,
}

fn parse_tolerances(spec: &str) -> Result<Tolerances, String> {
    let mut tol = Tolerances::default();
    for part in spec.split(',').filter(|s| !s.is_empty()) {
        let Some((key, value)) = part.split_once('=') else {
            return Err(format!("expected key=value, got {part:?}"));
        };
        let value: f64 = value
            .parse()
            .map_err(|_| format!("invalid number {value:?} for {key}"))?;
        if !tol.set(key.trim(), value) {
            return Err(format!("unknown tolerance key {key:?}"));
        }
    }
    Ok(tol)
}

/// Run the solver per the arguments; returns the process exit code.
pub fn run(args: &Args) -> i32 {
    let tolerances = match args.tolerances.as_deref().map(parse_tolerances).transpose() {
        Ok(t) => t.unwrap_or_default(),
        Err(message) => {
            eprintln!("error: {message}");
            return EXIT_PARSE;
        }
    };

    let scene = match scene_file::parse_scene_file(&args.scene) {
        Ok(scene) => scene,
        Err(SceneFileError::Parse(e)) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
        Err(err @ SceneFileError::Validation(_)) => {
            eprintln!("error: {err}");
            return EXIT_VALIDATION;
        }
    };

    let options = SolveOptions {
        tolerances,
        pivot: args.pivot_index,
        ..Default::default()
    };
    let (mut solutions, stats) = solve_fk(&scene, &options);

    if args.lowest_energy && !solutions.is_empty() {
        let best = lowest_energy(&solutions).expect("non-empty").clone();
        solutions = vec![best];
    }

    let mut stability: Vec<Option<Stability>> = vec![None; solutions.len()];
    let mut equilibria = None;
    if args.oracle {
        for (i, sol) in solutions.iter().enumerate() {
            stability[i] = Some(oracle::classify_solution(&scene, sol, 1e-4));
        }
        let res = oracle_resolution(&scene, args.grid_res);
        equilibria = Some(oracle::find_equilibria(&scene, res));
    }

    let clusters = args
        .cluster
        .map(|tol| results::cluster_solutions(&solutions, tol));

    let body = match args.format.as_str() {
        "csv" => results::to_csv(&solutions, &stability, &stats, clusters.as_deref()),
        _ => results::to_json(
            &solutions,
            &stability,
            &stats,
            clusters.as_deref(),
            equilibria.as_deref(),
        ),
    };

    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, &body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_PARSE;
        }
    }
    if args.stats {
        print!("{}", results::stats_block(&stats));
    } else if args.out.is_none() {
        print!("{body}");
    }

    if let Some(path) = &args.figure {
        let svg = crate::figure::render_svg(&scene, &solutions);
        if let Err(e) = std::fs::write(path, svg) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_PARSE;
        }
    }

    if solutions.is_empty() {
        EXIT_NO_SOLUTIONS
    } else {
        EXIT_OK
    }
}

fn oracle_resolution(scene: &sheetfk::Scene, grid_res: usize) -> f64 {
    let grid_res = grid_res.max(2);
    let default = oracle::default_coarse_resolution(scene);
    // default targets 25 points along the longest axis
    default * 24.0 / (grid_res as f64 - 1.0)
}
