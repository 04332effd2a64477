//! Command-line front end: single runs, convergence suites and the preset list.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wbflow::experiments::io::{
    convergence_csv, intermediate_path, snapshot_2d_csv, snapshot_csv, write_file,
};
use wbflow::experiments::{convergence_suite, list_problems, RunConfig, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "wbflow",
    version,
    about = "Well-balanced finite-volume solver for Euler flows with gravity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one problem and write snapshot CSVs (stdout when no output path is set).
    Run { config: PathBuf },
    /// Run a grid-refinement study and write the convergence table.
    Suite { config: PathBuf },
    /// List problem presets.
    ListProblems,
}

fn emit(path: Option<&PathBuf>, contents: &str) -> wbflow::error::Result<()> {
    match path {
        Some(p) => {
            write_file(p, contents)?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{contents}"),
    }
    Ok(())
}

fn run(config: &Path) -> wbflow::error::Result<()> {
    let cfg = RunConfig::load(config)?;
    let spec = &cfg.problem;
    let out = cfg.output_path.as_ref();
    // Intermediate snapshots need somewhere to go besides the final one.
    let path_for = |t: f64, last: bool| {
        if last {
            out.cloned()
        } else {
            out.map(|p| intermediate_path(p, t))
        }
    };

    if spec.flow_2d.is_some() {
        let grid = spec.grid_2d()?;
        let mut field = spec.initial_field_2d()?;
        let mut solver = spec.solver_2d(&field)?;
        let report = solver.run(&mut field, &spec.run)?;
        let xs = &grid.centers_x[wbflow::grid::NGHOST..wbflow::grid::NGHOST + grid.nx];
        let ys = &grid.centers_y[wbflow::grid::NGHOST..wbflow::grid::NGHOST + grid.ny];
        let n = report.snapshots.len();
        for (k, snap) in report.snapshots.iter().enumerate() {
            let last = k + 1 == n;
            if last || out.is_some() {
                emit(
                    path_for(snap.t, last).as_ref(),
                    &snapshot_2d_csv(xs, ys, &snap.prim),
                )?;
            }
        }
        eprintln!("t = {} after {} steps", report.t_final, report.steps);
    } else {
        let grid = spec.grid()?;
        let (_, report) = spec.run()?;
        let n = report.snapshots.len();
        for (k, snap) in report.snapshots.iter().enumerate() {
            let last = k + 1 == n;
            if last || out.is_some() {
                emit(
                    path_for(snap.t, last).as_ref(),
                    &snapshot_csv(grid.interior_centers(), &snap.prim),
                )?;
            }
        }
        eprintln!(
            "t = {} after {} steps, {} fallback reconstructions",
            report.t_final, report.steps, report.fallback_evaluations
        );
    }
    Ok(())
}

fn suite(config: &Path) -> wbflow::error::Result<()> {
    let cfg = SuiteConfig::load(config)?;
    let table = convergence_suite(&cfg.study)?;
    emit(cfg.output_path.as_ref(), &convergence_csv(&table))
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Run { config } => run(&config),
        Command::Suite { config } => suite(&config),
        Command::ListProblems => {
            for (name, about) in list_problems() {
                println!("{name:<22} {about}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
