//! Drive a run from a TOML config, as `wbflow run` does, and print the
//! final snapshot CSV.
//!
//! cargo run --release --example config_run -- [path/to/config.toml]

use wbflow::experiments::io::snapshot_csv;
use wbflow::experiments::RunConfig;

const DEFAULT: &str = r#"
[problem]
name = "stiffened_hydrostatic"

[grid]
n_cells = 16

[time]
t_end = 0.5
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => RunConfig::load(path.as_ref())?,
        None => RunConfig::from_toml(DEFAULT)?,
    };
    let spec = &cfg.problem;
    let (field, report) = spec.run()?;
    eprintln!(
        "{}: {} cells, {} steps to t = {}",
        spec.name, spec.n_cells, report.steps, report.t_final
    );
    print!(
        "{}",
        snapshot_csv(spec.grid()?.interior_centers(), &field.interior_prims(&spec.eos)?)
    );
    Ok(())
}
