//! Steady flow in a linear potential for both schemes: the well-balanced
//! scheme keeps the discrete steady state to round-off, the standard scheme
//! drifts to its truncation error.
//!
//! cargo run --release --example gaussian_balance -- [mach] [cells]

use wbflow::experiments::diagnostics::pressure_deviation;
use wbflow::experiments::{error_norms, NormWeight, ProblemSpec};
use wbflow::solver::SchemeKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mach: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.01);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(128);

    let base = ProblemSpec::gaussian_bump(mach, 0.0, n)?;
    let grid = base.grid()?;
    let eq = base.equilibrium_prims()?;
    println!("gaussian_bump M = {mach}, N = {n}, t_end = {}", base.run.t_end);
    for kind in [SchemeKind::Standard, SchemeKind::WellBalanced] {
        let spec = base.with_scheme(kind);
        let (field, report) = spec.run()?;
        let dp = pressure_deviation(&field.interior_prims(&spec.eos)?, &eq[grid.interior()]);
        let err = error_norms(&dp, &vec![0.0; n], &grid, NormWeight::Volume)?.err1;
        println!("  {kind:<12?} err1(dp) = {err:.3e} after {} steps", report.steps);
    }
    Ok(())
}
