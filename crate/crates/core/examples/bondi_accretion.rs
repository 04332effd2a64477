//! Spherical Bondi accretion: the unperturbed flow stays steady under the
//! well-balanced scheme, then a small bump is tracked on a short ladder.
//!
//! cargo run --release --example bondi_accretion -- [mach]

use wbflow::experiments::diagnostics::pressure_deviation;
use wbflow::experiments::io::convergence_csv;
use wbflow::experiments::{convergence_suite, error_norms, ConvergenceStudy, NormWeight, ProblemSpec};
use wbflow::solver::SchemeKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mach: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.9);

    let mut steady = ProblemSpec::bondi(mach, 0.0, 128)?;
    steady.run.t_end = 1.0;
    let grid = steady.grid()?;
    let eq = steady.equilibrium_prims()?;
    for kind in [SchemeKind::Standard, SchemeKind::WellBalanced] {
        let spec = steady.with_scheme(kind);
        let (field, _) = spec.run()?;
        let dp = pressure_deviation(&field.interior_prims(&spec.eos)?, &eq[grid.interior()]);
        let err = error_norms(&dp, &vec![0.0; dp.len()], &grid, NormWeight::DomainMean)?.err1;
        println!("steady M = {mach}, N = 128, t = 1: {kind:?} mean |dp| = {err:.3e}");
    }

    let mut study = ConvergenceStudy::standard_ladder(ProblemSpec::bondi(mach, 1e-4, 32)?);
    study.levels = vec![32, 64, 128, 256];
    study.reference_cells = 1024;
    study.weight = NormWeight::DomainMean;
    println!("\nperturbed, A = 1e-4:");
    print!("{}", convergence_csv(&convergence_suite(&study)?));
    Ok(())
}
