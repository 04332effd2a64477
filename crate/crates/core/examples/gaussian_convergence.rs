//! Grid-refinement study of a small pressure bump riding on a slow flow,
//! printed as the convergence CSV.
//!
//! cargo run --release --example gaussian_convergence -- [amplitude] [finest]

use wbflow::experiments::io::convergence_csv;
use wbflow::experiments::{convergence_suite, ConvergenceStudy, NormWeight, ProblemSpec, Quantity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let amplitude: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1e-6);
    let finest: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(512);

    let mut study = ConvergenceStudy::standard_ladder(ProblemSpec::gaussian_bump(0.01, amplitude, 32)?);
    study.levels.retain(|&n| n <= finest);
    study.reference_cells = 4 * finest;
    study.weight = NormWeight::DomainMean;
    if amplitude.abs() >= 1.0 {
        // Shocked solutions: compare the pressure itself.
        study.quantity = Quantity::Pressure;
    }
    print!("{}", convergence_csv(&convergence_suite(&study)?));
    Ok(())
}
