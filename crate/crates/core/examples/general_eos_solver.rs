//! The derivative-guarded root finder on a stiffened gas at rest, checked
//! against the closed-form hydrostatic density, plus the three failure modes
//! reported as values.

use wbflow::eos::Eos;
use wbflow::equilibrium::{Anchor, CriticalState, EquilibriumOptions, SolverChoice};
use wbflow::state::Prim;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (gamma, p_inf) = (2.0, 0.5);
    let eos = Eos::stiffened(gamma, p_inf)?;
    let anchor = Anchor::new(Prim::new(1.0, 0.0, 1.0), 0.0, 0.0, &eos, 0)?;
    let k = anchor.k0.value();
    let h0 = eos.enthalpy(1.0, anchor.k0);
    let opts = EquilibriumOptions {
        solver: SolverChoice::General,
        ..Default::default()
    };

    println!(
        "{:>8} {:>20} {:>20} {:>9}",
        "phi", "rho (solver)", "rho (exact)", "rel err"
    );
    for i in -4..4 {
        let phi = 0.25 * h0 * i as f64;
        let exact = ((h0 - phi) * (gamma - 1.0) / (gamma * k)).powf(1.0 / (gamma - 1.0));
        let out = anchor.solve_density(phi, 0.0, &opts);
        let rho = out.density().ok_or("solve failed")?;
        println!(
            "{phi:>8.3} {rho:>20.16} {exact:>20.16} {:>9.1e}",
            (rho - exact).abs() / exact
        );
    }

    // A moving ideal-gas anchor, asked for states that do not exist or with no budget.
    let ideal = Eos::ideal(5.0 / 3.0)?;
    let a = Anchor::new(Prim::new(1.0, -0.5, 1.0), 0.0, 0.0, &ideal, 0)?;
    let CriticalState::Critical { e_star, .. } = a.critical_state(0.0) else {
        unreachable!("moving anchors have a sonic point")
    };
    println!("\nfailure outcomes:");
    println!(
        "  just below the energy minimum: {:?}",
        a.solve_density_general(a.be0 - e_star + 0.1, 0.0, 1e-13, 200)
    );
    println!(
        "  far below the energy minimum:  {:?}",
        a.solve_density_general(a.be0 - e_star + 10.0, 0.0, 1e-13, 200)
    );
    println!(
        "  one iteration allowed:         {:?}",
        a.solve_density_general(-3.0, 0.0, 1e-13, 1)
    );
    println!(
        "  ideal-gas solver, no root:     {:?}",
        a.solve_density_ideal(a.be0 - e_star + 0.1, 0.0, 1e-13, 200)
    );
    Ok(())
}
