//! Evaluate a steady adiabatic flow profile from one anchor state and check
//! that mass flux, Bernoulli constant and entropy are carried along.
//!
//! cargo run --example equilibrium_profile -- [mach]

use wbflow::eos::Eos;
use wbflow::equilibrium::{Anchor, CriticalState, EquilibriumOptions};
use wbflow::state::Prim;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mach: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.9);
    let gamma = 4.0 / 3.0;
    let eos = Eos::ideal(gamma)?;
    let c0 = 0.5f64.sqrt();
    // Spherical inflow onto a unit point mass, anchored at r = 1.
    let anchor = Anchor::new(Prim::new(1.0, -mach * c0, 0.5 / gamma), 1.0, -1.0, &eos, 2)?;
    println!(
        "regime {:?}, m0 = {:.6}, Be0 = {:.6}",
        anchor.regime, anchor.m0, anchor.be0
    );

    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>9} {:>10}",
        "r", "rho", "v", "p", "Mach", "|dBe|"
    );
    let opts = EquilibriumOptions::default();
    for i in 0..=8 {
        let r = 0.2 + 0.2 * i as f64;
        let phi = -1.0 / r;
        match anchor.profile_at(r, phi, &opts) {
            Ok(w) => {
                let c = w.sound_speed(&eos)?;
                let be = 0.5 * w.v * w.v + eos.enthalpy(w.rho, anchor.k0) + phi;
                println!(
                    "{r:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>9.4} {:>10.1e}",
                    w.rho,
                    w.v,
                    w.p,
                    w.v.abs() / c,
                    (be - anchor.be0).abs()
                );
            }
            Err(outcome) => println!("{r:>6.2} no steady state on this branch ({outcome:?})"),
        }
    }
    if let CriticalState::Critical { rho_star, .. } = anchor.critical_state(1.0) {
        println!("sonic density at the anchor radius: {rho_star:.6}");
    }
    Ok(())
}
