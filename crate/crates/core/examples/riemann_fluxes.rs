//! HLLE and HLLC interface fluxes: Sod data, a stationary contact and a
//! stationary shock. Both capture the stationary shock exactly; only HLLC
//! keeps the contact.

use wbflow::eos::Eos;
use wbflow::experiments::problems::rankine_hugoniot;
use wbflow::flux::{numerical_flux, physical_flux, FluxKind};
use wbflow::state::Prim;

fn show(label: &str, l: Prim, r: Prim, eos: &Eos) {
    println!("{label}");
    let (fl, fr) = (physical_flux(&l, eos), physical_flux(&r, eos));
    println!(
        "  physical left   {:>13.6e} {:>13.6e} {:>13.6e}",
        fl.rho, fl.mom, fl.energy
    );
    println!(
        "  physical right  {:>13.6e} {:>13.6e} {:>13.6e}",
        fr.rho, fr.mom, fr.energy
    );
    for kind in [FluxKind::Hlle, FluxKind::Hllc] {
        let f = numerical_flux(kind, &l, &r, eos);
        println!(
            "  {:<15} {:>13.6e} {:>13.6e} {:>13.6e}",
            format!("{kind:?}"),
            f.rho,
            f.mom,
            f.energy
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let eos = Eos::ideal(1.4)?;
    show("Sod", Prim::new(1.0, 0.0, 1.0), Prim::new(0.125, 0.0, 0.1), &eos);
    show(
        "stationary contact",
        Prim::new(1.0, 0.0, 1.0),
        Prim::new(0.25, 0.0, 1.0),
        &eos,
    );

    let up = Prim::new(1.0, 2.0 * 1.4f64.sqrt(), 1.0);
    let down = rankine_hugoniot(&up, 2.0, 1.4);
    show("stationary Mach 2 shock", up, down, &eos);
    Ok(())
}
