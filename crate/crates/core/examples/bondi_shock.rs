//! A standing accretion shock joining the supersonic and subsonic Bondi
//! branches. The well-balanced scheme with HLLE keeps it in place; the
//! standard scheme lets it move.

use wbflow::experiments::diagnostics::max_deviation;
use wbflow::experiments::ProblemSpec;
use wbflow::solver::SchemeKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::bondi_shock(128)?;
    let grid = spec.grid()?;
    let w0 = spec.initial_prims()?;
    let w0 = &w0[grid.interior()];
    // Largest density ratio between neighbours; smooth parts of the profile change by a few percent.
    let k = (0..w0.len() - 1)
        .max_by(|&a, &b| (w0[a].rho / w0[a + 1].rho).total_cmp(&(w0[b].rho / w0[b + 1].rho)))
        .ok_or("empty grid")?;
    println!(
        "shock between r = {:.4} and r = {:.4}",
        grid.interior_centers()[k],
        grid.interior_centers()[k + 1]
    );
    for kind in [SchemeKind::WellBalanced, SchemeKind::Standard] {
        let s = spec.with_scheme(kind);
        let (field, report) = s.run()?;
        let w = field.interior_prims(&s.eos)?;
        println!(
            "{kind:<12?} t = {}: max |W - W0| = {:.2e}, {} fallback reconstructions",
            report.t_final,
            max_deviation(&w, w0),
            report.fallback_evaluations
        );
    }
    Ok(())
}
