//! Steady flow along x on a 2D grid, 100 steps with each scheme.
//!
//! cargo run --release --example flow_2d_balance -- [mach]

use wbflow::experiments::ProblemSpec;
use wbflow::grid::NGHOST;
use wbflow::solver::SchemeKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mach: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.01);
    for kind in [SchemeKind::WellBalanced, SchemeKind::Standard] {
        let spec = ProblemSpec::flow_2d(mach, 64, 32)?.with_scheme(kind);
        let grid = spec.grid_2d()?;
        let mut field = spec.initial_field_2d()?;
        let u0 = field.u.clone();
        let mut solver = spec.solver_2d(&field)?;
        solver.advance_steps(&mut field, 100, spec.run.cfl, 2)?;
        let mut worst = [0.0f64; 4];
        for j in NGHOST..NGHOST + grid.ny {
            for i in NGHOST..NGHOST + grid.nx {
                let d = (field.u[grid.idx(i, j)] - u0[grid.idx(i, j)]).to_array();
                for (w, d) in worst.iter_mut().zip(d) {
                    *w = w.max(d.abs());
                }
            }
        }
        println!(
            "M = {mach}, {kind:<12?} t = {:.4}: max |dU| rho {:.1e}, mx {:.1e}, my {:.1e}, E {:.1e}",
            field.t, worst[0], worst[1], worst[2], worst[3]
        );
    }
    Ok(())
}
