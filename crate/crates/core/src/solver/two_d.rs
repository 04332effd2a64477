use super::{ssprk_step, BoundaryKind, RkScratch, RunOptions, RunReport, SchemeConfig, SchemeKind, Snapshot};
use crate::eos::Eos;
use crate::equilibrium::Anchor;
use crate::error::{Error, Result};
use crate::flux::numerical_flux_2d;
use crate::grid::{Grid2D, NGHOST};
use crate::potential::Potential2D;
use crate::reconstruction::{
    clip_traces, floor_traces, limited_increment_scalar, standard_traces, wb_reconstruct, CellStencil,
    CellTraces,
};
use crate::source::{standard_gravity_source, wb_gravity_source_cartesian, GradPhi};
use crate::state::{Cons, Cons2, Prim, Prim2};

/// Conserved states on a 2D grid, ghost cells included, row-major in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField2D {
    pub u: Vec<Cons2>,
    pub t: f64,
    /// Cells whose last reconstruction fell back in either direction.
    pub fallback: Vec<bool>,
}

impl SolutionField2D {
    pub fn from_prims(prims: &[Prim2], eos: &Eos) -> Self {
        Self {
            u: prims.iter().map(|w| w.to_cons(eos)).collect(),
            t: 0.0,
            fallback: vec![false; prims.len()],
        }
    }

    /// Interior primitive states, `x` fastest.
    pub fn interior_prims(&self, grid: &Grid2D, eos: &Eos) -> Result<Vec<Prim2>> {
        let mut out = Vec::with_capacity(grid.nx * grid.ny);
        for j in NGHOST..NGHOST + grid.ny {
            for i in NGHOST..NGHOST + grid.nx {
                out.push(self.u[grid.idx(i, j)].to_prim(eos)?);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Traces2 {
    left: Prim2,
    right: Prim2,
    fallback: bool,
    eq: Option<(Prim, Prim)>,
}

/// Unsplit dimension-by-dimension solver on a 2D Cartesian grid.
#[derive(Debug, Clone)]
pub struct Solver2D {
    grid: Grid2D,
    eos: Eos,
    scheme: SchemeConfig,
    /// Left, right, bottom, top.
    bc: [BoundaryKind; 4],
    frozen: Vec<Cons2>,
    phi_centers: Vec<f64>,
    /// At `(faces_x[k], centers_y[j])`, index `j (sx + 1) + k`.
    phi_xfaces: Vec<f64>,
    /// At `(centers_x[i], faces_y[k])`, index `k sx + i`.
    phi_yfaces: Vec<f64>,
    grad_centers: Vec<(f64, f64)>,
    prim: Vec<Prim2>,
    traces_x: Vec<Traces2>,
    traces_y: Vec<Traces2>,
    fallback_evaluations: usize,
    scratch: RkScratch<Cons2>,
}

impl Solver2D {
    pub fn new(
        grid: Grid2D,
        eos: Eos,
        potential: Potential2D,
        scheme: SchemeConfig,
        bc: [BoundaryKind; 4],
        initial: &SolutionField2D,
    ) -> Result<Self> {
        let n = grid.len();
        if initial.u.len() != n {
            return Err(Error::Setup(format!(
                "field has {} cells, grid needs {n}",
                initial.u.len()
            )));
        }
        let (sx, sy) = (grid.sx(), grid.sy());
        let mut phi_centers = vec![0.0; n];
        let mut phi_xfaces = vec![0.0; sy * (sx + 1)];
        let mut phi_yfaces = vec![0.0; (sy + 1) * sx];
        for j in 0..sy {
            for i in 0..sx {
                phi_centers[grid.idx(i, j)] = potential.value(grid.centers_x[i], grid.centers_y[j]);
            }
            for k in 0..=sx {
                phi_xfaces[j * (sx + 1) + k] = potential.value(grid.faces_x[k], grid.centers_y[j]);
            }
        }
        for k in 0..=sy {
            for i in 0..sx {
                phi_yfaces[k * sx + i] = potential.value(grid.centers_x[i], grid.faces_y[k]);
            }
        }
        let mut grad_centers = vec![(0.0, 0.0); n];
        for j in 0..sy {
            for i in 0..sx {
                grad_centers[grid.idx(i, j)] = match scheme.grad_phi {
                    GradPhi::Analytic => potential.gradient(grid.centers_x[i], grid.centers_y[j]),
                    GradPhi::FiniteDifference => (
                        (phi_xfaces[j * (sx + 1) + i + 1] - phi_xfaces[j * (sx + 1) + i]) / grid.dx,
                        (phi_yfaces[(j + 1) * sx + i] - phi_yfaces[j * sx + i]) / grid.dy,
                    ),
                };
            }
        }
        Ok(Self {
            frozen: initial.u.clone(),
            eos,
            scheme,
            bc,
            phi_centers,
            phi_xfaces,
            phi_yfaces,
            grad_centers,
            prim: vec![Prim2::default(); n],
            traces_x: vec![Traces2::default(); n],
            traces_y: vec![Traces2::default(); n],
            fallback_evaluations: 0,
            scratch: RkScratch::default(),
            grid,
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn eos(&self) -> &Eos {
        &self.eos
    }

    pub fn fill_ghosts(&self, u: &mut [Cons2]) {
        let g = &self.grid;
        let (sx, sy) = (g.sx(), g.sy());
        for j in 0..sy {
            for (side, ghosts, edge) in [
                (self.bc[0], 0..NGHOST, NGHOST),
                (self.bc[1], sx - NGHOST..sx, sx - NGHOST - 1),
            ] {
                for i in ghosts {
                    u[g.idx(i, j)] = match side {
                        BoundaryKind::Frozen => self.frozen[g.idx(i, j)],
                        BoundaryKind::Outflow => u[g.idx(edge, j)],
                    };
                }
            }
        }
        for i in 0..sx {
            for (side, ghosts, edge) in [
                (self.bc[2], 0..NGHOST, NGHOST),
                (self.bc[3], sy - NGHOST..sy, sy - NGHOST - 1),
            ] {
                for j in ghosts {
                    u[g.idx(i, j)] = match side {
                        BoundaryKind::Frozen => self.frozen[g.idx(i, j)],
                        BoundaryKind::Outflow => u[g.idx(i, edge)],
                    };
                }
            }
        }
    }

    /// Traces of one cell in direction `dir`, given its neighbors along that direction.
    #[allow(clippy::too_many_arguments)]
    fn sweep_cell(
        &self,
        w_m: &Prim2,
        w_0: &Prim2,
        w_p: &Prim2,
        dir: usize,
        x0: f64,
        phi0: f64,
        stencil: &CellStencil,
    ) -> Traces2 {
        let limiter = self.scheme.limiter;
        let (n_m, n_0, n_p) = (w_m.normal_part(dir), w_0.normal_part(dir), w_p.normal_part(dir));
        let (mut traces, eq) = if self.scheme.scheme == SchemeKind::WellBalanced {
            match Anchor::new(n_0, x0, phi0, &self.eos, 0) {
                Ok(anchor) => {
                    let r = wb_reconstruct(
                        &anchor,
                        &n_m,
                        &n_0,
                        &n_p,
                        stencil,
                        &limiter,
                        &self.scheme.equilibrium,
                    );
                    (r.traces, r.face_equilibria)
                }
                Err(_) => (
                    CellTraces {
                        fallback_used: true,
                        ..standard_traces(&n_m, &n_0, &n_p, &limiter)
                    },
                    None,
                ),
            }
        } else {
            (standard_traces(&n_m, &n_0, &n_p, &limiter), None)
        };
        if self.scheme.clip {
            traces = clip_traces(&traces, &n_m, &n_0, &n_p);
        }
        traces = floor_traces(&traces, &self.eos);
        let (t_m, t_0, t_p) = (w_m.rotated(dir).vy, w_0.rotated(dir).vy, w_p.rotated(dir).vy);
        let half = 0.5 * limited_increment_scalar(t_m, t_0, t_p, &limiter);
        let build = |w: &Prim, vt: f64| Prim2::new(w.rho, w.v, vt, w.p).rotated(dir);
        Traces2 {
            left: build(&traces.left, t_0 - half),
            right: build(&traces.right, t_0 + half),
            fallback: traces.fallback_used,
            eq,
        }
    }

    pub fn spatial_operator(&mut self, u: &[Cons2], rate: &mut [Cons2]) -> Result<()> {
        for (k, (w, c)) in self.prim.iter_mut().zip(u).enumerate() {
            *w = c.to_prim_unchecked(&self.eos);
            if !w.is_admissible(&self.eos) {
                return Err(Error::domain(format!("cell {k} holds inadmissible state {w:?}")));
            }
        }
        let g = &self.grid;
        let (sx, sy) = (g.sx(), g.sy());
        let rows = NGHOST..NGHOST + g.ny;
        let cols = NGHOST..NGHOST + g.nx;

        for j in rows.clone() {
            for i in NGHOST - 1..=sx - NGHOST {
                let stencil = CellStencil {
                    x_left_neighbor: g.centers_x[i - 1],
                    x_right_neighbor: g.centers_x[i + 1],
                    x_left_face: g.faces_x[i],
                    x_right_face: g.faces_x[i + 1],
                    phi_left_neighbor: self.phi_centers[g.idx(i - 1, j)],
                    phi_right_neighbor: self.phi_centers[g.idx(i + 1, j)],
                    phi_left_face: self.phi_xfaces[j * (sx + 1) + i],
                    phi_right_face: self.phi_xfaces[j * (sx + 1) + i + 1],
                };
                let t = self.sweep_cell(
                    &self.prim[g.idx(i - 1, j)],
                    &self.prim[g.idx(i, j)],
                    &self.prim[g.idx(i + 1, j)],
                    0,
                    g.centers_x[i],
                    self.phi_centers[g.idx(i, j)],
                    &stencil,
                );
                self.traces_x[g.idx(i, j)] = t;
            }
        }
        for j in NGHOST - 1..=sy - NGHOST {
            for i in cols.clone() {
                let stencil = CellStencil {
                    x_left_neighbor: g.centers_y[j - 1],
                    x_right_neighbor: g.centers_y[j + 1],
                    x_left_face: g.faces_y[j],
                    x_right_face: g.faces_y[j + 1],
                    phi_left_neighbor: self.phi_centers[g.idx(i, j - 1)],
                    phi_right_neighbor: self.phi_centers[g.idx(i, j + 1)],
                    phi_left_face: self.phi_yfaces[j * sx + i],
                    phi_right_face: self.phi_yfaces[(j + 1) * sx + i],
                };
                let t = self.sweep_cell(
                    &self.prim[g.idx(i, j - 1)],
                    &self.prim[g.idx(i, j)],
                    &self.prim[g.idx(i, j + 1)],
                    1,
                    g.centers_y[j],
                    self.phi_centers[g.idx(i, j)],
                    &stencil,
                );
                self.traces_y[g.idx(i, j)] = t;
            }
        }

        let kind = self.scheme.flux;
        rate.fill(Cons2::default());
        for j in rows {
            for i in cols.clone() {
                let c = g.idx(i, j);
                let (tx, ty) = (&self.traces_x[c], &self.traces_y[c]);
                if tx.fallback || ty.fallback {
                    self.fallback_evaluations += 1;
                }
                let fxl = numerical_flux_2d(
                    kind,
                    &self.traces_x[g.idx(i - 1, j)].right,
                    &tx.left,
                    0,
                    &self.eos,
                );
                let fxr = numerical_flux_2d(
                    kind,
                    &tx.right,
                    &self.traces_x[g.idx(i + 1, j)].left,
                    0,
                    &self.eos,
                );
                let fyl = numerical_flux_2d(
                    kind,
                    &self.traces_y[g.idx(i, j - 1)].right,
                    &ty.left,
                    1,
                    &self.eos,
                );
                let fyr = numerical_flux_2d(
                    kind,
                    &ty.right,
                    &self.traces_y[g.idx(i, j + 1)].left,
                    1,
                    &self.eos,
                );
                let w = &self.prim[c];
                let grad = self.grad_centers[c];
                let sx_part = match &tx.eq {
                    Some((el, er)) => wb_gravity_source_cartesian(el, er, g.dx, &self.eos),
                    None => standard_gravity_source(&w.normal_part(0), grad.0),
                };
                let sy_part = match &ty.eq {
                    Some((el, er)) => wb_gravity_source_cartesian(el, er, g.dy, &self.eos),
                    None => standard_gravity_source(&w.normal_part(1), grad.1),
                };
                let source = combine(&sx_part, &sy_part);
                rate[c] = source - (fxr - fxl) * (1.0 / g.dx) - (fyr - fyl) * (1.0 / g.dy);
            }
        }
        Ok(())
    }

    /// `c_cfl min over cells and directions of dx / (|v_x| + c)` and `dy / (|v_y| + c)`.
    pub fn cfl_timestep(&self, field: &SolutionField2D, cfl: f64) -> Result<f64> {
        let g = &self.grid;
        let mut dt = f64::INFINITY;
        for j in NGHOST..NGHOST + g.ny {
            for i in NGHOST..NGHOST + g.nx {
                let w = field.u[g.idx(i, j)].to_prim(&self.eos).map_err(|e| Error::Step {
                    time: field.t,
                    reason: e.to_string(),
                })?;
                let c = self.eos.sound_speed_sq_unchecked(w.rho, w.p).sqrt();
                dt = dt.min(g.dx / (w.vx.abs() + c)).min(g.dy / (w.vy.abs() + c));
            }
        }
        if !dt.is_finite() {
            return Err(Error::Step {
                time: field.t,
                reason: "non-finite time step".into(),
            });
        }
        Ok(cfl * dt)
    }

    pub fn step(&mut self, field: &mut SolutionField2D, dt: f64, rk_order: u8) -> Result<()> {
        let mut scratch = std::mem::take(&mut self.scratch);
        let t = field.t;
        let result = ssprk_step(&mut field.u, dt, rk_order, &mut scratch, |state, rate| {
            self.fill_ghosts(state);
            self.spatial_operator(state, rate)
        });
        self.scratch = scratch;
        result.map_err(|e| Error::Step {
            time: t,
            reason: e.to_string(),
        })?;
        self.fill_ghosts(&mut field.u);
        field.t += dt;
        for (k, f) in field.fallback.iter_mut().enumerate() {
            *f = self.traces_x[k].fallback || self.traces_y[k].fallback;
        }
        Ok(())
    }

    /// Take `n` CFL-limited steps.
    pub fn advance_steps(
        &mut self,
        field: &mut SolutionField2D,
        n: usize,
        cfl: f64,
        rk_order: u8,
    ) -> Result<()> {
        self.fill_ghosts(&mut field.u);
        for _ in 0..n {
            let dt = self.cfl_timestep(field, cfl)?;
            self.step(field, dt, rk_order)?;
        }
        Ok(())
    }

    pub fn run(&mut self, field: &mut SolutionField2D, opts: &RunOptions) -> Result<RunReport<Prim2>> {
        opts.validate()?;
        let start_fallbacks = self.fallback_evaluations;
        let mut snapshots = Vec::new();
        if opts.output_times.iter().any(|&t| t <= field.t) && opts.t_end > field.t {
            snapshots.push(self.snapshot(field)?);
        }
        let mut steps = 0;
        self.fill_ghosts(&mut field.u);
        for stop in opts.stops() {
            while field.t < stop {
                let dt = self.cfl_timestep(field, opts.cfl)?;
                let last = field.t + dt >= stop;
                let dt = if last { stop - field.t } else { dt };
                self.step(field, dt, opts.rk_order)?;
                if last {
                    field.t = stop;
                }
                steps += 1;
            }
            snapshots.push(self.snapshot(field)?);
        }
        Ok(RunReport {
            t_final: field.t,
            steps,
            fallback_evaluations: self.fallback_evaluations - start_fallbacks,
            snapshots,
        })
    }

    fn snapshot(&self, field: &SolutionField2D) -> Result<Snapshot<Prim2>> {
        Ok(Snapshot {
            t: field.t,
            prim: field.interior_prims(&self.grid, &self.eos)?,
        })
    }
}

/// x-part acts on x-momentum, y-part on y-momentum, both on energy.
#[inline]
fn combine(sx: &Cons, sy: &Cons) -> Cons2 {
    Cons2::new(0.0, sx.mom, sy.mom, sx.energy + sy.energy)
}
