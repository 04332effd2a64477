use super::{ssprk_step, BoundaryKind, RkScratch, RunOptions, RunReport, SchemeConfig, SchemeKind, Snapshot};
use crate::eos::Eos;
use crate::equilibrium::Anchor;
use crate::error::{Error, Result};
use crate::flux::numerical_flux;
use crate::grid::{Grid1D, NGHOST};
use crate::potential::Potential;
use crate::reconstruction::{
    clip_traces, floor_traces, standard_traces, wb_reconstruct, CellStencil, CellTraces,
};
use crate::source::{
    standard_geometric_source, standard_gravity_source, wb_gravity_source_cartesian, wb_source_curvilinear,
    GradPhi,
};
use crate::state::{Cons, Prim};

/// Conserved states on a 1D grid, ghost cells included.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub u: Vec<Cons>,
    pub t: f64,
    /// Cells whose last reconstruction fell back to the standard scheme.
    pub fallback: Vec<bool>,
}

impl SolutionField {
    pub fn from_prims(prims: &[Prim], eos: &Eos) -> Self {
        Self {
            u: prims.iter().map(|w| w.to_cons(eos)).collect(),
            t: 0.0,
            fallback: vec![false; prims.len()],
        }
    }

    /// Primitive states of all cells.
    pub fn prims(&self, eos: &Eos) -> Result<Vec<Prim>> {
        self.u.iter().map(|u| u.to_prim(eos)).collect()
    }

    /// Primitive states of the interior cells.
    pub fn interior_prims(&self, eos: &Eos) -> Result<Vec<Prim>> {
        self.u[NGHOST..self.u.len() - NGHOST]
            .iter()
            .map(|u| u.to_prim(eos))
            .collect()
    }
}

/// Finite-volume solver for 1D Cartesian, cylindrical or spherical problems.
#[derive(Debug, Clone)]
pub struct Solver1D {
    grid: Grid1D,
    eos: Eos,
    scheme: SchemeConfig,
    bc: (BoundaryKind, BoundaryKind),
    frozen: Vec<Cons>,
    phi_centers: Vec<f64>,
    phi_faces: Vec<f64>,
    grad_centers: Vec<f64>,
    prim: Vec<Prim>,
    traces: Vec<CellTraces>,
    face_eq: Vec<Option<(Prim, Prim)>>,
    fluxes: Vec<Cons>,
    fallback_evaluations: usize,
    scratch: RkScratch<Cons>,
}

impl Solver1D {
    /// Ghost values of `initial` are kept for frozen boundaries.
    pub fn new(
        grid: Grid1D,
        eos: Eos,
        potential: Potential,
        scheme: SchemeConfig,
        bc: (BoundaryKind, BoundaryKind),
        initial: &SolutionField,
    ) -> Result<Self> {
        let n = grid.total_cells();
        if initial.u.len() != n {
            return Err(Error::Setup(format!(
                "field has {} cells, grid needs {n}",
                initial.u.len()
            )));
        }
        let phi_centers: Vec<f64> = grid.centers.iter().map(|&x| potential.value(x)).collect();
        let phi_faces: Vec<f64> = grid.faces.iter().map(|&x| potential.value(x)).collect();
        let grad_centers = match scheme.grad_phi {
            GradPhi::Analytic => grid.centers.iter().map(|&x| potential.gradient(x)).collect(),
            GradPhi::FiniteDifference => (0..n)
                .map(|j| (phi_faces[j + 1] - phi_faces[j]) / grid.dx)
                .collect(),
        };
        Ok(Self {
            frozen: initial.u.clone(),
            grid,
            eos,
            scheme,
            bc,
            phi_centers,
            phi_faces,
            grad_centers,
            prim: vec![Prim::default(); n],
            traces: vec![CellTraces::default(); n],
            face_eq: vec![None; n],
            fluxes: vec![Cons::default(); n + 1],
            fallback_evaluations: 0,
            scratch: RkScratch::default(),
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn eos(&self) -> &Eos {
        &self.eos
    }

    pub fn scheme(&self) -> &SchemeConfig {
        &self.scheme
    }

    pub fn fill_ghosts(&self, u: &mut [Cons]) {
        let n = u.len();
        match self.bc.0 {
            BoundaryKind::Frozen => u[..NGHOST].copy_from_slice(&self.frozen[..NGHOST]),
            BoundaryKind::Outflow => {
                let edge = u[NGHOST];
                u[..NGHOST].fill(edge);
            }
        }
        match self.bc.1 {
            BoundaryKind::Frozen => u[n - NGHOST..].copy_from_slice(&self.frozen[n - NGHOST..]),
            BoundaryKind::Outflow => {
                let edge = u[n - NGHOST - 1];
                u[n - NGHOST..].fill(edge);
            }
        }
    }

    /// `dU/dt` for every cell; ghost entries are zero. Ghosts of `u` must be filled.
    pub fn spatial_operator(&mut self, u: &[Cons], rate: &mut [Cons]) -> Result<()> {
        let n_total = self.grid.total_cells();
        let interior = self.grid.interior();
        for (j, (w, c)) in self.prim.iter_mut().zip(u).enumerate() {
            *w = c.to_prim_unchecked(&self.eos);
            if !w.is_admissible(&self.eos) {
                let where_ = if interior.contains(&j) {
                    "cell"
                } else {
                    "ghost cell"
                };
                return Err(Error::domain(format!(
                    "{where_} {j} holds inadmissible state {w:?}"
                )));
            }
        }

        let wb = self.scheme.scheme == SchemeKind::WellBalanced;
        let limiter = self.scheme.limiter;
        let alpha = self.grid.alpha();
        for j in NGHOST - 1..=n_total - NGHOST {
            let (w_m, w_0, w_p) = (&self.prim[j - 1], &self.prim[j], &self.prim[j + 1]);
            let (mut traces, eq) = if wb {
                match Anchor::new(*w_0, self.grid.centers[j], self.phi_centers[j], &self.eos, alpha) {
                    Ok(anchor) => {
                        let stencil = CellStencil {
                            x_left_neighbor: self.grid.centers[j - 1],
                            x_right_neighbor: self.grid.centers[j + 1],
                            x_left_face: self.grid.faces[j],
                            x_right_face: self.grid.faces[j + 1],
                            phi_left_neighbor: self.phi_centers[j - 1],
                            phi_right_neighbor: self.phi_centers[j + 1],
                            phi_left_face: self.phi_faces[j],
                            phi_right_face: self.phi_faces[j + 1],
                        };
                        let r = wb_reconstruct(
                            &anchor,
                            w_m,
                            w_0,
                            w_p,
                            &stencil,
                            &limiter,
                            &self.scheme.equilibrium,
                        );
                        (r.traces, r.face_equilibria)
                    }
                    Err(_) => (
                        CellTraces {
                            fallback_used: true,
                            ..standard_traces(w_m, w_0, w_p, &limiter)
                        },
                        None,
                    ),
                }
            } else {
                (standard_traces(w_m, w_0, w_p, &limiter), None)
            };
            if self.scheme.clip {
                traces = clip_traces(&traces, w_m, w_0, w_p);
            }
            traces = floor_traces(&traces, &self.eos);
            if !(traces.left.is_admissible(&self.eos) && traces.right.is_admissible(&self.eos)) {
                return Err(Error::domain(format!(
                    "cell {j} produced non-finite traces {traces:?}"
                )));
            }
            if traces.fallback_used && interior.contains(&j) {
                self.fallback_evaluations += 1;
            }
            self.traces[j] = traces;
            self.face_eq[j] = eq;
        }

        for k in NGHOST..=n_total - NGHOST {
            self.fluxes[k] = numerical_flux(
                self.scheme.flux,
                &self.traces[k - 1].right,
                &self.traces[k].left,
                &self.eos,
            );
        }

        let curvilinear = self.grid.geometry.is_curvilinear();
        let dx = self.grid.dx;
        rate.fill(Cons::default());
        for i in interior {
            let w = &self.prim[i];
            let (fl, fr) = (self.fluxes[i], self.fluxes[i + 1]);
            let div = if curvilinear {
                let (al, ar) = (self.grid.areas[i], self.grid.areas[i + 1]);
                (fr * ar - fl * al) * (1.0 / self.grid.volumes[i])
            } else {
                (fr - fl) * (1.0 / dx)
            };
            let source = match (&self.face_eq[i], curvilinear) {
                (Some((el, er)), false) => wb_gravity_source_cartesian(el, er, dx, &self.eos),
                (Some((el, er)), true) => wb_source_curvilinear(
                    el,
                    er,
                    self.grid.areas[i],
                    self.grid.areas[i + 1],
                    self.grid.volumes[i],
                    &self.eos,
                ),
                (None, false) => standard_gravity_source(w, self.grad_centers[i]),
                (None, true) => {
                    standard_gravity_source(w, self.grad_centers[i])
                        + standard_geometric_source(
                            w,
                            self.grid.areas[i],
                            self.grid.areas[i + 1],
                            self.grid.volumes[i],
                        )
                }
            };
            rate[i] = source - div;
        }
        Ok(())
    }

    /// `c_cfl min_i dx / (|v_i| + c_i)` over interior cells.
    pub fn cfl_timestep(&self, field: &SolutionField, cfl: f64) -> Result<f64> {
        let mut dt = f64::INFINITY;
        for i in self.grid.interior() {
            let w = field.u[i].to_prim_unchecked(&self.eos);
            let speed = w.v.abs() + self.eos.sound_speed_sq_unchecked(w.rho, w.p).sqrt();
            if !speed.is_finite() {
                return Err(Error::Step {
                    time: field.t,
                    reason: format!("non-finite signal speed in cell {i}"),
                });
            }
            dt = dt.min(self.grid.dx / speed);
        }
        Ok(cfl * dt)
    }

    /// Advance `field` by one SSP-RK step of size `dt`.
    pub fn step(&mut self, field: &mut SolutionField, dt: f64, rk_order: u8) -> Result<()> {
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
        for (f, tr) in field.fallback.iter_mut().zip(&self.traces) {
            *f = tr.fallback_used;
        }
        Ok(())
    }

    /// Integrate to `opts.t_end`, shortening steps to land on output times exactly.
    pub fn run(&mut self, field: &mut SolutionField, opts: &RunOptions) -> Result<RunReport> {
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

    fn snapshot(&self, field: &SolutionField) -> Result<Snapshot<Prim>> {
        Ok(Snapshot {
            t: field.t,
            prim: field.interior_prims(&self.eos)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::EquilibriumOptions;
    use crate::grid::Geometry;
    use crate::reconstruction::LimiterConfig;
    use crate::solver::SchemeKind;

    fn steady_field(grid: &Grid1D, eos: &Eos, phi: &Potential, w0: Prim, x0: f64) -> SolutionField {
        let opts = EquilibriumOptions::default();
        let anchor = Anchor::new(w0, x0, phi.value(x0), eos, grid.alpha()).unwrap();
        let prims: Vec<Prim> = grid
            .centers
            .iter()
            .map(|&x| anchor.profile_at(x, phi.value(x), &opts).unwrap())
            .collect();
        SolutionField::from_prims(&prims, eos)
    }

    fn max_rate(rate: &[Cons]) -> f64 {
        rate.iter()
            .flat_map(|c| c.to_array())
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    #[test]
    fn uniform_rest_gives_zero_rate() {
        let eos = Eos::ideal(1.4).unwrap();
        for geometry in [Geometry::Cartesian, Geometry::Spherical] {
            let grid = Grid1D::new(geometry, 0.5, 1.5, 16).unwrap();
            let prims = vec![Prim::new(1.0, 0.0, 1.0); grid.total_cells()];
            let field = SolutionField::from_prims(&prims, &eos);
            for scheme in [SchemeKind::Standard, SchemeKind::WellBalanced] {
                let mut s = Solver1D::new(
                    grid.clone(),
                    eos,
                    Potential::Constant(0.0),
                    SchemeConfig::new(scheme),
                    Default::default(),
                    &field,
                )
                .unwrap();
                let mut rate = vec![Cons::default(); field.u.len()];
                s.spatial_operator(&field.u, &mut rate).unwrap();
                assert!(max_rate(&rate) < 1e-15, "{geometry:?} {scheme:?}");
            }
        }
    }

    #[test]
    fn steady_flow_is_fixed_point_of_wb_operator() {
        let eos = Eos::ideal(5.0 / 3.0).unwrap();
        let phi = Potential::Linear { g: 1.0 };
        let grid = Grid1D::cartesian(0.0, 2.0, 64).unwrap();
        for v0 in [0.0, -0.01 * (5.0f64 / 3.0).sqrt(), -2.5 * (5.0f64 / 3.0).sqrt()] {
            let field = steady_field(&grid, &eos, &phi, Prim::new(1.0, v0, 1.0), 0.0);
            for limiter in [
                LimiterConfig::first_order(),
                LimiterConfig::monotonized_centered(),
            ] {
                let mut s = Solver1D::new(
                    grid.clone(),
                    eos,
                    phi,
                    SchemeConfig::new(SchemeKind::WellBalanced).with_limiter(limiter),
                    Default::default(),
                    &field,
                )
                .unwrap();
                let mut rate = vec![Cons::default(); field.u.len()];
                s.spatial_operator(&field.u, &mut rate).unwrap();
                assert!(max_rate(&rate) < 1e-11, "v0={v0}: {}", max_rate(&rate));

                let mut std_solver = Solver1D::new(
                    grid.clone(),
                    eos,
                    phi,
                    SchemeConfig::new(SchemeKind::Standard).with_limiter(limiter),
                    Default::default(),
                    &field,
                )
                .unwrap();
                std_solver.spatial_operator(&field.u, &mut rate).unwrap();
                assert!(max_rate(&rate) > 1e-6);
            }
        }
    }

    #[test]
    fn spherical_steady_flow_is_fixed_point() {
        let eos = Eos::ideal(4.0 / 3.0).unwrap();
        let phi = Potential::PointMass { gm: 1.0 };
        let grid = Grid1D::new(Geometry::Spherical, 0.2, 1.8, 64).unwrap();
        let c0 = 0.5f64.sqrt();
        for mach in [0.9, 2.0] {
            let rho0 = 1.0;
            let p0 = rho0 * c0 * c0 / eos.gamma();
            let field = steady_field(&grid, &eos, &phi, Prim::new(rho0, -mach * c0, p0), 1.0);
            let mut s = Solver1D::new(
                grid.clone(),
                eos,
                phi,
                SchemeConfig::new(SchemeKind::WellBalanced),
                Default::default(),
                &field,
            )
            .unwrap();
            let mut rate = vec![Cons::default(); field.u.len()];
            s.spatial_operator(&field.u, &mut rate).unwrap();
            assert!(max_rate(&rate) < 1e-11, "M={mach}: {}", max_rate(&rate));
        }
    }

    #[test]
    fn cfl_values() {
        let eos = Eos::ideal(5.0 / 3.0).unwrap();
        let grid = Grid1D::cartesian(0.0, 1.0, 1).unwrap();
        let c = eos.gamma().sqrt();
        let field = SolutionField::from_prims(&[Prim::new(1.0, -2.5 * c, 1.0); 5], &eos);
        let s = Solver1D::new(
            grid,
            eos,
            Potential::Constant(0.0),
            SchemeConfig::new(SchemeKind::Standard),
            Default::default(),
            &field,
        )
        .unwrap();
        let dt = s.cfl_timestep(&field, 0.45).unwrap();
        assert!((dt - 0.45 / (3.5 * c)).abs() < 1e-15);
    }

    #[test]
    fn zero_end_time_returns_initial_state() {
        let eos = Eos::ideal(1.4).unwrap();
        let grid = Grid1D::cartesian(0.0, 1.0, 8).unwrap();
        let field0 = SolutionField::from_prims(&vec![Prim::new(1.0, 0.1, 1.0); 12], &eos);
        let mut field = field0.clone();
        let mut s = Solver1D::new(
            grid,
            eos,
            Potential::Constant(0.0),
            SchemeConfig::new(SchemeKind::Standard),
            Default::default(),
            &field,
        )
        .unwrap();
        let report = s.run(&mut field, &RunOptions::new(0.0)).unwrap();
        assert_eq!(report.steps, 0);
        assert_eq!(report.snapshots.len(), 1);
        assert_eq!(field, field0);
    }
}
