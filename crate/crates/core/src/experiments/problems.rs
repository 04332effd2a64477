//! Named problem setups and their initial data.

use crate::eos::Eos;
use crate::equilibrium::{Anchor, EquilibriumOptions};
use crate::error::{Error, Result};
use crate::flux::FluxKind;
use crate::grid::{Geometry, Grid1D, Grid2D};
use crate::potential::{Potential, Potential2D};
use crate::reconstruction::LimiterConfig;
use crate::solver::{
    BoundaryKind, RunOptions, RunReport, SchemeConfig, SchemeKind, SolutionField, SolutionField2D, Solver1D,
    Solver2D,
};
use crate::state::{Prim, Prim2};

/// Reference state that fixes a steady profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorSpec {
    pub rho: f64,
    pub v: f64,
    pub p: f64,
    pub x: f64,
}

/// Gaussian pressure bump `A exp(-(x - center)^2 / width^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub amplitude: f64,
    pub width: f64,
    pub center: f64,
}

impl Perturbation {
    pub fn at(&self, x: f64) -> f64 {
        if self.amplitude == 0.0 {
            return 0.0;
        }
        let d = (x - self.center) / self.width;
        self.amplitude * (-d * d).exp()
    }
}

/// How the background profile is sampled at cell centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMethod {
    /// Every center is solved from the global anchor.
    Direct,
    /// Each center is solved from its already computed neighbor, walking away from the anchor.
    Chained,
}

impl std::str::FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(InitMethod::Direct),
            "chained" => Ok(InitMethod::Chained),
            other => Err(Error::config(format!("unknown problem.init {other:?}"))),
        }
    }
}

/// A standing shock at the anchor position: the anchor is the upstream state
/// (above), the downstream state (below) follows from the jump conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockSpec {
    pub mach: f64,
}

/// Extent and resolution in `y` for the x-aligned 2D flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flow2DSpec {
    pub y_min: f64,
    pub y_max: f64,
    pub ny: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    pub geometry: Geometry,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub eos: Eos,
    pub potential: Potential,
    pub anchor: AnchorSpec,
    pub perturbation: Perturbation,
    pub init: InitMethod,
    pub shock: Option<ShockSpec>,
    pub scheme: SchemeConfig,
    pub run: RunOptions,
    pub bc: (BoundaryKind, BoundaryKind),
    pub flow_2d: Option<Flow2DSpec>,
}

/// Preset names accepted by [`ProblemSpec::preset`], with one-line descriptions.
pub fn list_problems() -> &'static [(&'static str, &'static str)] {
    &[
        (
            "gaussian_bump",
            "Cartesian [0,2], phi = x, gamma = 5/3; steady flow anchored at x = 0 with a Gaussian pressure bump",
        ),
        (
            "bondi",
            "spherical [0.2,1.8], phi = -1/r, gamma = 4/3; sub- or supersonic accretion with an optional bump",
        ),
        (
            "bondi_shock",
            "spherical accretion with a standing shock at r = 1 joining supersonic and subsonic branches",
        ),
        (
            "flow_2d",
            "2D Cartesian [0,2]x[0,1], phi = x; steady flow along x, uniform in y",
        ),
        (
            "stiffened_hydrostatic",
            "stiffened gas at rest in a sinusoidal potential, solved with the general-EoS root finder",
        ),
    ]
}

fn bump_center_gaussian(mach: f64) -> f64 {
    if mach == 0.0 {
        1.0
    } else if mach < 1.0 {
        1.1
    } else {
        1.5
    }
}

/// `0.6 L / (c0 + |v0|)` and `0.3 L / max(c0 - |v0|, 1e-10)`, the smaller of the two.
fn bondi_time_scale(length: f64, c0: f64, v0: f64) -> f64 {
    let fast = 0.6 * length / (c0 + v0.abs());
    let slow = 0.3 * length / (c0 - v0.abs()).max(1e-10);
    fast.min(slow)
}

impl ProblemSpec {
    /// Steady flow in a linear potential with an optional pressure bump.
    pub fn gaussian_bump(mach: f64, amplitude: f64, n_cells: usize) -> Result<Self> {
        if !(mach >= 0.0) {
            return Err(Error::config(format!("Mach number must be >= 0, got {mach}")));
        }
        let eos = Eos::ideal(5.0 / 3.0)?;
        let c0 = eos.gamma().sqrt();
        let subsonic = mach < 1.0;
        let t_end = match (amplitude == 0.0, subsonic) {
            (true, true) => 4.0,
            (true, false) => 1.0,
            (false, true) => 0.45,
            (false, false) => 0.25,
        };
        Ok(Self {
            name: "gaussian_bump".into(),
            geometry: Geometry::Cartesian,
            x_min: 0.0,
            x_max: 2.0,
            n_cells,
            eos,
            potential: Potential::Linear { g: 1.0 },
            anchor: AnchorSpec {
                rho: 1.0,
                v: -mach * c0,
                p: 1.0,
                x: 0.0,
            },
            perturbation: Perturbation {
                amplitude,
                width: 0.1,
                center: bump_center_gaussian(mach),
            },
            init: InitMethod::Direct,
            shock: None,
            scheme: SchemeConfig::new(SchemeKind::WellBalanced),
            run: RunOptions::new(t_end),
            bc: (BoundaryKind::Frozen, BoundaryKind::Frozen),
            flow_2d: None,
        })
    }

    /// Spherical accretion anchored at `r0 = 1` with `rho0 = 1`, `c0^2 = 1/2`, `v0 = -M c0`.
    pub fn bondi(mach: f64, amplitude: f64, n_cells: usize) -> Result<Self> {
        let eos = Eos::ideal(4.0 / 3.0)?;
        let (r0, r1) = (0.2, 1.8);
        let c0 = 0.5f64.sqrt();
        let v0 = -mach * c0;
        let large = amplitude.abs() >= 1.0;
        let t_end = if amplitude == 0.0 {
            4.0
        } else {
            let factor = if large { 0.08 } else { 0.5 };
            factor * bondi_time_scale(r1 - r0, c0, v0)
        };
        let limiter = if large {
            LimiterConfig::minmod()
        } else {
            LimiterConfig::monotonized_centered()
        };
        Ok(Self {
            name: "bondi".into(),
            geometry: Geometry::Spherical,
            x_min: r0,
            x_max: r1,
            n_cells,
            eos,
            potential: Potential::PointMass { gm: 1.0 },
            anchor: AnchorSpec {
                rho: 1.0,
                v: v0,
                p: 0.5 / eos.gamma(),
                x: 1.0,
            },
            perturbation: Perturbation {
                amplitude,
                width: 0.08,
                center: 0.4 * r0 + 0.6 * r1,
            },
            init: InitMethod::Chained,
            shock: None,
            scheme: SchemeConfig::new(SchemeKind::WellBalanced).with_limiter(limiter),
            run: RunOptions::new(t_end),
            bc: (BoundaryKind::Frozen, BoundaryKind::Frozen),
            flow_2d: None,
        })
    }

    /// Bondi flow with a standing shock at `r = 1`; needs an even number of cells.
    pub fn bondi_shock(n_cells: usize) -> Result<Self> {
        if !n_cells.is_multiple_of(2) {
            return Err(Error::config(format!(
                "bondi_shock needs an even number of cells so the shock sits on a face, got {n_cells}"
            )));
        }
        let mut spec = Self::bondi(1.2, 0.0, n_cells)?;
        spec.name = "bondi_shock".into();
        spec.shock = Some(ShockSpec { mach: 1.2 });
        spec.scheme = SchemeConfig::new(SchemeKind::WellBalanced)
            .with_limiter(LimiterConfig::minmod())
            .with_flux(FluxKind::Hlle)
            .with_clip(true);
        spec.run = RunOptions::new(2.0);
        Ok(spec)
    }

    /// Flow along `x` in `phi = x`, uniform in `y`.
    pub fn flow_2d(mach: f64, nx: usize, ny: usize) -> Result<Self> {
        let mut spec = Self::gaussian_bump(mach, 0.0, nx)?;
        spec.name = "flow_2d".into();
        spec.flow_2d = Some(Flow2DSpec {
            y_min: 0.0,
            y_max: 1.0,
            ny,
        });
        spec.run = RunOptions::new(0.5);
        Ok(spec)
    }

    /// Stiffened gas at rest in `phi = 0.2 sin(2 pi x)` on `[0, 1]`.
    pub fn stiffened_hydrostatic(n_cells: usize) -> Result<Self> {
        let eos = Eos::stiffened(2.0, 0.5)?;
        Ok(Self {
            name: "stiffened_hydrostatic".into(),
            geometry: Geometry::Cartesian,
            x_min: 0.0,
            x_max: 1.0,
            n_cells,
            eos,
            potential: Potential::Sine {
                amplitude: 0.2,
                wavenumber: 2.0 * std::f64::consts::PI,
            },
            anchor: AnchorSpec {
                rho: 1.0,
                v: 0.0,
                p: 1.0,
                x: 0.0,
            },
            perturbation: Perturbation {
                amplitude: 0.0,
                width: 0.05,
                center: 0.5,
            },
            init: InitMethod::Direct,
            shock: None,
            scheme: SchemeConfig::new(SchemeKind::WellBalanced),
            run: RunOptions::new(1.0),
            bc: (BoundaryKind::Frozen, BoundaryKind::Frozen),
            flow_2d: None,
        })
    }

    /// Look up a preset by name. `mach`, `amplitude` and `n_cells` fall back to
    /// the preset's defaults when absent.
    pub fn preset(
        name: &str,
        mach: Option<f64>,
        amplitude: Option<f64>,
        n_cells: Option<usize>,
    ) -> Result<Self> {
        let n = n_cells.unwrap_or(128);
        let a = amplitude.unwrap_or(0.0);
        match name {
            "gaussian_bump" => Self::gaussian_bump(mach.unwrap_or(0.0), a, n),
            "bondi" => Self::bondi(mach.unwrap_or(0.9), a, n),
            "bondi_shock" => Self::bondi_shock(n),
            "flow_2d" => Self::flow_2d(mach.unwrap_or(0.01), n_cells.unwrap_or(64), 32),
            "stiffened_hydrostatic" => Self::stiffened_hydrostatic(n),
            other => Err(Error::config(format!(
                "unknown problem {other:?}; run `wbflow list-problems`"
            ))),
        }
    }

    /// Same problem on a different number of cells (and rows, for 2D).
    pub fn with_cells(&self, n_cells: usize) -> Result<Self> {
        if self.shock.is_some() && !n_cells.is_multiple_of(2) {
            return Err(Error::config("shock problems need an even number of cells"));
        }
        Ok(Self {
            n_cells,
            ..self.clone()
        })
    }

    pub fn with_scheme(&self, scheme: SchemeKind) -> Self {
        let mut s = self.clone();
        s.scheme.scheme = scheme;
        s
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.geometry, self.x_min, self.x_max, self.n_cells)
    }

    pub fn grid_2d(&self) -> Result<Grid2D> {
        let f = self
            .flow_2d
            .ok_or_else(|| Error::config(format!("{} is not a 2D problem", self.name)))?;
        Grid2D::new((self.x_min, self.x_max), (f.y_min, f.y_max), self.n_cells, f.ny)
    }

    fn anchor_at(&self, w: Prim, x: f64) -> Result<Anchor> {
        Anchor::new(w, x, self.potential.value(x), &self.eos, self.geometry.alpha())
    }

    /// Upstream and downstream anchor states; identical without a shock.
    fn anchor_states(&self) -> Result<(Prim, Prim)> {
        let a = &self.anchor;
        let upstream = Prim::new(a.rho, a.v, a.p);
        let Some(shock) = self.shock else {
            return Ok((upstream, upstream));
        };
        let c = self.eos.sound_speed(a.rho, a.p)?;
        if (a.v.abs() - shock.mach * c).abs() > 1e-12 * c {
            return Err(Error::Setup(format!(
                "shock anchor speed {} does not match Mach {}",
                a.v, shock.mach
            )));
        }
        Ok((
            upstream,
            rankine_hugoniot(&upstream, shock.mach, self.eos.gamma()),
        ))
    }

    /// Background steady profile at every cell center, ghosts included.
    pub fn equilibrium_prims(&self) -> Result<Vec<Prim>> {
        let grid = self.grid()?;
        self.equilibrium_at(&grid.centers)
    }

    /// Background steady profile at increasing positions `xs`.
    pub fn equilibrium_at(&self, xs: &[f64]) -> Result<Vec<Prim>> {
        let opts = EquilibriumOptions {
            tol: self.scheme.equilibrium.tol,
            max_iter: self.scheme.equilibrium.max_iter.max(100),
            solver: self.scheme.equilibrium.solver,
        };
        let (upper, lower) = self.anchor_states()?;
        let x0 = self.anchor.x;
        let solve = |anchor: &Anchor, x: f64| -> Result<Prim> {
            anchor
                .profile_at(x, self.potential.value(x), &opts)
                .map_err(|o| Error::Setup(format!("{}: no steady profile at x = {x} ({o:?})", self.name)))
        };
        let mut out = vec![Prim::default(); xs.len()];
        let split = xs.partition_point(|&x| x < x0);
        match self.init {
            InitMethod::Direct => {
                let below = self.anchor_at(lower, x0)?;
                let above = self.anchor_at(upper, x0)?;
                for (k, &x) in xs.iter().enumerate() {
                    out[k] = solve(if k < split { &below } else { &above }, x)?;
                }
            }
            InitMethod::Chained => {
                let (mut w, mut xa) = (lower, x0);
                for k in (0..split).rev() {
                    w = solve(&self.anchor_at(w, xa)?, xs[k])?;
                    xa = xs[k];
                    out[k] = w;
                }
                let (mut w, mut xa) = (upper, x0);
                for k in split..xs.len() {
                    w = solve(&self.anchor_at(w, xa)?, xs[k])?;
                    xa = xs[k];
                    out[k] = w;
                }
            }
        }
        Ok(out)
    }

    /// Background plus pressure bump at every cell center, ghosts included.
    pub fn initial_prims(&self) -> Result<Vec<Prim>> {
        let grid = self.grid()?;
        let mut w = self.equilibrium_prims()?;
        for (w, &x) in w.iter_mut().zip(&grid.centers) {
            w.p += self.perturbation.at(x);
        }
        Ok(w)
    }

    pub fn initial_field(&self) -> Result<SolutionField> {
        Ok(SolutionField::from_prims(&self.initial_prims()?, &self.eos))
    }

    pub fn solver(&self, initial: &SolutionField) -> Result<Solver1D> {
        Solver1D::new(
            self.grid()?,
            self.eos,
            self.potential,
            self.scheme,
            self.bc,
            initial,
        )
    }

    /// Set up and integrate to `run.t_end`.
    pub fn run(&self) -> Result<(SolutionField, RunReport)> {
        let mut field = self.initial_field()?;
        let mut solver = self.solver(&field)?;
        let report = solver.run(&mut field, &self.run)?;
        Ok((field, report))
    }

    /// 2D initial data: the 1D profile along `x`, copied to every row, zero `v_y`.
    pub fn initial_field_2d(&self) -> Result<SolutionField2D> {
        let grid = self.grid_2d()?;
        let mut spec_1d = self.clone();
        spec_1d.flow_2d = None;
        let row = spec_1d.equilibrium_at(&grid.centers_x)?;
        let mut prims = vec![Prim2::default(); grid.len()];
        for j in 0..grid.sy() {
            for (i, w) in row.iter().enumerate() {
                let p = w.p + self.perturbation.at(grid.centers_x[i]);
                prims[grid.idx(i, j)] = Prim2::new(w.rho, w.v, 0.0, p);
            }
        }
        Ok(SolutionField2D::from_prims(&prims, &self.eos))
    }

    pub fn solver_2d(&self, initial: &SolutionField2D) -> Result<Solver2D> {
        let bc = [self.bc.0, self.bc.1, BoundaryKind::Frozen, BoundaryKind::Frozen];
        Solver2D::new(
            self.grid_2d()?,
            self.eos,
            Potential2D::along_x(self.potential),
            self.scheme,
            bc,
            initial,
        )
    }
}

/// Downstream state of a stationary normal shock with upstream Mach number `mach`.
pub fn rankine_hugoniot(upstream: &Prim, mach: f64, gamma: f64) -> Prim {
    let m2 = mach * mach;
    let rho = upstream.rho * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    let p = upstream.p * (2.0 * gamma * m2 / (gamma + 1.0) - (gamma - 1.0) / (gamma + 1.0));
    Prim::new(rho, upstream.rho / rho * upstream.v, p)
}
