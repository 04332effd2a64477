//! Semi-discrete operators, boundary handling and SSP Runge-Kutta time stepping.

mod one_d;
mod two_d;

use std::ops::{Add, Mul};

pub use one_d::{SolutionField, Solver1D};
pub use two_d::{SolutionField2D, Solver2D};

use crate::equilibrium::EquilibriumOptions;
use crate::error::{Error, Result};
use crate::flux::FluxKind;
use crate::reconstruction::LimiterConfig;
use crate::source::GradPhi;
use crate::state::Prim;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Limited reconstruction of primitives and pointwise sources.
    Standard,
    /// Reconstruction and sources relative to per-cell steady adiabatic profiles.
    WellBalanced,
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" | "unbalanced" => Ok(SchemeKind::Standard),
            "wellbalanced" | "wb" => Ok(SchemeKind::WellBalanced),
            other => Err(Error::config(format!("unknown scheme {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub scheme: SchemeKind,
    pub limiter: LimiterConfig,
    pub clip: bool,
    pub flux: FluxKind,
    pub grad_phi: GradPhi,
    pub equilibrium: EquilibriumOptions,
}

impl SchemeConfig {
    pub fn new(scheme: SchemeKind) -> Self {
        Self {
            scheme,
            limiter: LimiterConfig::monotonized_centered(),
            clip: false,
            flux: FluxKind::Hllc,
            grad_phi: GradPhi::Analytic,
            equilibrium: EquilibriumOptions::default(),
        }
    }

    pub fn with_limiter(mut self, limiter: LimiterConfig) -> Self {
        self.limiter = limiter;
        self
    }

    pub fn with_flux(mut self, flux: FluxKind) -> Self {
        self.flux = flux;
        self
    }

    pub fn with_clip(mut self, clip: bool) -> Self {
        self.clip = clip;
        self
    }

    pub fn is_well_balanced(&self) -> bool {
        self.scheme == SchemeKind::WellBalanced
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryKind {
    /// Ghost cells keep their initial values.
    #[default]
    Frozen,
    /// Ghost cells copy the adjacent interior cell.
    Outflow,
}

impl std::str::FromStr for BoundaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frozen" => Ok(BoundaryKind::Frozen),
            "outflow" => Ok(BoundaryKind::Outflow),
            other => Err(Error::config(format!("unknown boundary condition {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub t_end: f64,
    pub cfl: f64,
    pub rk_order: u8,
    /// Times at which interior snapshots are recorded; the final state is always recorded.
    pub output_times: Vec<f64>,
}

impl RunOptions {
    pub fn new(t_end: f64) -> Self {
        Self {
            t_end,
            cfl: 0.45,
            rk_order: 2,
            output_times: Vec::new(),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::config(format!("time.t_end = {} is invalid", self.t_end)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::config(format!("time.cfl = {} not in (0, 1]", self.cfl)));
        }
        if self.rk_order != 1 && self.rk_order != 2 {
            return Err(Error::config(format!(
                "time.rk_order must be 1 or 2, got {}",
                self.rk_order
            )));
        }
        Ok(())
    }

    /// Sorted distinct stopping times ending with `t_end`.
    pub(crate) fn stops(&self) -> Vec<f64> {
        let mut stops: Vec<f64> = self
            .output_times
            .iter()
            .copied()
            .filter(|&t| t > 0.0 && t < self.t_end)
            .collect();
        stops.push(self.t_end);
        stops.sort_by(f64::total_cmp);
        stops.dedup();
        stops
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot<W> {
    pub t: f64,
    /// Interior primitive states.
    pub prim: Vec<W>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport<W = Prim> {
    pub t_final: f64,
    pub steps: usize,
    /// Cell reconstructions that reverted to the standard scheme, summed over all stages.
    pub fallback_evaluations: usize,
    pub snapshots: Vec<Snapshot<W>>,
}

/// Work arrays for [`ssprk_step`].
#[derive(Debug, Clone, Default)]
pub struct RkScratch<T> {
    stage: Vec<T>,
    rate: Vec<T>,
}

/// One strong-stability-preserving Runge-Kutta step of `u' = L(u)`.
///
/// `op(state, rate)` may update boundary entries of `state` before writing
/// `rate`; entries it leaves at zero rate are carried through unchanged.
/// Order 2 is Heun's method written as `u^{n+1} = (u^n + u^(2)) / 2`.
pub fn ssprk_step<T, F>(
    u: &mut Vec<T>,
    dt: f64,
    order: u8,
    scratch: &mut RkScratch<T>,
    mut op: F,
) -> Result<()>
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(&mut [T], &mut [T]) -> Result<()>,
{
    let n = u.len();
    scratch.rate.resize(n, T::default());
    op(u, &mut scratch.rate)?;
    if order == 1 {
        for (x, k) in u.iter_mut().zip(&scratch.rate) {
            *x = *x + *k * dt;
        }
        return Ok(());
    }
    scratch.stage.clear();
    scratch
        .stage
        .extend(u.iter().zip(&scratch.rate).map(|(&x, &k)| x + k * dt));
    op(&mut scratch.stage, &mut scratch.rate)?;
    for ((x, s), k) in u.iter_mut().zip(&scratch.stage).zip(&scratch.rate) {
        *x = (*x + (*s + *k * dt)) * 0.5;
    }
    Ok(())
}
