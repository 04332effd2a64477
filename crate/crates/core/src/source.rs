//! Gravitational and geometric source terms.
//!
//! The equilibrium-preserving sources are written as differences of the physical
//! flux of a cell's local steady profile between its two faces, so that on steady
//! data they cancel the numerical flux difference exactly.

use crate::eos::Eos;
use crate::error::Error;
use crate::flux::physical_flux;
use crate::state::{Cons, Cons2, Prim};

/// How the standard scheme evaluates the gravitational acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradPhi {
    #[default]
    Analytic,
    /// `(phi_{i+1/2} - phi_{i-1/2}) / dx`.
    FiniteDifference,
}

impl std::str::FromStr for GradPhi {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "analytic" => Ok(GradPhi::Analytic),
            "fd" => Ok(GradPhi::FiniteDifference),
            other => Err(Error::config(format!("unknown source.grad_phi {other:?}"))),
        }
    }
}

/// `[0, -rho dphi, -rho v dphi]` at the cell center.
#[inline]
pub fn standard_gravity_source(w: &Prim, grad_phi: f64) -> Cons {
    Cons::new(0.0, -w.rho * grad_phi, -w.rho * w.v * grad_phi)
}

/// `[0, (A_{i+1/2} - A_{i-1/2}) / |V_i| p_i, 0]`.
#[inline]
pub fn standard_geometric_source(w: &Prim, area_left: f64, area_right: f64, volume: f64) -> Cons {
    Cons::new(0.0, (area_right - area_left) / volume * w.p, 0.0)
}

/// Momentum and energy flux differences of the local profile over a Cartesian cell.
#[inline]
pub fn wb_gravity_source_cartesian(eq_left: &Prim, eq_right: &Prim, dx: f64, eos: &Eos) -> Cons {
    let fl = physical_flux(eq_left, eos);
    let fr = physical_flux(eq_right, eos);
    Cons::new(0.0, (fr.mom - fl.mom) / dx, (fr.energy - fl.energy) / dx)
}

/// Area-weighted flux differences of the local profile over a curvilinear cell.
/// Replaces both the gravitational and the geometric source.
#[inline]
pub fn wb_source_curvilinear(
    eq_left: &Prim,
    eq_right: &Prim,
    area_left: f64,
    area_right: f64,
    volume: f64,
    eos: &Eos,
) -> Cons {
    let fl = physical_flux(eq_left, eos);
    let fr = physical_flux(eq_right, eos);
    Cons::new(
        0.0,
        (area_right * fr.mom - area_left * fl.mom) / volume,
        (area_right * fr.energy - area_left * fl.energy) / volume,
    )
}

/// `[0, -rho dphi/dx, -rho dphi/dy, -rho (vx dphi/dx + vy dphi/dy)]`.
#[inline]
pub fn standard_gravity_source_2d(rho: f64, vx: f64, vy: f64, grad: (f64, f64)) -> Cons2 {
    Cons2::new(
        0.0,
        -rho * grad.0,
        -rho * grad.1,
        -rho * (vx * grad.0 + vy * grad.1),
    )
}

/// Sum of per-direction 1D sources: `sx` acts on x-momentum, `sy` on y-momentum,
/// both on energy.
#[inline]
pub fn wb_source_2d(sx: &Cons, sy: &Cons) -> Cons2 {
    Cons2::new(0.0, sx.mom, sy.mom, sx.energy + sy.energy)
}
