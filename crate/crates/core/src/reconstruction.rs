//! Interface traces: limited MUSCL reconstruction and the equilibrium-preserving
//! variant that limits only the deviation from a cell's local steady profile.
//!
//! All reconstructions act on primitive variables on a uniform mesh, so a slope
//! times the cell width is a difference of neighboring values and the traces sit
//! half an increment away from the cell's base value.

use crate::eos::Eos;
use crate::equilibrium::{Anchor, EquilibriumOptions};
use crate::error::{Error, Result};
use crate::state::Prim;

/// Three-argument MinMod: the smallest argument if all are positive, the largest
/// if all are negative, zero otherwise.
#[inline]
pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimiterConfig {
    /// 1: piecewise constant; 2: limited piecewise linear.
    pub order: u8,
    /// 1 is classical MinMod, 2 monotonized centered.
    pub theta: f64,
}

impl LimiterConfig {
    pub fn new(order: u8, theta: f64) -> Result<Self> {
        if order != 1 && order != 2 {
            return Err(Error::config(format!("recon.order must be 1 or 2, got {order}")));
        }
        if !(1.0..=2.0).contains(&theta) {
            return Err(Error::config(format!(
                "recon.theta must lie in [1, 2], got {theta}"
            )));
        }
        Ok(Self { order, theta })
    }

    pub fn minmod() -> Self {
        Self { order: 2, theta: 1.0 }
    }

    pub fn monotonized_centered() -> Self {
        Self { order: 2, theta: 2.0 }
    }

    pub fn first_order() -> Self {
        Self { order: 1, theta: 1.0 }
    }

    /// `"minmod"` or `"mc"`.
    pub fn theta_for(name: &str) -> Result<f64> {
        match name {
            "minmod" => Ok(1.0),
            "mc" | "monotonized_centered" => Ok(2.0),
            other => Err(Error::config(format!("unknown recon.limiter {other:?}"))),
        }
    }
}

impl Default for LimiterConfig {
    fn default() -> Self {
        Self::monotonized_centered()
    }
}

/// Limited increment `slope * dx` from the one-sided differences
/// `d_l = w_i - w_{i-1}` and `d_r = w_{i+1} - w_i`.
#[inline]
fn limited_increment(d_l: f64, d_r: f64, theta: f64) -> f64 {
    minmod(theta * d_l, 0.5 * (d_l + d_r), theta * d_r)
}

#[inline]
fn limited_increment_prim(d_l: Prim, d_r: Prim, theta: f64) -> Prim {
    Prim::new(
        limited_increment(d_l.rho, d_r.rho, theta),
        limited_increment(d_l.v, d_r.v, theta),
        limited_increment(d_l.p, d_r.p, theta),
    )
}

/// Limited slope per unit length in cell `i` from its two neighbors.
pub fn limited_slope(w_m: &Prim, w_0: &Prim, w_p: &Prim, dx: f64, limiter: &LimiterConfig) -> Prim {
    if limiter.order == 1 {
        return Prim::default();
    }
    limited_increment_prim(*w_0 - *w_m, *w_p - *w_0, limiter.theta) * (1.0 / dx)
}

/// Scalar variant of [`limited_slope`] used for passively reconstructed quantities.
#[inline]
pub fn limited_increment_scalar(w_m: f64, w_0: f64, w_p: f64, limiter: &LimiterConfig) -> f64 {
    if limiter.order == 1 {
        0.0
    } else {
        limited_increment(w_0 - w_m, w_p - w_0, limiter.theta)
    }
}

/// Linear profile `W_i + DW_i (x - x_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearProfile {
    pub center: Prim,
    pub slope: Prim,
    pub x_center: f64,
}

impl LinearProfile {
    pub fn eval(&self, x: f64) -> Prim {
        self.center + self.slope * (x - self.x_center)
    }
}

pub fn standard_reconstruct(
    w_m: &Prim,
    w_0: &Prim,
    w_p: &Prim,
    limiter: &LimiterConfig,
    dx: f64,
    x_center: f64,
) -> LinearProfile {
    LinearProfile {
        center: *w_0,
        slope: limited_slope(w_m, w_0, w_p, dx, limiter),
        x_center,
    }
}

/// Traces of one cell at its left and right faces.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CellTraces {
    pub left: Prim,
    pub right: Prim,
    pub fallback_used: bool,
}

/// Standard traces at `x_i -+ dx/2`.
#[inline]
pub fn standard_traces(w_m: &Prim, w_0: &Prim, w_p: &Prim, limiter: &LimiterConfig) -> CellTraces {
    if limiter.order == 1 {
        return CellTraces {
            left: *w_0,
            right: *w_0,
            fallback_used: false,
        };
    }
    let half = limited_increment_prim(*w_0 - *w_m, *w_p - *w_0, limiter.theta) * 0.5;
    CellTraces {
        left: *w_0 - half,
        right: *w_0 + half,
        fallback_used: false,
    }
}

/// Positions and potential values seen by one cell's reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellStencil {
    pub x_left_neighbor: f64,
    pub x_right_neighbor: f64,
    pub x_left_face: f64,
    pub x_right_face: f64,
    pub phi_left_neighbor: f64,
    pub phi_right_neighbor: f64,
    pub phi_left_face: f64,
    pub phi_right_face: f64,
}

/// Output of the equilibrium-preserving reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WbReconstruction {
    pub traces: CellTraces,
    /// Local profile at the left and right faces; `None` when the cell fell back.
    pub face_equilibria: Option<(Prim, Prim)>,
}

/// Traces `W_eq(x_face) + R(x_face; {dW_{i-1}, 0, dW_{i+1}})` where
/// `dW_{i+-1} = W_{i+-1} - W_eq(x_{i+-1})` and `W_eq` is the profile anchored at `w_0`.
///
/// If any profile evaluation fails, the cell reverts to [`standard_traces`] and
/// reports `fallback_used`.
pub fn wb_reconstruct(
    anchor: &Anchor,
    w_m: &Prim,
    w_0: &Prim,
    w_p: &Prim,
    stencil: &CellStencil,
    limiter: &LimiterConfig,
    opts: &EquilibriumOptions,
) -> WbReconstruction {
    match wb_traces(anchor, w_m, w_p, stencil, limiter, opts) {
        Some((traces, eq)) => WbReconstruction {
            traces,
            face_equilibria: Some(eq),
        },
        None => WbReconstruction {
            traces: CellTraces {
                fallback_used: true,
                ..standard_traces(w_m, w_0, w_p, limiter)
            },
            face_equilibria: None,
        },
    }
}

#[inline]
fn wb_traces(
    anchor: &Anchor,
    w_m: &Prim,
    w_p: &Prim,
    s: &CellStencil,
    limiter: &LimiterConfig,
    opts: &EquilibriumOptions,
) -> Option<(CellTraces, (Prim, Prim))> {
    let rho0 = anchor.state().rho;
    if limiter.order == 1 {
        let eq_l = anchor
            .profile_at_from(s.x_left_face, s.phi_left_face, rho0, opts)
            .ok()?;
        let eq_r = anchor
            .profile_at_from(s.x_right_face, s.phi_right_face, rho0, opts)
            .ok()?;
        let traces = CellTraces {
            left: eq_l,
            right: eq_r,
            fallback_used: false,
        };
        return Some((traces, (eq_l, eq_r)));
    }
    // Neighbour averages are near the profile for near-steady data; faces start
    // from the quadratic through the three profile values.
    let at_m = anchor
        .profile_at_from(s.x_left_neighbor, s.phi_left_neighbor, w_m.rho, opts)
        .ok()?;
    let at_p = anchor
        .profile_at_from(s.x_right_neighbor, s.phi_right_neighbor, w_p.rho, opts)
        .ok()?;
    let eq_l = anchor
        .profile_at_from(
            s.x_left_face,
            s.phi_left_face,
            0.125 * (3.0 * at_m.rho + 6.0 * rho0 - at_p.rho),
            opts,
        )
        .ok()?;
    let eq_r = anchor
        .profile_at_from(
            s.x_right_face,
            s.phi_right_face,
            0.125 * (3.0 * at_p.rho + 6.0 * rho0 - at_m.rho),
            opts,
        )
        .ok()?;
    let d_l = Prim::default() - (*w_m - at_m);
    let d_r = *w_p - at_p;
    let half = limited_increment_prim(d_l, d_r, limiter.theta) * 0.5;
    let traces = CellTraces {
        left: eq_l - half,
        right: eq_r + half,
        fallback_used: false,
    };
    Some((traces, (eq_l, eq_r)))
}

/// Clamp density and pressure of a trace into the range spanned by the two cell
/// averages adjacent to its face. Velocity is left alone.
#[inline]
pub fn clip_trace(trace: &Prim, a: &Prim, b: &Prim) -> Prim {
    let clamp = |x: f64, u: f64, w: f64| x.min(u.max(w)).max(u.min(w));
    Prim::new(clamp(trace.rho, a.rho, b.rho), trace.v, clamp(trace.p, a.p, b.p))
}

/// Clip both traces of cell `i` against `{W_{i-1}, W_i}` and `{W_i, W_{i+1}}`.
pub fn clip_traces(traces: &CellTraces, w_m: &Prim, w_0: &Prim, w_p: &Prim) -> CellTraces {
    CellTraces {
        left: clip_trace(&traces.left, w_m, w_0),
        right: clip_trace(&traces.right, w_0, w_p),
        fallback_used: traces.fallback_used,
    }
}

/// Apply the admissibility floor to both traces.
#[inline]
pub fn floor_traces(traces: &CellTraces, eos: &Eos) -> CellTraces {
    CellTraces {
        left: traces.left.floored(eos),
        right: traces.right.floored(eos),
        fallback_used: traces.fallback_used,
    }
}
