//! Error norms, restriction to coarse grids and time scales.

use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::state::Prim;

/// Cell measure used in discrete L1 norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormWeight {
    /// `sum |q_i| dx`, independent of geometry.
    CellWidth,
    /// `sum |q_i| |V_i|`; equal to the cell-width norm on Cartesian grids.
    #[default]
    Volume,
    /// `sum |q_i| |V_i| / |Omega|`, the volume-weighted mean. Independent of the
    /// domain size, so errors compare across geometries.
    DomainMean,
}

impl std::str::FromStr for NormWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dx" | "width" => Ok(NormWeight::CellWidth),
            "volume" => Ok(NormWeight::Volume),
            "mean" => Ok(NormWeight::DomainMean),
            other => Err(Error::config(format!("unknown norm weight {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    /// `||q - q_ref||_1`.
    pub err1: f64,
    /// `err1 / ||q_ref||_1`.
    pub relerr1: f64,
}

fn weights(grid: &Grid1D, weight: NormWeight) -> Vec<f64> {
    match weight {
        NormWeight::CellWidth => vec![grid.dx; grid.n_cells],
        NormWeight::Volume => grid.interior_volumes().to_vec(),
        NormWeight::DomainMean => {
            let total: f64 = grid.interior_volumes().iter().sum();
            grid.interior_volumes().iter().map(|v| v / total).collect()
        }
    }
}

/// Weighted L1 norm of interior values.
pub fn l1_norm(q: &[f64], grid: &Grid1D, weight: NormWeight) -> Result<f64> {
    if q.len() != grid.n_cells {
        return Err(Error::Diagnostic(format!(
            "{} values for {} interior cells",
            q.len(),
            grid.n_cells
        )));
    }
    Ok(q.iter()
        .zip(weights(grid, weight))
        .map(|(q, w)| q.abs() * w)
        .sum())
}

/// Absolute and relative L1 distance of interior values `q` from `q_ref`.
/// The relative error is `NaN` when the reference has zero norm.
pub fn error_norms(q: &[f64], q_ref: &[f64], grid: &Grid1D, weight: NormWeight) -> Result<ErrorNorms> {
    if q_ref.len() != q.len() {
        return Err(Error::Diagnostic(format!(
            "solution has {} values, reference {}",
            q.len(),
            q_ref.len()
        )));
    }
    let diff: Vec<f64> = q.iter().zip(q_ref).map(|(a, b)| a - b).collect();
    let err1 = l1_norm(&diff, grid, weight)?;
    let norm = l1_norm(q_ref, grid, weight)?;
    let relerr1 = if norm > 0.0 { err1 / norm } else { f64::NAN };
    Ok(ErrorNorms { err1, relerr1 })
}

/// Volume-weighted averages of fine interior values over each coarse cell.
/// Both grids must cover the same interval with a fine-to-coarse ratio that is
/// a whole number.
pub fn coarsen(fine: &[f64], fine_grid: &Grid1D, coarse_grid: &Grid1D) -> Result<Vec<f64>> {
    let (nf, nc) = (fine_grid.n_cells, coarse_grid.n_cells);
    let same_domain = (fine_grid.x_min - coarse_grid.x_min).abs() <= 1e-12 * coarse_grid.dx
        && (fine_grid.x_max - coarse_grid.x_max).abs() <= 1e-12 * coarse_grid.dx
        && fine_grid.geometry == coarse_grid.geometry;
    if !same_domain || nf < nc || nf % nc != 0 {
        return Err(Error::Diagnostic(format!(
            "cannot restrict {nf} cells onto {nc}: grids are not nested"
        )));
    }
    if fine.len() != nf {
        return Err(Error::Diagnostic(format!(
            "{} values for {nf} fine cells",
            fine.len()
        )));
    }
    let ratio = nf / nc;
    let vol = fine_grid.interior_volumes();
    Ok(fine
        .chunks_exact(ratio)
        .zip(vol.chunks_exact(ratio))
        .map(|(q, v)| {
            let total: f64 = v.iter().sum();
            q.iter().zip(v).map(|(q, v)| q * v).sum::<f64>() / total
        })
        .collect())
}

/// Pressure deviation of every cell from a background state.
pub fn pressure_deviation(w: &[Prim], background: &[Prim]) -> Vec<f64> {
    w.iter().zip(background).map(|(a, b)| a.p - b.p).collect()
}

/// Largest componentwise difference between two sets of primitive states.
pub fn max_deviation(a: &[Prim], b: &[Prim]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(a, b)| [a.rho - b.rho, a.v - b.v, a.p - b.p])
        .fold(0.0, |m, d| m.max(d.abs()))
}

/// Observed order between two successive levels.
pub fn rate(err_coarse: f64, err_fine: f64, refinement: f64) -> f64 {
    (err_coarse / err_fine).ln() / refinement.ln()
}

/// Time for the fastest characteristic to cross the interior, `sum dx / (|v| + c)`.
pub fn crossing_time(w: &[Prim], grid: &Grid1D, eos: &Eos) -> Result<f64> {
    let mut t = 0.0;
    for w in w {
        t += grid.dx / (w.v.abs() + w.sound_speed(eos)?);
    }
    Ok(t)
}
