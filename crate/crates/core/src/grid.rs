//! Uniform meshes: 1D Cartesian/cylindrical/spherical and 2D Cartesian.
//!
//! Arrays cover interior and ghost cells. Interior cell `i` (0-based) lives at
//! storage index `i + NGHOST`; face `k` separates storage cells `k - 1` and `k`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Ghost layers on each side.
pub const NGHOST: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Cartesian,
    Cylindrical,
    Spherical,
}

impl Geometry {
    /// Exponent `alpha` of `r^alpha` in the symmetric flux divergence.
    pub fn alpha(self) -> i32 {
        match self {
            Geometry::Cartesian => 0,
            Geometry::Cylindrical => 1,
            Geometry::Spherical => 2,
        }
    }

    pub fn from_alpha(alpha: i32) -> Result<Self> {
        match alpha {
            0 => Ok(Geometry::Cartesian),
            1 => Ok(Geometry::Cylindrical),
            2 => Ok(Geometry::Spherical),
            a => Err(Error::config(format!("no geometry with alpha = {a}"))),
        }
    }

    pub fn is_curvilinear(self) -> bool {
        self != Geometry::Cartesian
    }

    /// Face area `A(r)`.
    pub fn area(self, r: f64) -> f64 {
        match self {
            Geometry::Cartesian => 1.0,
            Geometry::Cylindrical => 2.0 * PI * r,
            Geometry::Spherical => 4.0 * PI * r * r,
        }
    }

    /// Measure of `[a, b]`.
    pub fn volume(self, a: f64, b: f64) -> f64 {
        match self {
            Geometry::Cartesian => b - a,
            Geometry::Cylindrical => PI * (b * b - a * a),
            Geometry::Spherical => 4.0 * PI / 3.0 * (b * b * b - a * a * a),
        }
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" => Ok(Geometry::Cartesian),
            "cylindrical" => Ok(Geometry::Cylindrical),
            "spherical" => Ok(Geometry::Spherical),
            other => Err(Error::config(format!("unknown grid.geometry {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub geometry: Geometry,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub dx: f64,
    /// Cell centers, ghosts included (`n_cells + 2 NGHOST`).
    pub centers: Vec<f64>,
    /// Face positions (`n_cells + 2 NGHOST + 1`).
    pub faces: Vec<f64>,
    /// Face areas, one per entry of `faces`.
    pub areas: Vec<f64>,
    /// Cell volumes, one per entry of `centers`. Only interior values are meaningful
    /// when a curvilinear ghost layer crosses the axis.
    pub volumes: Vec<f64>,
}

impl Grid1D {
    pub fn new(geometry: Geometry, x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::config(format!("invalid extents [{x_min}, {x_max}]")));
        }
        if n_cells == 0 {
            return Err(Error::config("grid.n_cells must be at least 1"));
        }
        if geometry.is_curvilinear() && x_min <= 0.0 {
            return Err(Error::config("curvilinear grids need x_min > 0"));
        }
        let dx = (x_max - x_min) / n_cells as f64;
        let total = n_cells + 2 * NGHOST;
        let face_at = |k: usize| {
            if k == NGHOST {
                x_min
            } else if k == NGHOST + n_cells {
                x_max
            } else {
                x_min + (k as f64 - NGHOST as f64) * dx
            }
        };
        let faces: Vec<f64> = (0..=total).map(face_at).collect();
        let centers: Vec<f64> = (0..total)
            .map(|j| x_min + (j as f64 - NGHOST as f64 + 0.5) * dx)
            .collect();
        let areas = faces.iter().map(|&r| geometry.area(r)).collect();
        let volumes = (0..total)
            .map(|j| geometry.volume(faces[j], faces[j + 1]))
            .collect();
        Ok(Self {
            geometry,
            x_min,
            x_max,
            n_cells,
            dx,
            centers,
            faces,
            areas,
            volumes,
        })
    }

    pub fn cartesian(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        Self::new(Geometry::Cartesian, x_min, x_max, n_cells)
    }

    pub fn alpha(&self) -> i32 {
        self.geometry.alpha()
    }

    pub fn total_cells(&self) -> usize {
        self.centers.len()
    }

    /// Storage indices of interior cells.
    pub fn interior(&self) -> std::ops::Range<usize> {
        NGHOST..NGHOST + self.n_cells
    }

    pub fn interior_centers(&self) -> &[f64] {
        &self.centers[self.interior()]
    }

    pub fn interior_volumes(&self) -> &[f64] {
        &self.volumes[self.interior()]
    }

    /// Exact measure of the whole domain.
    pub fn domain_volume(&self) -> f64 {
        self.geometry.volume(self.x_min, self.x_max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub centers_x: Vec<f64>,
    pub centers_y: Vec<f64>,
    pub faces_x: Vec<f64>,
    pub faces_y: Vec<f64>,
}

impl Grid2D {
    pub fn new(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        let gx = Grid1D::cartesian(x.0, x.1, nx)?;
        let gy = Grid1D::cartesian(y.0, y.1, ny)?;
        Ok(Self {
            x_min: x.0,
            x_max: x.1,
            y_min: y.0,
            y_max: y.1,
            nx,
            ny,
            dx: gx.dx,
            dy: gy.dx,
            centers_x: gx.centers,
            centers_y: gy.centers,
            faces_x: gx.faces,
            faces_y: gy.faces,
        })
    }

    /// Storage width including ghosts.
    pub fn sx(&self) -> usize {
        self.nx + 2 * NGHOST
    }

    pub fn sy(&self) -> usize {
        self.ny + 2 * NGHOST
    }

    /// Flat storage index, row-major in y.
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.sx() + i
    }

    pub fn len(&self) -> usize {
        self.sx() * self.sy()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        (NGHOST..NGHOST + self.nx).contains(&i) && (NGHOST..NGHOST + self.ny).contains(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn cartesian_layout() {
        let g = Grid1D::cartesian(0.0, 2.0, 4).unwrap();
        assert_eq!(g.dx, 0.5);
        assert_eq!(g.interior_centers(), &[0.25, 0.75, 1.25, 1.75]);
        assert!(g.interior_volumes().iter().all(|&v| v == 0.5));
        assert!(g.areas.iter().all(|&a| a == 1.0));
        assert_eq!(g.faces[NGHOST], 0.0);
        assert_eq!(g.faces[NGHOST + 4], 2.0);
    }

    #[test]
    fn spherical_volume() {
        let g = Grid1D::new(Geometry::Spherical, 0.2, 1.8, 2).unwrap();
        let expected = 4.0 * PI / 3.0 * (1.0 - 0.2f64.powi(3));
        assert!(rel(g.volumes[NGHOST], expected) < 1e-14);
    }

    #[test]
    fn cylindrical_single_cell() {
        let g = Grid1D::new(Geometry::Cylindrical, 1.0, 2.0, 1).unwrap();
        assert!(rel(g.areas[NGHOST], 2.0 * PI) < 1e-15);
        assert!(rel(g.areas[NGHOST + 1], 4.0 * PI) < 1e-15);
        assert!(rel(g.volumes[NGHOST], 3.0 * PI) < 1e-15);
    }

    #[test]
    fn area_difference_over_volume_is_radial_divergence() {
        // (A_{i+1/2} - A_{i-1/2}) / |V_i| -> alpha / r as the cell shrinks.
        for geometry in [Geometry::Cylindrical, Geometry::Spherical] {
            let g = Grid1D::new(geometry, 0.9, 1.1, 1).unwrap();
            let i = NGHOST;
            let factor = (g.areas[i + 1] - g.areas[i]) / g.volumes[i];
            assert!((factor - geometry.alpha() as f64).abs() < 1e-2, "{geometry:?}");
        }
    }

    #[test]
    fn rejects_bad_extents() {
        assert!(Grid1D::cartesian(1.0, 1.0, 4).is_err());
        assert!(Grid1D::cartesian(0.0, 1.0, 0).is_err());
        assert!(Grid1D::new(Geometry::Spherical, 0.0, 1.0, 4).is_err());
        assert!(Grid1D::new(Geometry::Cylindrical, -1.0, 1.0, 4).is_err());
    }

    #[test]
    fn uniform_spacing_and_telescoping() {
        for geometry in [Geometry::Cartesian, Geometry::Cylindrical, Geometry::Spherical] {
            for n in [1, 7, 64, 1000] {
                let g = Grid1D::new(geometry, 0.2, 1.8, n).unwrap();
                for k in 0..g.faces.len() - 1 {
                    assert!((g.faces[k + 1] - g.faces[k] - g.dx).abs() < 1e-14);
                }
                let sum: f64 = g.interior_volumes().iter().sum();
                assert!(rel(sum, g.domain_volume()) < 1e-12, "{geometry:?} n={n}");
            }
        }
    }

    #[test]
    fn grid_2d_layout() {
        let g = Grid2D::new((0.0, 1.0), (0.0, 1.0), 2, 2).unwrap();
        assert_eq!(&g.centers_x[NGHOST..NGHOST + 2], &[0.25, 0.75]);
        assert_eq!(&g.centers_y[NGHOST..NGHOST + 2], &[0.25, 0.75]);
        let g = Grid2D::new((0.0, 2.0), (0.0, 1.0), 4, 5).unwrap();
        assert_eq!(g.dx, 0.5);
        assert_eq!(g.dy, 0.2);
        let g = Grid2D::new((0.0, 1.0), (0.0, 1.0), 1, 1).unwrap();
        assert_eq!(g.len(), 25);
        assert!(g.is_interior(2, 2));
        assert!(!g.is_interior(1, 2));
    }
}
