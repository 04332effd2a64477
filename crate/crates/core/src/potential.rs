//! Analytic gravitational potentials.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// `phi = c`.
    Constant(f64),
    /// `phi = g x`.
    Linear { g: f64 },
    /// `phi = -gm / r`.
    PointMass { gm: f64 },
    /// `phi = a sin(k x)`: smooth and non-monotone.
    Sine { amplitude: f64, wavenumber: f64 },
}

impl Potential {
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Potential::Constant(c) => c,
            Potential::Linear { g } => g * x,
            Potential::PointMass { gm } => -gm / x,
            Potential::Sine {
                amplitude,
                wavenumber,
            } => amplitude * (wavenumber * x).sin(),
        }
    }

    #[inline]
    pub fn gradient(&self, x: f64) -> f64 {
        match *self {
            Potential::Constant(_) => 0.0,
            Potential::Linear { g } => g,
            Potential::PointMass { gm } => gm / (x * x),
            Potential::Sine {
                amplitude,
                wavenumber,
            } => amplitude * wavenumber * (wavenumber * x).cos(),
        }
    }

    /// Parse `"constant:c"`, `"linear:g"`, `"point_mass:gm"` or `"sine:a:k"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::config(format!("bad number {s:?} in potential {spec:?}")))
        };
        match parts.as_slice() {
            ["constant", c] => Ok(Potential::Constant(num(c)?)),
            ["linear", g] => Ok(Potential::Linear { g: num(g)? }),
            ["point_mass", gm] => Ok(Potential::PointMass { gm: num(gm)? }),
            ["sine", a, k] => Ok(Potential::Sine {
                amplitude: num(a)?,
                wavenumber: num(k)?,
            }),
            _ => Err(Error::config(format!("unknown potential {spec:?}"))),
        }
    }
}

/// Separable 2D potential `phi(x, y) = phi_x(x) + phi_y(y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Potential2D {
    pub x: Potential,
    pub y: Potential,
}

impl Potential2D {
    pub fn along_x(p: Potential) -> Self {
        Self {
            x: p,
            y: Potential::Constant(0.0),
        }
    }

    #[inline]
    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.x.value(x) + self.y.value(y)
    }

    #[inline]
    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (self.x.gradient(x), self.y.gradient(y))
    }
}
