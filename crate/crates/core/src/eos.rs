//! Convex equations of state.
//!
//! Every closure the solver needs is expressed either in primitive form
//! `(rho, p)` or at fixed entropy `(rho, K)`, where `K` is the pseudo-entropy
//! `(p + p_inf) / rho^gamma`. Both shipped models share the isentropic
//! relations `h = gamma/(gamma-1) K rho^(gamma-1)` and `c^2 = gamma K rho^(gamma-1)`;
//! they differ only in how pressure relates to `K` and to internal energy.

use crate::error::{Error, Result};

/// Lower bound for density and for `p + p_inf` in checked thermodynamic calls.
pub const STATE_FLOOR: f64 = 1e-100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EosKind {
    Ideal,
    Stiffened,
}

impl std::str::FromStr for EosKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(EosKind::Ideal),
            "stiffened" => Ok(EosKind::Stiffened),
            other => Err(Error::config(format!("unknown eos.kind {other:?}"))),
        }
    }
}

/// Pseudo-entropy `K`, constant along isentropes.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyParam(f64);

impl EntropyParam {
    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k > 0.0 {
            Ok(Self(k))
        } else {
            Err(Error::domain(format!(
                "entropy parameter must be positive, got {k}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A convex equation of state: ideal gas (`p_inf = 0`) or stiffened gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eos {
    kind: EosKind,
    gamma: f64,
    p_inf: f64,
}

impl Eos {
    pub fn ideal(gamma: f64) -> Result<Self> {
        Self::new(EosKind::Ideal, gamma, 0.0)
    }

    pub fn stiffened(gamma: f64, p_inf: f64) -> Result<Self> {
        Self::new(EosKind::Stiffened, gamma, p_inf)
    }

    pub fn new(kind: EosKind, gamma: f64, p_inf: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 1.0) {
            return Err(Error::config(format!("eos.gamma must exceed 1, got {gamma}")));
        }
        let p_inf = match kind {
            EosKind::Ideal if p_inf != 0.0 => {
                return Err(Error::config("eos.p_inf must be 0 for the ideal gas"))
            }
            EosKind::Ideal => 0.0,
            EosKind::Stiffened if !(p_inf.is_finite() && p_inf >= 0.0) => {
                return Err(Error::config(format!("eos.p_inf must be >= 0, got {p_inf}")))
            }
            EosKind::Stiffened => p_inf,
        };
        Ok(Self { kind, gamma, p_inf })
    }

    pub fn kind(&self) -> EosKind {
        self.kind
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn p_inf(&self) -> f64 {
        self.p_inf
    }

    pub fn is_ideal(&self) -> bool {
        self.kind == EosKind::Ideal
    }

    fn check_rho(rho: f64) -> Result<()> {
        if rho.is_finite() && rho >= STATE_FLOOR {
            Ok(())
        } else {
            Err(Error::domain(format!("density {rho} below floor or not finite")))
        }
    }

    fn check_pressure(&self, p: f64) -> Result<()> {
        if p.is_finite() && p + self.p_inf >= STATE_FLOOR {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "pressure {p} inadmissible (p_inf = {})",
                self.p_inf
            )))
        }
    }

    /// `p(rho, e)`; stiffened: `(gamma-1) rho e - gamma p_inf`.
    pub fn pressure_from_internal_energy(&self, rho: f64, e: f64) -> Result<f64> {
        Self::check_rho(rho)?;
        if !e.is_finite() {
            return Err(Error::domain(format!("internal energy {e} not finite")));
        }
        Ok(self.pressure_unchecked(rho, e))
    }

    #[inline]
    pub(crate) fn pressure_unchecked(&self, rho: f64, e: f64) -> f64 {
        (self.gamma - 1.0) * rho * e - self.gamma * self.p_inf
    }

    /// Specific internal energy `e(rho, p)`, inverse of [`Eos::pressure_from_internal_energy`].
    pub fn internal_energy(&self, rho: f64, p: f64) -> Result<f64> {
        Self::check_rho(rho)?;
        if !p.is_finite() {
            return Err(Error::domain(format!("pressure {p} not finite")));
        }
        Ok(self.rho_e(p) / rho)
    }

    /// Internal energy per unit volume, `rho e`.
    #[inline]
    pub(crate) fn rho_e(&self, p: f64) -> f64 {
        (p + self.gamma * self.p_inf) / (self.gamma - 1.0)
    }

    /// Pressure from internal energy per unit volume.
    #[inline]
    pub(crate) fn pressure_from_rho_e(&self, rho_e: f64) -> f64 {
        (self.gamma - 1.0) * rho_e - self.gamma * self.p_inf
    }

    pub fn sound_speed(&self, rho: f64, p: f64) -> Result<f64> {
        Self::check_rho(rho)?;
        let c2 = self.sound_speed_sq_unchecked(rho, p);
        if c2.is_finite() && c2 > 0.0 {
            Ok(c2.sqrt())
        } else {
            Err(Error::domain(format!(
                "negative sound speed radicand at rho={rho}, p={p}"
            )))
        }
    }

    #[inline]
    pub(crate) fn sound_speed_sq_unchecked(&self, rho: f64, p: f64) -> f64 {
        self.gamma * (p + self.p_inf) / rho
    }

    pub fn entropy_param(&self, rho: f64, p: f64) -> Result<EntropyParam> {
        Self::check_rho(rho)?;
        self.check_pressure(p)?;
        EntropyParam::new((p + self.p_inf) / (rho * rho.powf(self.gamma - 1.0)))
    }

    /// Isentropic pressure `p(rho, K)`.
    #[inline]
    pub fn pressure(&self, rho: f64, k: EntropyParam) -> f64 {
        k.0 * rho * rho.powf(self.gamma - 1.0) - self.p_inf
    }

    /// Specific enthalpy at fixed entropy.
    #[inline]
    pub fn enthalpy(&self, rho: f64, k: EntropyParam) -> f64 {
        self.gamma / (self.gamma - 1.0) * k.0 * rho.powf(self.gamma - 1.0)
    }

    /// Squared sound speed at fixed entropy.
    #[inline]
    pub fn sound_speed_sq(&self, rho: f64, k: EntropyParam) -> f64 {
        self.gamma * k.0 * rho.powf(self.gamma - 1.0)
    }

    /// `d(c^2)/d rho` at fixed entropy.
    #[inline]
    pub fn sound_speed_sq_deriv(&self, rho: f64, k: EntropyParam) -> f64 {
        (self.gamma - 1.0) * self.sound_speed_sq(rho, k) / rho
    }

    /// Limit of the enthalpy as density goes to zero along an isentrope.
    pub fn enthalpy_at_vacuum(&self) -> f64 {
        0.0
    }
}
