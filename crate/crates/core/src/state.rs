//! Primitive and conserved cell states in one and two dimensions.

use std::ops::{Add, Mul, Sub};

use crate::eos::{Eos, STATE_FLOOR};
use crate::error::{Error, Result};

/// Primitive state `[rho, v, p]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prim {
    pub rho: f64,
    pub v: f64,
    pub p: f64,
}

/// Conserved state `[rho, rho v, E]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cons {
    pub rho: f64,
    pub mom: f64,
    pub energy: f64,
}

/// Primitive state `[rho, v_x, v_y, p]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prim2 {
    pub rho: f64,
    pub vx: f64,
    pub vy: f64,
    pub p: f64,
}

/// Conserved state `[rho, rho v_x, rho v_y, E]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cons2 {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub energy: f64,
}

impl Prim {
    pub const fn new(rho: f64, v: f64, p: f64) -> Self {
        Self { rho, v, p }
    }

    pub fn to_cons(&self, eos: &Eos) -> Cons {
        Cons {
            rho: self.rho,
            mom: self.rho * self.v,
            energy: eos.rho_e(self.p) + 0.5 * self.rho * self.v * self.v,
        }
    }

    pub fn is_admissible(&self, eos: &Eos) -> bool {
        self.rho.is_finite()
            && self.v.is_finite()
            && self.p.is_finite()
            && self.rho >= STATE_FLOOR
            && self.p + eos.p_inf() >= STATE_FLOOR
    }

    /// Clamp density and `p + p_inf` to the state floor; used on interface traces only.
    pub fn floored(mut self, eos: &Eos) -> Self {
        if self.rho < STATE_FLOOR {
            self.rho = STATE_FLOOR;
        }
        if self.p + eos.p_inf() < STATE_FLOOR {
            self.p = STATE_FLOOR - eos.p_inf();
        }
        self
    }

    pub fn sound_speed(&self, eos: &Eos) -> Result<f64> {
        eos.sound_speed(self.rho, self.p)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.v, self.p]
    }
}

impl Cons {
    pub const fn new(rho: f64, mom: f64, energy: f64) -> Self {
        Self { rho, mom, energy }
    }

    pub fn to_prim(&self, eos: &Eos) -> Result<Prim> {
        let w = self.to_prim_unchecked(eos);
        if w.is_admissible(eos) {
            Ok(w)
        } else {
            Err(Error::domain(format!("inadmissible conserved state {self:?}")))
        }
    }

    #[inline]
    pub(crate) fn to_prim_unchecked(&self, eos: &Eos) -> Prim {
        let v = self.mom / self.rho;
        let rho_e = self.energy - 0.5 * self.mom * v;
        Prim {
            rho: self.rho,
            v,
            p: eos.pressure_from_rho_e(rho_e),
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.mom, self.energy]
    }
}

impl Prim2 {
    pub const fn new(rho: f64, vx: f64, vy: f64, p: f64) -> Self {
        Self { rho, vx, vy, p }
    }

    pub fn to_cons(&self, eos: &Eos) -> Cons2 {
        Cons2 {
            rho: self.rho,
            mx: self.rho * self.vx,
            my: self.rho * self.vy,
            energy: eos.rho_e(self.p) + 0.5 * self.rho * (self.vx * self.vx + self.vy * self.vy),
        }
    }

    pub fn is_admissible(&self, eos: &Eos) -> bool {
        self.rho.is_finite()
            && self.vx.is_finite()
            && self.vy.is_finite()
            && self.p.is_finite()
            && self.rho >= STATE_FLOOR
            && self.p + eos.p_inf() >= STATE_FLOOR
    }

    /// The state seen by a face with normal along x (`dir = 0`) or y (`dir = 1`):
    /// `vx` becomes the normal velocity.
    #[inline]
    pub fn rotated(self, dir: usize) -> Prim2 {
        if dir == 0 {
            self
        } else {
            Prim2::new(self.rho, self.vy, self.vx, self.p)
        }
    }

    /// In-direction part `[rho, v_n, p]`.
    #[inline]
    pub fn normal_part(&self, dir: usize) -> Prim {
        let vn = if dir == 0 { self.vx } else { self.vy };
        Prim::new(self.rho, vn, self.p)
    }
}

impl Cons2 {
    pub const fn new(rho: f64, mx: f64, my: f64, energy: f64) -> Self {
        Self { rho, mx, my, energy }
    }

    pub fn to_prim(&self, eos: &Eos) -> Result<Prim2> {
        let w = self.to_prim_unchecked(eos);
        if w.is_admissible(eos) {
            Ok(w)
        } else {
            Err(Error::domain(format!("inadmissible conserved state {self:?}")))
        }
    }

    #[inline]
    pub(crate) fn to_prim_unchecked(&self, eos: &Eos) -> Prim2 {
        let vx = self.mx / self.rho;
        let vy = self.my / self.rho;
        let rho_e = self.energy - 0.5 * (self.mx * vx + self.my * vy);
        Prim2::new(self.rho, vx, vy, eos.pressure_from_rho_e(rho_e))
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.mx, self.my, self.energy]
    }
}

macro_rules! impl_linear {
    ($ty:ident { $($f:ident),+ }) => {
        impl Add for $ty {
            type Output = $ty;
            #[inline]
            fn add(self, o: $ty) -> $ty {
                $ty { $($f: self.$f + o.$f),+ }
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            #[inline]
            fn sub(self, o: $ty) -> $ty {
                $ty { $($f: self.$f - o.$f),+ }
            }
        }
        impl Mul<f64> for $ty {
            type Output = $ty;
            #[inline]
            fn mul(self, s: f64) -> $ty {
                $ty { $($f: self.$f * s),+ }
            }
        }
    };
}

impl_linear!(Prim { rho, v, p });
impl_linear!(Cons { rho, mom, energy });
impl_linear!(Prim2 { rho, vx, vy, p });
impl_linear!(Cons2 { rho, mx, my, energy });
