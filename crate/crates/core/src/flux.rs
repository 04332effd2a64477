//! Physical fluxes and approximate Riemann solvers.
//!
//! Both solvers use Einfeldt's wave-speed bounds built from Roe averages. For
//! a pair of states joined by an isolated stationary discontinuity, one bound
//! collapses to zero and the interface flux is exactly the upwind physical flux,
//! which is what lets standing shocks and contacts sit in equilibrium.
//! Two-dimensional faces use the same solvers in the face-normal frame, with
//! the transverse velocity advected passively.

use crate::eos::Eos;
use crate::error::Error;
use crate::state::{Cons, Cons2, Prim, Prim2};

/// Flux vector `[f_rho, f_rho_v, f_E]`, laid out like a conserved state.
pub type Flux = Cons;
/// Flux vector `[f_rho, f_rho_vx, f_rho_vy, f_E]` in 2D.
pub type Flux2 = Cons2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    Hlle,
    Hllc,
}

impl std::str::FromStr for FluxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "hlle" | "hll" => Ok(FluxKind::Hlle),
            "hllc" => Ok(FluxKind::Hllc),
            other => Err(Error::config(format!("unknown flux.kind {other:?}"))),
        }
    }
}

/// `[rho v, rho v^2 + p, (E + p) v]`.
#[inline]
pub fn physical_flux(w: &Prim, eos: &Eos) -> Flux {
    let f = normal_flux(&Prim2::new(w.rho, w.v, 0.0, w.p), eos).1;
    Flux::new(f.rho, f.mx, f.energy)
}

/// Physical flux through a face with normal along x (`dir = 0`) or y (`dir = 1`).
pub fn physical_flux_2d(w: &Prim2, dir: usize, eos: &Eos) -> Flux2 {
    unrotate(normal_flux(&w.rotated(dir), eos).1, dir)
}

pub fn hlle(left: &Prim, right: &Prim, eos: &Eos) -> Flux {
    numerical_flux(FluxKind::Hlle, left, right, eos)
}

pub fn hllc(left: &Prim, right: &Prim, eos: &Eos) -> Flux {
    numerical_flux(FluxKind::Hllc, left, right, eos)
}

#[inline]
pub fn numerical_flux(kind: FluxKind, left: &Prim, right: &Prim, eos: &Eos) -> Flux {
    let l = Prim2::new(left.rho, left.v, 0.0, left.p);
    let r = Prim2::new(right.rho, right.v, 0.0, right.p);
    let f = solve_normal(kind, &l, &r, eos);
    Flux::new(f.rho, f.mx, f.energy)
}

pub fn numerical_flux_2d(kind: FluxKind, left: &Prim2, right: &Prim2, dir: usize, eos: &Eos) -> Flux2 {
    unrotate(
        solve_normal(kind, &left.rotated(dir), &right.rotated(dir), eos),
        dir,
    )
}

#[inline]
fn unrotate(f: Cons2, dir: usize) -> Cons2 {
    if dir == 0 {
        f
    } else {
        Cons2::new(f.rho, f.my, f.mx, f.energy)
    }
}

/// Conserved state and flux in the normal frame (`vx` normal, `vy` transverse).
#[inline]
fn normal_flux(w: &Prim2, eos: &Eos) -> (Cons2, Cons2) {
    let u = w.to_cons(eos);
    let f = Cons2::new(u.mx, u.mx * w.vx + w.p, u.mx * w.vy, (u.energy + w.p) * w.vx);
    (u, f)
}

/// Einfeldt bounds `s_L = min(v_L - c_L, v~ - c~)`, `s_R = max(v_R + c_R, v~ + c~)`.
#[inline]
fn einfeldt_speeds(l: &Prim2, ul: &Cons2, r: &Prim2, ur: &Cons2, eos: &Eos) -> (f64, f64) {
    let cl = eos.sound_speed_sq_unchecked(l.rho, l.p).sqrt();
    let cr = eos.sound_speed_sq_unchecked(r.rho, r.p).sqrt();
    let sl = l.rho.sqrt();
    let sr = r.rho.sqrt();
    let w = 1.0 / (sl + sr);
    let vn = (sl * l.vx + sr * r.vx) * w;
    let vt = (sl * l.vy + sr * r.vy) * w;
    let hl = (ul.energy + l.p) / l.rho;
    let hr = (ur.energy + r.p) / r.rho;
    let h = (sl * hl + sr * hr) * w;
    let c2 = (eos.gamma() - 1.0) * (h - 0.5 * (vn * vn + vt * vt));
    let c = c2.max(0.0).sqrt();
    ((l.vx - cl).min(vn - c), (r.vx + cr).max(vn + c))
}

#[inline]
fn solve_normal(kind: FluxKind, l: &Prim2, r: &Prim2, eos: &Eos) -> Cons2 {
    let (ul, fl) = normal_flux(l, eos);
    if l == r {
        return fl;
    }
    let (ur, fr) = normal_flux(r, eos);
    let (s_l, s_r) = einfeldt_speeds(l, &ul, r, &ur, eos);
    if s_l >= 0.0 {
        return fl;
    }
    if s_r <= 0.0 {
        return fr;
    }
    match kind {
        FluxKind::Hlle => {
            let inv = 1.0 / (s_r - s_l);
            let blend =
                |fl: f64, fr: f64, ul: f64, ur: f64| (s_r * fl - s_l * fr + s_l * s_r * (ur - ul)) * inv;
            Cons2::new(
                blend(fl.rho, fr.rho, ul.rho, ur.rho),
                blend(fl.mx, fr.mx, ul.mx, ur.mx),
                blend(fl.my, fr.my, ul.my, ur.my),
                blend(fl.energy, fr.energy, ul.energy, ur.energy),
            )
        }
        FluxKind::Hllc => {
            let dl = l.rho * (s_l - l.vx);
            let dr = r.rho * (s_r - r.vx);
            let s_star = (r.p - l.p + l.vx * dl - r.vx * dr) / (dl - dr);
            let star = |w: &Prim2, u: &Cons2, f: &Cons2, s: f64, d: f64| {
                let coef = d / (s - s_star);
                let e_spec = u.energy / w.rho + (s_star - w.vx) * (s_star + w.p / d);
                let u_star = Cons2::new(coef, coef * s_star, coef * w.vy, coef * e_spec);
                *f + (u_star - *u) * s
            };
            if s_star >= 0.0 {
                star(l, &ul, &fl, s_l, dl)
            } else {
                star(r, &ur, &fr, s_r, dr)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eos53() -> Eos {
        Eos::ideal(5.0 / 3.0).unwrap()
    }

    fn random_state(rng: &mut ChaCha8Rng) -> Prim {
        Prim::new(
            10f64.powf(rng.gen_range(-2.0..2.0)),
            rng.gen_range(-5.0..5.0),
            10f64.powf(rng.gen_range(-2.0..2.0)),
        )
    }

    #[test]
    fn physical_flux_values() {
        let eos = eos53();
        assert_eq!(
            physical_flux(&Prim::new(1.0, 0.0, 1.0), &eos),
            Flux::new(0.0, 1.0, 0.0)
        );
        let f = physical_flux(&Prim::new(1.0, 1.0, 1.0), &eos);
        assert!((f.rho - 1.0).abs() < 1e-15);
        assert!((f.mom - 2.0).abs() < 1e-15);
        assert!((f.energy - 3.0).abs() < 1e-15);
    }

    #[test]
    fn transverse_momentum_flux() {
        let eos = eos53();
        let w = Prim2::new(1.3, 0.4, -0.7, 2.0);
        let g = physical_flux_2d(&w, 1, &eos);
        assert!((g.mx - w.rho * w.vx * w.vy).abs() < 1e-15);
        assert!((g.my - (w.rho * w.vy * w.vy + w.p)).abs() < 1e-15);
        let f = physical_flux_2d(&w, 0, &eos);
        assert!((f.my - w.rho * w.vx * w.vy).abs() < 1e-15);
    }

    #[test]
    fn consistency_on_equal_states() {
        let eos = eos53();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let w = random_state(&mut rng);
            let exact = physical_flux(&w, &eos);
            assert_eq!(hlle(&w, &w, &eos), exact);
            assert_eq!(hllc(&w, &w, &eos), exact);
        }
    }

    #[test]
    fn supersonic_upwinding() {
        let eos = eos53();
        let l = Prim::new(1.0, -5.0, 1.0);
        let r = Prim::new(0.8, -4.5, 0.9);
        assert_eq!(hlle(&l, &r, &eos), physical_flux(&r, &eos));
        assert_eq!(hllc(&l, &r, &eos), physical_flux(&r, &eos));
        let l = Prim::new(1.0, 5.0, 1.0);
        let r = Prim::new(0.8, 4.5, 0.9);
        assert_eq!(hlle(&l, &r, &eos), physical_flux(&l, &eos));
    }

    #[test]
    fn hllc_resolves_stationary_contact() {
        let eos = eos53();
        let f = hllc(&Prim::new(1.0, 0.0, 0.7), &Prim::new(0.125, 0.0, 0.7), &eos);
        assert!(f.rho.abs() < 1e-15);
        assert!((f.mom - 0.7).abs() < 1e-15);
        assert!(f.energy.abs() < 1e-15);
    }

    /// Normal-shock jump for a right-to-left flow entering a shock at rest.
    fn stationary_shock(gamma: f64, mach: f64) -> (Prim, Prim) {
        let pre = Prim::new(1.0, -mach * (gamma * 1.0f64 / 1.0).sqrt(), 1.0);
        let m2 = mach * mach;
        let rho2 = pre.rho * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
        let p2 = pre.p * (2.0 * gamma * m2 / (gamma + 1.0) - (gamma - 1.0) / (gamma + 1.0));
        (Prim::new(rho2, pre.rho / rho2 * pre.v, p2), pre)
    }

    #[test]
    fn hlle_preserves_stationary_shock() {
        for (gamma, mach) in [(4.0 / 3.0, 1.2), (5.0 / 3.0, 2.5), (1.4, 4.0)] {
            let eos = Eos::ideal(gamma).unwrap();
            let (post, pre) = stationary_shock(gamma, mach);
            let fl = physical_flux(&post, &eos);
            let fr = physical_flux(&pre, &eos);
            for (a, b) in fl.to_array().iter().zip(fr.to_array()) {
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
            }
            let f = hlle(&post, &pre, &eos);
            for (a, b) in f.to_array().iter().zip(fr.to_array()) {
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0), "gamma={gamma} M={mach}");
            }
        }
    }

    #[test]
    fn small_perturbations_change_flux_slightly() {
        let eos = eos53();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [FluxKind::Hlle, FluxKind::Hllc] {
            for _ in 0..2_000 {
                let l = random_state(&mut rng);
                let r = random_state(&mut rng);
                let f0 = numerical_flux(kind, &l, &r, &eos);
                let bump = |w: Prim, rng: &mut ChaCha8Rng| {
                    let mut k = || 1.0 + 1e-8 * rng.gen_range(-1.0..1.0);
                    Prim::new(w.rho * k(), w.v * k(), w.p * k())
                };
                let f1 = numerical_flux(kind, &bump(l, &mut rng), &bump(r, &mut rng), &eos);
                let scale = [l, r]
                    .iter()
                    .map(|w| {
                        let f = physical_flux(w, &eos);
                        f.rho.abs().max(f.mom.abs()).max(f.energy.abs())
                    })
                    .fold(0.0f64, f64::max);
                for (a, b) in f0.to_array().iter().zip(f1.to_array()) {
                    assert!((a - b).abs() <= 1e-6 * scale, "{kind:?} {l:?} {r:?}");
                }
            }
        }
    }

    #[test]
    fn rotated_flux_matches_1d() {
        let eos = eos53();
        let l = Prim2::new(1.0, 0.0, 0.3, 1.0);
        let r = Prim2::new(0.5, 0.0, -0.2, 0.4);
        let g = numerical_flux_2d(FluxKind::Hllc, &l, &r, 1, &eos);
        let f = hllc(&l.normal_part(1), &r.normal_part(1), &eos);
        assert!((g.rho - f.rho).abs() < 1e-15);
        assert!((g.my - f.mom).abs() < 1e-15);
        assert!((g.energy - f.energy).abs() < 1e-15);
        assert_eq!(g.mx, 0.0);
    }
}
