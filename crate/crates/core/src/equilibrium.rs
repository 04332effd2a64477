//! Local steady adiabatic flow profiles.
//!
//! A profile is fixed by the mass flux `m0 = r^alpha rho v`, the Bernoulli
//! constant `v^2/2 + h + phi` and the pseudo-entropy `K`, all taken from an
//! anchor state. Evaluating it at another position means solving
//!
//! ```text
//! e(rho, r) = m0^2 / (2 r^(2 alpha) rho^2) + h(rho, K) = Be0 - phi(r)
//! ```
//!
//! for the root on the anchor's side of the critical density `rho_*`, where
//! `e` attains its minimum and the flow is exactly sonic.

use crate::eos::{EntropyParam, Eos};
use crate::error::{Error, Result};
use crate::state::Prim;

/// Which of the two roots of `e(rho) = Be0 - phi` the anchor lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Subsonic,
    Supersonic,
    Sonic,
}

impl Regime {
    /// Branch used for guarding Newton trials; sonic anchors follow the subsonic root.
    #[inline]
    fn keeps_supersonic(self) -> bool {
        self == Regime::Supersonic
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalState {
    /// `m0 = 0`: `e` is monotone in `rho`, no sonic point.
    Hydrostatic,
    Critical {
        rho_star: f64,
        e_star: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    None,
    Unique,
    TwoBranches,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    NoProgress,
    ConvergedToMinimum,
    MaxIter,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Found { rho: f64, iterations: usize },
    NoEquilibrium,
    Failed(FailureReason),
}

impl Outcome {
    pub fn density(&self) -> Option<f64> {
        match *self {
            Outcome::Found { rho, .. } => Some(rho),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found { .. })
    }
}

/// Which root finder evaluates a profile.
/// Density and pressure of an accepted profile point.
#[derive(Debug, Clone, Copy)]
struct Root {
    rho: f64,
    p: f64,
    iterations: usize,
}

type Solve = std::result::Result<Root, Outcome>;

impl From<Solve> for Outcome {
    fn from(s: Solve) -> Self {
        match s {
            Ok(root) => Outcome::Found {
                rho: root.rho,
                iterations: root.iterations,
            },
            Err(o) => o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    /// Hybrid Newton with explicit critical-density guards for the ideal gas,
    /// derivative-sign guards otherwise.
    Auto,
    IdealGas,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub solver: SolverChoice,
}

impl Default for EquilibriumOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iter: 100,
            solver: SolverChoice::Auto,
        }
    }
}

/// Bound on the branch-guard halvings of the general solver.
const MAX_GUARD_HALVINGS: usize = 60;

/// Constants of a local steady adiabatic flow, frozen at an anchor point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub m0: f64,
    pub be0: f64,
    pub k0: EntropyParam,
    pub x0: f64,
    pub phi0: f64,
    pub regime: Regime,
    pub alpha: i32,
    state: Prim,
    eos: Eos,
    /// `e(rho0, x0)`, the scale of the stopping criterion.
    e0: f64,
    c0_sq: f64,
}

impl Anchor {
    /// Freeze `m0`, `Be0` and `K0` from the state `w0` at coordinate `x0`.
    pub fn new(w0: Prim, x0: f64, phi0: f64, eos: &Eos, alpha: i32) -> Result<Self> {
        if !w0.is_admissible(eos) {
            return Err(Error::domain(format!("anchor state {w0:?} is inadmissible")));
        }
        if !(0..=2).contains(&alpha) {
            return Err(Error::domain(format!("geometry exponent {alpha} not in 0..=2")));
        }
        if alpha > 0 && !(x0 > 0.0) {
            return Err(Error::domain(format!("curvilinear anchor at r = {x0}")));
        }
        if !phi0.is_finite() {
            return Err(Error::domain("anchor potential not finite"));
        }
        let k0 = eos.entropy_param(w0.rho, w0.p)?;
        let c0_sq = eos.gamma() * (w0.p + eos.p_inf()) / w0.rho;
        let c0 = c0_sq.sqrt();
        let h0 = c0_sq / (eos.gamma() - 1.0);
        let m0 = if alpha == 0 {
            w0.rho * w0.v
        } else {
            geometric_factor(x0, alpha) * w0.rho * w0.v
        };
        let speed = w0.v.abs();
        let regime = if speed < c0 {
            Regime::Subsonic
        } else if speed > c0 {
            Regime::Supersonic
        } else {
            Regime::Sonic
        };
        let e0 = 0.5 * w0.v * w0.v + h0;
        Ok(Self {
            m0,
            be0: e0 + phi0,
            k0,
            x0,
            phi0,
            regime,
            alpha,
            state: w0,
            eos: *eos,
            e0,
            c0_sq,
        })
    }

    pub fn state(&self) -> Prim {
        self.state
    }

    pub fn eos(&self) -> &Eos {
        &self.eos
    }

    pub fn is_hydrostatic(&self) -> bool {
        self.m0 == 0.0
    }

    /// `m0^2 / r^(2 alpha)`.
    #[inline]
    fn flux_sq(&self, r: f64) -> f64 {
        let m2 = self.m0 * self.m0;
        if self.alpha == 0 {
            m2
        } else {
            let g = geometric_factor(r, self.alpha);
            m2 / (g * g)
        }
    }

    #[inline]
    fn energy(&self, rho: f64, q: f64) -> f64 {
        self.energy_terms(rho, q).0
    }

    /// Fluid energy and its density derivative.
    #[inline]
    fn energy_and_deriv(&self, rho: f64, q: f64) -> (f64, f64) {
        let (e, de, _) = self.energy_terms(rho, q);
        (e, de)
    }

    /// Fluid energy, its density derivative and the sound speed squared.
    #[inline]
    fn energy_terms(&self, rho: f64, q: f64) -> (f64, f64, f64) {
        // Along the isentrope c^2 scales as rho^(gamma - 1) and h = c^2 / (gamma - 1).
        let a = self.eos.gamma() - 1.0;
        let c2 = self.c0_sq * pow_near_one(rho / self.state.rho, a);
        let h = c2 / a;
        let kin = 0.5 * q / (rho * rho);
        (kin + h, (c2 - 2.0 * kin) / rho, c2)
    }

    fn check_eval(&self, rho: f64, r: f64) -> Result<()> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::domain(format!("fluid energy needs rho > 0, got {rho}")));
        }
        if self.alpha > 0 && !(r > 0.0) {
            return Err(Error::domain(format!("curvilinear evaluation at r = {r}")));
        }
        Ok(())
    }

    /// `e(rho, r) = m0^2 / (2 r^(2 alpha) rho^2) + h(rho)`; `r` is ignored in Cartesian geometry.
    pub fn fluid_energy(&self, rho: f64, r: f64) -> Result<f64> {
        self.check_eval(rho, r)?;
        Ok(self.energy(rho, self.flux_sq(r)))
    }

    /// `de/drho = c^2 / rho - m0^2 / (r^(2 alpha) rho^3)`.
    pub fn fluid_energy_deriv(&self, rho: f64, r: f64) -> Result<f64> {
        self.check_eval(rho, r)?;
        Ok(self.energy_and_deriv(rho, self.flux_sq(r)).1)
    }

    /// Critical density and minimal fluid energy at radius `r`.
    pub fn critical_state(&self, r: f64) -> CriticalState {
        if self.alpha == 0 {
            self.critical_at(self.x0)
        } else {
            self.critical_at(r)
        }
    }

    fn critical_at(&self, r: f64) -> CriticalState {
        if self.m0 == 0.0 {
            return CriticalState::Hydrostatic;
        }
        let q = self.flux_sq(r);
        let rho_star = self.critical_density(q);
        // At the critical density c^2 = q / rho^2 and h = c^2 / (gamma - 1).
        let c2 = q / (rho_star * rho_star);
        CriticalState::Critical {
            rho_star,
            e_star: c2 * (0.5 + 1.0 / (self.eos.gamma() - 1.0)),
        }
    }

    /// Root of `rho^2 c^2(rho) = q`.
    fn critical_density(&self, q: f64) -> f64 {
        let gamma = self.eos.gamma();
        if self.eos.is_ideal() {
            return (q / (gamma * self.k0.value())).powf(1.0 / (gamma + 1.0));
        }
        // Newton on ln(rho^2 c^2) - ln(q) in ln(rho); the map is increasing for convex EoS.
        let target = q.ln();
        let mut u = self.state.rho.ln();
        for _ in 0..200 {
            let rho = u.exp();
            let c2 = self.eos.sound_speed_sq(rho, self.k0);
            let g = 2.0 * u + c2.ln() - target;
            let dg = 2.0 + rho * self.eos.sound_speed_sq_deriv(rho, self.k0) / c2;
            let step = (g / dg).clamp(-2.0, 2.0);
            u -= step;
            if step.abs() < 1e-15 * u.abs().max(1.0) {
                break;
            }
        }
        u.exp()
    }

    /// Number of solutions of `e(rho, r) = Be0 - phi`.
    pub fn classify_existence(&self, phi: f64, r: f64) -> Existence {
        let target = self.be0 - phi;
        if self.is_at_anchor(phi, r) {
            return match self.critical_state(r) {
                CriticalState::Critical { e_star, .. } if target > e_star => Existence::TwoBranches,
                _ => Existence::Unique,
            };
        }
        match self.critical_state(r) {
            CriticalState::Hydrostatic => {
                if target > self.eos.enthalpy_at_vacuum() {
                    Existence::Unique
                } else {
                    Existence::None
                }
            }
            CriticalState::Critical { e_star, .. } => {
                if target < e_star {
                    Existence::None
                } else if target == e_star {
                    Existence::Unique
                } else {
                    Existence::TwoBranches
                }
            }
        }
    }

    #[inline]
    fn is_at_anchor(&self, phi: f64, r: f64) -> bool {
        phi == self.phi0 && (self.alpha == 0 || r == self.x0)
    }

    /// Starting density on the anchor's branch: `rho0` in Cartesian geometry,
    /// `rho0 / rho_*(r0) * rho_*(r)` otherwise.
    pub fn curvilinear_initial_guess(&self, r: f64) -> f64 {
        if self.alpha == 0 || self.m0 == 0.0 || r == self.x0 {
            return self.state.rho;
        }
        match (self.critical_at(self.x0), self.critical_at(r)) {
            (CriticalState::Critical { rho_star: s0, .. }, CriticalState::Critical { rho_star: s, .. }) => {
                self.state.rho / s0 * s
            }
            _ => self.state.rho,
        }
    }

    /// Hybrid Newton iteration with critical-density branch guards (ideal gas).
    pub fn solve_density_ideal(&self, phi: f64, r: f64, tol: f64, max_iter: usize) -> Outcome {
        self.ideal_from(phi, r, tol, max_iter, None).into()
    }

    fn ideal_from(&self, phi: f64, r: f64, tol: f64, max_iter: usize, guess: Option<f64>) -> Solve {
        let q = self.flux_sq(r);
        if let Some(root) = guess.and_then(|g| self.accept_guess(g, phi, r, q, tol)) {
            return Ok(root);
        }
        let target = self.be0 - phi;
        let critical = self.critical_state(r);
        let rho_star = match critical {
            CriticalState::Hydrostatic => {
                if target <= self.eos.enthalpy_at_vacuum() {
                    return Err(Outcome::NoEquilibrium);
                }
                0.0
            }
            CriticalState::Critical { rho_star, e_star } => {
                if target < e_star && !self.is_at_anchor(phi, r) {
                    return Err(Outcome::NoEquilibrium);
                }
                rho_star
            }
        };
        let supersonic = self.regime.keeps_supersonic();
        let scale = tol * self.e0;
        let at_anchor = self.is_at_anchor(phi, r);
        let on_branch = |g: f64| g > 0.0 && (rho_star == 0.0 || (g > rho_star) != supersonic);
        let mut rho = match guess {
            Some(g) if !at_anchor && g.is_finite() && on_branch(g) => g,
            _ => self.curvilinear_initial_guess(r),
        };
        for k in 0..max_iter {
            let (e, de, c2) = self.energy_terms(rho, q);
            let residual = e + phi - self.be0;
            if residual.abs() < scale {
                let polished = if at_anchor {
                    rho
                } else {
                    polish(rho, residual, de, |r| {
                        rho_star == 0.0 || (r > rho_star) == (rho > rho_star)
                    })
                };
                return Ok(self.root(rho, c2, polished, k));
            }
            let mut trial = rho - residual / de;
            if !trial.is_finite() {
                return Err(Outcome::Failed(FailureReason::NoProgress));
            }
            if !supersonic && trial < rho_star {
                trial = 0.5 * (rho_star + rho);
            }
            if supersonic && trial > rho_star {
                trial = 0.5 * (rho + rho_star);
            }
            if trial < 0.0 {
                trial = 0.5 * rho;
            }
            rho = trial;
        }
        Err(Outcome::Failed(FailureReason::MaxIter))
    }

    /// Plain Newton from a warm guess, abandoned as soon as an iterate leaves the
    /// anchor's branch (read off the sign of `e'`, positive on the subsonic side).
    /// A root with the right sign of `e'` is the branch root, so acceptance needs
    /// no critical-density evaluation. `None` hands over to the guarded solver.
    #[inline]
    fn accept_guess(&self, g: f64, phi: f64, r: f64, q: f64, tol: f64) -> Option<Root> {
        const FAST_ITERATIONS: usize = 4;
        if self.is_at_anchor(phi, r) {
            return None;
        }
        let mut rho = g;
        for k in 0..FAST_ITERATIONS {
            if !(rho.is_finite() && rho > 0.0) {
                return None;
            }
            let (e, de, c2) = self.energy_terms(rho, q);
            let branch_ok = match self.regime {
                Regime::Supersonic => de < 0.0,
                Regime::Subsonic | Regime::Sonic => de > 0.0,
            };
            if !branch_ok {
                return None;
            }
            let residual = e + phi - self.be0;
            if residual.abs() < tol * self.e0 {
                let polished = polish(rho, residual, de, |_| true);
                return Some(self.root(rho, c2, polished, k));
            }
            rho -= residual / de;
        }
        None
    }

    /// Capped Newton iteration guarded by the sign of `e'`, for any convex EoS.
    pub fn solve_density_general(&self, phi: f64, r: f64, tol: f64, max_iter: usize) -> Outcome {
        self.general_from(phi, r, tol, max_iter, None).into()
    }

    fn general_from(&self, phi: f64, r: f64, tol: f64, max_iter: usize, guess: Option<f64>) -> Solve {
        let q = self.flux_sq(r);
        let fast = guess
            .filter(|_| self.regime != Regime::Sonic)
            .and_then(|g| self.accept_guess(g, phi, r, q, tol));
        if let Some(root) = fast {
            return Ok(root);
        }
        let terms = |rho: f64| {
            let (e, de, c2) = self.energy_terms(rho, q);
            (e + phi - self.be0, de, c2)
        };
        let residual = |rho: f64| {
            let (res, de, _) = terms(rho);
            (res, de)
        };
        // A warm start must sit where e' has the sign of the anchor's branch.
        let wanted = match self.regime {
            Regime::Subsonic => 1.0,
            Regime::Supersonic => -1.0,
            Regime::Sonic => 0.0,
        };
        let warm = guess.filter(|&g| {
            !self.is_at_anchor(phi, r) && g.is_finite() && g > 0.0 && wanted * residual(g).1 > 0.0
        });
        let rho_init = warm.unwrap_or_else(|| self.curvilinear_initial_guess(r));
        let branch_slope = residual(rho_init).1;
        let scale = (self.be0 - phi).abs();
        let mut rho = rho_init;
        for k in 0..max_iter {
            let (res, de) = residual(rho);
            let ratio = res / de;
            let mut trial = if ratio.is_nan() {
                rho
            } else {
                rho - ratio.signum() * ratio.abs().min(0.25 * rho)
            };
            trial = trial.max(0.0);
            for _ in 0..MAX_GUARD_HALVINGS {
                if branch_slope * residual(trial).1 < 0.0 {
                    trial = 0.5 * (trial + rho);
                } else {
                    break;
                }
            }
            let step = trial - rho;
            rho = trial;
            let (res, de, c2) = terms(rho);
            if res.abs() < tol * scale {
                let polished = if self.is_at_anchor(phi, r) {
                    rho
                } else {
                    polish(rho, res, de, |r| branch_slope * residual(r).1 > 0.0)
                };
                return Ok(self.root(rho, c2, polished, k + 1));
            }
            if step.abs() < tol * rho_init.max(rho) {
                return Err(Outcome::Failed(FailureReason::NoProgress));
            }
            if (de * rho).abs() < tol * res.abs() {
                return Err(Outcome::Failed(FailureReason::ConvergedToMinimum));
            }
        }
        Err(Outcome::Failed(FailureReason::MaxIter))
    }

    /// Accepted root with its pressure, taken from the last evaluation at `rho`.
    /// `p + p_inf` scales as `rho^gamma`; the polish moves the density by at
    /// most 1e-8 relative, so a second-order expansion is exact to round-off.
    #[inline]
    fn root(&self, rho: f64, c2: f64, polished: f64, iterations: usize) -> Root {
        let gamma = self.eos.gamma();
        let p_inf = self.eos.p_inf();
        let stiff_p = rho * c2 / gamma;
        let d = (polished - rho) / rho;
        let stiff_p = stiff_p * (1.0 + gamma * d * (1.0 + 0.5 * (gamma - 1.0) * d));
        Root {
            rho: polished,
            p: stiff_p - p_inf,
            iterations,
        }
    }

    fn solve(&self, phi: f64, r: f64, guess: Option<f64>, opts: &EquilibriumOptions) -> Solve {
        if self.uses_general(opts) {
            self.general_from(phi, r, opts.tol, opts.max_iter, guess)
        } else {
            self.ideal_from(phi, r, opts.tol, opts.max_iter, guess)
        }
    }

    fn prim_from_root(&self, root: Root, r: f64) -> Prim {
        if root.rho == self.state.rho && (self.alpha == 0 || r == self.x0) {
            return self.state;
        }
        let v = if self.alpha == 0 {
            self.m0 / root.rho
        } else {
            self.m0 / (geometric_factor(r, self.alpha) * root.rho)
        };
        Prim::new(root.rho, v, root.p)
    }

    fn uses_general(&self, opts: &EquilibriumOptions) -> bool {
        match opts.solver {
            SolverChoice::Auto => !self.eos.is_ideal(),
            SolverChoice::IdealGas => false,
            SolverChoice::General => true,
        }
    }

    /// Density of the profile at `r` where the potential is `phi`.
    pub fn solve_density(&self, phi: f64, r: f64, opts: &EquilibriumOptions) -> Outcome {
        if self.uses_general(opts) {
            self.solve_density_general(phi, r, opts.tol, opts.max_iter)
        } else {
            self.solve_density_ideal(phi, r, opts.tol, opts.max_iter)
        }
    }

    /// As [`Anchor::solve_density`], starting Newton from `guess` when it lies on
    /// the anchor's branch. Near-steady data give guesses within round-off of the root.
    pub fn solve_density_from(&self, phi: f64, r: f64, guess: f64, opts: &EquilibriumOptions) -> Outcome {
        self.solve(phi, r, Some(guess), opts).into()
    }

    /// Warm-started [`Anchor::profile_at`].
    pub fn profile_at_from(
        &self,
        r: f64,
        phi: f64,
        guess: f64,
        opts: &EquilibriumOptions,
    ) -> std::result::Result<Prim, Outcome> {
        self.solve(phi, r, Some(guess), opts)
            .map(|root| self.prim_from_root(root, r))
    }

    /// Primitive state of the profile at `r` where the potential is `phi`.
    pub fn profile_at(
        &self,
        r: f64,
        phi: f64,
        opts: &EquilibriumOptions,
    ) -> std::result::Result<Prim, Outcome> {
        self.solve(phi, r, None, opts)
            .map(|root| self.prim_from_root(root, r))
    }

    /// `(rho, m0 / (r^alpha rho), p(rho, K0))`; returns the anchor itself when
    /// the density and geometry factor coincide with it.
    #[inline]
    pub fn state_at_density(&self, rho: f64, r: f64) -> Prim {
        if rho == self.state.rho && (self.alpha == 0 || r == self.x0) {
            return self.state;
        }
        let v = if self.alpha == 0 {
            self.m0 / rho
        } else {
            self.m0 / (geometric_factor(r, self.alpha) * rho)
        };
        Prim::new(rho, v, self.eos.pressure(rho, self.k0))
    }
}

/// `r^alpha` for the geometry exponents 0, 1 and 2.
#[inline]
fn geometric_factor(r: f64, alpha: i32) -> f64 {
    match alpha {
        0 => 1.0,
        1 => r,
        _ => r * r,
    }
}

/// `x^a`: binomial series in `x - 1` close to 1, `powf` elsewhere. Profile
/// densities stay within a few percent of their anchor, where a handful of
/// terms reach round-off.
#[inline]
fn pow_near_one(x: f64, a: f64) -> f64 {
    let e = x - 1.0;
    if !(e.abs() <= 0.0625) {
        return x.powf(a);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while k < 24.0 {
        term *= (a - (k - 1.0)) / k * e;
        sum += term;
        if term.abs() <= 1e-17 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// One final Newton correction from already evaluated `e - target` and `e'`.
/// The accepted iterate is only within `tol` of the root; the correction brings it
/// to round-off at no extra evaluation cost. Kept only if small and on the branch.
#[inline]
fn polish(rho: f64, residual: f64, deriv: f64, on_branch: impl Fn(f64) -> bool) -> f64 {
    let next = rho - residual / deriv;
    if next.is_finite() && (next - rho).abs() <= 1e-8 * rho && on_branch(next) {
        next
    } else {
        rho
    }
}
