//! Generalized p-trigonometric functions.
//!
//! `F_p(y) = ∫₀^y (1 − t^p)^{-1/p} dt` is the p-arcsine, `π_p = 2 F_p(1)`,
//! `I_p = (2/π_p) F_p` its normalised form and `sin_p` the inverse of `F_p`
//! on `[0, π_p/2]`, extended to the real line as an odd, `2π_p`-periodic
//! function that is even about `π_p/2`.
//!
//! The integrand of `F_p` blows up at `t = 1`. On `[1/2, 1]` we integrate in
//! the variable `v` with `1 − t = v^{p'}`, where `p' = p/(p−1)`; there the
//! integrand becomes
//!
//! ```text
//! g(v) = p' · [ (1 − (1 − v^{p'})^p) / v^{p'} ]^{-1/p},
//! ```
//!
//! which is bounded between `p' p^{-1/p}` and `p'`. Points close to `t = 1`
//! are carried as [`PPoint`] so that `1 − t` keeps full relative precision.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;

/// Split between the direct and the substituted integration variable.
const SPLIT: f64 = 0.5;
const INVERT_MAX_ITER: usize = 200;

/// An exponent `p > 1` together with its conjugate `p' = p/(p−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PExponent {
    p: f64,
    conj: f64,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("p must satisfy 1 < p < ∞, got {p}")));
        }
        Ok(Self {
            p,
            conj: p / (p - 1.0),
        })
    }

    pub fn value(self) -> f64 {
        self.p
    }

    /// The conjugate exponent `p'`.
    pub fn conjugate(self) -> f64 {
        self.conj
    }
}

/// `π_p = 2π / (p sin(π/p))`.
pub fn pi_p(p: PExponent) -> f64 {
    2.0 * PI / (p.p * (PI / p.p).sin())
}

/// A point of `[0, 1]` stored together with `1 − t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PPoint {
    pub t: f64,
    /// `1 − t`, accurate even when `t` rounds to 1.
    pub tail: f64,
}

impl PPoint {
    pub fn from_t(t: f64) -> Self {
        Self { t, tail: 1.0 - t }
    }

    pub fn from_tail(tail: f64) -> Self {
        Self { t: 1.0 - tail, tail }
    }

    pub const ZERO: PPoint = PPoint { t: 0.0, tail: 1.0 };
    pub const ONE: PPoint = PPoint { t: 1.0, tail: 0.0 };

    /// `x − self` computed from whichever representation is more accurate.
    pub fn distance_to(self, x: PPoint) -> f64 {
        if self.t <= SPLIT || x.t <= SPLIT {
            x.t - self.t
        } else {
            self.tail - x.tail
        }
    }
}

/// Precomputed data for one exponent `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PTrigContext {
    exponent: PExponent,
    pi_p: f64,
    /// F_p(SPLIT)
    f_split: f64,
    /// v at t = SPLIT
    v_split: f64,
    tol: f64,
}

impl PTrigContext {
    pub fn new(p: f64) -> Result<Self> {
        let exponent = PExponent::new(p)?;
        let pi_p = pi_p(exponent);
        let tol = 1e-15 * pi_p.max(1.0);
        let mut ctx = Self {
            exponent,
            pi_p,
            f_split: 0.0,
            v_split: (1.0 - SPLIT).powf(1.0 / exponent.conj),
            tol,
        };
        ctx.f_split = ctx.integrate_t(0.0, SPLIT)?;
        Ok(ctx)
    }

    pub fn exponent(&self) -> PExponent {
        self.exponent
    }

    pub fn p(&self) -> f64 {
        self.exponent.p
    }

    pub fn pi_p(&self) -> f64 {
        self.pi_p
    }

    pub fn half_pi_p(&self) -> f64 {
        0.5 * self.pi_p
    }

    pub(crate) fn split(&self) -> f64 {
        SPLIT
    }

    pub(crate) fn v_split(&self) -> f64 {
        self.v_split
    }

    /// `(1 − t^p)^{-1/p}`, the integrand of `F_p`.
    pub fn density_t(&self, t: f64) -> f64 {
        let p = self.exponent.p;
        (-(p * t.ln()).exp_m1()).powf(-1.0 / p)
    }

    /// The integrand after the substitution `1 − t = v^{p'}`.
    pub fn density_v(&self, v: f64) -> f64 {
        let p = self.exponent.p;
        let x = v.powf(self.exponent.conj);
        let ratio = if x < 1e-8 {
            p * (1.0 - 0.5 * (p - 1.0) * x)
        } else {
            -(p * (-x).ln_1p()).exp_m1() / x
        };
        self.exponent.conj * ratio.powf(-1.0 / p)
    }

    /// Jacobian `dt/dv = p' v^{p'−1}` of the substitution.
    pub(crate) fn jacobian_v(&self, v: f64) -> f64 {
        let c = self.exponent.conj;
        c * v.powf(c - 1.0)
    }

    /// `(1 − t^p)^{1/p}`, the derivative of `sin_p` expressed at `t = sin_p(x)`.
    pub fn cos_weight(&self, x: PPoint) -> f64 {
        let p = self.exponent.p;
        let one_minus_tp = if x.t <= SPLIT {
            -(p * x.t.ln()).exp_m1()
        } else {
            -(p * (-x.tail).ln_1p()).exp_m1()
        };
        one_minus_tp.max(0.0).powf(1.0 / p)
    }

    fn integrate_t(&self, a: f64, b: f64) -> Result<f64> {
        Ok(quad::integrate(|t| self.density_t(t), a, b, self.tol)?.value)
    }

    fn integrate_v(&self, a: f64, b: f64) -> Result<f64> {
        Ok(quad::integrate(|v| self.density_v(v), a, b, self.tol)?.value)
    }

    /// `F_p(y)` for `y ∈ [0, 1]`.
    pub fn f_p(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::Domain(format!("F_p needs y in [0, 1], got {y}")));
        }
        self.f_p_point(PPoint::from_t(y))
    }

    /// `F_p` at a point given with an accurate `1 − t`.
    pub fn f_p_point(&self, y: PPoint) -> Result<f64> {
        if y.t <= SPLIT {
            if y.t <= 0.0 {
                return Ok(0.0);
            }
            self.integrate_t(0.0, y.t)
        } else {
            Ok(self.half_pi_p() - self.integrate_v(0.0, self.v_of(y))?)
        }
    }

    /// `π_p/2 − F_p(y)`, accurate near `y = 1`.
    pub fn f_p_complement(&self, y: PPoint) -> Result<f64> {
        if y.t <= SPLIT {
            Ok(self.half_pi_p() - self.f_p_point(y)?)
        } else {
            self.integrate_v(0.0, self.v_of(y))
        }
    }

    fn v_of(&self, y: PPoint) -> f64 {
        y.tail.max(0.0).powf(1.0 / self.exponent.conj)
    }

    /// `I_p(y) = (2/π_p) F_p(y)`.
    pub fn i_p(&self, y: f64) -> Result<f64> {
        Ok(self.f_p(y)? * 2.0 / self.pi_p)
    }

    pub fn i_p_point(&self, y: PPoint) -> Result<f64> {
        Ok(self.f_p_point(y)? * 2.0 / self.pi_p)
    }

    /// Solves `F_p(y) = x` for `x ∈ [0, π_p/2]`.
    pub fn invert_f(&self, x: f64) -> Result<PPoint> {
        let half = self.half_pi_p();
        if !(0.0..=half * (1.0 + 1e-15)).contains(&x) {
            return Err(Error::Domain(format!(
                "F_p inversion needs x in [0, {half}], got {x}"
            )));
        }
        if x <= 0.0 {
            return Ok(PPoint::ZERO);
        }
        if x >= half {
            return Ok(PPoint::ONE);
        }
        if x <= self.f_split {
            let t = newton_bracketed(
                x,
                (0.0, SPLIT),
                (0.0, self.f_split),
                x,
                |t| self.density_t(t),
                |a, b| self.integrate_t(a, b),
            )?;
            Ok(PPoint::from_t(t))
        } else {
            let target = half - x;
            let g_total = half - self.f_split;
            let v0 = target / self.density_v(0.0);
            let v = newton_bracketed(
                target,
                (0.0, self.v_split),
                (0.0, g_total),
                v0,
                |v| self.density_v(v),
                |a, b| self.integrate_v(a, b),
            )?;
            Ok(PPoint::from_tail(v.powf(self.exponent.conj)))
        }
    }

    /// Solves `I_p(y) = u` for `u ∈ [0, 1]`.
    pub fn invert_i(&self, u: f64) -> Result<PPoint> {
        self.invert_f(u.clamp(0.0, 1.0) * self.half_pi_p())
    }

    /// `sin_p(x)` for any real `x`.
    ///
    /// Range reduction: first modulo `2π_p` into `[−π_p, π_p)`, then oddness
    /// maps to `[0, π_p]`, then the reflection `x ↦ π_p − x` maps to
    /// `[0, π_p/2]` where `F_p` is inverted.
    pub fn sin_p(&self, x: f64) -> f64 {
        let period = 2.0 * self.pi_p;
        let mut r = (x + self.pi_p).rem_euclid(period) - self.pi_p;
        let sign = if r < 0.0 { -1.0 } else { 1.0 };
        r = r.abs();
        if r > self.half_pi_p() {
            r = self.pi_p - r;
        }
        let r = r.clamp(0.0, self.half_pi_p());
        // The integrand is bounded on each piece, so inversion only fails on
        // non-finite input; fall back to NaN there.
        match self.invert_f(r) {
            Ok(y) => sign * y.t,
            Err(_) => f64::NAN,
        }
    }
}

/// Safeguarded Newton iteration for a monotone increasing primitive
/// `Φ(z) = ∫_{lo}^{z} φ`, solving `Φ(z) = target`. `Φ` values at new
/// iterates are obtained incrementally from the previous iterate.
fn newton_bracketed<D, I>(
    target: f64,
    bracket: (f64, f64),
    values: (f64, f64),
    start: f64,
    density: D,
    integral: I,
) -> Result<f64>
where
    D: Fn(f64) -> f64,
    I: Fn(f64, f64) -> Result<f64>,
{
    let (mut lo, mut hi) = bracket;
    let (mut f_lo, mut f_hi) = values;
    let mut z = start.clamp(lo, hi);
    let mut fz = if z == lo { f_lo } else { f_lo + integral(lo, z)? };
    for _ in 0..INVERT_MAX_ITER {
        let resid = fz - target;
        if resid == 0.0 {
            return Ok(z);
        }
        if resid < 0.0 {
            lo = z;
            f_lo = fz;
        } else {
            hi = z;
            f_hi = fz;
        }
        let d = density(z);
        let mut next = z - resid / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            // secant inside the bracket, then bisection as last resort
            let s = lo + (target - f_lo) * (hi - lo) / (f_hi - f_lo);
            next = if s > lo && s < hi { s } else { 0.5 * (lo + hi) };
        }
        let step = next - z;
        let f_next = fz + integral(z, next)?;
        z = next;
        fz = f_next;
        if step.abs() <= 4.0 * f64::EPSILON * z.abs().max(1e-300) || hi - lo <= f64::EPSILON * hi {
            return Ok(z);
        }
    }
    Err(Error::IterationCap(INVERT_MAX_ITER))
}

/// `F_p(y)`.
pub fn f_p(p: PExponent, y: f64) -> Result<f64> {
    PTrigContext::new(p.value())?.f_p(y)
}

/// `I_p(y) = (2/π_p) F_p(y)`.
pub fn i_p(p: PExponent, y: f64) -> Result<f64> {
    PTrigContext::new(p.value())?.i_p(y)
}

/// `sin_p(x)`.
pub fn sin_p(p: PExponent, x: f64) -> Result<f64> {
    Ok(PTrigContext::new(p.value())?.sin_p(x))
}

/// Returns `(I_q(y)/I_p(y), π_p/π_q)`; for `p < q` and `0 < y < 1` the
/// ratio lies strictly between 1 and the second value.
pub fn i_p_ratio_bounds(p: PExponent, q: PExponent, y: f64) -> Result<(f64, f64)> {
    if p.value() >= q.value() {
        return Err(Error::Domain(format!(
            "ratio bounds need p < q, got p = {}, q = {}",
            p.value(),
            q.value()
        )));
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::Domain(format!("ratio bounds need 0 < y < 1, got {y}")));
    }
    let ip = i_p(p, y)?;
    let iq = i_p(q, y)?;
    Ok((iq / ip, pi_p(p) / pi_p(q)))
}
