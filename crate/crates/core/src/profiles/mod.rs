//! Odd, 2-periodic profiles, their sine coefficients and summable envelopes.
//!
//! Every profile is odd about 0 and even about 1/2, so only odd
//! frequencies carry weight:
//!
//! ```text
//! f(x) = Σ_{j odd} f̂(j) sin(jπx),   f̂(j) = 2∫₀¹ f(x) sin(jπx) dx.
//! ```

mod psine;

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::ptrig::PTrigContext;
use crate::quad;
use crate::special::{odd_tail_bound, odd_zeta, zeta};

pub use psine::PSineQuadrature;

/// Smallest quadrature resolution used for p-sine coefficient tables.
const MIN_PSINE_RESOLUTION: usize = 256;

/// The profile families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSpec {
    /// `sign(sin(πx))`.
    Jump,
    /// Coefficients `4/(π j^{1+ε})` on odd `j`.
    JumpSmoothed { eps: f64 },
    /// Linear ramps of width `α` joined by a plateau.
    Trapezoid { alpha: f64 },
    /// Cubic ramps of width `β` with continuous derivative.
    Cubic { beta: f64 },
    /// `sin_p(π_p x)`.
    PSine { p: f64 },
}

impl ProfileSpec {
    pub fn jump() -> Self {
        ProfileSpec::Jump
    }

    pub fn jump_smoothed(eps: f64) -> Result<Self> {
        if !(eps >= 0.0) || !eps.is_finite() {
            return Err(Error::Domain(format!("smoothing exponent must be >= 0, got {eps}")));
        }
        Ok(ProfileSpec::JumpSmoothed { eps })
    }

    pub fn trapezoid(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 0.5) {
            return Err(Error::Domain(format!("ramp width must lie in (0, 1/2], got {alpha}")));
        }
        Ok(ProfileSpec::Trapezoid { alpha })
    }

    pub fn cubic(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 0.5) {
            return Err(Error::Domain(format!("ramp width must lie in (0, 1/2), got {beta}")));
        }
        Ok(ProfileSpec::Cubic { beta })
    }

    pub fn psine(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("exponent must exceed 1, got {p}")));
        }
        Ok(ProfileSpec::PSine { p })
    }

    /// Builds a profile from a kind name and parameter, validating ranges.
    pub fn from_kind(kind: &str, param: Option<f64>) -> Result<Self> {
        let need = |name: &str| {
            param.ok_or_else(|| Error::InvalidInput(format!("profile {name} needs a parameter")))
        };
        match kind.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "jump" => Ok(ProfileSpec::Jump),
            "jumpsmoothed" => Self::jump_smoothed(need(kind)?),
            "trapezoid" => Self::trapezoid(need(kind)?),
            "cubic" => Self::cubic(need(kind)?),
            "psine" => Self::psine(need(kind)?),
            _ => Err(Error::InvalidInput(format!("unknown profile kind {kind:?}"))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProfileSpec::Jump => "jump",
            ProfileSpec::JumpSmoothed { .. } => "jump-smoothed",
            ProfileSpec::Trapezoid { .. } => "trapezoid",
            ProfileSpec::Cubic { .. } => "cubic",
            ProfileSpec::PSine { .. } => "psine",
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            ProfileSpec::Jump => None,
            ProfileSpec::JumpSmoothed { eps } => Some(eps),
            ProfileSpec::Trapezoid { alpha } => Some(alpha),
            ProfileSpec::Cubic { beta } => Some(beta),
            ProfileSpec::PSine { p } => Some(p),
        }
    }
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(v) => write!(f, "{}({v})", self.kind()),
            None => write!(f, "{}", self.kind()),
        }
    }
}

impl Serialize for ProfileSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ProfileSpec", 2)?;
        s.serialize_field("kind", self.kind())?;
        s.serialize_field("param", &self.param())?;
        s.end()
    }
}

/// Value of the periodic profile at `x`.
///
/// All profiles except the smoothed jump are bounded by 1; the smoothed
/// jump overshoots slightly (about 1.027 at `ε = 1/2`, `x = 0.3`).
///
/// Returns NaN only if an internal quadrature or inversion fails, which
/// does not happen for finite `x` and validated parameters.
pub fn eval_profile(spec: &ProfileSpec, x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if let ProfileSpec::PSine { p } = *spec {
        return match PTrigContext::new(p) {
            Ok(ctx) => ctx.sin_p(ctx.pi_p() * x),
            Err(_) => f64::NAN,
        };
    }
    // reduce to y ∈ [0, 1] with a sign
    let r = (x + 1.0).rem_euclid(2.0) - 1.0;
    let sign = if r < 0.0 { -1.0 } else { 1.0 };
    let y = r.abs();
    // every remaining profile is symmetric about 1/2
    let y = if y > 0.5 { 1.0 - y } else { y };
    let v = match *spec {
        ProfileSpec::Jump => {
            if y == 0.0 {
                0.0
            } else {
                1.0
            }
        }
        ProfileSpec::JumpSmoothed { eps } => jump_smoothed_value(eps, y),
        ProfileSpec::Trapezoid { alpha } => (y / alpha).min(1.0),
        ProfileSpec::Cubic { beta } => {
            if y < beta {
                let s = y / beta;
                (s + 1.0).powi(2) * (1.0 - 0.5 * s) - 1.0
            } else {
                1.0
            }
        }
        ProfileSpec::PSine { .. } => unreachable!(),
    };
    sign * v
}

/// `Σ_{j odd} 4 sin(jπy)/(π j^{1+ε})` for `y ∈ [0, 1/2]`.
///
/// Written as `(2/(πΓ(1+ε))) ∫₀^∞ arctan(sin(πy)/sinh(s^{1/ε})) ds`, which
/// follows from the Mellin form of `j^{-1-ε}` and one integration by parts.
fn jump_smoothed_value(eps: f64, y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    if eps == 0.0 {
        return 1.0;
    }
    let sy = (PI * y).sin();
    let integrand = |s: f64| {
        if s <= 0.0 {
            return 0.5 * PI;
        }
        (sy / s.powf(1.0 / eps).sinh()).atan()
    };
    // arctan(sin/sinh(r)) < 2e-17 once r > 40
    let upper = 40f64.powf(eps);
    let mut total = 0.0;
    // the integrand switches off sharply near s = 1 when ε is small
    let knots = [0.0, 0.5f64.min(upper), 1.0f64.min(upper), upper];
    for w in knots.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        match quad::integrate(integrand, w[0], w[1], 1e-13) {
            Ok(r) => total += r.value,
            Err(_) => return f64::NAN,
        }
    }
    2.0 / (PI * gamma(1.0 + eps)) * total
}

fn check_index(j: usize) -> Result<()> {
    if j == 0 {
        Err(Error::InvalidInput("coefficient index starts at 1".into()))
    } else {
        Ok(())
    }
}

/// `sin(y)/y − cos(y)`, accurate for small `y`.
fn sinc_minus_cos(y: f64) -> f64 {
    if y.abs() < 1e-2 {
        let y2 = y * y;
        y2 / 3.0 * (1.0 - y2 / 10.0 * (1.0 - y2 / 28.0))
    } else {
        y.sin() / y - y.cos()
    }
}

fn closed_form_coeff(spec: &ProfileSpec, j: usize) -> f64 {
    let jf = j as f64;
    match *spec {
        ProfileSpec::Jump => 4.0 / (PI * jf),
        ProfileSpec::JumpSmoothed { eps } => 4.0 / (PI * jf.powf(1.0 + eps)),
        ProfileSpec::Trapezoid { alpha } => {
            4.0 * (jf * PI * alpha).sin() / (alpha * jf * jf * PI * PI)
        }
        ProfileSpec::Cubic { beta } => {
            let y = jf * PI * beta;
            12.0 / (jf.powi(3) * PI.powi(3) * beta * beta) * sinc_minus_cos(y)
        }
        ProfileSpec::PSine { .. } => unreachable!("p-sine coefficients need quadrature"),
    }
}

/// `f̂(j)`; exact zero for even `j`.
pub fn coeff(spec: &ProfileSpec, j: usize) -> Result<f64> {
    CoefficientSeries::new(*spec)?.coeff(j)
}

/// Envelope `φ_j ≥ |f̂(j)|`; zero for even `j`.
pub fn envelope(spec: &ProfileSpec, j: usize) -> Result<f64> {
    check_index(j)?;
    Ok(EnvelopeLaw::new(spec)?.at(j))
}

/// `φ_1, …, φ_n`.
pub fn envelope_table(spec: &ProfileSpec, n: usize) -> Result<Vec<f64>> {
    let law = EnvelopeLaw::new(spec)?;
    Ok((1..=n).map(|j| law.at(j)).collect())
}

/// Envelope formulas with per-profile constants precomputed.
#[derive(Debug, Clone, Copy)]
enum EnvelopeLaw {
    Smoothed { eps: f64 },
    Trapezoid { alpha: f64 },
    Cubic { beta: f64 },
    PSine { pi_p: f64 },
}

impl EnvelopeLaw {
    fn new(spec: &ProfileSpec) -> Result<Self> {
        Ok(match *spec {
            ProfileSpec::Jump | ProfileSpec::JumpSmoothed { eps: 0.0 } => return Err(no_envelope(spec)),
            ProfileSpec::JumpSmoothed { eps } => EnvelopeLaw::Smoothed { eps },
            ProfileSpec::Trapezoid { alpha } => EnvelopeLaw::Trapezoid { alpha },
            ProfileSpec::Cubic { beta } => EnvelopeLaw::Cubic { beta },
            ProfileSpec::PSine { p } => EnvelopeLaw::PSine {
                pi_p: PTrigContext::new(p)?.pi_p(),
            },
        })
    }

    fn at(&self, j: usize) -> f64 {
        if j.is_multiple_of(2) {
            return 0.0;
        }
        let jf = j as f64;
        match *self {
            EnvelopeLaw::Smoothed { eps } => 4.0 / (PI * jf.powf(1.0 + eps)),
            EnvelopeLaw::Trapezoid { alpha } => 4.0 / (alpha * jf * jf * PI * PI),
            EnvelopeLaw::Cubic { beta } => {
                let c = 12.0 / (PI.powi(3) * beta * beta);
                c * (1.0 / (jf.powi(4) * PI * beta) + 1.0 / jf.powi(3))
            }
            EnvelopeLaw::PSine { pi_p } => 4.0 * pi_p / (jf * jf * PI * PI),
        }
    }
}

/// `Σ_j φ_j` in closed form.
pub fn envelope_sum(spec: &ProfileSpec) -> Result<f64> {
    match *spec {
        ProfileSpec::Jump | ProfileSpec::JumpSmoothed { eps: 0.0 } => Err(no_envelope(spec)),
        ProfileSpec::JumpSmoothed { eps } => Ok(4.0 / PI * odd_zeta(1.0 + eps)?),
        ProfileSpec::Trapezoid { alpha } => Ok(0.5 / alpha),
        ProfileSpec::Cubic { beta } => {
            let c = 12.0 / (PI.powi(3) * beta * beta);
            Ok(c * (PI.powi(3) / (96.0 * beta) + 0.875 * zeta(3.0)?))
        }
        ProfileSpec::PSine { p } => Ok(PTrigContext::new(p)?.half_pi_p()),
    }
}

/// Upper bound for `Σ_{j > n} φ_j`.
pub fn envelope_tail(spec: &ProfileSpec, n: usize) -> Result<f64> {
    match *spec {
        ProfileSpec::Jump | ProfileSpec::JumpSmoothed { eps: 0.0 } => Err(no_envelope(spec)),
        ProfileSpec::JumpSmoothed { eps } => Ok(4.0 / PI * odd_tail_bound(1.0 + eps, n)),
        ProfileSpec::Trapezoid { alpha } => {
            Ok(4.0 / (alpha * PI * PI) * odd_tail_bound(2.0, n))
        }
        ProfileSpec::Cubic { beta } => {
            let c = 12.0 / (PI.powi(3) * beta * beta);
            Ok(c * (odd_tail_bound(4.0, n) / (PI * beta) + odd_tail_bound(3.0, n)))
        }
        ProfileSpec::PSine { p } => {
            let ctx = PTrigContext::new(p)?;
            Ok(4.0 * ctx.pi_p() / (PI * PI) * odd_tail_bound(2.0, n))
        }
    }
}

fn no_envelope(spec: &ProfileSpec) -> Error {
    Error::Unsupported(format!("{spec} has no summable coefficient envelope"))
}

struct PSineCache {
    quadrature: Arc<PSineQuadrature>,
    values: Vec<f64>,
}

/// Lazily computed coefficients of one profile.
///
/// Closed-form families are evaluated on demand; p-sine coefficients are
/// tabulated on first use and the table is extended (on a finer mesh,
/// recomputing every entry) when a larger index is requested. The table
/// only depends on the largest index ever requested, and is shared safely
/// between threads.
pub struct CoefficientSeries {
    profile: ProfileSpec,
    ctx: Option<PTrigContext>,
    cache: Mutex<Option<PSineCache>>,
}

impl fmt::Debug for CoefficientSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSeries")
            .field("profile", &self.profile)
            .finish_non_exhaustive()
    }
}

impl CoefficientSeries {
    pub fn new(profile: ProfileSpec) -> Result<Self> {
        let ctx = match profile {
            ProfileSpec::PSine { p } => Some(PTrigContext::new(p)?),
            _ => None,
        };
        Ok(Self {
            profile,
            ctx,
            cache: Mutex::new(None),
        })
    }

    pub fn profile(&self) -> &ProfileSpec {
        &self.profile
    }

    /// Makes `f̂(1), …, f̂(n)` available, tabulating p-sine coefficients.
    pub fn ensure(&self, n: usize) -> Result<()> {
        let Some(ctx) = self.ctx else { return Ok(()) };
        let mut guard = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if guard.as_ref().is_some_and(|c| c.values.len() >= n) {
            return Ok(());
        }
        let resolution = n.max(MIN_PSINE_RESOLUTION).next_power_of_two();
        let quadrature = match guard.as_ref() {
            Some(c) if c.quadrature.resolution() >= resolution => Arc::clone(&c.quadrature),
            _ => Arc::new(PSineQuadrature::new(ctx, resolution)?),
        };
        let values = quadrature.coefficients(resolution)?;
        *guard = Some(PSineCache { quadrature, values });
        Ok(())
    }

    /// `f̂(j)`; exact zero for even `j`.
    pub fn coeff(&self, j: usize) -> Result<f64> {
        check_index(j)?;
        if j.is_multiple_of(2) {
            return Ok(0.0);
        }
        if self.ctx.is_none() {
            return Ok(closed_form_coeff(&self.profile, j));
        }
        self.ensure(j)?;
        let guard = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        Ok(guard.as_ref().expect("table filled by ensure").values[j - 1])
    }

    /// `f̂(1), …, f̂(n)`.
    pub fn coeffs(&self, n: usize) -> Result<Vec<f64>> {
        if self.ctx.is_none() {
            return (1..=n).map(|j| self.coeff(j)).collect();
        }
        self.ensure(n)?;
        let guard = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        Ok(guard.as_ref().expect("table filled by ensure").values[..n].to_vec())
    }

    pub fn envelope(&self, j: usize) -> Result<f64> {
        envelope(&self.profile, j)
    }

    pub fn envelope_sum(&self) -> Result<f64> {
        envelope_sum(&self.profile)
    }

    /// `Σ_{j odd} f̂(j)` for p-sine profiles, from the Abel-limit integral.
    pub fn coefficient_sum(&self) -> Result<f64> {
        match self.ctx {
            Some(_) => {
                self.ensure(1)?;
                let guard = self.cache.lock().unwrap_or_else(|e| e.into_inner());
                Ok(guard.as_ref().expect("table filled by ensure").quadrature.coefficient_sum())
            }
            None => Err(Error::Unsupported(format!(
                "coefficient sum is only tabulated for p-sine profiles, not {}",
                self.profile
            ))),
        }
    }
}

/// A truncated series with a bound on the neglected remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Both sides of `Σ_{j odd} ĝ_α(j) = (2/α)∫₀^α x/sin(πx) dx + (2/π) log((1+cos απ)/sin απ)`.
///
/// The left side is summed over odd `j ≤ 10⁵`; since the partial sums of
/// `sin(jπα)` over odd `j` are bounded by `1/sin(πα)`, the remainder is at
/// most `ĝ`-envelope at the next index divided by `sin(πα)`.
pub fn trapezoid_sum_identity(alpha: f64) -> Result<(TruncatedSum, f64)> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::Domain(format!("ramp width must lie in (0, 1/2), got {alpha}")));
    }
    const J_MAX: usize = 100_000;
    let spec = ProfileSpec::Trapezoid { alpha };
    let value: f64 = (1..=J_MAX)
        .rev()
        .filter(|j| j % 2 == 1)
        .map(|j| closed_form_coeff(&spec, j))
        .sum();
    let next = (J_MAX + 1 + J_MAX % 2) as f64;
    let tail_bound = 4.0 / (alpha * next * next * PI * PI) / (PI * alpha).sin();
    let lhs = TruncatedSum {
        value,
        tail_bound,
        terms: J_MAX.div_ceil(2),
    };

    let integral = quad::integrate(
        |x: f64| if x == 0.0 { 1.0 / PI } else { x / (PI * x).sin() },
        0.0,
        alpha,
        1e-14,
    )?;
    let a = PI * alpha;
    let rhs = 2.0 / alpha * integral.value + 2.0 / PI * ((1.0 + a.cos()) / a.sin()).ln();
    Ok((lhs, rhs))
}

/// `(Σ_{j odd} (a₀(j) − a_ε(j))²)^{1/2}` with `a_ε(j) = 4/(π j^{1+ε})`.
///
/// Summed over odd `j ≤ 10⁶`; the remainder of the squared series is at
/// most `(16/π²) Σ_{j>10⁶} j^{-2}` and the reported bound is its effect on
/// the square root.
pub fn jump_smoothed_l2_distance(eps: f64) -> Result<TruncatedSum> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::Domain(format!("smoothing exponent must be >= 0, got {eps}")));
    }
    const J_MAX: usize = 1_000_000;
    let squared: f64 = (1..=J_MAX)
        .rev()
        .filter(|j| j % 2 == 1)
        .map(|j| {
            let jf = j as f64;
            let d = 4.0 / (PI * jf) * (-(-eps * jf.ln()).exp_m1());
            d * d
        })
        .sum();
    let tail = if eps == 0.0 {
        0.0
    } else {
        16.0 / (PI * PI) * odd_tail_bound(2.0, J_MAX)
    };
    let value = squared.sqrt();
    let tail_bound = (squared + tail).sqrt() - value;
    Ok(TruncatedSum {
        value,
        tail_bound,
        terms: J_MAX.div_ceil(2),
    })
}
