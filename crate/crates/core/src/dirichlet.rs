//! Finite Dirichlet series and their polynomials on the polydisk.
//!
//! A finite series `m(z) = Σ_{n∈F} c_n n^{-z}` is rewritten, with the
//! primes `q₁ < … < q_d` dividing elements of `F` and `w_i = q_i^{-z}`, as
//! the polynomial `p(w) = Σ c_n Π w_i^{ν_i(n)}`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ptrig::PTrigContext;
use crate::profiles::{envelope_tail, CoefficientSeries, ProfileSpec};
use crate::special::{odd_tail_bound, odd_zeta};

/// A finite index set containing 1, with the prime factorisation of each element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportSet {
    elements: Vec<u64>,
    primes: Vec<u64>,
    /// Exponent vector of each element, aligned with `elements`.
    exponents: Vec<Vec<u32>>,
}

impl SupportSet {
    pub fn new(elements: &[u64]) -> Result<Self> {
        build_support(elements)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of distinct primes, i.e. the dimension of the torus.
    pub fn dim(&self) -> usize {
        self.primes.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// Exponent vector of `n`, if `n` is in the set.
    pub fn exponents(&self, n: u64) -> Option<&[u32]> {
        self.elements
            .binary_search(&n)
            .ok()
            .map(|i| self.exponents[i].as_slice())
    }

    pub(crate) fn exponent_table(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Largest element, which bounds every index the set refers to.
    pub fn max_element(&self) -> u64 {
        *self.elements.last().expect("support contains 1")
    }

    /// `{1, q, q²}` for the given number `q > 1`.
    pub fn three_term(q: u64) -> Result<Self> {
        build_support(&[1, q, q * q])
    }

    /// `q` if this set is `{1, q, q²}` with `q` prime.
    pub fn three_term_prime(&self) -> Option<u64> {
        match (self.elements.as_slice(), self.primes.as_slice()) {
            ([1, a, b], [q]) if *a == *q && *b == q * q => Some(*q),
            _ => None,
        }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sorts, deduplicates and factorises a support set.
pub fn build_support(elements: &[u64]) -> Result<SupportSet> {
    if elements.contains(&0) {
        return Err(Error::InvalidInput("support elements must be positive".into()));
    }
    let set: BTreeSet<u64> = elements.iter().copied().collect();
    if !set.contains(&1) {
        return Err(Error::InvalidInput("support must contain 1".into()));
    }
    let factored: Vec<(u64, Vec<(u64, u32)>)> = set.iter().map(|&n| (n, factorize(n))).collect();
    let primes: Vec<u64> = factored
        .iter()
        .flat_map(|(_, f)| f.iter().map(|&(q, _)| q))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let exponents = factored
        .iter()
        .map(|(_, f)| {
            primes
                .iter()
                .map(|q| f.iter().find(|(r, _)| r == q).map_or(0, |&(_, e)| e))
                .collect()
        })
        .collect();
    Ok(SupportSet {
        elements: set.into_iter().collect(),
        primes,
        exponents,
    })
}

/// Coefficients `c_n` attached to a support set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletPolynomial {
    support: SupportSet,
    coeffs: Vec<Complex64>,
}

impl DirichletPolynomial {
    /// `coeffs` are aligned with `support.elements()`.
    pub fn new(support: SupportSet, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != support.len() {
            return Err(Error::Dimension {
                expected: support.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self { support, coeffs })
    }

    pub fn from_real(support: SupportSet, coeffs: &[f64]) -> Result<Self> {
        Self::new(support, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Coefficients `f̂(n)`, `n ∈ F`, of a profile.
    pub fn from_series(series: &CoefficientSeries, support: SupportSet) -> Result<Self> {
        series.ensure(support.max_element() as usize)?;
        let coeffs = support
            .elements()
            .iter()
            .map(|&n| series.coeff(n as usize))
            .collect::<Result<Vec<_>>>()?;
        Self::from_real(support, &coeffs)
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> Option<Complex64> {
        self.support
            .elements()
            .binary_search(&n)
            .ok()
            .map(|i| self.coeffs[i])
    }

    /// Real parts, if every coefficient is real.
    pub fn real_coeffs(&self) -> Option<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|c| (c.im == 0.0).then_some(c.re))
            .collect()
    }

    /// `p(w)` at an arbitrary point of `ℂ^d`.
    pub fn eval_point(&self, w: &[Complex64]) -> Result<Complex64> {
        let d = self.support.dim();
        if w.len() != d {
            return Err(Error::Dimension { expected: d, got: w.len() });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(self.support.exponent_table())
            .map(|(c, nu)| {
                nu.iter()
                    .zip(w)
                    .fold(*c, |acc, (&e, wi)| acc * wi.powu(e))
            })
            .sum())
    }

    /// `m(z) = Σ c_n n^{-z}`.
    pub fn eval_series(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .zip(self.support.elements())
            .map(|(c, &n)| c * (-z * (n as f64).ln()).exp())
            .sum()
    }

    /// `(q₁^{-z}, …, q_d^{-z})`.
    pub fn torus_point(&self, z: Complex64) -> Vec<Complex64> {
        self.support
            .primes()
            .iter()
            .map(|&q| (-z * (q as f64).ln()).exp())
            .collect()
    }
}

/// `p(e^{iθ₁}, …, e^{iθ_d})`.
pub fn eval_poly(poly: &DirichletPolynomial, angles: &[f64]) -> Result<Complex64> {
    let d = poly.support().dim();
    if angles.len() != d {
        return Err(Error::Dimension { expected: d, got: angles.len() });
    }
    Ok(poly
        .coeffs()
        .iter()
        .zip(poly.support().exponent_table())
        .map(|(c, nu)| {
            let phase: f64 = nu.iter().zip(angles).map(|(&e, t)| e as f64 * t).sum();
            c * Complex64::from_polar(1.0, phase)
        })
        .sum())
}

/// Bound on `Σ_{j>n} φ_j j^{-x}` for `x ≥ 0`.
fn weighted_envelope_tail(spec: &ProfileSpec, n: usize, x: f64) -> Result<f64> {
    if x == 0.0 {
        return envelope_tail(spec, n);
    }
    match *spec {
        ProfileSpec::Jump | ProfileSpec::JumpSmoothed { eps: 0.0 } => envelope_tail(spec, n),
        ProfileSpec::JumpSmoothed { eps } => Ok(4.0 / PI * odd_tail_bound(1.0 + eps + x, n)),
        ProfileSpec::Trapezoid { alpha } => {
            Ok(4.0 / (alpha * PI * PI) * odd_tail_bound(2.0 + x, n))
        }
        ProfileSpec::Cubic { beta } => {
            let c = 12.0 / (PI.powi(3) * beta * beta);
            Ok(c * (odd_tail_bound(4.0 + x, n) / (PI * beta) + odd_tail_bound(3.0 + x, n)))
        }
        ProfileSpec::PSine { p } => {
            let pi_p = PTrigContext::new(p)?.pi_p();
            Ok(4.0 * pi_p / (PI * PI) * odd_tail_bound(2.0 + x, n))
        }
    }
}

/// `Σ_{j≤jmax} f̂(j) j^{-z}` together with a bound `Σ_{j>jmax} φ_j j^{-ℜz}` on the remainder.
pub fn eval_multiplier_truncated(
    profile: &ProfileSpec,
    z: Complex64,
    jmax: usize,
) -> Result<(Complex64, f64)> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("multiplier needs Re z > 0, got {z}")));
    }
    if jmax == 0 {
        return Err(Error::InvalidInput("jmax must be positive".into()));
    }
    // rejects profiles without a summable envelope
    let tail = weighted_envelope_tail(profile, jmax, z.re)?;
    let series = CoefficientSeries::new(*profile)?;
    let coeffs = series.coeffs(jmax)?;
    let value = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, &c)| c * (-z * ((i + 1) as f64).ln()).exp())
        .sum();
    Ok((value, tail))
}

/// Truncation length for the smoothed-jump multiplier off the real axis.
const SMOOTHED_JMAX: usize = 1_000_000;

/// `m(z) = (4/π)(1 − 2^{-(1+z+ε)}) ζ(1+z+ε)` for the smoothed jump.
///
/// Real `z` uses the closed form; complex `z` falls back to the truncated
/// series over odd `j ≤ 10⁶`, whose remainder is bounded by
/// `(4/π) Σ_{j>10⁶} j^{-(1+ε+ℜz)}`.
pub fn jump_smoothed_multiplier(eps: f64, z: Complex64) -> Result<Complex64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain(format!("smoothing exponent must be > 0, got {eps}")));
    }
    let s = 1.0 + z.re + eps;
    if !(s > 1.0) {
        return Err(Error::Domain(format!(
            "closed form needs Re z > -ε, got z = {z}, ε = {eps}"
        )));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(4.0 / PI * odd_zeta(s)?, 0.0));
    }
    let w = Complex64::new(1.0 + eps, 0.0) + z;
    let sum: Complex64 = (1..=SMOOTHED_JMAX)
        .rev()
        .filter(|j| j % 2 == 1)
        .map(|j| (-w * (j as f64).ln()).exp())
        .sum();
    Ok(4.0 / PI * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn support_examples() {
        let s = build_support(&[1]).unwrap();
        assert_eq!(s.dim(), 0);
        let s = build_support(&[9, 1, 3]).unwrap();
        assert_eq!(s.primes(), &[3]);
        assert_eq!(s.exponents(3).unwrap(), &[1]);
        assert_eq!(s.exponents(9).unwrap(), &[2]);
        assert_eq!(s.three_term_prime(), Some(3));
        let s = build_support(&[1, 3, 5, 9, 25]).unwrap();
        assert_eq!(s.primes(), &[3, 5]);
        assert_eq!(s.exponents(3).unwrap(), &[1, 0]);
        assert_eq!(s.exponents(5).unwrap(), &[0, 1]);
        assert_eq!(s.exponents(9).unwrap(), &[2, 0]);
        assert_eq!(s.exponents(25).unwrap(), &[0, 2]);
        assert_eq!(s.three_term_prime(), None);
        assert!(build_support(&[3, 9]).is_err());
        assert!(build_support(&[1, 0]).is_err());
    }

    #[test]
    fn factorisation_round_trip() {
        let elems: Vec<u64> = (1..=2000).collect();
        let s = build_support(&elems).unwrap();
        for &n in s.elements() {
            let nu = s.exponents(n).unwrap();
            let back: u64 = s
                .primes()
                .iter()
                .zip(nu)
                .map(|(&q, &e)| q.pow(e))
                .product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn evaluation_examples() {
        let p = DirichletPolynomial::from_real(build_support(&[1]).unwrap(), &[0.7]).unwrap();
        assert_eq!(eval_poly(&p, &[]).unwrap(), c(0.7));
        let s = build_support(&[1, 3, 9]).unwrap();
        let p = DirichletPolynomial::from_real(s, &[1.0, -0.5, 0.1]).unwrap();
        assert!((eval_poly(&p, &[0.0]).unwrap() - c(0.6)).norm() < 1e-15);
        assert!(eval_poly(&p, &[0.0, 1.0]).is_err());
        assert!(DirichletPolynomial::from_real(build_support(&[1, 3]).unwrap(), &[1.0]).is_err());
    }

    #[test]
    fn boundary_matches_direct_three_term() {
        let s = build_support(&[1, 7, 49]).unwrap();
        let (a, b, d) = (0.9, -0.3, 0.2);
        let p = DirichletPolynomial::from_real(s, &[a, b, d]).unwrap();
        for i in 0..100 {
            let t = -PI + 2.0 * PI * i as f64 / 100.0;
            let e = Complex64::from_polar(1.0, t);
            let direct = (a + b * e + d * e * e).norm();
            assert!((eval_poly(&p, &[t]).unwrap().norm() - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn trapezoid_two_prime_expansion() {
        let spec = ProfileSpec::trapezoid(0.035).unwrap();
        let series = CoefficientSeries::new(spec).unwrap();
        let p = DirichletPolynomial::from_series(&series, build_support(&[1, 3, 5, 9, 25]).unwrap())
            .unwrap();
        let g = |j| series.coeff(j).unwrap();
        for i in 0..20 {
            for k in 0..20 {
                let x = -PI + 2.0 * PI * i as f64 / 20.0;
                let y = -PI + 2.0 * PI * k as f64 / 20.0;
                let re = g(1) + g(3) * x.cos() + g(9) * (2.0 * x).cos() + g(5) * y.cos()
                    + g(25) * (2.0 * y).cos();
                let im = g(3) * x.sin() + g(9) * (2.0 * x).sin() + g(5) * y.sin() + g(25) * (2.0 * y).sin();
                let v = eval_poly(&p, &[x, y]).unwrap();
                assert!((v.re - re).abs() < 1e-15 && (v.im - im).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn series_equals_polynomial_at_prime_powers() {
        let s = build_support(&[1, 2, 3, 6, 10, 45]).unwrap();
        let p = DirichletPolynomial::new(
            s,
            vec![c(1.0), Complex64::new(0.2, -0.1), c(-0.3), c(0.05), Complex64::new(0.0, 0.4), c(0.1)],
        )
        .unwrap();
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let z = Complex64::new(0.5 + 2.5 * next(), 20.0 * next() - 10.0);
            let lhs = p.eval_series(z);
            let rhs = p.eval_point(&p.torus_point(z)).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert!((p.eval_series(c(0.0)) - p.coeffs().iter().sum::<Complex64>()).norm() < 1e-15);
    }

    #[test]
    fn truncated_multiplier() {
        let (v, tail) = eval_multiplier_truncated(&ProfileSpec::PSine { p: 2.0 }, c(1.0), 1).unwrap();
        assert!((v - c(1.0)).norm() < 1e-12);
        assert!(tail > 0.0 && tail < 0.5);
        let spec = ProfileSpec::trapezoid(0.3).unwrap();
        let (a, ta) = eval_multiplier_truncated(&spec, c(2.0), 10_000).unwrap();
        let (b, _) = eval_multiplier_truncated(&spec, c(2.0), 100_000).unwrap();
        assert!(ta < 1e-6 && (a - b).norm() <= ta);
        assert!(eval_multiplier_truncated(&ProfileSpec::Jump, c(1.0), 10).is_err());
        assert!(eval_multiplier_truncated(&spec, c(0.0), 10).is_err());
    }

    #[test]
    fn smoothed_jump_closed_form() {
        let v = jump_smoothed_multiplier(1.0, c(1.0)).unwrap();
        let want = 4.0 / PI * (1.0 - 0.125) * crate::special::zeta(3.0).unwrap();
        assert!((v.re - want).abs() < 1e-14 && v.im == 0.0);

        let spec = ProfileSpec::jump_smoothed(0.5).unwrap();
        let (trunc, tail) = eval_multiplier_truncated(&spec, c(0.5), 200_000).unwrap();
        let closed = jump_smoothed_multiplier(0.5, c(0.5)).unwrap();
        assert!((trunc - closed).norm() <= tail);

        let z = Complex64::new(0.7, 3.0);
        let (trunc, tail) = eval_multiplier_truncated(&spec, z, 200_000).unwrap();
        let off_axis = jump_smoothed_multiplier(0.5, z).unwrap();
        assert!((trunc - off_axis).norm() <= tail);

        let mut last = 0.0;
        for k in 1..=6 {
            let z = -0.5 + 10f64.powi(-k);
            let v = jump_smoothed_multiplier(0.5, c(z)).unwrap().re;
            assert!(v > last);
            last = v;
        }
        assert!(jump_smoothed_multiplier(0.5, c(-0.5)).is_err());
    }
}
