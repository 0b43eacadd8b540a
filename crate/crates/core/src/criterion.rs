//! Sufficient condition for the dilation system of a profile to be a Riesz
//! basis equivalent to the Fourier sine basis.
//!
//! With a finite support `F ∋ 1`, `μ = min_{𝕋^d} |Σ_{j∈F} f̂(j) w^{ν(j)}|`,
//! an envelope `|f̂(j)| ≤ φ_j` with sum `φ`, and any `k ≥ 0`, equivalence
//! follows from
//!
//! ```text
//! (zero-free)  Σ_{j∈F\{1}} |f̂(j)| < f̂(1)
//! (margin)     μ − φ + Σ_{j∈F} |f̂(j)| + Σ_{j≤k} (φ_j − |f̂(j)|) > 0.
//! ```
//!
//! The checks here only ever certify; failing them proves nothing.

use serde::Serialize;

use crate::dirichlet::{DirichletPolynomial, SupportSet};
use crate::error::{Error, Result};
use crate::profiles::{envelope_sum, envelope_table, CoefficientSeries, ProfileSpec};
use crate::torusmin::{min_modulus_three_term, min_modulus_with, MinMethod, MinOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    Inconclusive,
}

impl Verdict {
    fn from_margins(positive: &[f64]) -> Self {
        if positive.iter().all(|&m| m > 0.0) {
            Verdict::Equivalent
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub profile: ProfileSpec,
    pub support: Vec<u64>,
    pub primes: Vec<u64>,
    pub k: usize,
    /// Minimum modulus as computed, before the tolerance is subtracted.
    pub mu: f64,
    pub mu_method: MinMethod,
    pub mu_tolerance: f64,
    pub phi: f64,
    pub sum_f_abs: f64,
    pub correction: f64,
    pub cond1_margin: f64,
    /// Uses `mu − mu_tolerance`.
    pub cond2_value: f64,
    pub verdict: Verdict,
}

/// Criterion for `profile` with the default minimiser settings.
pub fn check_multi_term(profile: &ProfileSpec, support: &SupportSet, k: usize) -> Result<CriterionReport> {
    let series = CoefficientSeries::new(*profile)?;
    check_multi_term_with(&series, support, k, &MinOptions::default())
}

/// Criterion reusing a coefficient table.
pub fn check_multi_term_with(
    series: &CoefficientSeries,
    support: &SupportSet,
    k: usize,
    opts: &MinOptions,
) -> Result<CriterionReport> {
    let profile = *series.profile();
    let phi = envelope_sum(&profile)?;
    let n = k.max(support.max_element() as usize);
    let coeffs = series.coeffs(n)?;
    let env = envelope_table(&profile, k)?;

    let poly = DirichletPolynomial::from_series(series, support.clone())?;
    let min = min_modulus_with(&poly, opts)?;

    let f = |j: u64| coeffs[j as usize - 1];
    let sum_f_abs: f64 = support.elements().iter().map(|&j| f(j).abs()).sum();
    let rest: f64 = support.elements().iter().skip(1).map(|&j| f(j).abs()).sum();
    let cond1_margin = f(1) - rest;
    let correction: f64 = env.iter().zip(&coeffs).map(|(e, c)| e - c.abs()).sum();
    let cond2_value = (min.mu - min.refine_tolerance) - phi + sum_f_abs + correction;

    Ok(CriterionReport {
        profile,
        support: support.elements().to_vec(),
        primes: support.primes().to_vec(),
        k,
        mu: min.mu,
        mu_method: min.method,
        mu_tolerance: min.refine_tolerance,
        phi,
        sum_f_abs,
        correction,
        cond1_margin,
        cond2_value,
        verdict: Verdict::from_margins(&[cond1_margin, cond2_value]),
    })
}

/// Which branch of the three-term minimum applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `|c₂|(c₁+c₃) ≥ 4c₁c₃`: the minimum is `c₁ + c₃ − |c₂|`.
    Aligned,
    /// Otherwise: `(c₁ − c₃)√(1 − c₂²/(4c₁c₃))`.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub profile: ProfileSpec,
    pub prime: u64,
    pub k: usize,
    pub c1: f64,
    pub c_prime: f64,
    pub c_prime_sq: f64,
    /// `f̂(q²) > 0` and `f̂(q²) + |f̂(q)| < f̂(1)`.
    pub gate_holds: bool,
    pub regime: Option<Regime>,
    pub mu: Option<f64>,
    /// Upper bound for `Σ_{j∉{1,q,q²}} |f̂(j)|`.
    pub outside_bound: f64,
    /// Right side minus left side of the regime's inequality.
    pub margin: Option<f64>,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

/// The three-term corollary for `F = {1, q, q²}` with the tail bounded by
/// the envelope alone.
pub fn check_two_term_corollary(profile: &ProfileSpec, prime: u64) -> Result<CorollaryReport> {
    let series = CoefficientSeries::new(*profile)?;
    two_term_corollary_from_series(&series, prime, 0)
}

/// As [`check_two_term_corollary`], with the first `k` coefficients used
/// exactly in the tail bound.
pub fn two_term_corollary_from_series(
    series: &CoefficientSeries,
    prime: u64,
    k: usize,
) -> Result<CorollaryReport> {
    let support = SupportSet::three_term(prime)?;
    if support.three_term_prime() != Some(prime) {
        return Err(Error::InvalidInput(format!("{prime} is not prime")));
    }
    let profile = *series.profile();
    let q = prime as usize;
    let coeffs = series.coeffs(k.max(q * q))?;
    let env = envelope_table(&profile, k)?;
    let phi = envelope_sum(&profile)?;
    let (c1, cp, cp2) = (coeffs[0], coeffs[q - 1], coeffs[q * q - 1]);
    let correction: f64 = env.iter().zip(&coeffs).map(|(e, c)| e - c.abs()).sum();
    let outside_bound = phi - correction - (c1.abs() + cp.abs() + cp2.abs());
    corollary_from_values(profile, prime, k, c1, cp, cp2, outside_bound)
}

/// Evaluates the corollary for explicit coefficients and tail bound.
pub fn corollary_from_values(
    profile: ProfileSpec,
    prime: u64,
    k: usize,
    c1: f64,
    cp: f64,
    cp2: f64,
    outside_bound: f64,
) -> Result<CorollaryReport> {
    let gate_holds = cp2 > 0.0 && cp2 + cp.abs() < c1;
    let mut report = CorollaryReport {
        profile,
        prime,
        k,
        c1,
        c_prime: cp,
        c_prime_sq: cp2,
        gate_holds,
        regime: None,
        mu: None,
        outside_bound,
        margin: None,
        verdict: Verdict::Inconclusive,
        reason: None,
    };
    if !gate_holds {
        report.reason = Some("gate failed: need f(q^2) > 0 and f(q^2) + |f(q)| < f(1)".into());
        return Ok(report);
    }
    let mu = min_modulus_three_term(c1, cp, cp2)?;
    let (regime, margin) = if cp.abs() * (c1 + cp2) >= 4.0 * c1 * cp2 {
        // Σ_{j∉{1,q²}} |f̂(j)| < f̂(1) + f̂(q²)
        (Regime::Aligned, c1 + cp2 - (outside_bound + cp.abs()))
    } else {
        (Regime::Interior, mu - outside_bound)
    };
    report.regime = Some(regime);
    report.mu = Some(mu);
    report.margin = Some(margin);
    if margin > 0.0 {
        report.verdict = Verdict::Equivalent;
    } else {
        report.reason = Some("tail bound exceeds the minimum modulus".into());
    }
    Ok(report)
}

/// Support `{1, 3, 9}` for `d = 1`, `{1, 3, 5, 9, 25}` for `d = 2`.
pub fn prime_square_support(d: usize) -> Result<SupportSet> {
    match d {
        1 => SupportSet::new(&[1, 3, 9]),
        2 => SupportSet::new(&[1, 3, 5, 9, 25]),
        _ => Err(Error::InvalidInput(format!("prime-square support defined for d in {{1, 2}}, got {d}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PSineMultiReport {
    pub p: f64,
    pub d: usize,
    pub k: usize,
    /// The margin `J_d(k, p)`.
    pub j_value: f64,
    pub mu_bar: f64,
    /// `ŝ_p(1) − Σ_{j∈F\{1}} |ŝ_p(j)|`.
    pub zero_free_margin: f64,
    pub verdict: Verdict,
    pub report: CriterionReport,
}

/// The p-sine criterion with support `{1, 3, 9}` or `{1, 3, 5, 9, 25}`.
pub fn lemma52_check(p: f64, d: usize, k: usize) -> Result<PSineMultiReport> {
    let series = CoefficientSeries::new(ProfileSpec::psine(p)?)?;
    psine_multi_from_series(&series, d, k, &MinOptions::default())
}

pub fn psine_multi_from_series(
    series: &CoefficientSeries,
    d: usize,
    k: usize,
    opts: &MinOptions,
) -> Result<PSineMultiReport> {
    let ProfileSpec::PSine { p } = *series.profile() else {
        return Err(Error::InvalidInput("expected a p-sine profile".into()));
    };
    let support = prime_square_support(d)?;
    let report = check_multi_term_with(series, &support, k, opts)?;
    Ok(PSineMultiReport {
        p,
        d,
        k,
        j_value: report.cond2_value,
        mu_bar: report.mu,
        zero_free_margin: report.cond1_margin,
        verdict: report.verdict,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeNineReport {
    pub p: f64,
    pub k: usize,
    pub s1: f64,
    pub s3: f64,
    pub s9: f64,
    /// `ŝ_p(1) − |ŝ_p(3)| − ŝ_p(9)`.
    pub cond1_margin: f64,
    /// `|ŝ_p(3)|(ŝ_p(1) + ŝ_p(9)) − 4ŝ_p(9)ŝ_p(1)`.
    pub cond2_margin: f64,
    /// `π_p/2 − (4π_p/π²) Σ_{odd j≤k} j^{-2}`.
    pub lhs: f64,
    /// `ŝ_p(1) + ŝ_p(9) − Σ_{3≤j≤k, j≠9} |ŝ_p(j)|`.
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub verdict: Verdict,
}

/// Largest exponent for which the support `{1, 3, 9}` check is stated.
pub const THREE_NINE_P_MAX: f64 = 12.0 / 11.0;

/// The support-`{1, 3, 9}` check in the aligned regime, for `1 < p < 12/11`.
pub fn lemma51_check(p: f64, k: usize) -> Result<ThreeNineReport> {
    if !(p > 1.0 && p < THREE_NINE_P_MAX) {
        return Err(Error::Domain(format!("exponent must lie in (1, 12/11), got {p}")));
    }
    let series = CoefficientSeries::new(ProfileSpec::psine(p)?)?;
    three_nine_from_series(&series, k)
}

pub fn three_nine_from_series(series: &CoefficientSeries, k: usize) -> Result<ThreeNineReport> {
    let ProfileSpec::PSine { p } = *series.profile() else {
        return Err(Error::InvalidInput("expected a p-sine profile".into()));
    };
    if k < 9 || k.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("k must be odd and at least 9, got {k}")));
    }
    let c = series.coeffs(k)?;
    let env = envelope_table(series.profile(), k)?;
    let (s1, s3, s9) = (c[0], c[2], c[8]);
    let cond1_margin = s1 - s3.abs() - s9;
    let cond2_margin = s3.abs() * (s1 + s9) - 4.0 * s9 * s1;
    let phi = envelope_sum(series.profile())?;
    let lhs = phi - env.iter().sum::<f64>();
    let rest: f64 = (3..=k).filter(|&j| j != 9).map(|j| c[j - 1].abs()).sum();
    let rhs = s1 + s9 - rest;
    let margin = rhs - lhs;
    // s9 > 0 is part of the setting; checked rather than assumed
    let verdict = if s9 > 0.0 && cond2_margin >= 0.0 {
        Verdict::from_margins(&[cond1_margin, margin])
    } else {
        Verdict::Inconclusive
    };
    Ok(ThreeNineReport {
        p,
        k,
        s1,
        s3,
        s9,
        cond1_margin,
        cond2_margin,
        lhs,
        rhs,
        margin,
        verdict,
    })
}
