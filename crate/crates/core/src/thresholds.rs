//! Parameter values at which the sufficient conditions start to hold.
//!
//! Every threshold is the root of a scalar margin function, located by
//! bisection on a bracket with a verified sign change. The margins are
//! not smooth (absolute values of coefficients, minima over tori), so no
//! derivative information is used.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::criterion::{check_multi_term_with, prime_square_support, three_nine_from_series};
use crate::error::{Error, Result};
use crate::profiles::{envelope_tail, CoefficientSeries, ProfileSpec};
use crate::quad;
use crate::special::zeta;
use crate::torusmin::MinOptions;

/// Iteration cap for [`bisect`].
pub const MAX_ITER: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Bracket used for the p-sine recipes; see [`named_recipe`].
pub const PSINE_BRACKET: (f64, f64) = (1.01, 1.09);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: f64,
    /// Margin at `value`.
    pub residual: f64,
    /// Final bracket width.
    pub width: f64,
    pub iterations: usize,
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `2·tol` or `f` vanishes exactly.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("bad bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(Root { value: a, residual: 0.0, width: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { value: b, residual: 0.0, width: 0.0, iterations: 0 });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }
    for it in 1..=MAX_ITER {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(Root { value: m, residual: 0.0, width: 0.0, iterations: it });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if b - a <= 2.0 * tol {
            let value = 0.5 * (a + b);
            return Ok(Root {
                value,
                residual: f(value)?,
                width: b - a,
                iterations: it,
            });
        }
    }
    Err(Error::IterationCap(MAX_ITER))
}

/// Profile family whose parameter is being varied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Trapezoid,
    Cubic,
    PSine,
}

impl Family {
    pub fn profile(self, x: f64) -> Result<ProfileSpec> {
        match self {
            Family::Trapezoid => ProfileSpec::trapezoid(x),
            Family::Cubic => ProfileSpec::cubic(x),
            Family::PSine => ProfileSpec::psine(x),
        }
    }
}

/// The scalar function whose sign change defines a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Margin {
    /// `sin(πα) − (π²/8 − 1)`.
    TrapezoidFirstTerm,
    /// `2 sin(πα) + Σ_{i=0}^{terms} (1 − |sin((2i+1)πα)|)/(2i+1)² − π²/8`.
    TrapezoidOddSum { terms: usize },
    /// `ĝ(1) − Σ_{j≥3} |ĝ(j)|`, summed to `n` with the envelope tail added.
    TrapezoidOneTerm { n: usize },
    /// `π²∫₀^α x/sin(πx) dx + πα log((1+cos πα)/sin πα) − 4 sin(πα)`.
    TrapezoidIdentity,
    /// `sin(πβ)/(πβ) − cos(πβ) − (π³/96 − 1/π)/β − (7/8)ζ(3) + 1`.
    CubicFirstTerm,
    /// `sin(πβ)/(πβ) − cos(πβ) − (7/4)ζ(3) + 2`, from the cruder `24/(j³π³β²)` envelope.
    CubicCrudeEnvelope,
    /// The general criterion's second margin with the prime-square support.
    Criterion { family: Family, d: usize, k: usize },
    /// `ŝ(1) − Σ_{3≤j≤n} |ŝ(j)| − (envelope tail beyond n)`.
    PSineOneTerm { n: usize },
    /// Support-`{1, 3, 9}` margin in the aligned regime.
    ThreeNine { k: usize },
    /// `|ŝ(3)|(ŝ(1) + ŝ(9)) − 4ŝ(9)ŝ(1)`.
    ThreeNineAlignment,
}

impl Margin {
    pub fn family(&self) -> Family {
        match *self {
            Margin::TrapezoidFirstTerm
            | Margin::TrapezoidOddSum { .. }
            | Margin::TrapezoidOneTerm { .. }
            | Margin::TrapezoidIdentity => Family::Trapezoid,
            Margin::CubicFirstTerm | Margin::CubicCrudeEnvelope => Family::Cubic,
            Margin::Criterion { family, .. } => family,
            Margin::PSineOneTerm { .. } | Margin::ThreeNine { .. } | Margin::ThreeNineAlignment => Family::PSine,
        }
    }

    /// Evaluates the margin at parameter `x`.
    pub fn eval(&self, x: f64, opts: &MinOptions) -> Result<f64> {
        let profile = self.family().profile(x)?;
        match *self {
            Margin::TrapezoidFirstTerm => Ok((PI * x).sin() - (PI * PI / 8.0 - 1.0)),
            Margin::TrapezoidOddSum { terms } => Ok(trapezoid_odd_sum(x, terms) - PI * PI / 8.0),
            Margin::TrapezoidIdentity => {
                let integral = quad::integrate(
                    |t: f64| if t == 0.0 { 1.0 / PI } else { t / (PI * t).sin() },
                    0.0,
                    x,
                    1e-12,
                )?;
                let a = PI * x;
                Ok(PI * PI * integral.value + a * ((1.0 + a.cos()) / a.sin()).ln() - 4.0 * a.sin())
            }
            Margin::CubicFirstTerm => Ok(cubic_first_term(x, zeta(3.0)?)),
            Margin::CubicCrudeEnvelope => Ok(cubic_crude_envelope(x, zeta(3.0)?)),
            Margin::Criterion { d, k, .. } => {
                let series = CoefficientSeries::new(profile)?;
                let support = prime_square_support(d)?;
                Ok(check_multi_term_with(&series, &support, k, opts)?.cond2_value)
            }
            Margin::TrapezoidOneTerm { n } | Margin::PSineOneTerm { n } => {
                let series = CoefficientSeries::new(profile)?;
                let c = series.coeffs(n)?;
                let rest: f64 = c[2..].iter().map(|v| v.abs()).sum();
                Ok(c[0] - rest - envelope_tail(&profile, n)?)
            }
            Margin::ThreeNine { k } => {
                let series = CoefficientSeries::new(profile)?;
                Ok(three_nine_from_series(&series, k)?.margin)
            }
            Margin::ThreeNineAlignment => {
                let series = CoefficientSeries::new(profile)?;
                let c = series.coeffs(9)?;
                Ok(c[2].abs() * (c[0] + c[8]) - 4.0 * c[8] * c[0])
            }
        }
    }
}

/// `2 sin(πα) + Σ_{i=0}^{terms} (1 − |sin((2i+1)πα)|)/(2i+1)²`.
pub fn trapezoid_odd_sum(alpha: f64, terms: usize) -> f64 {
    let tail: f64 = (0..=terms)
        .rev()
        .map(|i| {
            let j = (2 * i + 1) as f64;
            (1.0 - (j * PI * alpha).sin().abs()) / (j * j)
        })
        .sum();
    2.0 * (PI * alpha).sin() + tail
}

/// The cubic one-term margin with `ζ(3)` supplied by the caller.
pub fn cubic_first_term(beta: f64, zeta3: f64) -> f64 {
    cubic_first(beta) - (PI.powi(3) / 96.0 - 1.0 / PI) / beta - 0.875 * zeta3 + 1.0
}

pub fn cubic_crude_envelope(beta: f64, zeta3: f64) -> f64 {
    cubic_first(beta) - 1.75 * zeta3 + 2.0
}

fn cubic_first(beta: f64) -> f64 {
    let y = PI * beta;
    y.sin() / y - y.cos()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRecipe {
    pub name: String,
    pub description: String,
    pub margin: Margin,
    pub bracket: (f64, f64),
    pub tol: f64,
    /// Value the recipe is expected to reproduce, if one is known.
    pub expected: Option<f64>,
    /// Acceptable distance from `expected`.
    pub expected_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub name: String,
    pub value: f64,
    pub residual: f64,
    pub width: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub margin: Margin,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub expected: Option<f64>,
    pub expected_tol: Option<f64>,
}

impl ThresholdResult {
    /// `Some(true)` when an expected value exists and is matched.
    pub fn matches_expected(&self) -> Option<bool> {
        match (self.expected, self.expected_tol) {
            (Some(e), Some(t)) => Some((self.value - e).abs() <= t),
            _ => None,
        }
    }
}

/// Names accepted by [`named_recipe`], cheapest first.
pub const RECIPE_NAMES: &[&str] = &[
    "alpha0",
    "alpha1",
    "alpha2",
    "alpha4",
    "alpha5",
    "beta0",
    "betaTilde0",
    "beta1",
    "beta2",
    "p3",
    "p4",
    "lemma51_k61",
    "lemma51_k63",
    "p5",
];

fn recipe(
    name: &str,
    description: &str,
    margin: Margin,
    bracket: (f64, f64),
    tol: f64,
    expected: Option<(f64, f64)>,
) -> ThresholdRecipe {
    ThresholdRecipe {
        name: name.into(),
        description: description.into(),
        margin,
        bracket,
        tol,
        expected: expected.map(|e| e.0),
        expected_tol: expected.map(|e| e.1),
    }
}

/// Looks up a recipe by name.
///
/// `lemma51_k<K>` is accepted for any odd `K ≥ 9`.
pub fn named_recipe(name: &str) -> Result<ThresholdRecipe> {
    const AB: (f64, f64) = (0.01, 0.49);
    const P_TOL: f64 = 1e-7;
    let r = match name {
        "alpha0" => recipe(
            name,
            "trapezoid, support {1}, k = 1: sin(πα) = π²/8 − 1",
            Margin::TrapezoidFirstTerm,
            AB,
            1e-12,
            Some((0.0750835, 1e-6)),
        ),
        "alpha1" => recipe(
            name,
            "trapezoid, support {1}, odd indices up to 1001",
            Margin::TrapezoidOddSum { terms: 500 },
            AB,
            DEFAULT_TOL,
            Some((0.0421317, 1e-4)),
        ),
        "alpha2" => recipe(
            name,
            "trapezoid: ĝ(1) = Σ_{j≥3} |ĝ(j)| (sum to 2·10⁵ plus envelope tail)",
            Margin::TrapezoidOneTerm { n: 200_000 },
            (0.02, 0.2),
            DEFAULT_TOL,
            None,
        ),
        "alpha4" => recipe(
            name,
            "trapezoid: Σ_{j odd ≥ 3} ĝ(j) = ĝ(1)",
            Margin::TrapezoidIdentity,
            AB,
            1e-11,
            Some((0.0318993, 1e-5)),
        ),
        "alpha5" => recipe(
            name,
            "trapezoid, support {1, 3, 5, 9, 25}, k = 50",
            Margin::Criterion { family: Family::Trapezoid, d: 2, k: 50 },
            AB,
            DEFAULT_TOL,
            Some((0.0287740, 5e-4)),
        ),
        "beta0" => recipe(
            name,
            "cubic, support {1}, full envelope",
            Margin::CubicFirstTerm,
            AB,
            1e-12,
            Some((0.159059, 1e-4)),
        ),
        "betaTilde0" => recipe(
            name,
            "cubic, support {1}, envelope 24/(j³π³β²)",
            Margin::CubicCrudeEnvelope,
            AB,
            1e-12,
            Some((0.180340, 1e-4)),
        ),
        "beta1" => recipe(
            name,
            "cubic, support {1, 3, 9}, k = 100",
            Margin::Criterion { family: Family::Cubic, d: 1, k: 100 },
            AB,
            DEFAULT_TOL,
            Some((0.0320481, 1e-3)),
        ),
        "beta2" => recipe(
            name,
            "cubic, support {1, 3, 5, 9, 25}, k = 100",
            Margin::Criterion { family: Family::Cubic, d: 2, k: 100 },
            AB,
            DEFAULT_TOL,
            Some((0.0291447, 1e-3)),
        ),
        "p3" => recipe(
            name,
            "p-sine: ŝ(1) = Σ_{j≥3} |ŝ(j)|, summed to 4096 plus envelope tail",
            Margin::PSineOneTerm { n: 4096 },
            PSINE_BRACKET,
            P_TOL,
            Some((1.04399, 1e-3)),
        ),
        "p4" => recipe(
            name,
            "p-sine: |ŝ(3)|(ŝ(1) + ŝ(9)) = 4ŝ(9)ŝ(1)",
            Margin::ThreeNineAlignment,
            PSINE_BRACKET,
            P_TOL,
            Some((1.03854, 1e-3)),
        ),
        "p5" => recipe(
            name,
            "p-sine, support {1, 3, 5, 9, 25}, k = 251",
            Margin::Criterion { family: Family::PSine, d: 2, k: 251 },
            PSINE_BRACKET,
            P_TOL,
            Some((1.02975, 1e-3)),
        ),
        other => {
            let k = other
                .strip_prefix("lemma51_k")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|k| *k >= 9 && k % 2 == 1)
                .ok_or_else(|| Error::InvalidInput(format!("unknown threshold name {other:?}")))?;
            let expected = match k {
                61 => Some((1.03876, 1e-3)),
                63 => Some((1.03852, 1e-3)),
                _ => None,
            };
            recipe(
                other,
                &format!("p-sine, support {{1, 3, 9}}, aligned regime, k = {k}"),
                Margin::ThreeNine { k },
                PSINE_BRACKET,
                P_TOL,
                expected,
            )
        }
    };
    Ok(r)
}

/// Every recipe in [`RECIPE_NAMES`].
pub fn named_recipes() -> Vec<ThresholdRecipe> {
    RECIPE_NAMES.iter().map(|n| named_recipe(n).expect("listed names resolve")).collect()
}

/// Root of the recipe's margin on its bracket.
pub fn solve(recipe: &ThresholdRecipe) -> Result<ThresholdResult> {
    solve_with(recipe, &MinOptions::default())
}

pub fn solve_with(recipe: &ThresholdRecipe, opts: &MinOptions) -> Result<ThresholdResult> {
    let (lo, hi) = recipe.bracket;
    let root = bisect(|x| recipe.margin.eval(x, opts), lo, hi, recipe.tol)?;
    let (k, d) = match recipe.margin {
        Margin::TrapezoidFirstTerm => (Some(1), None),
        Margin::TrapezoidOddSum { terms } => (Some(2 * terms + 1), None),
        Margin::Criterion { d, k, .. } => (Some(k), Some(d)),
        Margin::ThreeNine { k } => (Some(k), Some(1)),
        Margin::PSineOneTerm { n } | Margin::TrapezoidOneTerm { n } => (Some(n), None),
        _ => (None, None),
    };
    Ok(ThresholdResult {
        name: recipe.name.clone(),
        value: root.value,
        residual: root.residual,
        width: root.width,
        iterations: root.iterations,
        bracket: recipe.bracket,
        margin: recipe.margin,
        k,
        d,
        expected: recipe.expected,
        expected_tol: recipe.expected_tol,
    })
}

/// Solves every named recipe, in the order of [`RECIPE_NAMES`].
pub fn named_thresholds() -> Result<Vec<ThresholdResult>> {
    named_recipes().iter().map(solve).collect()
}

/// `Σ_{j=3}^{n} |ĝ_α(j)| > ĝ_α(1)`: whether the one-term comparison fails at `α`.
pub fn one_term_failure_witness(alpha: f64, n: usize) -> Result<bool> {
    let spec = ProfileSpec::trapezoid(alpha)?;
    let series = CoefficientSeries::new(spec)?;
    let c = series.coeffs(n.max(1))?;
    let rest: f64 = c.iter().skip(2).map(|v| v.abs()).sum();
    Ok(rest > c[0])
}

/// The witness at `α = 0.04` with indices up to 111.
pub fn alpha3_witness() -> bool {
    one_term_failure_witness(0.04, 111).unwrap_or(false)
}

/// Data sets behind the published figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Figure {
    /// Root of the odd-sum trapezoid margin against the number of terms.
    OneLeft,
    /// Odd-sum trapezoid left side at 500 terms over `α ∈ [0.01, 0.08]`.
    OneRight,
    /// Trapezoid two-prime margin at `k = 50` over `α ∈ [0.02, 0.04]`.
    Two,
    /// Roots of the cubic criterion margins (`d = 1, 2`) against `k`.
    ThreeTop,
    /// Cubic criterion margins at `k = 100` over `β ∈ [0.01, 0.16]`.
    ThreeBottomLeft,
    /// Both sides of the cubic zero-free condition for `d = 2` over `β ∈ [0.02, 0.16]`.
    ThreeBottomRight,
    /// Root of the p-sine two-prime margin against `k`.
    FourLeft,
    /// Both sides of the p-sine zero-free condition for `d = 2` over `p ∈ [1.01, 1.1]`.
    FourRight,
}

impl Figure {
    pub const ALL: [Figure; 8] = [
        Figure::OneLeft,
        Figure::OneRight,
        Figure::Two,
        Figure::ThreeTop,
        Figure::ThreeBottomLeft,
        Figure::ThreeBottomRight,
        Figure::FourLeft,
        Figure::FourRight,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::OneLeft => "1-left",
            Figure::OneRight => "1-right",
            Figure::Two => "2",
            Figure::ThreeTop => "3-top",
            Figure::ThreeBottomLeft => "3-bottom-left",
            Figure::ThreeBottomRight => "3-bottom-right",
            Figure::FourLeft => "4-left",
            Figure::FourRight => "4-right",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown figure {id:?}")))
    }

    /// True for root-against-k sweeps.
    pub fn is_sweep(self) -> bool {
        matches!(self, Figure::OneLeft | Figure::ThreeTop | Figure::FourLeft)
    }

    /// Default parameter window for value scans.
    pub fn default_range(self) -> Option<(f64, f64)> {
        match self {
            Figure::OneRight => Some((0.01, 0.08)),
            Figure::Two => Some((0.02, 0.04)),
            Figure::ThreeBottomLeft => Some((0.01, 0.16)),
            Figure::ThreeBottomRight => Some((0.02, 0.16)),
            Figure::FourRight => Some((1.01, 1.1)),
            _ => None,
        }
    }

    /// Default values of `k` for sweeps.
    pub fn default_ks(self) -> Vec<usize> {
        match self {
            Figure::OneLeft => (1..=100).chain((110..=500).step_by(10)).collect(),
            Figure::ThreeTop => (1..=100).collect(),
            Figure::FourLeft => (11..=251).step_by(10).collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Number of grid points for value scans (default 200).
    pub n: Option<usize>,
    pub range: Option<(f64, f64)>,
    /// Values of `k` for sweeps.
    pub ks: Option<Vec<usize>>,
    /// Root tolerance for sweeps (default 1e-7).
    pub tol: Option<f64>,
    pub min: MinOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

fn in_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(work()),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|pool| pool.install(work))
            .map_err(|e| Error::InvalidInput(format!("cannot build thread pool: {e}"))),
    }
}

/// Evaluates `margin` on `n` equally spaced points of `[lo, hi]`.
pub fn scan_margin(margin: &Margin, lo: f64, hi: f64, n: usize, opts: &MinOptions) -> Result<Table> {
    if n < 2 || !(lo < hi) {
        return Err(Error::InvalidInput(format!("scan needs n >= 2 and lo < hi, got n = {n}, [{lo}, {hi}]")));
    }
    let grid = linspace(lo, hi, n);
    // evaluation inside the pool is sequential per point; keep the torus
    // minimiser from spawning its own pool
    let inner = MinOptions { jobs: None, ..*opts };
    let rows = in_pool(opts.jobs, || {
        grid.par_iter()
            .map(|&x| margin.eval(x, &inner).map(|v| vec![x, v]))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(Table {
        name: format!("{margin:?}"),
        columns: vec!["param".into(), "margin".into()],
        rows,
    })
}

type MarginAtK = Box<dyn Fn(usize) -> Margin + Sync>;

/// Data for one figure.
///
/// Sweeps report NaN where the bracket shows no sign change.
pub fn scan(figure: Figure, opts: &ScanOptions) -> Result<Table> {
    let n = opts.n.unwrap_or(200);
    let inner = MinOptions { jobs: None, ..opts.min };
    if figure.is_sweep() {
        let ks = opts.ks.clone().unwrap_or_else(|| figure.default_ks());
        let tol = opts.tol.unwrap_or(1e-7);
        let (margins, columns): (Vec<MarginAtK>, Vec<&str>) = match figure {
            Figure::OneLeft => (
                vec![Box::new(|k| Margin::TrapezoidOddSum { terms: k })],
                vec!["k", "alpha"],
            ),
            Figure::ThreeTop => (
                vec![
                    Box::new(|k| Margin::Criterion { family: Family::Cubic, d: 1, k }),
                    Box::new(|k| Margin::Criterion { family: Family::Cubic, d: 2, k }),
                ],
                vec!["k", "beta_d1", "beta_d2"],
            ),
            Figure::FourLeft => (
                vec![Box::new(|k| Margin::Criterion { family: Family::PSine, d: 2, k })],
                vec!["k", "p"],
            ),
            _ => unreachable!(),
        };
        let bracket = match figure {
            Figure::FourLeft => (1.01, 1.2),
            _ => (0.01, 0.49),
        };
        let rows = in_pool(opts.min.jobs, || {
            ks.par_iter()
                .map(|&k| {
                    let mut row = vec![k as f64];
                    for m in &margins {
                        let margin = m(k);
                        let root = match bisect(|x| margin.eval(x, &inner), bracket.0, bracket.1, tol) {
                            Ok(r) => r.value,
                            Err(Error::NoSignChange { .. }) => f64::NAN,
                            Err(e) => return Err(e),
                        };
                        row.push(root);
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()
        })??;
        return Ok(Table {
            name: figure.id().into(),
            columns: columns.into_iter().map(String::from).collect(),
            rows,
        });
    }

    let (lo, hi) = opts.range.or(figure.default_range()).expect("value scans have a range");
    if n < 2 || !(lo < hi) {
        return Err(Error::InvalidInput(format!("scan needs n >= 2 and lo < hi, got n = {n}, [{lo}, {hi}]")));
    }
    let grid = linspace(lo, hi, n);
    let row = |x: f64| -> Result<Vec<f64>> {
        match figure {
            Figure::OneRight => Ok(vec![x, trapezoid_odd_sum(x, 500), PI * PI / 8.0]),
            Figure::Two => {
                let m = Margin::Criterion { family: Family::Trapezoid, d: 2, k: 50 };
                // rescaled so that the margin reads on the same scale as the odd-sum form
                Ok(vec![x, PI * PI * x / 4.0 * m.eval(x, &inner)?])
            }
            Figure::ThreeBottomLeft => {
                let h1 = Margin::Criterion { family: Family::Cubic, d: 1, k: 100 }.eval(x, &inner)?;
                let h2 = Margin::Criterion { family: Family::Cubic, d: 2, k: 100 }.eval(x, &inner)?;
                Ok(vec![x, h1, h2])
            }
            Figure::ThreeBottomRight => {
                let term = |j: f64| {
                    let y = j * PI * x;
                    y.sin() / (j.powi(4) * PI * x * x) - y.cos() / (j.powi(3) * x)
                };
                let lhs: f64 = [3.0, 9.0, 5.0, 25.0].iter().map(|&j| term(j).abs()).sum();
                Ok(vec![x, lhs, term(1.0)])
            }
            Figure::FourRight => {
                let series = CoefficientSeries::new(ProfileSpec::psine(x)?)?;
                let c = series.coeffs(25)?;
                let lhs: f64 = [3usize, 9, 5, 25].iter().map(|&j| c[j - 1].abs()).sum();
                Ok(vec![x, lhs, c[0]])
            }
            _ => unreachable!(),
        }
    };
    let rows = in_pool(opts.min.jobs, || grid.par_iter().map(|&x| row(x)).collect::<Result<Vec<_>>>())??;
    let columns: &[&str] = match figure {
        Figure::OneRight => &["alpha", "lhs", "rhs"],
        Figure::Two => &["alpha", "margin"],
        Figure::ThreeBottomLeft => &["beta", "h_d1", "h_d2"],
        Figure::ThreeBottomRight => &["beta", "lhs", "rhs"],
        Figure::FourRight => &["p", "lhs", "rhs"],
        _ => unreachable!(),
    };
    Ok(Table {
        name: figure.id().into(),
        columns: columns.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}
