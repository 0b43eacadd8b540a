//! Minimum of `|p(w)|` over the torus `|w₁| = … = |w_d| = 1`.
//!
//! General polynomials are sampled on a uniform angle grid and the best
//! local minima of the grid are polished with Nelder–Mead on `|p|²`. The
//! three-term case `c₁ + c₂w + c₃w²` with `c₁, c₃ > 0` has a closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::{eval_poly, DirichletPolynomial};
use crate::error::{Error, Result};

/// Largest supported torus dimension.
pub const MAX_DIM: usize = 3;
/// Default refinement tolerance on the minimum modulus.
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

const REFINE_STARTS: usize = 4;
const NM_MAX_ITER: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinMethod {
    ClosedForm,
    GridRefine,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusMinResult {
    pub mu: f64,
    pub argmin: Vec<f64>,
    pub method: MinMethod,
    /// Grid points per axis; 0 for closed forms.
    pub grid_resolution: usize,
    pub refine_tolerance: f64,
    /// Smallest modulus seen on the grid, before refinement.
    pub grid_mu: f64,
}

/// Options for [`min_modulus_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinOptions {
    /// Points per axis; `None` picks 1024 for `d = 1`, 512 for `d = 2`, 128 for `d = 3`.
    pub grid_n: Option<usize>,
    pub refine_tol: f64,
    /// Worker threads for the grid sweep; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Use the three-term closed form when it applies.
    pub closed_form: bool,
}

impl Default for MinOptions {
    fn default() -> Self {
        Self {
            grid_n: None,
            refine_tol: DEFAULT_REFINE_TOL,
            jobs: None,
            closed_form: true,
        }
    }
}

pub fn default_grid(d: usize) -> usize {
    match d {
        0 | 1 => 1024,
        2 => 512,
        _ => 128,
    }
}

/// Grid-and-refine minimum of `|p|` with the given grid and tolerance.
pub fn min_modulus(poly: &DirichletPolynomial, grid_n: usize, refine_tol: f64) -> Result<TorusMinResult> {
    min_modulus_with(
        poly,
        &MinOptions {
            grid_n: Some(grid_n),
            refine_tol,
            jobs: None,
            closed_form: false,
        },
    )
}

pub fn min_modulus_with(poly: &DirichletPolynomial, opts: &MinOptions) -> Result<TorusMinResult> {
    let d = poly.support().dim();
    if d > MAX_DIM {
        return Err(Error::Unsupported(format!(
            "torus dimension {d} exceeds the supported maximum {MAX_DIM}"
        )));
    }
    if !(opts.refine_tol > 0.0) {
        return Err(Error::InvalidInput("refinement tolerance must be positive".into()));
    }
    if d == 0 {
        let mu = poly.coeffs()[0].norm();
        return Ok(TorusMinResult {
            mu,
            argmin: Vec::new(),
            method: MinMethod::ClosedForm,
            grid_resolution: 0,
            refine_tolerance: 0.0,
            grid_mu: mu,
        });
    }
    if opts.closed_form {
        if let Some(r) = three_term_closed_form(poly) {
            return Ok(r);
        }
    }
    let n = opts.grid_n.unwrap_or_else(|| default_grid(d));
    if n < 64 {
        return Err(Error::InvalidInput(format!("grid needs at least 64 points per axis, got {n}")));
    }
    let total = n
        .checked_pow(d as u32)
        .filter(|&t| t <= 1 << 28)
        .ok_or_else(|| Error::InvalidInput(format!("grid {n}^{d} is too large")))?;

    let grid = Grid::new(poly, n);
    let values = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(|| grid.sweep(total)),
        None => grid.sweep(total),
    };

    // first index attaining the smallest value
    let (best_idx, best_val) = values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) });

    let mut starts = grid.local_minima(&values);
    starts.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    starts.truncate(REFINE_STARTS);
    if !starts.contains(&best_idx) {
        starts.insert(0, best_idx);
    }

    let objective = |theta: &[f64]| eval_poly(poly, theta).map(|v| v.norm_sqr()).unwrap_or(f64::INFINITY);
    let step = 2.0 * PI / n as f64;
    // |p|² is flat to second order at a minimum, so simplex size ~ sqrt(tol)
    let x_tol = (opts.refine_tol / poly_scale(poly)).sqrt().clamp(1e-12, 1e-6);
    let mut best_theta = grid.angles(best_idx);
    let mut best_f = best_val;
    for &s in &starts {
        let (theta, f) = nelder_mead(&objective, &grid.angles(s), step, x_tol);
        if f < best_f {
            best_f = f;
            best_theta = theta;
        }
    }
    let argmin: Vec<f64> = best_theta.iter().map(|&t| wrap_angle(t)).collect();
    let mu = eval_poly(poly, &argmin)?.norm().min(best_val.sqrt());
    Ok(TorusMinResult {
        mu,
        argmin,
        method: MinMethod::GridRefine,
        grid_resolution: n,
        refine_tolerance: opts.refine_tol,
        grid_mu: best_val.sqrt(),
    })
}

fn poly_scale(poly: &DirichletPolynomial) -> f64 {
    poly.coeffs().iter().map(|c| c.norm()).sum::<f64>().max(f64::MIN_POSITIVE)
}

fn wrap_angle(t: f64) -> f64 {
    (t + PI).rem_euclid(2.0 * PI) - PI
}

/// Closed form for `{1, q, q²}` with real coefficients and `c₁, c₃ > 0`.
fn three_term_closed_form(poly: &DirichletPolynomial) -> Option<TorusMinResult> {
    poly.support().three_term_prime()?;
    let c = poly.real_coeffs()?;
    let (c1, c2, c3) = (c[0], c[1], c[2]);
    let mu = min_modulus_three_term(c1, c2, c3).ok()?;
    let x = -c2 * (c1 + c3) / (4.0 * c1 * c3);
    let theta = if x.abs() >= 1.0 {
        if c2 > 0.0 {
            PI
        } else {
            0.0
        }
    } else {
        x.acos()
    };
    Some(TorusMinResult {
        mu,
        argmin: vec![wrap_angle(theta)],
        method: MinMethod::ClosedForm,
        grid_resolution: 0,
        refine_tolerance: 0.0,
        grid_mu: mu,
    })
}

/// `min_θ |c₁ + c₂e^{iθ} + c₃e^{2iθ}|` for `c₁, c₃ > 0`.
///
/// With `x = cos θ`, `|p|² = (c₂ + (c₁+c₃)x)² + (c₁−c₃)²(1−x²)` is a convex
/// quadratic in `x`; its minimiser over `[−1, 1]` gives the two regimes.
pub fn min_modulus_three_term(c1: f64, c2: f64, c3: f64) -> Result<f64> {
    if !(c1 > 0.0 && c3 > 0.0) || !c2.is_finite() {
        return Err(Error::Domain(format!(
            "three-term minimum needs positive outer coefficients, got ({c1}, {c2}, {c3})"
        )));
    }
    if c2.abs() * (c1 + c3) >= 4.0 * c1 * c3 {
        Ok((c1 + c3 - c2.abs()).abs())
    } else {
        Ok((c1 - c3).abs() * (1.0 - c2 * c2 / (4.0 * c1 * c3)).sqrt())
    }
}

/// True iff `Σ_{n≠1} |c_n| < c₁`, which keeps every zero of `p` off the closed polydisk.
pub fn zero_free_check(poly: &DirichletPolynomial) -> bool {
    let Some(c1) = poly.coeff(1) else { return false };
    if c1.im != 0.0 {
        return false;
    }
    let rest: f64 = poly
        .support()
        .elements()
        .iter()
        .zip(poly.coeffs())
        .filter(|(&n, _)| n != 1)
        .map(|(_, c)| c.norm())
        .sum();
    rest < c1.re
}

/// Per-axis phase tables for the uniform grid `θ = −π + 2πi/n`.
struct Grid<'a> {
    poly: &'a DirichletPolynomial,
    n: usize,
    d: usize,
    /// `tables[axis][e][i] = e^{i e θ_i}`
    tables: Vec<Vec<Vec<Complex64>>>,
}

impl<'a> Grid<'a> {
    fn new(poly: &'a DirichletPolynomial, n: usize) -> Self {
        let d = poly.support().dim();
        let exps = poly.support().exponent_table();
        let tables = (0..d)
            .map(|axis| {
                let max_e = exps.iter().map(|nu| nu[axis]).max().unwrap_or(0) as usize;
                (0..=max_e)
                    .map(|e| {
                        (0..n)
                            .map(|i| Complex64::from_polar(1.0, e as f64 * Self::angle(n, i)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { poly, n, d, tables }
    }

    fn angle(n: usize, i: usize) -> f64 {
        -PI + 2.0 * PI * i as f64 / n as f64
    }

    /// Multi-index of a flat index; the last axis varies fastest.
    fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for a in (0..self.d).rev() {
            out[a] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    fn angles(&self, idx: usize) -> Vec<f64> {
        self.unflatten(idx).into_iter().map(|i| Self::angle(self.n, i)).collect()
    }

    /// `|p|²` at every grid point, in flat-index order.
    fn sweep(&self, total: usize) -> Vec<f64> {
        let exps = self.poly.support().exponent_table();
        let coeffs = self.poly.coeffs();
        let row = self.n;
        let mut out = vec![0.0; total];
        out.par_chunks_mut(row).enumerate().for_each(|(r, chunk)| {
            let mut idx = self.unflatten(r * row);
            for (i, slot) in chunk.iter_mut().enumerate() {
                idx[self.d - 1] = i;
                let mut v = Complex64::new(0.0, 0.0);
                for (c, nu) in coeffs.iter().zip(exps) {
                    let mut term = *c;
                    for (a, &e) in nu.iter().enumerate() {
                        if e != 0 {
                            term *= self.tables[a][e as usize][idx[a]];
                        }
                    }
                    v += term;
                }
                *slot = v.norm_sqr();
            }
        });
        out
    }

    /// Flat indices no larger than any of their `2d` wrapped neighbours.
    fn local_minima(&self, values: &[f64]) -> Vec<usize> {
        let n = self.n;
        let mut strides = vec![1usize; self.d];
        for a in (0..self.d.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * n;
        }
        (0..values.len())
            .filter(|&flat| {
                let idx = self.unflatten(flat);
                let v = values[flat];
                (0..self.d).all(|a| {
                    let base = flat - idx[a] * strides[a];
                    let up = base + ((idx[a] + 1) % n) * strides[a];
                    let down = base + ((idx[a] + n - 1) % n) * strides[a];
                    v <= values[up] && v <= values[down]
                })
            })
            .collect()
    }
}

/// Nelder–Mead from `x0` with initial edge `step`; stops when the simplex
/// diameter falls below `x_tol` or the values agree to 1e-30.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], step: f64, x_tol: f64) -> (Vec<f64>, f64) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    for _ in 0..NM_MAX_ITER {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[d].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter <= x_tol || spread <= 1e-30 {
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|k| simplex[..d].iter().map(|(x, _)| x[k]).sum::<f64>() / d as f64)
            .collect();
        let worst = simplex[d].0.clone();
        let xr = lerp(&centroid, &worst, -1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = lerp(&centroid, &worst, -2.0);
            let fe = f(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[d].1 {
                let xc = lerp(&centroid, &worst, -0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = lerp(&centroid, &worst, 0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < simplex[d].1.min(fr) {
                simplex[d] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    v.0 = lerp(&best, &v.0, 0.5);
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::build_support;

    fn three(c1: f64, c2: f64, c3: f64, q: u64) -> DirichletPolynomial {
        DirichletPolynomial::from_real(build_support(&[1, q, q * q]).unwrap(), &[c1, c2, c3]).unwrap()
    }

    #[test]
    fn constant_polynomial() {
        let p = DirichletPolynomial::from_real(build_support(&[1]).unwrap(), &[0.7]).unwrap();
        let r = min_modulus(&p, 64, 1e-10).unwrap();
        assert_eq!(r.mu, 0.7);
        assert_eq!(r.method, MinMethod::ClosedForm);
    }

    #[test]
    fn three_term_examples() {
        assert!((min_modulus_three_term(1.0, -0.5, 0.1).unwrap() - 0.6).abs() < 1e-15);
        let want = 0.5 * (1.0f64 - 0.01 / 2.0).sqrt();
        assert!((min_modulus_three_term(1.0, 0.1, 0.5).unwrap() - want).abs() < 1e-15);
        let brute = (0..1_000_000)
            .map(|i| {
                let e = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / 1e6);
                (1.0 + 0.1 * e + 0.5 * e * e).norm()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((want - brute).abs() < 1e-9);
        assert!((min_modulus_three_term(1.0, 0.0, 0.3).unwrap() - 0.7).abs() < 1e-15);
        assert!(min_modulus_three_term(0.0, 0.1, 0.5).is_err());
        assert!(min_modulus_three_term(1.0, 0.1, -0.5).is_err());
    }

    #[test]
    fn grid_agrees_with_closed_form() {
        for &(a, b, c) in &[(1.0, -0.5, 0.1), (1.0, 0.1, 0.5), (0.3, 0.8, 0.9), (2.0, 0.0, 0.5)] {
            let r = min_modulus(&three(a, b, c, 3), 1024, 1e-10).unwrap();
            let cf = min_modulus_three_term(a, b, c).unwrap();
            assert_eq!(r.method, MinMethod::GridRefine);
            assert!((r.mu - cf).abs() < 1e-8, "({a}, {b}, {c}): {} vs {cf}", r.mu);
            let at = eval_poly(&three(a, b, c, 3), &r.argmin).unwrap().norm();
            assert!((at - r.mu).abs() <= r.refine_tolerance);
        }
        let auto = min_modulus_with(&three(1.0, 0.1, 0.5, 3), &MinOptions::default()).unwrap();
        assert_eq!(auto.method, MinMethod::ClosedForm);
    }

    #[test]
    fn two_variable_minimum_is_not_above_grid() {
        let s = build_support(&[1, 3, 5, 9, 25]).unwrap();
        let p = DirichletPolynomial::from_real(s, &[1.0, -0.4, 0.3, 0.2, -0.25]).unwrap();
        let r = min_modulus(&p, 128, 1e-10).unwrap();
        assert!(r.mu <= r.grid_mu);
        // brute force on a finer grid never beats the refined value
        let n = 600;
        let mut brute = f64::INFINITY;
        for i in 0..n {
            for k in 0..n {
                let x = 2.0 * PI * i as f64 / n as f64;
                let y = 2.0 * PI * k as f64 / n as f64;
                brute = brute.min(eval_poly(&p, &[x, y]).unwrap().norm());
            }
        }
        assert!(r.mu <= brute + 1e-10, "{} vs {brute}", r.mu);
        assert!(brute - r.mu < 1e-4);
    }

    #[test]
    fn schedule_independent() {
        let s = build_support(&[1, 2, 3, 4, 9]).unwrap();
        let p = DirichletPolynomial::from_real(s, &[1.0, 0.3, -0.2, 0.1, 0.25]).unwrap();
        let base = MinOptions { grid_n: Some(200), closed_form: false, ..Default::default() };
        let a = min_modulus_with(&p, &MinOptions { jobs: Some(1), ..base }).unwrap();
        let b = min_modulus_with(&p, &MinOptions { jobs: Some(3), ..base }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_large_dimension() {
        let s = build_support(&[1, 2, 3, 5, 7]).unwrap();
        let p = DirichletPolynomial::from_real(s, &[1.0, 0.1, 0.1, 0.1, 0.1]).unwrap();
        assert!(matches!(min_modulus(&p, 64, 1e-10), Err(Error::Unsupported(_))));
    }

    #[test]
    fn zero_free_examples() {
        assert!(zero_free_check(&three(1.0, -0.5, 0.1, 3)));
        assert!(!zero_free_check(&three(1.0, -0.9, 0.2, 3)));
    }

    #[test]
    fn rotation_invariance() {
        let s = build_support(&[1, 3, 9]).unwrap();
        let base = [1.0, -0.5, 0.3];
        let p = DirichletPolynomial::from_real(s.clone(), &base).unwrap();
        let u = Complex64::from_polar(1.0, 0.77);
        let q = DirichletPolynomial::new(s, base.iter().map(|&c| u * c).collect()).unwrap();
        let a = min_modulus(&p, 512, 1e-12).unwrap();
        let b = min_modulus(&q, 512, 1e-12).unwrap();
        assert!((a.mu - b.mu).abs() < 1e-12);
    }
}
