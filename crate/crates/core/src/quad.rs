//! Gauss–Legendre rules and a globally adaptive integrator built on them.
//!
//! The adaptive driver compares a 20-point rule on an interval with the
//! same rule applied to its two halves; the difference is used as the error
//! estimate of the (more accurate) two-half value. The interval with the
//! largest estimate is bisected until the total falls below the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of nodes in the default panel rule.
pub const PANEL_NODES: usize = 20;

const MAX_INTERVALS: usize = 4000;

/// A Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes an `n`-point rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p1, mut p2) = (1.0, 0.0);
                for j in 1..=n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
                }
                dp = nf * (z * p1 - p2) / (z * z - 1.0);
                let step = p1 / dp;
                z -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// The shared 20-point rule.
pub fn panel_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(PANEL_NODES))
}

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // bisected value of each half, reused when this piece is split
    halves: (f64, f64),
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn make_piece<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Piece {
    let rule = panel_rule();
    let m = 0.5 * (a + b);
    let left = rule.integrate(f, a, m);
    let right = rule.integrate(f, m, b);
    let value = left + right;
    Piece {
        a,
        b,
        value,
        error: (value - whole).abs(),
        halves: (left, right),
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Returns [`Error::Quadrature`] with the achieved estimate when the
/// subdivision budget runs out first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if b < a {
        let r = integrate(f, b, a, tol)?;
        return Ok(Integral {
            value: -r.value,
            error: r.error,
        });
    }
    let whole = panel_rule().integrate(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(make_piece(&f, a, b, whole));
    let mut count = 1;
    loop {
        let (total, err) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::Quadrature { achieved: err, tol });
        }
        if err <= tol || err <= 1e-15 * total.abs() {
            return Ok(Integral {
                value: total,
                error: err,
            });
        }
        if count >= MAX_INTERVALS {
            return Err(Error::Quadrature { achieved: err, tol });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // interval can no longer be split in floating point
            return Err(Error::Quadrature { achieved: err, tol });
        }
        heap.push(make_piece(&f, worst.a, m, worst.halves.0));
        heap.push(make_piece(&f, m, worst.b, worst.halves.1));
        count += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(20);
        let weights: f64 = rule.weights.iter().sum();
        assert!((weights - 2.0).abs() < 1e-14);
        // degree 39 is exact
        let v = rule.integrate(|x| x.powi(38), -1.0, 1.0);
        assert!((v - 2.0 / 39.0).abs() < 1e-14);
        let v = rule.integrate(|x| x.powi(39) + x * x, 0.0, 1.0);
        assert!((v - (1.0 / 40.0 + 1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn odd_rule_has_centre_node() {
        let rule = GaussLegendre::new(5);
        assert!(rule.nodes[2].abs() < 1e-15);
        assert!((rule.weights[2] - 128.0 / 225.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // ∫₀¹ x^{-1/2} dx = 2
        let r = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
        let r = integrate(|x: f64| (1.0 - x).sqrt(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_oscillatory() {
        let r = integrate(|x: f64| (101.0 * x).cos(), 0.0, PI, 1e-13).unwrap();
        assert!(r.value.abs() < 1e-13);
        let r = integrate(|x: f64| x.sin(), PI, 0.0, 1e-13).unwrap();
        assert!((r.value + 2.0).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_error() {
        let err = integrate(|x: f64| 1.0 / x, 0.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }
}
