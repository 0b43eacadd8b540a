//! Sine coefficients of `s_p(x) = sin_p(π_p x)`.
//!
//! For odd `j`,
//!
//! ```text
//! ŝ_p(j) = 4/(jπ) ∫₀¹ cos((jπ/2) I_p(t)) dt.
//! ```
//!
//! The integral is discretised once per exponent on a panel mesh that is
//! fine in `I_p` (so every requested frequency is resolved) and graded
//! toward the endpoint singularities; the same nodes then serve every `j`.
//! On `[0, 1/2]` the mesh lives in `t`; on `[1/2, 1]` it lives in the
//! variable `v` with `1 − t = v^{p'}`, where `1 − I_p` is kept directly to
//! avoid cancellation.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ptrig::PTrigContext;
use crate::quad::panel_rule;

const MAX_DEPTH: usize = 60;
const INITIAL_PANELS: usize = 8;
const PANEL_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy)]
struct Node {
    /// `I_p(t)` on the left piece, `1 − I_p(t)` on the right piece.
    phase: f64,
    /// Quadrature weight for `dt`.
    w_dt: f64,
    /// Quadrature weight for `(1 − t^p)^{-1/p} dt`.
    w_density: f64,
    t: f64,
}

/// Quadrature nodes resolving `cos((jπ/2) I_p(t))` for all `j ≤ resolution`.
#[derive(Debug, Clone)]
pub struct PSineQuadrature {
    ctx: PTrigContext,
    resolution: usize,
    left: Vec<Node>,
    right: Vec<Node>,
    closure_defect: f64,
}

struct Panel {
    a: f64,
    b: f64,
}

impl PSineQuadrature {
    /// Builds nodes resolving frequencies up to `resolution`.
    pub fn new(ctx: PTrigContext, resolution: usize) -> Result<Self> {
        let resolution = resolution.max(1);
        let du_max = (4.0 / resolution as f64).min(0.25);
        let scale = 2.0 / ctx.pi_p();

        let left_panels = subdivide(0.0, ctx.split(), du_max, scale, |t| ctx.density_t(t), None);
        let right_panels = subdivide(
            0.0,
            ctx.v_split(),
            du_max,
            scale,
            |v| ctx.density_v(v),
            Some(&|v| ctx.jacobian_v(v)),
        );

        let rule = panel_rule();
        let mut left = Vec::with_capacity(left_panels.len() * rule.len());
        let mut acc = 0.0;
        for panel in &left_panels {
            for (t, w) in rule.mapped(panel.a, panel.b) {
                let partial = rule.integrate(|s| ctx.density_t(s), panel.a, t);
                let density = ctx.density_t(t);
                left.push(Node {
                    phase: scale * (acc + partial),
                    w_dt: w,
                    w_density: w * density,
                    t,
                });
            }
            acc += rule.integrate(|s| ctx.density_t(s), panel.a, panel.b);
        }
        let f_left = acc;

        let conj = ctx.exponent().conjugate();
        let mut right = Vec::with_capacity(right_panels.len() * rule.len());
        let mut acc = 0.0;
        for panel in &right_panels {
            for (v, w) in rule.mapped(panel.a, panel.b) {
                let partial = rule.integrate(|s| ctx.density_v(s), panel.a, v);
                right.push(Node {
                    phase: scale * (acc + partial),
                    w_dt: w * ctx.jacobian_v(v),
                    w_density: w * ctx.density_v(v),
                    t: 1.0 - v.powf(conj),
                });
            }
            acc += rule.integrate(|s| ctx.density_v(s), panel.a, panel.b);
        }
        let g_right = acc;

        let closure_defect = (f_left + g_right - ctx.half_pi_p()).abs();
        if closure_defect > 1e-12 * ctx.pi_p() {
            return Err(Error::Quadrature {
                achieved: closure_defect,
                tol: 1e-12 * ctx.pi_p(),
            });
        }
        Ok(Self {
            ctx,
            resolution,
            left,
            right,
            closure_defect,
        })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn context(&self) -> &PTrigContext {
        &self.ctx
    }

    pub fn node_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// `|F_p(1/2) + (π_p/2 − F_p(1/2)) − π_p/2|` as assembled from the mesh.
    pub fn closure_defect(&self) -> f64 {
        self.closure_defect
    }

    /// `ŝ_p(j)`; exact zero for even `j`.
    pub fn coefficient(&self, j: usize) -> Result<f64> {
        if j == 0 {
            return Err(Error::InvalidInput("coefficient index starts at 1".into()));
        }
        if j.is_multiple_of(2) {
            return Ok(0.0);
        }
        if j > self.resolution {
            return Err(Error::InvalidInput(format!(
                "index {j} exceeds quadrature resolution {}",
                self.resolution
            )));
        }
        let freq = 0.5 * PI * j as f64;
        let left: f64 = self.left.iter().map(|n| n.w_dt * (freq * n.phase).cos()).sum();
        let right: f64 = self.right.iter().map(|n| n.w_dt * (freq * n.phase).sin()).sum();
        let sign = if (j / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(4.0 / (PI * j as f64) * (left + sign * right))
    }

    /// `ŝ_p(1), …, ŝ_p(n)`.
    ///
    /// Node contributions are accumulated over all odd frequencies at once
    /// by rotating `e^{iπ j φ/2}` in steps of `e^{iπφ}`, re-seeded from
    /// `sin_cos` every `RESEED` steps. Chunks are summed in a fixed order,
    /// so the result does not depend on the thread count.
    pub fn coefficients(&self, n: usize) -> Result<Vec<f64>> {
        if n > self.resolution {
            return Err(Error::InvalidInput(format!(
                "index {n} exceeds quadrature resolution {}",
                self.resolution
            )));
        }
        let m = n.div_ceil(2);
        let mut out = vec![0.0; n];
        if m == 0 {
            return Ok(out);
        }
        let left = accumulate(&self.left, m, false);
        let right = accumulate(&self.right, m, true);
        for i in 0..m {
            let j = 2 * i + 1;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            out[j - 1] = 4.0 / (PI * j as f64) * (left[i] + sign * right[i]);
        }
        Ok(out)
    }

    /// `Σ_{j odd} ŝ_p(j) = ∫₀¹ s_p(u/2) / sin(πu/2) du`, evaluated on the same mesh.
    pub fn coefficient_sum(&self) -> f64 {
        let scale = 2.0 / self.ctx.pi_p();
        let left: f64 = self
            .left
            .iter()
            .map(|n| n.w_density * n.t / (0.5 * PI * n.phase).sin())
            .sum();
        let right: f64 = self
            .right
            .iter()
            .map(|n| n.w_density * n.t / (0.5 * PI * n.phase).cos())
            .sum();
        scale * (left + right)
    }
}

const CHUNK: usize = 512;
const RESEED: usize = 64;

/// `Σ_nodes w cos(jπφ/2)` (or `sin` when `use_sin`) for odd `j = 1, 3, …, 2m−1`.
fn accumulate(nodes: &[Node], m: usize, use_sin: bool) -> Vec<f64> {
    let partials: Vec<Vec<f64>> = nodes
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; m];
            for node in chunk {
                let half = 0.5 * PI * node.phase;
                let (rs, rc) = (PI * node.phase).sin_cos();
                let (mut s, mut c) = (0.0, 0.0);
                for (i, slot) in acc.iter_mut().enumerate() {
                    if i % RESEED == 0 {
                        (s, c) = (half * (2 * i + 1) as f64).sin_cos();
                    } else {
                        (s, c) = (s * rc + c * rs, c * rc - s * rs);
                    }
                    *slot += node.w_dt * if use_sin { s } else { c };
                }
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; m];
    for part in partials {
        for (t, v) in total.iter_mut().zip(part) {
            *t += v;
        }
    }
    total
}

/// Splits `[a, b]` into panels on which the primitive of `density` grows by
/// at most `du_max / scale`, and on which both `density` and the optional
/// `jacobian` are integrated by the panel rule to relative accuracy
/// `PANEL_REL_TOL`.
fn subdivide<D>(
    a: f64,
    b: f64,
    du_max: f64,
    scale: f64,
    density: D,
    jacobian: Option<&dyn Fn(f64) -> f64>,
) -> Vec<Panel>
where
    D: Fn(f64) -> f64,
{
    let rule = panel_rule();
    let resolved = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| -> (f64, bool) {
        let m = 0.5 * (lo + hi);
        let whole = rule.integrate(f, lo, hi);
        let halves = rule.integrate(f, lo, m) + rule.integrate(f, m, hi);
        let ok = (whole - halves).abs() <= PANEL_REL_TOL * halves.abs().max(f64::MIN_POSITIVE);
        (halves, ok)
    };

    let mut out = Vec::new();
    let mut stack: Vec<(f64, f64, usize)> = Vec::new();
    let h = (b - a) / INITIAL_PANELS as f64;
    for i in (0..INITIAL_PANELS).rev() {
        let lo = a + h * i as f64;
        let hi = if i + 1 == INITIAL_PANELS { b } else { a + h * (i + 1) as f64 };
        stack.push((lo, hi, 0));
    }
    while let Some((lo, hi, depth)) = stack.pop() {
        let (mass, dens_ok) = resolved(&density, lo, hi);
        let jac_ok = jacobian.is_none_or(|jac| resolved(jac, lo, hi).1);
        let phase_ok = scale * mass <= du_max;
        if (dens_ok && jac_ok && phase_ok) || depth >= MAX_DEPTH {
            out.push(Panel { a: lo, b: hi });
        } else {
            let m = 0.5 * (lo + hi);
            stack.push((m, hi, depth + 1));
            stack.push((lo, m, depth + 1));
        }
    }
    out
}
