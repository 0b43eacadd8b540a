//! Lower bounds for `ŝ_p(k)` from chords and tangents of `I_p`.
//!
//! `ŝ_p(k) = 4/(kπ) ∫₀¹ cos((kπ/2) I_p(u)) du` and `I_p` is increasing and
//! convex, so on stretches where the integrand decreases the chord of
//! `I_p` gives a lower bound, and where it increases the tangents do.
//! Splitting `[0, 1]` at the turning points and each piece at a few nodes
//! yields a computable lower bound.
//!
//! Nodes inside a piece are equally spaced in `u` by default, which is
//! the placement that reproduces the published tables; equal spacing in
//! `I_p` is available as an alternative.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::profiles::{CoefficientSeries, ProfileSpec};
use crate::ptrig::{PPoint, PTrigContext};
use crate::thresholds::linspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Decreasing,
    Increasing,
}

/// A maximal stretch on which `cos((kπ/2) I_p)` is monotone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub direction: Direction,
    pub lo: PPoint,
    pub hi: PPoint,
    /// `I_p(lo)`, exact by construction.
    pub i_lo: f64,
    pub i_hi: f64,
}

/// Monotone pieces of `cos((kπ/2) I_p)` on `[0, 1]`, in order.
///
/// Pieces alternate, starting with a decreasing one. For `k ≡ 3 (mod 4)`
/// the last piece is increasing, for `k ≡ 1 (mod 4)` decreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonePartition {
    pub k: usize,
    pub p: f64,
    pub segments: Vec<Segment>,
}

impl MonotonePartition {
    pub fn decreasing_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| s.direction == Direction::Decreasing)
    }

    pub fn increasing_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| s.direction == Direction::Increasing)
    }

    /// `I_p` at the interior turning points, in order.
    pub fn turning_values(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.i_lo).collect()
    }
}

/// Splits `[0, 1]` at `I_p = 2/k, 4/k, …` below 1.
pub fn build_partition(k: usize, p: f64) -> Result<MonotonePartition> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("k must be odd, got {k}")));
    }
    let ctx = PTrigContext::new(p)?;
    let mut cuts = vec![(0.0, PPoint::ZERO)];
    for m in 1..=(k - 1) / 2 {
        let target = 2.0 * m as f64 / k as f64;
        cuts.push((target, ctx.invert_i(target)?));
    }
    cuts.push((1.0, PPoint::ONE));
    let segments = cuts
        .windows(2)
        .enumerate()
        .map(|(i, w)| Segment {
            direction: if i % 2 == 0 { Direction::Decreasing } else { Direction::Increasing },
            lo: w[0].1,
            hi: w[1].1,
            i_lo: w[0].0,
            i_hi: w[1].0,
        })
        .collect();
    Ok(MonotonePartition { k, p, segments })
}

/// A point of `[0, 1]` with its exact `I_p` value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Node {
    pub u: PPoint,
    pub i: f64,
}

/// How nodes are spread inside a monotone piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    #[default]
    UniformU,
    UniformI,
}

/// Nodes inside each monotone piece.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureScheme {
    pub partition: MonotonePartition,
    pub placement: Placement,
    /// One count per segment, in segment order.
    pub counts: Vec<usize>,
    pub blocks: Vec<Vec<Node>>,
}

/// Places nodes inside each piece.
///
/// The first piece receives `counts[0] + 1` nodes (so `counts[0]` chords);
/// every other piece receives `counts[i]` nodes, endpoints included.
pub fn build_scheme(partition: MonotonePartition, counts: &[usize], placement: Placement) -> Result<QuadratureScheme> {
    if counts.len() != partition.segments.len() {
        return Err(Error::Dimension {
            expected: partition.segments.len(),
            got: counts.len(),
        });
    }
    if counts[0] < 1 || counts.iter().skip(1).any(|&c| c < 2) {
        return Err(Error::InvalidInput(format!(
            "counts must be >= 1 for the first piece and >= 2 for the others, got {counts:?}"
        )));
    }
    let ctx = PTrigContext::new(partition.p)?;
    let mut blocks = Vec::with_capacity(counts.len());
    for (i, (seg, &c)) in partition.segments.iter().zip(counts).enumerate() {
        let n = if i == 0 { c + 1 } else { c };
        blocks.push(place(&ctx, seg, n, placement)?);
    }
    Ok(QuadratureScheme {
        partition,
        placement,
        counts: counts.to_vec(),
        blocks,
    })
}

fn place(ctx: &PTrigContext, seg: &Segment, n: usize, placement: Placement) -> Result<Vec<Node>> {
    (0..n)
        .map(|m| {
            if m == 0 {
                return Ok(Node { u: seg.lo, i: seg.i_lo });
            }
            if m + 1 == n {
                return Ok(Node { u: seg.hi, i: seg.i_hi });
            }
            let f = m as f64 / (n - 1) as f64;
            match placement {
                Placement::UniformI => {
                    let i = seg.i_lo + (seg.i_hi - seg.i_lo) * f;
                    Ok(Node { u: ctx.invert_i(i)?, i })
                }
                Placement::UniformU => {
                    // near 1 the tail carries the digits
                    let u = if seg.lo.t >= 0.5 {
                        PPoint::from_tail(seg.lo.tail + (seg.hi.tail - seg.lo.tail) * f)
                    } else {
                        PPoint::from_t(seg.lo.t + (seg.hi.t - seg.lo.t) * f)
                    };
                    Ok(Node { u, i: ctx.i_p_point(u)? })
                }
            }
        })
        .collect()
}

/// Treats collapsed or underflowing intervals as contributing nothing.
fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() { v } else { 0.0 }
}

fn phase(k: usize, i: f64) -> f64 {
    0.5 * PI * k as f64 * i
}

/// Chord bound for `∫_y^x cos((kπ/2) I_p(u)) du` on a decreasing stretch.
pub fn chord_bound(k: usize, p: f64, y: f64, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&y) || !(y < x && x <= 1.0) {
        return Err(Error::InvalidInput(format!("need 0 <= y < x <= 1, got y = {y}, x = {x}")));
    }
    let ctx = PTrigContext::new(p)?;
    let node = |v: f64| -> Result<Node> {
        let u = PPoint::from_t(v);
        Ok(Node { u, i: ctx.i_p_point(u)? })
    };
    Ok(chord(k, node(y)?, node(x)?))
}

fn chord(k: usize, y: Node, x: Node) -> f64 {
    let width = y.u.distance_to(x.u);
    if !(width > 0.0) {
        return 0.0;
    }
    let di = x.i - y.i;
    let ds = phase(k, x.i).sin() - phase(k, y.i).sin();
    if di.abs() < 1e-13 {
        // difference quotient limit
        return width * phase(k, y.i).cos();
    }
    finite_or_zero(2.0 / (PI * k as f64) * width * ds / di)
}

/// `(J⁽¹⁾, J⁽²⁾)`: tangent bounds for `∫_s^t cos((kπ/2) I_p(u)) du` on an
/// increasing stretch. At `t = 1` the tangent is vertical and only `J⁽¹⁾`
/// is meaningful; `J⁽²⁾` is returned as zero.
pub fn tangent_bounds(k: usize, p: f64, s: f64, t: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&s) || !(s < t && t <= 1.0) {
        return Err(Error::InvalidInput(format!("need 0 <= s < t <= 1, got s = {s}, t = {t}")));
    }
    let ctx = PTrigContext::new(p)?;
    let node = |v: f64| -> Result<Node> {
        let u = PPoint::from_t(v);
        Ok(Node { u, i: ctx.i_p_point(u)? })
    };
    let (ns, nt) = (node(s)?, node(t)?);
    if t == 1.0 {
        return Ok((final_tangent(&ctx, k, ns), 0.0));
    }
    Ok(tangents(&ctx, k, ns, nt))
}

/// Ordinate where the tangents at `s` and `t` meet.
pub fn tangent_meet(ctx: &PTrigContext, s: Node, t: Node) -> f64 {
    let (cs, ct) = (ctx.cos_weight(s.u), ctx.cos_weight(t.u));
    let width = s.u.distance_to(t.u);
    (cs * s.i - ct * t.i + 2.0 / ctx.pi_p() * width) / (cs - ct)
}

fn tangents(ctx: &PTrigContext, k: usize, s: Node, t: Node) -> (f64, f64) {
    let (cs, ct) = (ctx.cos_weight(s.u), ctx.cos_weight(t.u));
    if !(s.u.distance_to(t.u) > 0.0) || cs == ct {
        return (0.0, 0.0);
    }
    let g = tangent_meet(ctx, s, t);
    let scale = ctx.pi_p() / (PI * k as f64);
    let j1 = scale * cs * (phase(k, g).sin() - phase(k, s.i).sin());
    let j2 = scale * ct * (phase(k, t.i).sin() - phase(k, g).sin());
    (finite_or_zero(j1), finite_or_zero(j2))
}

fn final_tangent(ctx: &PTrigContext, k: usize, s: Node) -> f64 {
    if !(s.u.tail > 0.0) {
        return 0.0;
    }
    let cs = ctx.cos_weight(s.u);
    let g = s.i + 2.0 / ctx.pi_p() * s.u.tail / cs;
    finite_or_zero(ctx.pi_p() / (PI * k as f64) * cs * (phase(k, g).sin() - phase(k, s.i).sin()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordTerm {
    pub y: f64,
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentTerm {
    pub s: f64,
    pub t: f64,
    pub j1: f64,
    pub j2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub k: usize,
    pub p: f64,
    pub scheme: QuadratureScheme,
    pub chord_terms: Vec<ChordTerm>,
    pub tangent_terms: Vec<TangentTerm>,
    /// `J⁽¹⁾(t_last, 1)` when the last piece is increasing.
    pub final_tangent_term: Option<TangentTerm>,
    /// `4/(kπ)` times the sum of all terms.
    pub total: f64,
}

impl BoundResult {
    /// Recomputes the total from the listed terms.
    pub fn sum_of_terms(&self) -> f64 {
        let chords: f64 = self.chord_terms.iter().map(|c| c.value).sum();
        let tangents: f64 = self.tangent_terms.iter().map(|t| t.j1 + t.j2).sum();
        let last = self.final_tangent_term.map_or(0.0, |t| t.j1);
        4.0 / (PI * self.k as f64) * (chords + tangents + last)
    }
}

/// Lower bound for `ŝ_p(k)`, `k ≡ 1, 3 (mod 4)`, `k > 1`.
///
/// `counts` lists the node counts per monotone piece in order along
/// `[0, 1]`: `m₁⁻, m₁⁺, m₂⁻, m₂⁺, …`.
pub fn lower_bound_spk(k: usize, p: f64, counts: &[usize]) -> Result<BoundResult> {
    lower_bound_spk_with(k, p, counts, Placement::default())
}

pub fn lower_bound_spk_with(k: usize, p: f64, counts: &[usize], placement: Placement) -> Result<BoundResult> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("k must be odd and at least 3, got {k}")));
    }
    let ctx = PTrigContext::new(p)?;
    let scheme = build_scheme(build_partition(k, p)?, counts, placement)?;
    let mut chord_terms = Vec::new();
    let mut tangent_terms = Vec::new();
    let mut final_tangent_term = None;
    for (seg, block) in scheme.partition.segments.iter().zip(&scheme.blocks) {
        let pairs = block.windows(2);
        match seg.direction {
            Direction::Decreasing => chord_terms.extend(pairs.map(|w| ChordTerm {
                y: w[0].u.t,
                x: w[1].u.t,
                value: chord(k, w[0], w[1]),
            })),
            Direction::Increasing => {
                for w in pairs {
                    if w[1].u.tail == 0.0 {
                        final_tangent_term = Some(TangentTerm {
                            s: w[0].u.t,
                            t: 1.0,
                            j1: final_tangent(&ctx, k, w[0]),
                            j2: 0.0,
                        });
                    } else {
                        let (j1, j2) = tangents(&ctx, k, w[0], w[1]);
                        tangent_terms.push(TangentTerm { s: w[0].u.t, t: w[1].u.t, j1, j2 });
                    }
                }
            }
        }
    }
    let mut out = BoundResult {
        k,
        p,
        scheme,
        chord_terms,
        tangent_terms,
        final_tangent_term,
        total: 0.0,
    };
    out.total = out.sum_of_terms();
    Ok(out)
}

/// The `k = 3` bound written out directly: `m_minus` chords on
/// `[0, x̃]` and `m_plus` nodes on `[x̃, 1]`, placed uniformly in `u`.
pub fn remark_a1_bound(p: f64, m_minus: usize, m_plus: usize) -> Result<f64> {
    if m_minus < 1 || m_plus < 2 {
        return Err(Error::InvalidInput(format!(
            "need m_minus >= 1 and m_plus >= 2, got {m_minus}, {m_plus}"
        )));
    }
    let ctx = PTrigContext::new(p)?;
    let turn = ctx.invert_i(2.0 / 3.0)?;
    let down = Segment {
        direction: Direction::Decreasing,
        lo: PPoint::ZERO,
        hi: turn,
        i_lo: 0.0,
        i_hi: 2.0 / 3.0,
    };
    let up = Segment {
        direction: Direction::Increasing,
        lo: turn,
        hi: PPoint::ONE,
        i_lo: 2.0 / 3.0,
        i_hi: 1.0,
    };
    let x = place(&ctx, &down, m_minus + 1, Placement::UniformU)?;
    let t = place(&ctx, &up, m_plus, Placement::UniformU)?;
    let mut sum = 0.0;
    for m in 1..=m_minus {
        sum += chord(3, x[m - 1], x[m]);
    }
    for m in 2..m_plus {
        let (j1, j2) = tangents(&ctx, 3, t[m - 2], t[m - 1]);
        sum += j1 + j2;
    }
    sum += final_tangent(&ctx, 3, t[m_plus - 2]);
    Ok(4.0 / (3.0 * PI) * sum)
}

/// Bound at `p = λ` together with its minimum over a grid in `(1, λ]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalBound {
    pub k: usize,
    pub counts: Vec<usize>,
    pub lambda: f64,
    pub at_lambda: f64,
    pub scan_min: f64,
    pub scan_argmin: f64,
    pub grid: (f64, f64, usize),
}

/// Lowest grid point of the interval scan.
pub const SCAN_START: f64 = 1.001;
pub const SCAN_POINTS: usize = 200;

pub fn interval_bound(k: usize, counts: &[usize], lambda: f64) -> Result<IntervalBound> {
    interval_bound_on(k, counts, lambda, SCAN_START, SCAN_POINTS)
}

pub fn interval_bound_on(k: usize, counts: &[usize], lambda: f64, start: f64, n: usize) -> Result<IntervalBound> {
    if !(lambda > start) || n < 2 {
        return Err(Error::InvalidInput(format!("need lambda > {start} and n >= 2")));
    }
    let grid = linspace(start, lambda, n);
    let totals = grid
        .par_iter()
        .map(|&p| lower_bound_spk(k, p, counts).map(|b| b.total))
        .collect::<Result<Vec<_>>>()?;
    let (idx, &scan_min) = totals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    Ok(IntervalBound {
        k,
        counts: counts.to_vec(),
        lambda,
        at_lambda: totals[n - 1],
        scan_min,
        scan_argmin: grid[idx],
        grid: (start, lambda, n),
    })
}

/// `ŝ_p(k)` from the coefficient quadrature, for validating bounds.
pub fn reference_coefficient(k: usize, p: f64) -> Result<f64> {
    CoefficientSeries::new(ProfileSpec::psine(p)?)?.coeff(k)
}

/// A tabulated bound: `(k, λ, counts in segment order, value)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub k: usize,
    pub lambda: f64,
    pub counts: Vec<usize>,
    pub value: f64,
}

/// Published lower bounds used for regression.
pub fn reference_rows() -> Vec<TableRow> {
    let row = |k, lambda, counts: &[usize], value| TableRow {
        k,
        lambda,
        counts: counts.to_vec(),
        value,
    };
    vec![
        row(3, 1.5, &[2, 3], 0.0692320),
        row(3, 1.5, &[3, 3], 0.0912921),
        row(3, 1.5, &[4, 3], 0.0996541),
        row(3, 1.9, &[3, 3], 0.00534857),
        row(9, 1.5, &[4, 5, 5, 4, 2], 8.76881e-6),
        row(9, 1.5, &[5, 5, 5, 4, 2], 8.35771e-5),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn integrand(ctx: &PTrigContext, k: usize) -> impl Fn(f64) -> f64 + '_ {
        move |u| phase(k, ctx.i_p(u).unwrap()).cos()
    }

    #[test]
    fn partition_layout() {
        let part = build_partition(3, 1.5).unwrap();
        assert_eq!(part.segments.len(), 2);
        assert_eq!(part.turning_values(), vec![2.0 / 3.0]);
        let part = build_partition(9, 1.5).unwrap();
        assert_eq!(part.decreasing_segments().count(), 3);
        assert_eq!(part.increasing_segments().count(), 2);
        assert_eq!(part.segments.last().unwrap().direction, Direction::Decreasing);
        let part = build_partition(7, 1.3).unwrap();
        assert_eq!(part.segments.last().unwrap().direction, Direction::Increasing);
        assert_eq!(build_partition(1, 1.5).unwrap().segments.len(), 1);
        assert!(build_partition(4, 1.5).is_err());
    }

    #[test]
    fn partition_is_monotone_and_exact() {
        for &(k, p) in &[(3, 1.5), (9, 1.5), (11, 1.2), (7, 3.0)] {
            let part = build_partition(k, p).unwrap();
            let ctx = PTrigContext::new(p).unwrap();
            let f = integrand(&ctx, k);
            for seg in &part.segments {
                assert!((ctx.i_p_point(seg.lo).unwrap() - seg.i_lo).abs() < 1e-10);
                let us = linspace(seg.lo.t, seg.hi.t, 12);
                let vals: Vec<f64> = us.iter().map(|&u| f(u)).collect();
                for w in vals.windows(2) {
                    match seg.direction {
                        Direction::Decreasing => assert!(w[1] <= w[0] + 1e-12),
                        Direction::Increasing => assert!(w[1] >= w[0] - 1e-12),
                    }
                }
            }
        }
    }

    #[test]
    fn chord_below_integral() {
        let ctx = PTrigContext::new(1.5).unwrap();
        let x1 = ctx.invert_i(2.0 / 3.0).unwrap().t;
        let exact = quad::integrate(integrand(&ctx, 3), 0.0, x1, 1e-12).unwrap().value;
        let c = chord_bound(3, 1.5, 0.0, x1).unwrap();
        assert!(c < exact, "{c} vs {exact}");
        // p = 2: I(u) = (2/π) arcsin u
        let f = |u: f64| (3.0 * u.asin()).cos();
        for &(y, x) in &[(0.0, 0.3), (0.1, 0.8660254)] {
            let exact = quad::integrate(f, y, x, 1e-13).unwrap().value;
            let c = chord_bound(3, 2.0, y, x).unwrap();
            assert!(c < exact);
        }
        // shrinking interval
        let (y, h) = (0.2, 1e-7);
        let c = chord_bound(3, 1.5, y, y + h).unwrap();
        let limit = h * phase(3, ctx.i_p(y).unwrap()).cos();
        assert!((c - limit).abs() < 1e-12);
        assert!(chord_bound(3, 1.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn tangents_below_integral() {
        let ctx = PTrigContext::new(1.5).unwrap();
        let s = ctx.invert_i(2.0 / 3.0).unwrap().t;
        for &t in &[0.97, 0.99, 1.0] {
            let exact = quad::integrate(integrand(&ctx, 3), s, t, 1e-12).unwrap().value;
            let (j1, j2) = tangent_bounds(3, 1.5, s, t).unwrap();
            assert!(j1 + j2 < exact, "t = {t}: {} vs {exact}", j1 + j2);
        }
        for &(s, t) in &[(0.1, 0.2), (0.5, 0.95), (0.8, 0.81)] {
            let (ns, nt) = (
                Node { u: PPoint::from_t(s), i: ctx.i_p(s).unwrap() },
                Node { u: PPoint::from_t(t), i: ctx.i_p(t).unwrap() },
            );
            let g = tangent_meet(&ctx, ns, nt);
            assert!(ns.i < g && g < nt.i);
        }
        for h in [1e-3, 1e-5] {
            let (j1, j2) = tangent_bounds(3, 1.5, 0.97, 0.97 + h).unwrap();
            assert!(j1.abs() < 2.0 * h && j2.abs() < 2.0 * h);
        }
    }

    #[test]
    fn k3_matches_direct_formula() {
        for &(p, a, b) in &[(1.5, 2, 3), (1.5, 4, 3), (1.9, 3, 3), (1.2, 5, 7)] {
            let r = lower_bound_spk(3, p, &[a, b]).unwrap();
            let direct = remark_a1_bound(p, a, b).unwrap();
            assert!((r.total - direct).abs() < 1e-14, "{} vs {direct}", r.total);
            assert!((r.total - r.sum_of_terms()).abs() < 1e-14);
            assert!(r.final_tangent_term.is_some());
        }
    }

    #[test]
    fn bounds_are_valid() {
        for row in reference_rows() {
            let r = lower_bound_spk(row.k, row.lambda, &row.counts).unwrap();
            let exact = reference_coefficient(row.k, row.lambda).unwrap();
            assert!(r.total < exact, "{row:?}: {} vs {exact}", r.total);
        }
        let r = lower_bound_spk(9, 1.5, &[5, 5, 5, 4, 2]).unwrap();
        assert!(r.final_tangent_term.is_none());
        assert_eq!(r.chord_terms.len(), 5 + 4 + 1);
        assert_eq!(r.tangent_terms.len(), 4 + 3);
    }

    #[test]
    fn reproduces_tables() {
        for row in reference_rows() {
            let r = lower_bound_spk(row.k, row.lambda, &row.counts).unwrap();
            assert!((r.total / row.value - 1.0).abs() < 2e-6, "{row:?}: {}", r.total);
        }
        // equal spacing in I_p gives different, still valid, bounds
        let r = lower_bound_spk_with(9, 1.5, &[4, 5, 5, 4, 2], Placement::UniformI).unwrap();
        assert!(r.total > 1e-4 && r.total < reference_coefficient(9, 1.5).unwrap());
    }

    #[test]
    fn scan_near_one_stays_finite() {
        let b = interval_bound_on(3, &[2, 3], 1.5, 1.001, 20).unwrap();
        assert!(b.scan_min.is_finite());
        assert_eq!(b.scan_argmin, 1.5);
        assert_eq!(b.at_lambda, b.scan_min);
    }

    #[test]
    fn count_validation() {
        assert!(lower_bound_spk(3, 1.5, &[2]).is_err());
        assert!(lower_bound_spk(3, 1.5, &[0, 3]).is_err());
        assert!(lower_bound_spk(3, 1.5, &[2, 1]).is_err());
        assert!(lower_bound_spk(1, 1.5, &[2]).is_err());
    }
}
