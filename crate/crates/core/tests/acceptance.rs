//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dilated_basis::appendix::{lower_bound_spk, reference_coefficient, reference_rows};
use dilated_basis::criterion::{check_multi_term_with, prime_square_support};
use dilated_basis::dirichlet::SupportSet;
use dilated_basis::profiles::{envelope_table, eval_profile, trapezoid_sum_identity, CoefficientSeries, ProfileSpec};
use dilated_basis::ptrig::{i_p_ratio_bounds, PExponent, PTrigContext};
use dilated_basis::quad;
use dilated_basis::thresholds::{alpha3_witness, linspace, named_recipe, solve, ThresholdResult};
use dilated_basis::torusmin::{min_modulus_three_term, MinOptions};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn threshold(name: &str, target: f64, tol: f64) -> Result<ThresholdResult, String> {
    let r = solve(&named_recipe(name).map_err(|e| e.to_string())?).map_err(|e| format!("{name}: {e}"))?;
    if (r.value - target).abs() <= tol {
        Ok(r)
    } else {
        Err(format!("{name} = {:.8}, expected {target} ± {tol:e}", r.value))
    }
}

fn c1_alpha0() -> Outcome {
    let exact = (PI * PI / 8.0 - 1.0).asin() / PI;
    let r = threshold("alpha0", 0.0750835, 1e-6)?;
    ensure(
        (r.value - exact).abs() < 1e-10,
        format!("alpha0 = {:.10}, closed form {exact:.10}", r.value),
    )
}

fn c2_alpha1() -> Outcome {
    let r = threshold("alpha1", 0.0421317, 1e-4)?;
    Ok(format!("alpha1 = {:.8}", r.value))
}

fn c3_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for a in [0.1, 0.25, 0.4] {
        let (lhs, rhs) = trapezoid_sum_identity(a).map_err(|e| e.to_string())?;
        worst = worst.max((lhs.value - rhs).abs());
    }
    if worst >= 1e-8 {
        return Err(format!("identity gap {worst:.2e}"));
    }
    let r = threshold("alpha4", 0.0318993, 1e-5)?;
    Ok(format!("identity gap {worst:.2e}; alpha4 = {:.8}", r.value))
}

fn c4_alpha5() -> Outcome {
    let r = threshold("alpha5", 0.0287740, 5e-4)?;
    Ok(format!("alpha5 = {:.8}", r.value))
}

fn c5_witness() -> Outcome {
    ensure(alpha3_witness(), "sum of |ĝ(j)|, 3 ≤ j ≤ 111, exceeds ĝ(1) at α = 0.04".into())
}

fn c6_beta0() -> Outcome {
    let a = threshold("beta0", 0.159059, 1e-4)?;
    let b = threshold("betaTilde0", 0.180340, 1e-4)?;
    Ok(format!("beta0 = {:.8}, betaTilde0 = {:.8}", a.value, b.value))
}

fn c7_beta12() -> Outcome {
    let a = threshold("beta1", 0.0320481, 1e-3)?;
    let b = threshold("beta2", 0.0291447, 1e-3)?;
    Ok(format!("beta1 = {:.8}, beta2 = {:.8}", a.value, b.value))
}

fn c8_p2() -> Outcome {
    let c = CoefficientSeries::new(ProfileSpec::psine(2.0).unwrap())
        .and_then(|s| s.coeffs(51))
        .map_err(|e| e.to_string())?;
    let worst = c[2..].iter().step_by(2).map(|v| v.abs()).fold(0.0, f64::max);
    ensure(
        (c[0] - 1.0).abs() < 1e-12 && worst < 1e-10,
        format!("ŝ₂(1) − 1 = {:.1e}, max odd |ŝ₂(j)| = {worst:.1e}", c[0] - 1.0),
    )
}

fn c9_p3() -> Outcome {
    let r = threshold("p3", 1.04399, 1e-3)?;
    Ok(format!("p3 = {:.7}", r.value))
}

fn c10_lemma51() -> Outcome {
    let a = threshold("lemma51_k61", 1.03876, 1e-3)?;
    let b = threshold("lemma51_k63", 1.03852, 1e-3)?;
    let c = threshold("p4", 1.03854, 1e-3)?;
    Ok(format!("k=61: {:.7}, k=63: {:.7}, p4 = {:.7}", a.value, b.value, c.value))
}

fn c11_p5() -> Outcome {
    let r = threshold("p5", 1.02975, 1e-3)?;
    let support = prime_square_support(2).unwrap();
    let opts = MinOptions::default();
    let mut prev = f64::NEG_INFINITY;
    for p in linspace(1.01, 1.1, 20) {
        let series = CoefficientSeries::new(ProfileSpec::psine(p).unwrap()).map_err(|e| e.to_string())?;
        let rep = check_multi_term_with(&series, &support, 251, &opts).map_err(|e| e.to_string())?;
        if rep.cond2_value <= prev {
            return Err(format!("J₂(251, p) not increasing at p = {p}"));
        }
        if rep.cond1_margin <= 0.0 {
            return Err(format!("zero-free condition fails at p = {p}"));
        }
        prev = rep.cond2_value;
    }
    Ok(format!("p5 = {:.7}; J₂ increasing and zero-free on 20 points of [1.01, 1.1]", r.value))
}

fn c12_three_term() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_170_601);
    const N: usize = 100_000;
    let (cos, sin): (Vec<f64>, Vec<f64>) = (0..N)
        .map(|i| (2.0 * PI * i as f64 / N as f64).sin_cos())
        .map(|(s, c)| (c, s))
        .unzip();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let c1 = rng.gen_range(0.05..2.0);
        let c2 = rng.gen_range(-2.0..2.0);
        let c3 = rng.gen_range(0.05..2.0);
        let closed = min_modulus_three_term(c1, c2, c3).map_err(|e| e.to_string())?;
        // p(θ) = c1 + c2 e^{iθ} + c3 e^{2iθ}
        let grid = (0..N)
            .map(|i| {
                let (c, s) = (cos[i], sin[i]);
                let (c2t, s2t) = (c * c - s * s, 2.0 * s * c);
                let re = c1 + c2 * c + c3 * c2t;
                let im = c2 * s + c3 * s2t;
                re.hypot(im)
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max((grid - closed).abs());
    }
    ensure(worst < 1e-4, format!("max |grid − closed form| over 200 triples = {worst:.2e}"))
}

fn c13_appendix() -> Outcome {
    let mut lines = Vec::new();
    let mut k3 = Vec::new();
    for row in reference_rows() {
        let b = lower_bound_spk(row.k, row.lambda, &row.counts).map_err(|e| e.to_string())?;
        let exact = reference_coefficient(row.k, row.lambda).map_err(|e| e.to_string())?;
        if b.total.partial_cmp(&exact) != Some(std::cmp::Ordering::Less) {
            return Err(format!("{row:?}: bound {} not below ŝ = {exact}", b.total));
        }
        let ratio = b.total / row.value;
        if !(0.5..=2.0).contains(&ratio) {
            return Err(format!("{row:?}: bound {} off the table by factor {ratio:.3}", b.total));
        }
        if (b.total - b.sum_of_terms()).abs() > 1e-14 {
            return Err("total does not match its terms".into());
        }
        let json = serde_json::to_value(&b).map_err(|e| e.to_string())?;
        if json["chord_terms"].as_array().map_or(0, Vec::len) != b.chord_terms.len() {
            return Err("serialised bound lacks its terms".into());
        }
        if row.k == 3 && row.lambda == 1.5 {
            k3.push(b.total);
        }
        lines.push(format!("{:.6e}", b.total));
    }
    ensure(
        k3.windows(2).all(|w| w[1] >= w[0] - 1e-12),
        format!("bounds {} (all below ŝ_p(k), within factor 2)", lines.join(", ")),
    )
}

fn c14_properties() -> Outcome {
    // Parseval: ∫₀¹ f² = ½ Σ f̂(j)²
    let cases = [
        (ProfileSpec::trapezoid(0.1).unwrap(), 100_000),
        (ProfileSpec::cubic(0.1).unwrap(), 20_000),
        (ProfileSpec::psine(1.5).unwrap(), 4096),
        (ProfileSpec::psine(3.0).unwrap(), 4096),
    ];
    for (spec, n) in cases {
        let series = CoefficientSeries::new(spec).map_err(|e| e.to_string())?;
        let c = series.coeffs(n).map_err(|e| e.to_string())?;
        let half_sum: f64 = 0.5 * c.iter().rev().map(|v| v * v).sum::<f64>();
        let integral = quad::integrate(|x| eval_profile(&spec, x).powi(2), 0.0, 1.0, 1e-11)
            .map_err(|e| e.to_string())?
            .value;
        if (half_sum - integral).abs() > 1e-6 {
            return Err(format!("Parseval fails for {spec}: {half_sum} vs {integral}"));
        }
        let env = envelope_table(&spec, n).map_err(|e| e.to_string())?;
        if let Some(j) = (0..n).find(|&i| c[i].abs() > env[i] * (1.0 + 1e-12)) {
            return Err(format!("envelope fails for {spec} at j = {}", j + 1));
        }
    }

    // ratio inequality for p < q
    let ps = [1.1, 1.5, 2.0, 3.0, 6.0];
    for (a, &p) in ps.iter().enumerate() {
        for &q in &ps[a + 1..] {
            for y in linspace(0.05, 0.95, 10) {
                let (ratio, upper) = i_p_ratio_bounds(PExponent::new(p).unwrap(), PExponent::new(q).unwrap(), y)
                    .map_err(|e| e.to_string())?;
                if !(1.0 < ratio && ratio < upper) {
                    return Err(format!("ratio bounds fail at p = {p}, q = {q}, y = {y}"));
                }
            }
        }
    }

    // convexity and inversion round trip
    for &p in &[1.05, 1.5, 2.0, 4.0] {
        let ctx = PTrigContext::new(p).map_err(|e| e.to_string())?;
        let ys = linspace(0.0, 0.99, 100);
        let vals: Vec<f64> = ys.iter().map(|&y| ctx.i_p(y).unwrap()).collect();
        if vals.windows(3).any(|w| w[0] - 2.0 * w[1] + w[2] <= 0.0 || w[1] <= w[0]) {
            return Err(format!("I_p not increasing and convex at p = {p}"));
        }
        for (&y, &i) in ys.iter().zip(&vals) {
            let back = ctx.invert_i(i).map_err(|e| e.to_string())?;
            if (back.t - y).abs() > 1e-10 {
                return Err(format!("inversion round trip fails at p = {p}, y = {y}"));
            }
        }
    }

    // the criterion margin never decreases in k
    let opts = MinOptions::default();
    for spec in [ProfileSpec::trapezoid(0.05).unwrap(), ProfileSpec::cubic(0.05).unwrap()] {
        let series = CoefficientSeries::new(spec).unwrap();
        let support = SupportSet::new(&[1, 3, 9]).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in [0, 1, 5, 25, 100, 400] {
            let v = check_multi_term_with(&series, &support, k, &opts).map_err(|e| e.to_string())?.cond2_value;
            if v < prev - 1e-14 {
                return Err(format!("margin decreases in k for {spec} at k = {k}"));
            }
            prev = v;
        }
    }
    Ok("Parseval, envelope, ratio bounds, convexity, inversion, k-monotonicity".into())
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("closed-form alpha0", c1_alpha0),
        ("odd-sum threshold alpha1", c2_alpha1),
        ("trapezoid identity and alpha4", c3_identity),
        ("two-prime threshold alpha5", c4_alpha5),
        ("alpha3 witness", c5_witness),
        ("cubic one-term thresholds", c6_beta0),
        ("cubic multi-term thresholds", c7_beta12),
        ("p-sine at p = 2", c8_p2),
        ("p-sine one-term threshold p3", c9_p3),
        ("support {1,3,9} crossings and p4", c10_lemma51),
        ("p-sine two-prime threshold p5", c11_p5),
        ("three-term minimum oracle", c12_three_term),
        ("appendix lower bounds", c13_appendix),
        ("property suites", c14_properties),
    ];
    let mut failures = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {title}: {detail} [{secs:.1}s]", i + 1);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
