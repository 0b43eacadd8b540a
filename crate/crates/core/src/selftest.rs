//! Quick consistency checks that run in well under a second.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dirichlet::{DirichletPolynomial, SupportSet};
use crate::profiles::{trapezoid_sum_identity, CoefficientSeries, ProfileSpec};
use crate::special::zeta;
use crate::thresholds::{alpha3_witness, bisect, cubic_crude_envelope, cubic_first_term, named_recipe, solve};
use crate::torusmin::{min_modulus, min_modulus_three_term};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub checks: Vec<CheckOutcome>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Constants the checks depend on; overridable to confirm the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfTestConfig {
    pub zeta3: f64,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        Self {
            zeta3: zeta(3.0).expect("zeta(3) is finite"),
        }
    }
}

pub fn run() -> SelfTestReport {
    run_with(&SelfTestConfig::default())
}

pub fn run_with(cfg: &SelfTestConfig) -> SelfTestReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, outcome: std::result::Result<(bool, String), String>| {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, e));
        checks.push(CheckOutcome {
            name: name.into(),
            passed,
            detail,
        });
    };

    push("alpha0", {
        let exact = (PI * PI / 8.0 - 1.0).asin() / PI;
        solve(&named_recipe("alpha0").expect("known recipe"))
            .map(|r| {
                let ok = (r.value - exact).abs() < 1e-10 && (r.value - 0.0750835).abs() < 1e-6;
                (ok, format!("root {:.10}, closed form {exact:.10}", r.value))
            })
            .map_err(|e| e.to_string())
    });

    for name in ["alpha1", "alpha4"] {
        push(name, {
            solve(&named_recipe(name).expect("known recipe"))
                .map(|r| (r.matches_expected() == Some(true), format!("root {:.8}", r.value)))
                .map_err(|e| e.to_string())
        });
    }

    let z3 = cfg.zeta3;
    push("beta0", {
        bisect(|b| Ok(cubic_first_term(b, z3)), 0.01, 0.49, 1e-12)
            .map(|r| ((r.value - 0.159059).abs() < 1e-4, format!("root {:.8}", r.value)))
            .map_err(|e| e.to_string())
    });
    push("betaTilde0", {
        bisect(|b| Ok(cubic_crude_envelope(b, z3)), 0.01, 0.49, 1e-12)
            .map(|r| ((r.value - 0.180340).abs() < 1e-4, format!("root {:.8}", r.value)))
            .map_err(|e| e.to_string())
    });

    push("alpha3-witness", Ok((alpha3_witness(), "α = 0.04, indices up to 111".into())));

    push("trapezoid-identity", {
        trapezoid_sum_identity(0.25)
            .map(|(lhs, rhs)| {
                let gap = (lhs.value - rhs).abs();
                (gap < 1e-8, format!("|lhs − rhs| = {gap:.2e}"))
            })
            .map_err(|e| e.to_string())
    });

    push("psine-p2", {
        let run = || -> crate::Result<(bool, String)> {
            let c = CoefficientSeries::new(ProfileSpec::psine(2.0)?)?.coeffs(51)?;
            let worst = c[2..].iter().map(|v| v.abs()).fold(0.0, f64::max);
            let ok = (c[0] - 1.0).abs() < 1e-10 && worst < 1e-10;
            Ok((ok, format!("ŝ(1) − 1 = {:.2e}, max |ŝ(j)|, 3 ≤ j ≤ 51: {worst:.2e}", c[0] - 1.0)))
        };
        run().map_err(|e| e.to_string())
    });

    push("three-term-minimum", {
        let triples = [(1.0, 0.3, 0.2), (1.0, -0.9, 0.4), (0.5, 0.1, 0.45), (2.0, 1.5, 0.1)];
        let run = || -> crate::Result<(bool, String)> {
            let support = SupportSet::three_term(3)?;
            let mut worst: f64 = 0.0;
            for &(a, b, c) in &triples {
                let closed = min_modulus_three_term(a, b, c)?;
                let poly = DirichletPolynomial::from_real(support.clone(), &[a, b, c])?;
                let grid = min_modulus(&poly, 4096, 1e-12)?;
                worst = worst.max((grid.mu - closed).abs());
            }
            Ok((worst < 1e-6, format!("max deviation {worst:.2e}")))
        };
        run().map_err(|e| e.to_string())
    });

    SelfTestReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_on_true_constants() {
        let r = run();
        assert!(r.all_passed(), "{:?}", r.failed().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 9);
    }

    #[test]
    fn perturbed_zeta3_is_caught() {
        let r = run_with(&SelfTestConfig { zeta3: 1.2020569 * 1.01 });
        let failed: Vec<&str> = r.failed().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"beta0"), "{failed:?}");
        assert!(!failed.contains(&"alpha0"));
    }
}
