use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::{CheckReport, Witness};
use super::*;
use crate::numeric::complex_from_f64;
use crate::trinomial::{radius, SolveConfig, TrinomialError, TrinomialProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Theorem1,
    Powers,
    Lemma3,
    Lemma4,
    Lemma5,
    Appendix,
    Branches,
    Properties,
}

impl Suite {
    pub const NAMES: &'static [&'static str] =
        &["all", "theorem1", "powers", "lemma3", "lemma4", "lemma5", "appendix", "branches", "properties"];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Suite::All,
            "theorem1" => Suite::Theorem1,
            "powers" => Suite::Powers,
            "lemma3" => Suite::Lemma3,
            "lemma4" => Suite::Lemma4,
            "lemma5" => Suite::Lemma5,
            "appendix" => Suite::Appendix,
            "branches" => Suite::Branches,
            "properties" => Suite::Properties,
            _ => return Err(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub degrees: RangeInclusive<u32>,
    /// Truncation order of the formal checks.
    pub order: usize,
    /// Tolerance of the branch relations.
    pub eps: f64,
    /// Random `t` per degree for the branch relations.
    pub branch_samples: usize,
    pub solve: SolveConfig,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { degrees: 2..=6, order: 40, eps: 1e-10, branch_samples: 8, solve: SolveConfig::default() }
    }
}

/// Runs the selected checks in a fixed order. Degrees outside `2..=6` are
/// skipped by the appendix suite.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Vec<CheckReport> {
    let k = params.order;
    let mut out = Vec::new();
    for n in params.degrees.clone().filter(|&n| n >= 2) {
        if suite.includes(Suite::Theorem1) {
            out.push(check_theorem1(n, k.max(n as usize)));
        }
        if suite.includes(Suite::Powers) {
            out.push(check_inverse_relation(n, k));
            for j in 2..=4 {
                out.push(check_powers(n, j, k));
            }
        }
        if suite.includes(Suite::Lemma3) {
            out.push(check_lemma3(n, k.max((n * (n - 1)) as usize)));
        }
        if suite.includes(Suite::Lemma4) {
            out.push(check_lemma4(n, (k / (n as usize - 1)) as u64));
        }
        if suite.includes(Suite::Lemma5) {
            for j in 1..=2 {
                for l in 1..=2 {
                    out.push(check_lemma5(Lemma5Identity::XTimesX, n, j, l, k));
                }
                for l in 0..=2 {
                    out.push(check_lemma5(Lemma5Identity::XTimesY, n, j, l, k));
                }
            }
        }
        if suite.includes(Suite::Properties) {
            for j in 0..=4 {
                out.push(check_coefficient_formulas(n, j, k));
                out.push(check_ode_residual(n, j, k));
                out.push(check_cancellation(n, j, k));
                out.push(check_shift_consistency(n, j, k));
            }
        }
        if suite.includes(Suite::Appendix) && (2..=6).contains(&n) {
            out.push(regenerate_appendix(n).1);
        }
        if suite.includes(Suite::Branches) {
            out.extend(branch_samples(n, params));
        }
    }
    out
}

/// `|t| / r_n` uniform in `[0.1, 3]`, argument uniform, points within the
/// branch guard redrawn.
fn branch_samples(n: u32, params: &SuiteParams) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.solve.seed ^ u64::from(n));
    let r_n = radius(n, 64).r.to_f64();
    let mut out = Vec::new();
    while out.len() < params.branch_samples {
        let rho = rng.gen_range(0.1..=3.0) * r_n;
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let t = complex_from_f64(rho * phi.cos(), rho * phi.sin(), 64);
        let p = TrinomialProblem::new(n, t).expect("n >= 2");
        match check_branch_relations(&p, params.eps, &params.solve) {
            Ok(r) => out.push(r),
            Err(TrinomialError::NearBranchPoint { .. }) => continue,
            Err(e) => {
                let mut r = CheckReport::new("branches").param("n", n).param("t", format!("{rho:e}∠{phi}"));
                r.fail(Witness::Message { detail: e.to_string() });
                out.push(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for name in Suite::NAMES {
            let s: Suite = name.parse().unwrap();
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{name}\""));
        }
        assert!("lemma6".parse::<Suite>().is_err());
    }

    #[test]
    fn small_full_run_passes() {
        let params = SuiteParams { degrees: 2..=3, order: 16, branch_samples: 2, ..Default::default() };
        let reports = run_suite(Suite::All, &params);
        assert!(reports.len() > 40);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn lemma3_suite_constants() {
        let params = SuiteParams { degrees: 2..=5, ..Default::default() };
        let notes: Vec<String> = run_suite(Suite::Lemma3, &params).into_iter().flat_map(|r| r.notes).collect();
        assert_eq!(notes, ["constant -2", "constant -6", "constant -24", "constant -120"]);
    }
}
