use rug::float::Round;
use rug::ops::MulAssignRound;
use rug::{Complex, Float, Rational};

use super::{HyperError, HyperSpec};
use crate::numeric::{abs_up, precision_for};

pub const DEFAULT_MAX_TERMS: usize = 100_000;
pub const MAX_TERMS_ENV: &str = "TRINOMIA_MAX_TERMS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Terms summed before giving up with [`HyperError::BudgetExceeded`].
    pub max_terms: usize,
    /// Working precision in bits; derived from `eps` when `None`.
    pub precision: Option<u32>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { max_terms: DEFAULT_MAX_TERMS, precision: None }
    }
}

impl EvalConfig {
    /// Default configuration with the term budget read from
    /// `TRINOMIA_MAX_TERMS` when set to a positive integer.
    pub fn from_env() -> Self {
        let max_terms = std::env::var(MAX_TERMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_TERMS);
        EvalConfig { max_terms, precision: None }
    }

    pub fn precision_for(&self, eps: f64) -> u32 {
        self.precision.unwrap_or_else(|| precision_for(eps, self.max_terms))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex,
    /// Bound on `|value - true sum|`: omitted tail plus accumulated rounding.
    pub tail_bound: f64,
    pub terms_used: usize,
}

impl HyperSpec {
    /// Upper bound on `|c_{i+1} z^{i+1} / (c_i z^i)|` over all `i >= m`, given
    /// `w_abs >= |γ z|`, or `None` when no finite bound is available yet.
    ///
    /// Upper and lower parameters (with the `1` from `k!` counted as a lower
    /// one) are paired largest with largest. A pair `(i+a)/(i+b)` with `a <= b`
    /// never exceeds 1 and with `a > b` decreases in `i`, so its supremum over
    /// `i >= m` is `max(1, (m+a)/(m+b))`. Unpaired lower parameters contribute
    /// `1/(m+b)`.
    pub(crate) fn ratio_sup_bound(&self, m: u64, w_abs: &Float) -> Option<Float> {
        let mut uppers: Vec<&Rational> = self.alphas.iter().collect();
        let one = Rational::from(1);
        let mut lowers: Vec<&Rational> = self.betas.iter().chain(std::iter::once(&one)).collect();
        if uppers.len() > lowers.len() {
            return None;
        }
        let positive = |x: &Rational| Rational::from(x + m).cmp0().is_gt();
        if !uppers.iter().all(|a| positive(a)) || !lowers.iter().all(|b| positive(b)) {
            return None;
        }
        uppers.sort();
        lowers.sort();
        let unpaired = lowers.len() - uppers.len();
        let mut factor = Rational::from(1);
        for b in &lowers[..unpaired] {
            factor /= Rational::from(*b + m);
        }
        for (a, b) in uppers.iter().zip(&lowers[unpaired..]) {
            if a > b {
                factor *= Rational::from(*a + m) / Rational::from(*b + m);
            }
        }
        let mut bound = Float::with_val_round(w_abs.prec(), &factor, Round::Up).0;
        bound.mul_assign_round(w_abs, Round::Up);
        Some(bound)
    }

    /// Sums `Σ c_k z^k` until the certified bound on the omitted tail plus
    /// rounding error is at most `eps`.
    ///
    /// After the terms `0..=k` have been added, the omitted sum is bounded by
    /// `|term_{k+1}| / (1 - R)` where `R` bounds every later term ratio (see
    /// [`ratio_sup_bound`](Self::ratio_sup_bound)). Requires `|γ z| < 1`
    /// unless the series terminates.
    pub fn evaluate(&self, z: &Complex, eps: f64, config: &EvalConfig) -> Result<EvalResult, HyperError> {
        let prec = config.precision_for(eps);
        let (p, q) = self.shape();
        let terminates = self.alphas.iter().any(|a| a.denom() == &1 && a.cmp0().is_le());
        let w = Complex::with_val(prec, z * Complex::with_val(prec, &self.gamma));
        let w_abs = Float::with_val(prec, w.abs_ref());

        if z.is_zero() {
            return Ok(EvalResult { value: Complex::with_val(prec, 1), tail_bound: 0.0, terms_used: 1 });
        }
        if !terminates {
            if p > q + 1 {
                return Err(HyperError::Divergent);
            }
            if w_abs >= 1 {
                return Err(HyperError::OutsideDisc { modulus: w_abs.to_f64() });
            }
        }

        let unit_roundoff = Float::with_val(64, Float::u_exp(1, 1 - prec as i32 + 3)).to_f64();
        let mut sum = Complex::with_val(prec, 0);
        let mut term = Complex::with_val(prec, 1);
        let mut abs_sum = 0.0f64;
        let mut best_bound = f64::INFINITY;
        for k in 0..config.max_terms {
            sum += &term;
            abs_sum += abs_up(&term);
            let rounding = unit_roundoff * (k as f64 + 2.0) * abs_sum;

            let ratio = self.term_ratio(k as u64);
            if ratio.cmp0().is_eq() {
                return Ok(EvalResult { value: sum, tail_bound: rounding, terms_used: k + 1 });
            }
            term *= &w;
            term *= Float::with_val(prec, &ratio);

            if let Some(r) = self.ratio_sup_bound(k as u64 + 1, &w_abs) {
                if r < 1 {
                    let gap = Float::with_val_round(prec, 1 - &r, Round::Down).0;
                    let head = Float::with_val_round(prec, term.abs_ref(), Round::Up).0;
                    let tail = Float::with_val_round(prec, &head / &gap, Round::Up).0;
                    let bound = tail.to_f64_round(Round::Up) + rounding;
                    best_bound = best_bound.min(bound);
                    if bound <= eps {
                        return Ok(EvalResult { value: sum, tail_bound: bound, terms_used: k + 1 });
                    }
                }
            }
        }
        Err(HyperError::BudgetExceeded { terms: config.max_terms, best_bound })
    }

    /// Real-argument convenience wrapper around [`evaluate`](Self::evaluate).
    pub fn evaluate_real(&self, z: &Rational, eps: f64, config: &EvalConfig) -> Result<EvalResult, HyperError> {
        let prec = config.precision_for(eps);
        self.evaluate(&Complex::with_val(prec, z), eps, config)
    }
}
