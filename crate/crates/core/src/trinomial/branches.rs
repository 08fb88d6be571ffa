use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Complex, Float};

use super::{inclusion_radius, trinomial_derivative, Method, RootResult, SolveConfig, TrinomialError, TrinomialProblem};
use crate::numeric::{abs_up, trinomial_value};

const POLISH_STEPS: usize = 8;

/// All `n` roots of `x^n - x + t` by Durand-Kerner simultaneous iteration,
/// each polished by Newton steps.
///
/// Starting points sit on a circle of radius `max(1, |t|^(1/n))`, rotated and
/// jittered by a generator seeded from `config.seed`. Each root must reach
/// `|F_n(x, t)| <= eps · max(1, |t|)`. The error bound of each root is the
/// radius `n |F(x)| / |F'(x)|` of a disc certain to contain a root.
///
/// Roots are returned sorted by real part, then imaginary part.
pub fn solve_all_branches(p: &TrinomialProblem, eps: f64, config: &SolveConfig) -> Result<Vec<RootResult>, TrinomialError> {
    let n = p.n;
    let prec = config.eval.precision_for(eps);
    let t = p.t_at(prec);
    let t_abs = abs_up(&t);
    let scale = t_abs.powf(1.0 / f64::from(n)).max(1.0);
    let tolerance = eps * scale * 1e-3;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let theta0: f64 = 0.4 + rng.gen_range(0.0..0.1);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let jitter: f64 = 1.0 + rng.gen_range(0.0..0.05);
            let angle = Float::with_val(prec, &two_pi * k) / n + theta0;
            let rho = Float::with_val(prec, scale * jitter);
            Complex::with_val(prec, (rho.clone() * angle.clone().cos(), rho * angle.sin()))
        })
        .collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        iterations += 1;
        let mut max_step = 0.0f64;
        for k in 0..z.len() {
            let fk = trinomial_value(n, &z[k], &t);
            let mut den = Complex::with_val(prec, 1);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    den *= Complex::with_val(prec, &z[k] - zj);
                }
            }
            if den.is_zero() {
                // coincident iterates: nudge and retry on the next sweep
                z[k] *= Complex::with_val(prec, (1.0 + 1e-8, 1e-8));
                max_step = f64::INFINITY;
                continue;
            }
            let step = Complex::with_val(prec, fk / den);
            max_step = max_step.max(abs_up(&step));
            z[k] -= step;
        }
        if max_step <= tolerance {
            converged = true;
            break;
        }
    }

    let limit = eps * t_abs.max(1.0);
    let mut roots = Vec::with_capacity(z.len());
    for mut x in z {
        let mut fx = trinomial_value(n, &x, &t);
        for _ in 0..POLISH_STEPS {
            let d = trinomial_derivative(n, &x);
            if d.is_zero() || fx.is_zero() {
                break;
            }
            let candidate = Complex::with_val(prec, &x - Complex::with_val(prec, &fx / &d));
            let fc = trinomial_value(n, &candidate, &t);
            if abs_up(&fc) >= abs_up(&fx) {
                break;
            }
            x = candidate;
            fx = fc;
        }
        let residual = abs_up(&fx);
        if residual > limit || (!converged && residual > limit * 1e-3) {
            return Err(TrinomialError::NonConvergence { iterations, residual });
        }
        roots.push(RootResult {
            error_bound: inclusion_radius(n, &x, &fx),
            value: x,
            residual,
            method: Method::Oracle,
            terms_used: 0,
            iterations,
        });
    }
    roots.sort_by(|a, b| {
        let ka = (a.value.real().to_f64(), a.value.imag().to_f64());
        let kb = (b.value.real().to_f64(), b.value.imag().to_f64());
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

/// Index of the root closest to `target`.
pub fn principal_index(roots: &[RootResult], target: &Complex) -> Option<usize> {
    roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let d = Complex::with_val(r.value.prec().0, &r.value - target);
            (i, abs_up(&d))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}
