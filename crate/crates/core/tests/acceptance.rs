//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that every criterion reports even when an earlier one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Complex, Float, Rational};

use trinomia::numeric::{abs_up, cpow, default_eps, precision_for_digits, trinomial_value};
use trinomia::trinomial::{
    g_residual, radius, solve, solve_all_branches, solve_large_t, solve_principal, x_series, y_from_x, y_value, Mode,
};
use trinomia::verify::{
    check_cancellation, check_cancellation_on, check_coefficient_formulas, check_coefficient_formulas_on,
    check_inverse_relation, check_lemma3, check_lemma4, check_lemma5, check_ode_residual, check_ode_residual_on,
    check_powers, check_shift_consistency, check_shift_consistency_on, check_theorem1, check_theorem1_on,
    regenerate_appendix, CheckReport, Lemma5Identity, APPENDIX_TYPOS,
};
use trinomia::{HyperSpec, SolveConfig, TrinomialProblem};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(report: &CheckReport) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(report.to_string())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {took:.2?}, limit {limit:?}"))
    }
}

fn bump(s: &trinomia::TruncatedSeries, k: usize) -> trinomia::TruncatedSeries {
    let mut s = s.clone();
    *s.coeff_mut(k).expect("coefficient present") += 1;
    s
}

fn c1_appendix() -> Outcome {
    let start = Instant::now();
    let mut coefficients = 0;
    for n in 2..=6 {
        let (_, r) = regenerate_appendix(n);
        require(&r)?;
        coefficients += r.parameters["coefficients"].parse::<usize>().unwrap();
    }
    within(start, Duration::from_secs(10), "regeneration")?;
    for t in APPENDIX_TYPOS {
        if t.corrected.is_empty() || t.note.is_empty() {
            return Err(format!("undocumented misprint entry {t:?}"));
        }
    }
    Ok(format!(
        "{coefficients} coefficients for n=2..6 match; {} documented misprint(s)",
        APPENDIX_TYPOS.len()
    ))
}

fn c2_theorem1() -> Outcome {
    let start = Instant::now();
    for n in 2..=6 {
        require(&check_theorem1(n, 60))?;
    }
    within(start, Duration::from_secs(30), "theorem check")?;
    // sensitivity: one perturbed coefficient is caught at its order
    let r = check_theorem1_on(4, &bump(&x_series(4, 1, 60), 31), &trinomia::trinomial::y_series(4, 0, 60));
    if r.passed() {
        return Err("perturbed series passed".into());
    }
    Ok("x^n - x + t = 0 and x' = y through t^60 for n=2..6; perturbed coefficient caught".into())
}

fn c3_power_identities() -> Outcome {
    for n in 2..=5 {
        require(&check_inverse_relation(n, 40))?;
        for j in 2..=4 {
            require(&check_powers(n, j, 40))?;
        }
    }
    Ok("(1 - n x^(n-1)) y = 1, x^j = x_{n,j}, x^j y = y_{n,j} for n=2..5, j=2..4, K=40".into())
}

fn c4_lemma3() -> Outcome {
    let mut constants = Vec::new();
    for n in 2..=5 {
        let r = check_lemma3(n, 40);
        require(&r)?;
        constants.push(r.notes[0].trim_start_matches("constant ").to_string());
    }
    if constants != ["-2", "-6", "-24", "-120"] {
        return Err(format!("constants {constants:?}"));
    }
    Ok(format!("chain constants {}", constants.join(", ")))
}

fn c5_lemma4() -> Outcome {
    for n in 2..=5 {
        require(&check_lemma4(n, 12))?;
    }
    Ok("moment expansion gives C(nm, m) for n=2..5, m<=12".into())
}

fn c6_lemma5() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        for j in 1..=2 {
            for l in 1..=2 {
                require(&check_lemma5(Lemma5Identity::XTimesX, n, j, l, 20))?;
                count += 1;
            }
            for l in 0..=2 {
                require(&check_lemma5(Lemma5Identity::XTimesY, n, j, l, 20))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} product identities exact through K=20"))
}

fn c7_numeric_solve() -> Outcome {
    let digits = 40;
    let eps = default_eps(digits);
    let mut cfg = SolveConfig::default();
    cfg.eval.precision = Some(cfg.eval.precision_for(eps).max(precision_for_digits(digits)));
    let prec = cfg.eval.precision.unwrap();
    let mut worst = (0f64, 0f64);
    let mut slowest = Duration::ZERO;
    for n in 2..=6 {
        let t = Float::with_val(prec + 64, radius(n, prec + 64).r / 2u32);
        let p = TrinomialProblem::new(n, Complex::with_val(prec + 64, t)).unwrap();
        let start = Instant::now();
        let s = solve(&p, eps, &cfg, Mode::Auto).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        if took > Duration::from_secs(1) {
            return Err(format!("n={n} took {took:.2?}"));
        }
        let tt = p.t_at(prec);
        let f = abs_up(&trinomial_value(n, &s.x.value, &tt));
        let g = abs_up(&g_residual(n, &s.y, &tt));
        if f > 1e-25 || g > 1e-25 {
            return Err(format!("n={n}: |F| = {f:e}, |G| = {g:e}"));
        }
        worst = (worst.0.max(f), worst.1.max(g));
    }
    Ok(format!("t = r_n/2, n=2..6: max |F| = {:.1e}, max |G| = {:.1e}, slowest {slowest:.2?}", worst.0, worst.1))
}

fn c8_quadratic_closed_form() -> Outcome {
    let eps = 1e-36;
    let cfg = SolveConfig::default();
    let prec = cfg.eval.precision_for(eps);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0f64;
    for _ in 0..20 {
        let rho: f64 = 0.2 * rng.gen::<f64>().sqrt();
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let t = Complex::with_val(prec, (rho * phi.cos(), rho * phi.sin()));
        let p = TrinomialProblem::new(2, t.clone()).unwrap();
        let x = solve_principal(&p, eps, &cfg).map_err(|e| e.to_string())?;
        let disc = Complex::with_val(prec, 1u32 - Complex::with_val(prec, &t * 4u32)).sqrt();
        let closed = Complex::with_val(prec, 1u32 - disc) / 2u32;
        let d = abs_up(&Complex::with_val(prec, &x.value - &closed));
        if d > 1e-30 {
            return Err(format!("t = {t}: difference {d:e}"));
        }
        worst = worst.max(d);
    }
    Ok(format!("20 random |t| <= 0.2: max |x - (1 - sqrt(1-4t))/2| = {worst:.1e}"))
}

fn c9_branches() -> Outcome {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut sx, mut sy, mut res) = (0f64, 0f64, 0f64);
    let mut done = 0;
    let mut redrawn = 0;
    while done < 100 {
        let n = 2 + (done % 5) as u32;
        let r_n = radius(n, 64).r.to_f64();
        let rho = rng.gen_range(0.1..=3.0) * r_n;
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let t = Complex::with_val(128, (rho * phi.cos(), rho * phi.sin()));
        // guard |1 - z/z0| >= 1e-3
        let z0 = radius(n, 128).z0;
        let zr = Complex::with_val(128, cpow(&t, n - 1) / Complex::with_val(128, &z0));
        if abs_up(&Complex::with_val(128, 1u32 - zr)) < 1e-3 {
            redrawn += 1;
            continue;
        }
        let p = TrinomialProblem::new(n, t).unwrap();
        let roots = solve_all_branches(&p, 1e-20, &cfg).map_err(|e| e.to_string())?;
        let prec = roots[0].value.prec().0;
        let mut sum_x = Complex::with_val(prec, 0);
        let mut sum_y = Complex::with_val(prec, 0);
        for r in &roots {
            sum_x += &r.value;
            sum_y += y_from_x(n, &r.value, r.error_bound).0;
            res = res.max(abs_up(&trinomial_value(n, &r.value, &p.t_at(prec))));
        }
        if n == 2 {
            sum_x -= 1u32; // x^2 - x + t: the roots sum to 1
        }
        sx = sx.max(abs_up(&sum_x));
        sy = sy.max(abs_up(&sum_y));
        if sx > 1e-10 || sy > 1e-8 || res > 1e-12 {
            return Err(format!("n={n} t={}: sum x {sx:e}, sum y {sy:e}, residual {res:e}", p.t));
        }
        done += 1;
    }
    Ok(format!("100 samples ({redrawn} redrawn near z0): max |sum x| {sx:.1e}, max |sum y| {sy:.1e}, max |F| {res:.1e}"))
}

fn c10_singularity() -> Outcome {
    let cfg = SolveConfig { rho: 0.999, ..SolveConfig::default() };
    let mut slopes = Vec::new();
    for n in 3..=6 {
        let prec = 128;
        let r = radius(n, prec).r;
        let mut logs = Vec::new();
        for f in [0.99, 0.995, 0.9975] {
            let t = Float::with_val(prec, &r * f);
            let p = TrinomialProblem::new(n, Complex::with_val(prec, t)).unwrap();
            let y = y_value(&p, 1e-15, &cfg).map_err(|e| e.to_string())?;
            logs.push((f64::ln(1.0 - f), Float::with_val(64, y.value.real()).to_f64().ln()));
        }
        for w in logs.windows(2) {
            let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            if !(-0.55..=-0.45).contains(&slope) {
                return Err(format!("n={n}: slope {slope}"));
            }
            slopes.push(slope);
        }
    }
    // n = 2: y = (1 - 4t)^(-1/2) exactly
    let eps = 1e-36;
    let prec = SolveConfig::default().eval.precision_for(eps);
    let mut worst = 0f64;
    for t in [(1, 10), (1, 8), (1, 5), (19, 80)] {
        let p = TrinomialProblem::real(2, &Rational::from(t)).unwrap();
        let y = y_value(&p, eps, &SolveConfig::default()).map_err(|e| e.to_string())?;
        let s = Complex::with_val(prec, 1u32 - Complex::with_val(prec, p.t_at(prec) * 4u32)).sqrt();
        let d = abs_up(&Complex::with_val(prec, y.value * s - 1u32));
        if d > 1e-30 {
            return Err(format!("n=2 t={}/{}: |y sqrt(1-4t) - 1| = {d:e}", t.0, t.1));
        }
        worst = worst.max(d);
    }
    let (lo, hi) = slopes.iter().fold((f64::MAX, f64::MIN), |(a, b), &s| (a.min(s), b.max(s)));
    Ok(format!("log-slopes in [{lo:.4}, {hi:.4}] for n=3..6; n=2 |y sqrt(1-4t) - 1| <= {worst:.1e}"))
}

fn c11_large_t() -> Outcome {
    let cfg = SolveConfig::default();
    let eps = 1e-20;
    let prec = cfg.eval.precision_for(eps);
    let mut worst = 0f64;
    for n in 3..=6 {
        let r = radius(n, prec).r;
        let angle = Float::with_val(prec, Constant::Pi) / 5u32;
        let real = Complex::with_val(prec, Float::with_val(prec, &r * 10u32));
        let rotated = Complex::with_val(prec, (angle.clone().cos(), angle.sin())) * &real;
        for t in [real, Complex::with_val(prec, rotated)] {
            let p = TrinomialProblem::new(n, t).unwrap();
            let x = solve_large_t(&p, eps, &cfg).map_err(|e| e.to_string())?;
            let roots = solve_all_branches(&p, eps, &cfg).map_err(|e| e.to_string())?;
            let d = roots
                .iter()
                .map(|o| abs_up(&Complex::with_val(prec, &o.value - &x.value)))
                .fold(f64::MAX, f64::min);
            let limit = 1e-12 * p.t_abs().powf(1.0 / f64::from(n));
            if d > limit {
                return Err(format!("n={n} t={}: distance {d:e} > {limit:e}", p.t));
            }
            worst = worst.max(d / limit * 1e-12);
        }
    }
    Ok(format!("t = 10 r_n (real and rotated): max distance to an oracle root {worst:.1e} |t|^(1/n)"))
}

fn c12_property_suites() -> Outcome {
    let mut checks = 0;
    for n in 2..=6 {
        for j in 0..=4 {
            require(&check_coefficient_formulas(n, j, 40))?;
            require(&check_ode_residual(n, j, 40))?;
            require(&check_cancellation(n, j, 40))?;
            require(&check_shift_consistency(n, j, 40))?;
            checks += 4;
        }
    }
    // each suite must notice a single perturbed coefficient
    let spec = HyperSpec::h_family(5, 1);
    let mut rec = spec.coefficients(40);
    rec[17] += 1;
    let unit = spec.with_gamma(Rational::from(1));
    let sabotaged = [
        ("coefficient formulas", check_coefficient_formulas_on(5, 1, &rec)),
        ("ode residual", check_ode_residual_on(&spec, &bump(&unit.series(40), 17))),
        ("cancellation", check_cancellation_on(5, 1, &bump(&spec.series(40), 17))),
        ("shift consistency", check_shift_consistency_on(&spec, &bump(&spec.series(40), 17))),
    ];
    for (name, r) in &sabotaged {
        if r.passed() {
            return Err(format!("{name} passed with a perturbed coefficient"));
        }
    }
    Ok(format!("{checks} property checks pass; all 4 suites fail under sabotage"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("appendix regeneration", c1_appendix),
        ("formal root identity", c2_theorem1),
        ("power identities", c3_power_identities),
        ("derivative chain constant", c4_lemma3),
        ("gaussian moments", c5_lemma4),
        ("product identities", c6_lemma5),
        ("numeric solve at r_n/2", c7_numeric_solve),
        ("quadratic closed form", c8_quadratic_closed_form),
        ("branch relations", c9_branches),
        ("singularity exponent", c10_singularity),
        ("large-|t| iteration", c11_large_t),
        ("property suites", c12_property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
