use std::time::Instant;

use rug::{Complex, Integer};

use super::grid::parse_grid;
use super::{
    BenchArgs, BranchesArgs, Failure, OutputRecord, Precision, SeriesArgs, SeriesKind, Sink, SolveArgs, VerifyArgs,
    EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY,
};
use crate::exact::factorize;
use crate::hyper::{EvalConfig, HyperSpec};
use crate::numeric::{abs_up, default_eps, format_complex, precision_for_digits, trinomial_value, ComplexLiteral};
use crate::trinomial::{
    g_residual, principal_index, radius, solve, solve_all_branches, solve_principal, x_series, y_from_x, y_series,
    SolveConfig, TrinomialProblem,
};
use crate::verify::{regenerate_appendix, run_suite, CheckStatus, Suite, SuiteParams, Witness};

type CmdResult = Result<i32, Failure>;

/// Accuracy, working precision and solver settings for one command.
struct Setup {
    eps: f64,
    digits: usize,
    config: SolveConfig,
    prec: u32,
}

fn setup(p: &Precision) -> Result<Setup, Failure> {
    let eps = p.eps.unwrap_or_else(|| default_eps(p.digits));
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Failure::new(EXIT_USAGE, format!("eps must be positive, got {eps}")));
    }
    let mut eval = EvalConfig::from_env();
    let prec = eval.precision_for(eps).max(precision_for_digits(p.digits));
    eval.precision = Some(prec);
    let config = SolveConfig { eval, seed: p.seed, ..SolveConfig::default() };
    Ok(Setup { eps, digits: p.digits as usize, config, prec })
}

fn problem(n: u32, t: &ComplexLiteral, prec: u32) -> Result<TrinomialProblem, Failure> {
    Ok(TrinomialProblem::new(n, t.to_complex(prec.max(256) + 64))?)
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

fn fmt_c(z: &Complex, digits: usize, bound: f64) -> String {
    format_complex(z, digits, bound)
}

pub(super) fn cmd_solve(a: &SolveArgs, sink: &mut Sink) -> CmdResult {
    let s = setup(&a.precision)?;
    let p = problem(a.n, &a.t, s.prec)?;
    let start = Instant::now();
    let sol = solve(&p, s.eps, &s.config, a.mode)?;
    let mut rec = OutputRecord::new("solve")
        .input("n", a.n)
        .input("t", &a.t)
        .input("eps", format!("{:e}", s.eps))
        .input("mode", a.mode.as_str())
        .input("digits", s.digits)
        .input("seed", a.precision.seed);
    rec.elapsed_us = micros(start);
    rec.warnings = sol.warnings.clone();
    rec.push("method", sol.x.method.as_str());
    rec.push_bounded("x", fmt_c(&sol.x.value, s.digits, sol.x.error_bound), sol.x.error_bound);
    rec.push_bounded("y", fmt_c(&sol.y, s.digits, sol.y_error_bound), sol.y_error_bound);
    rec.push("|F(x,t)|", format!("{:.3e}", sol.x.residual));
    rec.push("|G(y,t)|", format!("{:.3e}", sol.g_residual));
    rec.push("terms_used", sol.x.terms_used);
    rec.push("y_terms_used", sol.y_terms_used);
    rec.push("iterations", sol.x.iterations);
    rec.push("precision_bits", s.prec);
    sink.emit(&rec, OutputRecord::to_human)?;
    Ok(EXIT_OK)
}

fn signed_factorization(v: &Integer) -> String {
    match v.cmp0() {
        std::cmp::Ordering::Equal => "0".into(),
        ord => {
            let f = factorize(&Integer::from(v.abs_ref())).expect("nonzero").to_string();
            if ord.is_lt() {
                format!("-{f}")
            } else {
                f
            }
        }
    }
}

fn spec_line(prefactor: u32, spec: &HyperSpec, n: u32) -> String {
    let join = |qs: &[rug::Rational]| qs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let (p, q) = spec.shape();
    let pre = match prefactor {
        0 => String::new(),
        1 => "t ".into(),
        k => format!("t^{k} "),
    };
    let arg = if n == 2 { "t".to_string() } else { format!("t^{}", n - 1) };
    format!("{pre}{p}F{q}({}; {}; {} {arg})", join(spec.alphas()), join(spec.betas()), spec.gamma())
}

pub(super) fn cmd_series(a: &SeriesArgs, sink: &mut Sink) -> CmdResult {
    let start = Instant::now();
    let (name, spec, prefactor, s) = match a.kind {
        SeriesKind::X => {
            if a.j == 0 {
                return Err(Failure::new(EXIT_DOMAIN, "x-type series need j >= 1"));
            }
            let x = HyperSpec::x_family(a.n, a.j);
            ("x", x.spec, x.prefactor, x_series(a.n, a.j, a.order))
        }
        SeriesKind::Y => ("y", HyperSpec::h_family(a.n, a.j), a.j, y_series(a.n, a.j, a.order)),
    };
    let mut rec = OutputRecord::new("series")
        .input("n", a.n)
        .input("kind", name)
        .input("j", a.j)
        .input("order", a.order)
        .input("factored", a.factored);
    rec.push(&format!("{name}_{{{},{}}}(t)", a.n, a.j), spec_line(prefactor, &spec, a.n));
    rec.push("gamma", spec.gamma());
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.cmp0().is_eq() {
            continue;
        }
        let label = format!("t^{k}");
        if a.factored && *c.denom() == 1 {
            rec.push_noted(&label, c, signed_factorization(c.numer()));
        } else {
            rec.push(&label, c);
        }
    }
    rec.push("order", format!("O(t^{})", a.order + 1));
    rec.elapsed_us = micros(start);
    sink.emit(&rec, OutputRecord::to_human)?;
    Ok(EXIT_OK)
}

pub(super) fn cmd_verify(a: &VerifyArgs, sink: &mut Sink) -> CmdResult {
    let params = SuiteParams {
        degrees: a.n.clone(),
        order: a.order,
        eps: a.eps,
        branch_samples: a.samples,
        solve: SolveConfig { seed: a.seed, eval: EvalConfig::from_env(), ..SolveConfig::default() },
    };
    let start = Instant::now();
    let reports = run_suite(a.suite, &params);
    let failed = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
    for r in &reports {
        let mut rec = OutputRecord::new("verify").input("check", &r.name);
        for (k, v) in &r.parameters {
            rec.inputs.insert(k.clone(), v.clone());
        }
        rec.status = match r.status {
            CheckStatus::Pass => "pass".into(),
            CheckStatus::Fail => "fail".into(),
        };
        if let Some(w) = &r.witness {
            match w {
                Witness::Order { order, detail } => rec.push_noted("first_failing_order", order, detail),
                Witness::Residual { value, limit, detail } => {
                    rec.push_noted("residual", format!("{value:e}"), format!("{detail}; limit {limit:e}"))
                }
                Witness::Message { detail } => rec.push("failure", detail),
            }
        }
        for note in &r.notes {
            rec.push("note", note);
        }
        sink.emit(&rec, |_| {
            let mut s = format!("{r}\n");
            for note in &r.notes {
                s.push_str(&format!("    {note}\n"));
            }
            s
        })?;
    }
    if a.tables && !sink.json && a.suite.includes_appendix() {
        for n in a.n.clone().filter(|n| (2..=6).contains(n)) {
            sink.raw(&format!("\n{}", regenerate_appendix(n).0))?;
        }
    }
    if !sink.json {
        sink.raw(&format!(
            "{} checks, {} failed ({:.2} s)\n",
            reports.len(),
            failed,
            start.elapsed().as_secs_f64()
        ))?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}

impl Suite {
    fn includes_appendix(self) -> bool {
        matches!(self, Suite::All | Suite::Appendix)
    }
}

pub(super) fn cmd_branches(a: &BranchesArgs, sink: &mut Sink) -> CmdResult {
    let s = setup(&a.precision)?;
    let p = problem(a.n, &a.t, s.prec)?;
    let start = Instant::now();
    let roots = solve_all_branches(&p, s.eps, &s.config)?;
    let t = p.t_at(s.prec);
    let mut rec = OutputRecord::new("branches")
        .input("n", a.n)
        .input("t", &a.t)
        .input("eps", format!("{:e}", s.eps))
        .input("digits", s.digits)
        .input("seed", a.precision.seed);
    let mut sum_x = Complex::with_val(s.prec, 0);
    let mut sum_y = Complex::with_val(s.prec, 0);
    let mut x_bound = 0.0;
    let mut y_bound = 0.0;
    for (k, r) in roots.iter().enumerate() {
        let (y, yb) = y_from_x(a.n, &r.value, r.error_bound);
        let g = abs_up(&g_residual(a.n, &y, &t));
        sum_x += &r.value;
        sum_y += &y;
        x_bound += r.error_bound;
        y_bound += yb;
        rec.push_bounded(&format!("x[{k}]"), fmt_c(&r.value, s.digits, 0.0), r.error_bound);
        rec.push(&format!("|F(x[{k}])|"), format!("{:.3e}", abs_up(&trinomial_value(a.n, &r.value, &t))));
        rec.push_bounded(&format!("y[{k}]"), fmt_c(&y, s.digits, 0.0), yb);
        rec.push(&format!("|G(y[{k}])|"), format!("{g:.3e}"));
    }
    rec.push_bounded("sum x", fmt_c(&sum_x, s.digits, x_bound), x_bound);
    rec.push_bounded("sum y", fmt_c(&sum_y, s.digits, y_bound), y_bound);
    rec.push("iterations", roots.first().map_or(0, |r| r.iterations));
    rec.elapsed_us = micros(start);
    sink.emit(&rec, OutputRecord::to_human)?;
    Ok(EXIT_OK)
}

fn median(mut v: Vec<u64>) -> u64 {
    v.sort_unstable();
    v[v.len() / 2]
}

pub(super) fn cmd_bench(a: &BenchArgs, sink: &mut Sink) -> CmdResult {
    let s = setup(&a.precision)?;
    let grid = parse_grid(&a.t, a.points).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    let repeat = a.repeat.max(1);
    if a.csv {
        sink.raw("n,t,t_over_r,method,terms_used,iterations,elapsed_us,residual,status\n")?;
    }
    for n in a.n.clone() {
        let r_n = radius(n, s.prec).r;
        for point in &grid {
            let t = point.resolve(&r_n, s.prec.max(256) + 64);
            let p = TrinomialProblem::new(n, t)?;
            let ratio = point.ratio(&r_n);

            let mut times = Vec::with_capacity(repeat);
            let mut series_root = None;
            let mut series_err = None;
            for _ in 0..repeat {
                let start = Instant::now();
                match solve_principal(&p, s.eps, &s.config) {
                    Ok(r) => series_root = Some(r),
                    Err(e) => series_err = Some(e.to_string()),
                }
                times.push(micros(start));
            }
            let series_time = median(times);

            let mut times = Vec::with_capacity(repeat);
            let mut oracle_root = None;
            let mut oracle_err = None;
            for _ in 0..repeat {
                let start = Instant::now();
                match solve_all_branches(&p, s.eps, &s.config) {
                    Ok(roots) => {
                        let target = series_root.as_ref().map_or_else(|| Complex::with_val(64, 0), |r| r.value.clone());
                        let i = principal_index(&roots, &target).unwrap_or(0);
                        oracle_root = Some(roots[i].clone());
                    }
                    Err(e) => oracle_err = Some(e.to_string()),
                }
                times.push(micros(start));
            }
            let oracle_time = median(times);

            for (method, root, err, us) in [
                ("series", series_root, series_err, series_time),
                ("oracle", oracle_root, oracle_err, oracle_time),
            ] {
                let mut rec = OutputRecord::new("bench")
                    .input("n", n)
                    .input("t", point)
                    .input("t_over_r", format!("{ratio:.6}"))
                    .input("method", method)
                    .input("eps", format!("{:e}", s.eps));
                rec.elapsed_us = us;
                let (terms, iters, residual) = match &root {
                    Some(r) => (r.terms_used, r.iterations, format!("{:.3e}", r.residual)),
                    None => (0, 0, "nan".to_string()),
                };
                if let Some(e) = &err {
                    rec.status = "error".into();
                    rec.push("error", e);
                }
                rec.push("terms_used", terms);
                rec.push("iterations", iters);
                rec.push("elapsed_us", us);
                rec.push("residual", &residual);
                if a.csv {
                    sink.raw(&format!(
                        "{n},{point},{ratio:.6},{method},{terms},{iters},{us},{residual},{}\n",
                        rec.status
                    ))?;
                } else {
                    sink.emit(&rec, |r| {
                        let note = err.as_deref().map(|e| format!("  error: {e}")).unwrap_or_default();
                        format!(
                            "n={n} t={point} ({}) {method:<6} terms={terms:<6} iterations={iters:<4} {us:>8} us residual={residual}{note}\n",
                            r.inputs["t_over_r"]
                        )
                    })?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}
