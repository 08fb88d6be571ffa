use std::fmt;

use rug::{Integer, Rational};
use serde::Serialize;

use super::report::{CheckReport, Witness};
use crate::exact::{factorize, Factorization, TruncatedSeries};
use crate::hyper::HyperSpec;
use crate::trinomial::{x_series, y_series};

/// A known misprint in the reference tables, with the computed correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixTypo {
    pub n: u32,
    pub function: &'static str,
    pub field: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub note: &'static str,
}

/// Reviewed misprints. A mismatch not listed here fails the check.
pub const APPENDIX_TYPOS: &[AppendixTypo] = &[AppendixTypo {
    n: 6,
    function: "y0",
    field: "argument-power",
    printed: "6",
    corrected: "5",
    note: "argument printed as t^6; the listed terms are in powers of t^5",
}];

macro_rules! fixtures {
    ($($n:literal $f:literal),* $(,)?) => {
        &[$(($n, $f, include_str!(concat!("../../fixtures/appendix/n", $n, "_", $f, ".tsv")))),*]
    };
}

/// `(n, function, contents)` for every reference table.
const FIXTURES: &[(u32, &str, &str)] = fixtures![
    2 "x", 2 "y0", 2 "y1",
    3 "x", 3 "y0", 3 "y0inv", 3 "y1", 3 "y2",
    4 "x", 4 "y0", 4 "y1", 4 "y2", 4 "y3",
    5 "x", 5 "y0", 5 "y1", 5 "y2", 5 "y3", 5 "y4",
    6 "x", 6 "y0",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixRow {
    pub exponent: usize,
    #[serde(serialize_with = "as_string")]
    pub value: Integer,
    pub factored: String,
}

fn as_string<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One regenerated function: its spec (if hypergeometric) and coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct RegeneratedFunction {
    pub name: String,
    pub prefactor: Option<u32>,
    #[serde(serialize_with = "opt_as_string")]
    pub spec: Option<HyperSpec>,
    pub argument_power: Option<u32>,
    pub rows: Vec<AppendixRow>,
}

fn opt_as_string<S: serde::Serializer>(v: &Option<HyperSpec>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(spec) => s.collect_str(spec),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixTable {
    pub n: u32,
    pub functions: Vec<RegeneratedFunction>,
}

fn signed_factored(v: &Integer) -> String {
    if *v == 0 {
        return "0".into();
    }
    let f = factorize(&Integer::from(v.abs_ref())).expect("nonzero");
    if *v < 0 {
        format!("-{f}")
    } else {
        f.to_string()
    }
}

fn join(qs: &[Rational]) -> String {
    qs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn label(name: &str) -> String {
    match name {
        "x" => "x(t)".into(),
        "y0inv" => "1/y_0(t)".into(),
        y => format!("y_{}(t)", &y[1..]),
    }
}

impl fmt::Display for RegeneratedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", label(&self.name))?;
        if let (Some(spec), Some(pre), Some(pw)) = (&self.spec, self.prefactor, self.argument_power) {
            let (p, q) = spec.shape();
            let pre = match pre {
                0 => String::new(),
                1 => "t ".into(),
                k => format!("t^{k} "),
            };
            let arg = if pw == 1 { "t".into() } else { format!("t^{pw}") };
            write!(
                f,
                " = {pre}{p}F{q}({}; {}; {} {arg})",
                join(spec.alphas()),
                join(spec.betas()),
                spec.gamma()
            )?;
        }
        writeln!(f)?;
        for row in &self.rows {
            writeln!(f, "  t^{:<4} {:>20}  {}", row.exponent, row.value.to_string(), row.factored)?;
        }
        Ok(())
    }
}

impl fmt::Display for AppendixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for func in &self.functions {
            write!(f, "{func}")?;
        }
        Ok(())
    }
}

struct Fixture {
    headers: Vec<(String, String)>,
    rows: Vec<(usize, Integer, String)>,
}

fn parse_fixture(text: &str) -> Result<Fixture, String> {
    let mut headers = Vec::new();
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            let (k, v) = h.split_once(':').ok_or(format!("line {}: bad header", i + 1))?;
            headers.push((k.trim().to_string(), v.trim().to_string()));
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [e, v, f] = cols[..] else {
            return Err(format!("line {}: expected 3 columns", i + 1));
        };
        let e = e.parse().map_err(|_| format!("line {}: bad exponent", i + 1))?;
        let v = v.parse().map_err(|_| format!("line {}: bad integer", i + 1))?;
        rows.push((e, v, f.to_string()));
    }
    Ok(Fixture { headers, rows })
}

/// Series and spec for a named function, known through `order`.
fn compute(n: u32, name: &str, order: usize) -> Result<(TruncatedSeries, Option<(u32, HyperSpec)>), String> {
    match name {
        "x" => {
            let x = HyperSpec::x_family(n, 1);
            Ok((x_series(n, 1, order), Some((x.prefactor, x.spec))))
        }
        "y0inv" => y_series(n, 0, order).reciprocal().map(|s| (s, None)).map_err(|e| e.to_string()),
        y => {
            let j: u32 = y.strip_prefix('y').and_then(|j| j.parse().ok()).ok_or(format!("unknown function {y}"))?;
            Ok((y_series(n, j, order), Some((j, HyperSpec::h_family(n, j)))))
        }
    }
}

fn header_values(prefactor: u32, spec: &HyperSpec, n: u32) -> Vec<(&'static str, String)> {
    let (p, q) = spec.shape();
    let words = |qs: &[Rational]| qs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    vec![
        ("type", format!("{p}F{q}")),
        ("prefactor", prefactor.to_string()),
        ("alphas", words(spec.alphas())),
        ("betas", words(spec.betas())),
        ("gamma", spec.gamma().to_string()),
        ("argument-power", (n - 1).to_string()),
    ]
}

fn typo(n: u32, function: &str, field: &str, printed: &str) -> Option<&'static AppendixTypo> {
    APPENDIX_TYPOS
        .iter()
        .find(|t| t.n == n && t.function == function && t.field == field && t.printed == printed)
}

/// Regenerates every table listed for degree `n` and compares it, value and
/// factorization, against the checked-in reference.
pub fn regenerate_appendix(n: u32) -> (AppendixTable, CheckReport) {
    regenerate_from(n, FIXTURES)
}

fn regenerate_from(n: u32, fixtures: &[(u32, &str, &str)]) -> (AppendixTable, CheckReport) {
    let mut report = CheckReport::new("appendix").param("n", n);
    let mut table = AppendixTable { n, functions: Vec::new() };
    let mut used_typos = Vec::new();
    let mut coefficients = 0usize;

    for &(_, name, text) in fixtures.iter().filter(|(m, _, _)| *m == n) {
        let fixture = match parse_fixture(text) {
            Ok(f) => f,
            Err(e) => {
                report.fail(Witness::Message { detail: format!("{name}: {e}") });
                continue;
            }
        };
        let order = fixture.rows.iter().map(|r| r.0).max().unwrap_or(0);
        let (series, spec) = match compute(n, name, order) {
            Ok(v) => v,
            Err(e) => {
                report.fail(Witness::Message { detail: format!("{name}: {e}") });
                continue;
            }
        };

        if let Some((pre, spec)) = &spec {
            for (field, computed) in header_values(*pre, spec, n) {
                let Some((_, printed)) = fixture.headers.iter().find(|(k, _)| k == field) else {
                    continue;
                };
                if *printed == computed {
                    continue;
                }
                match typo(n, name, field, printed) {
                    Some(t) if t.corrected == computed => {
                        used_typos.push(t);
                        report.note(format!("{name} {field}: printed {printed}, computed {computed} (listed misprint)"));
                    }
                    _ => report.fail(Witness::Message {
                        detail: format!("{name} {field}: printed {printed}, computed {computed}"),
                    }),
                }
            }
        }

        let mut rows = Vec::new();
        for (k, c) in series.coeffs().iter().enumerate() {
            if c.cmp0().is_eq() {
                continue;
            }
            if *c.denom() != 1 {
                report.fail(Witness::Order { order: k, detail: format!("{name}: non-integer coefficient {c}") });
                continue;
            }
            let v = c.numer().clone();
            rows.push(AppendixRow { exponent: k, factored: signed_factored(&v), value: v });
        }

        for (exp, value, factored) in &fixture.rows {
            coefficients += 1;
            let got = rows.iter().find(|r| r.exponent == *exp);
            let got_value = got.map_or_else(Integer::new, |r| r.value.clone());
            if got_value != *value {
                report.fail(Witness::Order { order: *exp, detail: format!("{name}: printed {value}, computed {got_value}") });
                continue;
            }
            let (neg, body) = match factored.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, factored.as_str()),
            };
            let printed: Result<Factorization, _> = body.parse();
            let ok = match (&printed, factorize(&Integer::from(value.abs_ref()))) {
                (Ok(p), Ok(c)) => neg == (*value < 0) && *p == c,
                _ => false,
            };
            if !ok {
                report.fail(Witness::Order {
                    order: *exp,
                    detail: format!("{name}: printed factorization {factored} of {value}, computed {}", signed_factored(value)),
                });
            }
        }
        for row in &rows {
            if !fixture.rows.iter().any(|r| r.0 == row.exponent) {
                report.fail(Witness::Order {
                    order: row.exponent,
                    detail: format!("{name}: computed term {} missing from reference", row.value),
                });
            }
        }

        let (prefactor, spec, argument_power) = match spec {
            Some((pre, s)) => (Some(pre), Some(s), Some(n - 1)),
            None => (None, None, None),
        };
        table.functions.push(RegeneratedFunction { name: name.to_string(), prefactor, spec, argument_power, rows });
    }

    if table.functions.is_empty() {
        report.fail(Witness::Message { detail: format!("no reference table for n = {n}") });
    }
    for t in APPENDIX_TYPOS.iter().filter(|t| t.n == n) {
        if !used_typos.contains(&t) {
            report.note(format!("listed misprint not encountered: {} {}", t.function, t.field));
        }
    }
    report = report.param("functions", table.functions.len()).param("coefficients", coefficients);
    (table, report)
}
