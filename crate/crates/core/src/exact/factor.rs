use std::fmt;
use std::str::FromStr;

use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::Integer;
use thiserror::Error;

const TRIAL_LIMIT: u32 = 1_000_000;
const PRIMALITY_REPS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor a non-positive integer: {0}")]
    NonPositive(Integer),
    #[error("malformed factored form {0:?}")]
    Parse(String),
}

/// Prime factorization of a positive integer, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: Integer,
    factors: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn factors(&self) -> &[(Integer, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> Integer {
        self.factors
            .iter()
            .fold(Integer::from(1), |acc, (p, e)| acc * Integer::from(p.pow(*e)))
    }

    /// Renders with an ASCII `*` separator instead of `·`.
    pub fn to_ascii(&self) -> String {
        self.to_string().replace('·', "*")
    }
}

impl fmt::Display for Factorization {
    /// Appendix style: `2^2·3·11`; the unit renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = FactorError;

    /// Parses `2^2·3·11` (or with `*`). Factors are not checked for
    /// primality; they are merged and sorted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FactorError::Parse(s.to_string());
        let s = s.trim();
        if s == "1" {
            return Ok(Factorization { value: Integer::from(1), factors: Vec::new() });
        }
        let mut factors: Vec<(Integer, u32)> = Vec::new();
        for part in s.split(['·', '*']) {
            let (base, exp) = match part.trim().split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                None => (part.trim(), 1),
            };
            let p: Integer = base.parse().map_err(|_| bad())?;
            if p < 2 || exp == 0 {
                return Err(bad());
            }
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, e)) => *e += exp,
                None => factors.push((p, exp)),
            }
        }
        factors.sort();
        let mut out = Factorization { value: Integer::new(), factors };
        out.value = out.product();
        Ok(out)
    }
}

/// Complete prime factorization of `v >= 1`.
///
/// Trial division removes primes below 10^6; larger cofactors are split with
/// Pollard's rho (Brent's variant) and every reported prime passes 64
/// Miller-Rabin rounds.
pub fn factorize(v: &Integer) -> Result<Factorization, FactorError> {
    if *v < 1 {
        return Err(FactorError::NonPositive(v.clone()));
    }
    let mut rest = v.clone();
    let mut found: Vec<Integer> = Vec::new();

    let push_power = |p: u32, rest: &mut Integer, found: &mut Vec<Integer>| {
        while rest.is_divisible_u(p) {
            rest.div_exact_u_mut(p);
            found.push(Integer::from(p));
        }
    };
    push_power(2, &mut rest, &mut found);
    let mut d = 3u32;
    while d < TRIAL_LIMIT && rest > 1 {
        if let Some(r) = rest.to_u64() {
            if u64::from(d) * u64::from(d) > r {
                break;
            }
        }
        push_power(d, &mut rest, &mut found);
        d += 2;
    }
    if rest > 1 {
        split_large(rest, &mut found);
    }

    found.sort();
    let mut factors: Vec<(Integer, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { value: v.clone(), factors })
}

fn is_prime(n: &Integer) -> bool {
    n.is_probably_prime(PRIMALITY_REPS) != IsPrime::No
}

fn split_large(n: Integer, out: &mut Vec<Integer>) {
    if n == 1 {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if n.is_perfect_square() {
        let r = n.sqrt();
        split_large(r.clone(), out);
        split_large(r, out);
        return;
    }
    let mut c = 1u32;
    loop {
        if let Some(d) = brent_rho(&n, c) {
            let other = Integer::from(&n / &d);
            split_large(d, out);
            split_large(other, out);
            return;
        }
        c += 1;
    }
}

/// One run of Brent's cycle-finding rho with `f(x) = x^2 + c`; `None` when the
/// run degenerates to the trivial divisor.
fn brent_rho(n: &Integer, c: u32) -> Option<Integer> {
    const BATCH: u32 = 128;
    let f = |x: &Integer| -> Integer { (Integer::from(x.square_ref()) + c) % n };
    let mut y = Integer::from(2);
    let mut r: u64 = 1;
    let mut q = Integer::from(1);
    let mut g = Integer::from(1);
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == 1 {
        x.clone_from(&y);
        for _ in 0..r {
            y = f(&y);
        }
        let mut k: u64 = 0;
        while k < r && g == 1 {
            ys.clone_from(&y);
            for _ in 0..BATCH.min((r - k) as u32) {
                y = f(&y);
                q = q * Integer::from(&x - &y).abs() % n;
            }
            g = Integer::from(q.gcd_ref(n));
            k += BATCH as u64;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == *n {
        // backtrack one step at a time from the last saved point
        loop {
            ys = f(&ys);
            g = Integer::from(Integer::from(&x - &ys).abs().gcd_ref(n));
            if g > 1 {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}
