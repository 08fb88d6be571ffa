use rug::Rational;

use crate::exact::{TruncatedSeries, Var};
use crate::hyper::{HyperSpec, XSpec};

/// `t^prefactor · Σ c_k t^((n-1)k)` known through `order`, where the `c_k`
/// come from `spec`. Exponents not of that form are known zeros.
fn lift(spec: &HyperSpec, n: u32, prefactor: u32, order: usize) -> TruncatedSeries {
    let step = (n - 1) as usize;
    let pre = prefactor as usize;
    if order < pre {
        return TruncatedSeries::zero(Var::T, order);
    }
    let kmax = (order - pre) / step;
    let mut coeffs = vec![Rational::new(); order + 1];
    for (k, c) in spec.coefficients(kmax).into_iter().enumerate() {
        coeffs[pre + step * k] = c;
    }
    TruncatedSeries::new(Var::T, coeffs)
}

/// `x_{n,j}(t) = x(t)^j` through `t^order`. For `j = 1` the coefficient of
/// `t^(1 + k(n-1))` is the Fuss-Catalan number `C(nk, k) / ((n-1)k + 1)`.
pub fn x_series(n: u32, j: u32, order: usize) -> TruncatedSeries {
    let XSpec { prefactor, spec } = HyperSpec::x_family(n, j);
    lift(&spec, n, prefactor, order)
}

/// `y_{n,j}(t) = t^j H_{n,j}(t^(n-1)) = x(t)^j x'(t)` through `t^order`; the
/// coefficient of `t^(j + k(n-1))` is `C(nk + j, k)`.
pub fn y_series(n: u32, j: u32, order: usize) -> TruncatedSeries {
    lift(&HyperSpec::h_family(n, j), n, j, order)
}
