use rug::{Integer, Rational};

/// Binomial coefficient `m choose k`; zero when `k > m`.
pub fn binom(m: u64, k: u64) -> Integer {
    if k > m {
        return Integer::new();
    }
    let k = k.min(m - k);
    let mut acc = Integer::from(1);
    // acc stays an exact binomial coefficient after each step
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n k + j, k) = (nk + j)! / (((n-1)k + j)! k!)`, the coefficient of
/// `z^k` in the generating function `H_{n,j}(z)`.
pub fn coeff_c(n: u64, j: u64, k: u64) -> Integer {
    assert!(n >= 2, "coeff_c requires n >= 2");
    binom(n * k + j, k)
}

/// Fuss-Catalan number `C(nk, k) / ((n-1)k + 1)`.
pub fn fuss_catalan(n: u64, k: u64) -> Integer {
    let c = coeff_c(n, 0, k);
    c / ((n - 1) * k + 1)
}

pub fn factorial(m: u64) -> Integer {
    (1..=m).fold(Integer::from(1), |acc, i| acc * i)
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::from(1);
    let mut f = a.clone();
    for _ in 0..k {
        acc *= &f;
        f += 1;
    }
    acc
}
