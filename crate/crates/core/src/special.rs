//! Terminating hypergeometric series, Jacobi polynomials and log-Gamma.

use crate::error::{Result, SolverError};

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SolverError::domain(format!(
            "log-Gamma argument must be positive, got {x}"
        )));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// ln(n!) for small non-negative integers.
pub fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `₂F₁(-n, b; c; s) = Σ_{k=0}^{n} (-n)_k (b)_k / (c)_k · s^k / k!`.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, s: f64) -> Result<f64> {
    for k in 0..n {
        let ck = c + k as f64;
        if ck == 0.0 {
            return Err(SolverError::Pole { k: k + 1, c });
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * s;
        sum += term;
    }
    Ok(sum)
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence, with an
/// explicit sum outside `a, b > -1`, where the leading coefficient can vanish.
pub fn jacobi_p(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    if n == 1 {
        return p1;
    }
    if a <= -1.0 || b <= -1.0 {
        return jacobi_explicit(n, a, b, x);
    }
    let mut prev = 1.0;
    let mut cur = p1;
    for k in 1..n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let lead = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        if lead == 0.0 || s + 2.0 == 0.0 {
            return jacobi_explicit(n, a, b, x);
        }
        let next = ((s + 1.0) * ((s + 2.0) * s * x + a * a - b * b) * cur
            - 2.0 * (k + a) * (k + b) * (s + 2.0) * prev)
            / lead;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Σ_m C(n+a, n-m) C(n+b, m) ((x-1)/2)^m ((x+1)/2)^{n-m}`.
pub fn jacobi_explicit(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let nf = n as f64;
    let lo = (x - 1.0) / 2.0;
    let hi = (x + 1.0) / 2.0;
    (0..=n)
        .map(|m| {
            gen_binomial(nf + a, n - m)
                * gen_binomial(nf + b, m)
                * lo.powi(m as i32)
                * hi.powi((n - m) as i32)
        })
        .sum()
}

/// Generalized binomial coefficient `C(x, k)` for real `x`.
pub fn gen_binomial(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i as f64 + 1.0))
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64))
}

/// `P_n^{(a,b)}(1-2s)` from the Rodrigues formula in the variable `s`:
/// `(1/n!) s^{-a} (1-s)^{-b} dⁿ/dsⁿ [s^{n+a} (1-s)^{n+b}]`, expanded by Leibniz.
pub fn jacobi_rodrigues_s(n: u32, a: f64, b: f64, s: f64) -> f64 {
    let nf = n as f64;
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        sum += binom
            * falling(nf + a, k)
            * sign
            * falling(nf + b, n - k)
            * s.powi((n - k) as i32)
            * (1.0 - s).powi(k as i32);
        binom *= (nf - k as f64) / (k as f64 + 1.0);
    }
    sum / ln_factorial(n).exp()
}

/// `P_n^{(a,b)}(1-2s) = (a+1)_n / n! · ₂F₁(-n, n+a+b+1; a+1; s)`.
pub fn jacobi_via_hyp2f1(n: u32, a: f64, b: f64, s: f64) -> Result<f64> {
    let nf = n as f64;
    let prefactor = (0..n).fold(1.0, |acc, k| acc * (a + 1.0 + k as f64) / (k as f64 + 1.0));
    Ok(prefactor * hyp2f1_terminating(n, nf + a + b + 1.0, a + 1.0, s)?)
}
