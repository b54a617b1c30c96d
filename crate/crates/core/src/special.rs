//! Stable scalar kernels and the handful of special functions we need.
//!
//! Everything downstream funnels through three functions of the exponent
//! `a = p(x) > 0`:
//!
//! * `bose_mean(a)  = 1/(e^a − 1)`            — mean of a geometric with
//!   success probability `1 − e^{−a}`,
//! * `bose_var(a)   = e^a/(e^a − 1)²`          — its variance,
//! * `geom_entropy(a) = a/(e^a − 1) − log(1 − e^{−a})` — its Shannon entropy,
//!   i.e. `G(η) = (η+1)log(η+1) − η log η` at `η = bose_mean(a)`.
//!
//! All three are written in terms of `e^{−a}` and `expm1`, which keeps them
//! accurate from `a ~ 1e−300` (where the naive forms lose every digit) up to
//! `a ~ 745` (where they underflow gracefully to 0).

use num::BigUint;

/// `1/(e^a − 1)` for `a > 0`.
pub(crate) fn bose_mean(a: f64) -> f64 {
    let em = (-a).exp();
    em / -(-a).exp_m1()
}

/// `e^a/(e^a − 1)²` for `a > 0`.
pub(crate) fn bose_var(a: f64) -> f64 {
    let em = (-a).exp();
    let d = -(-a).exp_m1();
    em / (d * d)
}

/// `log(1 − e^{−a})` for `a > 0` (negative, → 0⁻ as a → ∞).
pub(crate) fn log1m_exp_neg(a: f64) -> f64 {
    (-(-a).exp_m1()).ln()
}

/// Entropy of the geometric with mean `1/(e^a − 1)`.
pub(crate) fn geom_entropy(a: f64) -> f64 {
    a * bose_mean(a) - log1m_exp_neg(a)
}

/// `G(η) = (η+1)log(η+1) − η log η`, the entropy as a function of the mean.
/// An independent cross-check of [`geom_entropy`].
#[cfg(test)]
pub(crate) fn entropy_of_mean(eta: f64) -> f64 {
    if eta == 0.0 {
        return 0.0;
    }
    // (η+1)log(η+1) − η log η rearranged as η·log1p(1/η) + log1p(η): both
    // terms are positive and individually stable for η anywhere in (0, ∞).
    eta * (1.0 / eta).ln_1p() + eta.ln_1p()
}

/// Riemann zeta for real `s > 1` by Euler–Maclaurin with four Bernoulli
/// corrections; absolute accuracy ~1e−15 down to s ≈ 1.1.
pub(crate) fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta(s) needs s > 1, got {s}");
    let n = 24usize;
    let mut sum = 0.0;
    for k in 1..=n {
        sum += (k as f64).powf(-s);
    }
    let nf = n as f64;
    sum += nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s);
    // B_2/2!·s·n^{−s−1} + B_4/4!·s(s+1)(s+2)·n^{−s−3} + ...
    let mut rising = s;
    sum += rising * nf.powf(-s - 1.0) / 12.0;
    rising *= (s + 1.0) * (s + 2.0);
    sum -= rising * nf.powf(-s - 3.0) / 720.0;
    rising *= (s + 3.0) * (s + 4.0);
    sum += rising * nf.powf(-s - 5.0) / 30240.0;
    rising *= (s + 5.0) * (s + 6.0);
    sum -= rising * nf.powf(-s - 7.0) / 1209600.0;
    sum
}

/// Γ(x) for positive real x (delegated; we only need x ∈ (1, 2]).
pub(crate) fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// Natural log of a positive big integer, good to f64 relative accuracy even
/// when the value itself overflows f64.
pub(crate) fn ln_biguint(v: &BigUint) -> f64 {
    use num::ToPrimitive;
    if let Some(x) = v.to_f64() {
        if x.is_finite() && x > 0.0 {
            return x.ln();
        }
    }
    let bits = v.bits();
    let shift = bits.saturating_sub(64);
    let top = (v >> shift)
        .to_f64()
        .expect("top 64 bits fit in f64");
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}
