//! Exact real-root counting for the exponent polynomials.
//!
//! Admissibility of a dual vector hinges on `p(x) = Σ_j β_j x^j` being strictly
//! positive on (0, ∞), and the series truncation proofs need `p'` and `p''` to
//! be root-free beyond the cutoff.  Floating-point root finding is too flaky to
//! certify either, so we count roots with Sturm chains over arbitrary-precision
//! rationals.  Coefficients enter as the *exact* rational values of their
//! binary64 representations, so the certificate applies to the very polynomial
//! the floating-point code evaluates.

use num::rational::BigRational;
use num::{BigInt, Signed, Zero};

/// Dense polynomial, index = degree.  Trailing zeros are kept trimmed.
type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn from_sparse(powers: &[u32], coeffs: &[f64]) -> Option<Poly> {
    debug_assert_eq!(powers.len(), coeffs.len());
    let deg = *powers.iter().max()? as usize;
    let mut p = vec![BigRational::zero(); deg + 1];
    for (&j, &c) in powers.iter().zip(coeffs) {
        if !c.is_finite() {
            return None;
        }
        p[j as usize] = BigRational::from_float(c)?;
    }
    Some(trim(p))
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut d = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        d.push(c * BigRational::from_integer(BigInt::from(i)));
    }
    trim(d)
}

/// Remainder of `a` divided by `b` (deg b >= 0, b nonzero).
fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] / lead;
        if q.is_zero() {
            r.pop();
            continue;
        }
        for i in 0..=db {
            let t = &q * &b[i];
            r[dr - db + i] -= t;
        }
        r = trim(r);
    }
    r
}

fn eval_sign(p: &Poly, x: &BigRational) -> i8 {
    // Horner over exact rationals.
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    sign_of(&acc)
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_infinity(p: &Poly) -> i8 {
    p.last().map_or(0, sign_of)
}

fn sturm_chain(p: Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(&p)];
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            break;
        }
        if chain[k - 1].len() == 1 {
            break; // constant: chain terminates
        }
        let mut r = rem(&chain[k - 2], &chain[k - 1]);
        for c in &mut r {
            *c = -std::mem::take(c);
        }
        chain.push(r);
    }
    chain
}

/// Sign variations in a sequence, ignoring zeros.
fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of *distinct* real roots of the polynomial in the open interval
/// `(a, ∞)`.  Returns `None` if the polynomial is identically zero or if it
/// vanishes exactly at `a` (callers nudge the threshold and retry).
fn count_roots_above(p: Poly, a: &BigRational) -> Option<usize> {
    let p = trim(p);
    if p.is_empty() {
        return None;
    }
    if p.len() == 1 {
        return Some(0); // nonzero constant
    }
    if eval_sign(&p, a) == 0 {
        return None;
    }
    let chain = sturm_chain(p);
    let at_a = variations(chain.iter().map(|q| eval_sign(q, a)));
    let at_inf = variations(chain.iter().map(|q| sign_at_infinity(q)));
    // Sturm: V(a) − V(∞) roots in (a, ∞); the chain handles repeated roots
    // by terminating at ±gcd(p, p'), which counts each root once.
    Some(at_a - at_inf)
}

/// Distinct real roots of `Σ coeffs[i]·x^powers[i]` in `(0, ∞)`.
///
/// A common factor `x^v` is stripped first, so the polynomial may vanish at
/// the origin itself.  Returns `None` for the zero polynomial or non-finite
/// coefficients.
pub(crate) fn positive_roots(powers: &[u32], coeffs: &[f64]) -> Option<usize> {
    let p = from_sparse(powers, coeffs)?;
    if p.is_empty() {
        return None;
    }
    let v = p.iter().position(|c| !c.is_zero()).unwrap();
    count_roots_above(p[v..].to_vec(), &BigRational::zero())
}

/// Distinct real roots of the `d`-th derivative of `Σ coeffs[i]·x^powers[i]`
/// in `(a, ∞)` with `a > 0`.  `None` if the derivative vanishes exactly at
/// `a` or is identically zero.
pub(crate) fn derivative_roots_above(
    powers: &[u32],
    coeffs: &[f64],
    d: u32,
    a: f64,
) -> Option<usize> {
    let mut p = from_sparse(powers, coeffs)?;
    for _ in 0..d {
        p = derivative(&p);
    }
    if p.is_empty() {
        return None;
    }
    let a = BigRational::from_float(a)?;
    count_roots_above(p, &a)
}
