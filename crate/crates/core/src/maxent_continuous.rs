//! The continuous maximum-entropy problem: duals, moments, and the entropy
//! functional.
//!
//! A dual vector `β` induces the density `f*(x) = 1/(e^{p_β(x)} − 1)` with
//! `p_β(x) = Σ_{j∈J} β_j x^j`, admissible when `p_β > 0` on (0, ∞).  The
//! forward map sends `β` to its moments
//!
//! ```text
//! m_j(β) = ∫_0^∞ x^j f*(x) dx,      j ≥ j_*,
//! ```
//!
//! and [`solve_beta`] inverts it: given targets `α` it finds the `β` with
//! `m_j(β) = α_j` for every `j ∈ J`.  The Jacobian of the forward map is
//! `−Σ(β)` where `Σ` is the positive-definite Gram matrix
//! `Σ_{ij} = ∫ x^{i+j} e^{p_β}/(e^{p_β}−1)² dx`, so a damped Newton iteration
//! with exact Jacobian converges quadratically once close.  The entropy rate
//!
//! ```text
//! M(α) = ∫_0^∞ G(f*(x)) dx,   G(η) = (η+1)log(η+1) − η log η,
//! ```
//!
//! is the constant multiplying √n in the exponential growth rate of the
//! number of partitions with profile ≈ (α_j n^{(j+1)/2})_j.
//!
//! Not every moment vector is attainable: [`hankel_feasibility`] checks the
//! classical positive-definiteness conditions, and there are vectors which
//! pass them yet admit no admissible dual — the solver then reports its best
//! iterate with `converged: false` rather than failing.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::domain::{MomentVector, ProfileSet};
use crate::error::{Error, Result};
use crate::quad::{integrate_zero_to_inf, REL_TOL};
use crate::special::{bose_mean, bose_var, gamma, geom_entropy, zeta};
use crate::sturm::positive_roots;

/// An admissible dual vector: `p_β(x) = Σ β_j x^j` strictly positive on
/// (0, ∞), with `β_{j_*} > 0` and `β_{j_max} > 0`.
///
/// Positivity is certified at construction by exact Sturm-chain root counting
/// on the binary64 coefficients, so downstream integrands may assume a
/// positive exponent at every quadrature node.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector {
    set: ProfileSet,
    values: Vec<f64>,
}

impl DualVector {
    pub fn new(set: ProfileSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::InvalidInput(format!(
                "dual vector has {} entries for {} powers",
                values.len(),
                set.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::DomainViolation("non-finite dual entry".into()));
        }
        if values[0] <= 0.0 {
            return Err(Error::DomainViolation(format!(
                "coefficient of the smallest power must be positive, got {}",
                values[0]
            )));
        }
        if *values.last().unwrap() <= 0.0 {
            return Err(Error::DomainViolation(format!(
                "leading coefficient must be positive, got {}",
                values.last().unwrap()
            )));
        }
        match positive_roots(set.powers(), &values) {
            Some(0) => Ok(DualVector { set, values }),
            Some(k) => Err(Error::DomainViolation(format!(
                "exponent polynomial has {k} positive real root(s)"
            ))),
            None => Err(Error::DomainViolation(
                "degenerate exponent polynomial".into(),
            )),
        }
    }

    pub fn set(&self) -> &ProfileSet {
        &self.set
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `p_β(x)`.
    pub fn exponent_at(&self, x: f64) -> f64 {
        poly_eval(self.set.powers(), &self.values, x)
    }

    /// `f*(x) = 1/(e^{p_β(x)} − 1)`.
    pub fn density_at(&self, x: f64) -> f64 {
        bose_mean(self.exponent_at(x))
    }

    /// Coefficient of the smallest power (`β_{j_*}`).
    pub fn leading_low(&self) -> f64 {
        self.values[0]
    }

    /// Coefficient of the largest power.
    pub fn leading_high(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

pub(crate) fn poly_eval(powers: &[u32], coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (&j, &c) in powers.iter().zip(coeffs) {
        acc += c * x.powi(j as i32);
    }
    acc
}

/// `x^s · 1/(e^p − 1)` with a log-space path once `e^{−p}` dominates, so the
/// product neither overflows through `x^s` nor underflows prematurely.
fn weighted_mean(x: f64, s: u32, p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NAN; // outside the admissible region; surfaces as a quadrature error
    }
    if p > 35.0 {
        // 1/(1 − e^{−p}) = 1 + O(6e−16): below quadrature tolerance.
        (s as f64 * x.ln() - p).exp()
    } else {
        x.powi(s as i32) * bose_mean(p)
    }
}

/// `x^s · e^p/(e^p − 1)²`, same strategy.
fn weighted_var(x: f64, s: u32, p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NAN;
    }
    if p > 35.0 {
        (s as f64 * x.ln() - p).exp()
    } else {
        x.powi(s as i32) * bose_var(p)
    }
}

/// The moment `m_j(β) = ∫_0^∞ x^j/(e^{p_β(x)} − 1) dx`.
///
/// Finite exactly when `j ≥ j_*`; smaller powers make the integrand blow up
/// like `x^{j−j_*}` at the origin and are rejected.
pub fn boltzmann_moment(beta: &DualVector, j: u32) -> Result<f64> {
    boltzmann_moment_tol(beta, j, REL_TOL)
}

pub(crate) fn boltzmann_moment_tol(beta: &DualVector, j: u32, rel_tol: f64) -> Result<f64> {
    if j < beta.set().min_power() {
        return Err(Error::DomainViolation(format!(
            "moment of order {j} diverges: smallest admissible power is {}",
            beta.set().min_power()
        )));
    }
    let powers = beta.set().powers().to_vec();
    let coeffs = beta.values().to_vec();
    integrate_zero_to_inf(
        move |x| weighted_mean(x, j, poly_eval(&powers, &coeffs, x)),
        rel_tol,
    )
}

/// All moments `(m_j(β))_{j ∈ J}` as a moment vector.
pub fn forward_moments(beta: &DualVector) -> Result<MomentVector> {
    let mut vals = Vec::with_capacity(beta.set().len());
    for &j in beta.set().powers() {
        vals.push(boltzmann_moment(beta, j)?);
    }
    MomentVector::new(beta.set().clone(), vals)
}

/// The Gram matrix `Σ_{ij}(β) = ∫_0^∞ x^{i+j} e^{p_β}/(e^{p_β}−1)² dx`,
/// indexed by the powers of `J` in sorted order.  Positive definite on the
/// admissible region; construction fails with
/// [`Error::SingularCovariance`] if the Cholesky factorization does not go
/// through numerically.
#[derive(Clone, Debug)]
pub struct SigmaMatrix {
    set: ProfileSet,
    mat: DMatrix<f64>,
    chol: Cholesky<f64, Dyn>,
}

impl SigmaMatrix {
    /// Wrap an explicitly computed symmetric positive-definite matrix
    /// indexed like `set` (used for the discrete analogue of Σ).
    pub(crate) fn from_matrix(set: ProfileSet, mat: DMatrix<f64>) -> Result<Self> {
        let chol = mat.clone().cholesky().ok_or(Error::SingularCovariance)?;
        Ok(SigmaMatrix { set, mat, chol })
    }

    pub fn set(&self) -> &ProfileSet {
        &self.set
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.mat[(i, j)]
    }

    pub fn determinant(&self) -> f64 {
        self.chol.determinant()
    }

    /// Solve `Σ x = rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let b = DVector::from_column_slice(rhs);
        self.chol.solve(&b).as_slice().to_vec()
    }
}

pub fn sigma_matrix(beta: &DualVector) -> Result<SigmaMatrix> {
    let powers = beta.set().powers();
    let k = powers.len();
    let mut mat = DMatrix::zeros(k, k);
    // Entries depend only on i+j; compute each distinct power sum once (this
    // also makes symmetry exact rather than to quadrature tolerance).
    let mut cache = std::collections::BTreeMap::new();
    for a in 0..k {
        for b in a..k {
            let s = powers[a] + powers[b];
            let v = match cache.get(&s) {
                Some(&v) => v,
                None => {
                    let pw = powers.to_vec();
                    let cf = beta.values().to_vec();
                    let v = integrate_zero_to_inf(
                        move |x| weighted_var(x, s, poly_eval(&pw, &cf, x)),
                        REL_TOL,
                    )?;
                    cache.insert(s, v);
                    v
                }
            };
            mat[(a, b)] = v;
            mat[(b, a)] = v;
        }
    }
    let chol = mat.clone().cholesky().ok_or(Error::SingularCovariance)?;
    Ok(SigmaMatrix {
        set: beta.set().clone(),
        mat,
        chol,
    })
}

/// The entropy functional `M = ∫_0^∞ G(f*(x)) dx`; multiplied by √n it is
/// the leading exponent of the partition count.
pub fn m_alpha(beta: &DualVector) -> Result<f64> {
    m_alpha_tol(beta, 1e-10)
}

pub(crate) fn m_alpha_tol(beta: &DualVector, rel_tol: f64) -> Result<f64> {
    let powers = beta.set().powers().to_vec();
    let coeffs = beta.values().to_vec();
    integrate_zero_to_inf(
        move |x| geom_entropy(poly_eval(&powers, &coeffs, x)),
        rel_tol,
    )
}

/// Solver configuration.  `initial` overrides the built-in staging.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub initial: Option<Vec<f64>>,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            initial: None,
            tol: 1e-9,
            max_iter: 200,
        }
    }
}

/// Outcome of [`solve_beta`].  `converged: false` is an answer, not a crash:
/// some moment vectors pass every classical feasibility test yet have no
/// admissible dual, and the best iterate documents where the search stalled.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub beta: DualVector,
    pub converged: bool,
    pub iterations: usize,
    /// `max_j |m_j(β) − α_j| / α_j` at the returned iterate.
    pub residual: f64,
    /// Moments achieved by the returned iterate.
    pub moments: Vec<f64>,
}

/// Closed-form solution of the single-constraint problem: for `J = {j}`,
/// `m_j(β) = Γ(1+1/j) ζ(1+1/j) / (j β^{(j+1)/j})`, hence
/// `β = (Γ(1+1/j) ζ(1+1/j) / (j α_j))^{j/(j+1)}`.
fn single_power_beta(j: u32, alpha: f64) -> f64 {
    debug_assert!(j >= 1);
    let jf = j as f64;
    let c = gamma(1.0 + 1.0 / jf) * zeta(1.0 + 1.0 / jf) / jf;
    (c / alpha).powf(jf / (jf + 1.0))
}

struct NewtonOutcome {
    values: Vec<f64>,
    iterations: usize,
    residual: f64,
    converged: bool,
}

fn residual_norm(moments: &[f64], target: &[f64]) -> f64 {
    moments
        .iter()
        .zip(target)
        .map(|(m, a)| (m - a).abs() / a)
        .fold(0.0, f64::max)
}

fn try_moments(set: &ProfileSet, values: &[f64]) -> Option<Vec<f64>> {
    let beta = DualVector::new(set.clone(), values.to_vec()).ok()?;
    let mut out = Vec::with_capacity(set.len());
    for &j in set.powers() {
        out.push(boltzmann_moment(&beta, j).ok()?);
    }
    Some(out)
}

/// Damped Newton on the forward map.  Steps solve `Σ δ = m − α` (the exact
/// Jacobian is `−Σ`), halving until the trial stays admissible and the
/// residual drops.
fn newton(
    set: &ProfileSet,
    target: &[f64],
    start: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<NewtonOutcome> {
    let mut values = start;
    let mut moments = try_moments(set, &values).ok_or_else(|| {
        Error::DomainViolation("initial dual vector is not admissible".into())
    })?;
    let mut res = residual_norm(&moments, target);
    let mut iterations = 0;

    while res > tol && iterations < max_iter {
        iterations += 1;
        let beta = DualVector::new(set.clone(), values.clone()).expect("iterate admissible");
        let Ok(sigma) = sigma_matrix(&beta) else {
            break; // degenerate curvature: stall rather than abort
        };
        let rhs: Vec<f64> = moments.iter().zip(target).map(|(m, a)| m - a).collect();
        let delta = sigma.solve(&rhs);
        if delta.iter().any(|d| !d.is_finite()) {
            break;
        }

        let mut step = 1.0f64;
        let mut accepted = false;
        while step > 2f64.powi(-60) {
            let trial: Vec<f64> = values
                .iter()
                .zip(&delta)
                .map(|(v, d)| v + step * d)
                .collect();
            if let Some(m) = try_moments(set, &trial) {
                let r = residual_norm(&m, target);
                if r < res {
                    values = trial;
                    moments = m;
                    res = r;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break; // stalled: no admissible descent along the Newton direction
        }
    }

    Ok(NewtonOutcome {
        values,
        iterations,
        residual: res,
        converged: res <= tol,
    })
}

/// Solve `m_j(β) = α_j` for all `j ∈ J`.
///
/// Without a user initial point the solver stages constraints: it starts from
/// the closed-form single-power solution at `j_max`, then activates the
/// remaining powers one at a time (largest first) with a small positive seed
/// coefficient, re-solving the growing subsystem at each stage.  A stage that
/// stalls falls back to walking the targets along a geometric path from the
/// currently attained moments.
pub fn solve_beta(alpha: &MomentVector, options: &SolveOptions) -> Result<SolveReport> {
    let set = alpha.set().clone();
    let target = alpha.values().to_vec();

    // Explicit starting point: solve the full system directly.
    if let Some(init) = &options.initial {
        let outcome = newton(&set, &target, init.clone(), options.tol, options.max_iter)?;
        return finish(set, outcome);
    }

    let mut order: Vec<u32> = set.powers().to_vec();
    order.sort_unstable_by(|a, b| b.cmp(a)); // j_max first

    let j_top = order[0];
    let mut active: Vec<u32> = vec![j_top];
    let mut current: Vec<(u32, f64)> =
        vec![(j_top, single_power_beta(j_top, alpha.get(j_top).unwrap()))];

    // Warm-up: grow the system one power at a time (largest first).  A
    // restricted target can be unattainable even when the full one is fine,
    // so these stages are best-effort with a small iteration cap — the full
    // solve below does the real work.
    for &next in &order[1..] {
        let sub_set = ProfileSet::new(active.iter().copied()).expect("has a positive power");
        let sub_target: Vec<f64> = sub_set
            .powers()
            .iter()
            .map(|&j| alpha.get(j).unwrap())
            .collect();
        current.sort_unstable_by_key(|&(j, _)| j);
        let start: Vec<f64> = current.iter().map(|&(_, v)| v).collect();
        let outcome = newton(
            &sub_set,
            &sub_target,
            start,
            options.tol,
            30.min(options.max_iter),
        )?;
        current = sub_set
            .powers()
            .iter()
            .copied()
            .zip(outcome.values.iter().copied())
            .collect();
        // Activate the next power.  It is the new minimum of the active set
        // (activation is largest-first), so its own moment runs from ∞ down
        // to 0 as its coefficient sweeps (0, ∞): tune that coefficient alone
        // to hit its target before the joint solve sees it.
        active.push(next);
        active.sort_unstable();
        let grown = ProfileSet::new(active.iter().copied()).expect("has a positive power");
        current.push((next, 1e-2 * single_power_beta(next.max(1), alpha.get(next).unwrap())));
        current.sort_unstable_by_key(|&(j, _)| j);
        let idx = grown.index_of(next).unwrap();
        let mut vals: Vec<f64> = current.iter().map(|&(_, v)| v).collect();
        if let Some(v) = tune_activated(&grown, &vals, idx, next, alpha.get(next).unwrap()) {
            vals[idx] = v;
        }
        current = grown.powers().iter().copied().zip(vals).collect();
    }

    current.sort_unstable_by_key(|&(j, _)| j);
    let start: Vec<f64> = current.iter().map(|&(_, v)| v).collect();
    let mut outcome = newton(&set, &target, start.clone(), options.tol, options.max_iter)?;
    if !outcome.converged {
        if let Some(better) = continuation(
            &set,
            &target,
            start,
            options.tol,
            options.max_iter * 2,
        )? {
            if better.converged || better.residual < outcome.residual {
                outcome = better;
            }
        }
    }
    finish(set, outcome)
}

/// Bisection on a single (newly activated, minimal) coefficient so that its
/// own moment matches the target, all other coefficients frozen.  Best-effort:
/// `None` simply keeps the seed.
fn tune_activated(set: &ProfileSet, values: &[f64], idx: usize, j: u32, target: f64) -> Option<f64> {
    let eval = |v: f64| -> Option<f64> {
        let mut vals = values.to_vec();
        vals[idx] = v;
        let beta = DualVector::new(set.clone(), vals).ok()?;
        boltzmann_moment(&beta, j).ok()
    };
    let mut lo = values[idx]; // moment too large ⟺ coefficient too small
    let mut hi = values[idx];
    let m0 = eval(lo)?;
    if m0 > target {
        // Grow hi until the moment drops below target.
        for _ in 0..200 {
            hi *= 2.0;
            match eval(hi) {
                Some(m) if m <= target => break,
                Some(_) => lo = hi,
                None => return None,
            }
        }
    } else {
        // Shrink lo until the moment exceeds the target (m → ∞ as v → 0⁺).
        for _ in 0..200 {
            lo *= 0.5;
            if lo < 1e-300 {
                return None;
            }
            match eval(lo) {
                Some(m) if m >= target => break,
                Some(_) => hi = lo,
                None => return None,
            }
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..80 {
        mid = 0.5 * (lo + hi);
        let m = eval(mid)?;
        if (m - target).abs() <= 1e-6 * target {
            break;
        }
        if m > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(mid)
}

/// Geometric continuation in moment space: walk from the currently attained
/// moments to the target in progressively finer steps, warm-starting Newton.
fn continuation(
    set: &ProfileSet,
    target: &[f64],
    start: Vec<f64>,
    tol: f64,
    iter_budget: usize,
) -> Result<Option<NewtonOutcome>> {
    let from = match try_moments(set, &start) {
        Some(m) => m,
        None => return Ok(None),
    };
    let mut best: Option<NewtonOutcome> = None;
    'schedules: for &steps in &[8usize, 24, 64] {
        let mut values = start.clone();
        let mut spent = 0usize;
        for s in 1..=steps {
            let frac = s as f64 / steps as f64;
            let waypoint: Vec<f64> = from
                .iter()
                .zip(target)
                .map(|(f, t)| (f.ln() * (1.0 - frac) + t.ln() * frac).exp())
                .collect();
            let per_stage = ((iter_budget.saturating_sub(spent)) / (steps - s + 1)).max(6);
            let out = newton(set, &waypoint, values.clone(), tol, per_stage)?;
            spent += out.iterations;
            values = out.values.clone();
            if !out.converged {
                // Track how far this schedule got, then try a finer one.
                let against_target = try_moments(set, &values)
                    .map(|m| residual_norm(&m, target))
                    .unwrap_or(f64::INFINITY);
                if best
                    .as_ref()
                    .map(|b| against_target < b.residual)
                    .unwrap_or(true)
                {
                    best = Some(NewtonOutcome {
                        values: values.clone(),
                        iterations: spent,
                        residual: against_target,
                        converged: false,
                    });
                }
                continue 'schedules;
            }
            if s == steps {
                return Ok(Some(out));
            }
        }
    }
    Ok(best)
}

fn finish(set: ProfileSet, outcome: NewtonOutcome) -> Result<SolveReport> {
    let beta = DualVector::new(set.clone(), outcome.values)?;
    let moments = forward_moments(&beta)?;
    Ok(SolveReport {
        converged: outcome.converged,
        iterations: outcome.iterations,
        residual: outcome.residual,
        moments: moments.values().to_vec(),
        beta,
    })
}

/// Verdict of the classical moment-feasibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Boundary,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct HankelReport {
    pub verdict: Feasibility,
    /// Leading principal minors of the Hankel matrix of (m_0, m_1, …).
    pub minors: Vec<f64>,
    /// Leading principal minors of the shifted matrix of (m_1, m_2, …).
    pub shifted_minors: Vec<f64>,
}

/// Positive-definiteness test on the Hankel matrices of a moment sequence
/// `(1, α_1, …, α_d)`: all leading minors of both the plain and the shifted
/// matrix must be positive for the sequence to be realizable by a positive
/// measure on [0, ∞).  Minors within ±1e−9 of zero yield `Boundary`.
///
/// Necessary but not sufficient for an admissible dual to exist — that is
/// what makes `Feasible` + non-convergence an honest outcome.
pub fn hankel_feasibility(moments: &[f64]) -> Result<HankelReport> {
    if moments.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least the zeroth and first moments".into(),
        ));
    }
    if (moments[0] - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "zeroth moment must be 1, got {}",
            moments[0]
        )));
    }
    let d = moments.len() - 1;
    const DET_TOL: f64 = 1e-9;

    let det_of = |start: usize, m: usize| -> f64 {
        let a = DMatrix::from_fn(m, m, |i, j| moments[start + i + j]);
        a.determinant()
    };

    let mut minors = Vec::new();
    for m in 1..=(d / 2 + 1) {
        minors.push(det_of(0, m));
    }
    let mut shifted = Vec::new();
    for m in 1..=d.div_ceil(2) {
        shifted.push(det_of(1, m));
    }

    let all = minors.iter().chain(&shifted);
    let verdict = if all.clone().any(|&x| x < -DET_TOL) {
        Feasibility::Infeasible
    } else if all.clone().any(|&x| x.abs() <= DET_TOL) {
        Feasibility::Boundary
    } else {
        Feasibility::Feasible
    };
    Ok(HankelReport {
        verdict,
        minors,
        shifted_minors: shifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::log1m_exp_neg;
    use std::f64::consts::PI;

    fn set(js: &[u32]) -> ProfileSet {
        ProfileSet::new(js.iter().copied()).unwrap()
    }

    fn dual(js: &[u32], vals: &[f64]) -> DualVector {
        DualVector::new(set(js), vals.to_vec()).unwrap()
    }

    fn mv(js: &[u32], vals: &[f64]) -> MomentVector {
        MomentVector::new(set(js), vals.to_vec()).unwrap()
    }

    #[test]
    fn dual_validation() {
        assert!(DualVector::new(set(&[1]), vec![-1.0]).is_err());
        assert!(DualVector::new(set(&[1, 2]), vec![1.0, -0.1]).is_err());
        // Dips below zero on (0, ∞):
        assert!(DualVector::new(set(&[0, 1, 2, 3, 4]), vec![0.05, -10.1, 36.5, -49.5, 22.4]).is_err());
        // Dips close to zero but stays positive:
        assert!(DualVector::new(set(&[0, 1, 2, 3, 4]), vec![0.95, -10.1, 36.5, -49.5, 22.4]).is_ok());
    }

    #[test]
    fn unit_rate_moment_is_zeta_two() {
        // ∫ x/(e^x − 1) dx = Σ_{m≥1} m^{−2}: check against the series summed
        // directly with an integral tail correction.
        let b = dual(&[1], &[1.0]);
        let got = boltzmann_moment(&b, 1).unwrap();
        let mut series = 0.0;
        let cut = 100_000u64;
        for m in (1..=cut).rev() {
            series += 1.0 / (m as f64 * m as f64);
        }
        let mf = cut as f64;
        series += 1.0 / mf - 1.0 / (2.0 * mf * mf) + 1.0 / (6.0 * mf * mf * mf);
        assert!((got - series).abs() < 1e-10, "{got} vs {series}");
        assert!((got - PI * PI / 6.0).abs() < 1e-10);
    }

    #[test]
    fn hardy_ramanujan_dual() {
        // J = {1}, α = 1: β = π/√6 makes the first moment exactly 1.
        let beta_hr = PI / 6f64.sqrt();
        let m = boltzmann_moment(&dual(&[1], &[beta_hr]), 1).unwrap();
        assert!((m - 1.0).abs() < 1e-10);

        let report = solve_beta(&mv(&[1], &[1.0]), &SolveOptions::default()).unwrap();
        assert!(report.converged);
        assert!((report.beta.values()[0] - beta_hr).abs() < 1e-8);

        // M(1) = π√(2/3).
        let m_val = m_alpha(&report.beta).unwrap();
        assert!((m_val - PI * (2f64 / 3.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn moment_diverges_below_min_power() {
        let b = dual(&[1, 2], &[1.0, 1.0]);
        assert!(boltzmann_moment(&b, 0).is_err());
        assert!(boltzmann_moment(&b, 1).is_ok());
    }

    #[test]
    fn sigma_closed_form_single_power() {
        // Σ₁₁(b) = ∫ x² e^{bx}/(e^{bx}−1)² dx = π²/(3b³) (integrate by parts
        // against d(−1/(e^{bx}−1)) and reduce to ζ(2)).
        for &b in &[0.7f64, 1.0, 1.3] {
            let s = sigma_matrix(&dual(&[1], &[b])).unwrap();
            let expect = PI * PI / (3.0 * b * b * b);
            assert!(
                (s.entry(0, 0) - expect).abs() < 1e-9 * expect,
                "b = {b}: {} vs {expect}",
                s.entry(0, 0)
            );
        }
    }

    #[test]
    fn sigma_jacobian_matches_finite_differences() {
        // ∂m_i/∂β_j = −Σ_{ij}; central differences, step 1e−6.
        let js = [1u32, 2];
        let vals = [0.8f64, 0.2];
        let s = sigma_matrix(&dual(&js, &vals)).unwrap();
        let h = 1e-6;
        for (bi, &j_mom) in js.iter().enumerate() {
            for bj in 0..js.len() {
                let mut up = vals;
                up[bj] += h;
                let mut dn = vals;
                dn[bj] -= h;
                let m_up = boltzmann_moment(&dual(&js, &up), j_mom).unwrap();
                let m_dn = boltzmann_moment(&dual(&js, &dn), j_mom).unwrap();
                let fd = (m_up - m_dn) / (2.0 * h);
                let exact = -s.entry(bi, bj);
                assert!(
                    (fd - exact).abs() < 1e-5 * exact.abs(),
                    "({bi},{bj}): fd {fd} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn entropy_dilation_scaling() {
        // For J = {1}, M(aα) = √a · M(α): the optimizer rescales as β/√a.
        let m1 = m_alpha(&solve_beta(&mv(&[1], &[1.0]), &SolveOptions::default()).unwrap().beta)
            .unwrap();
        for &a in &[0.25f64, 4.0] {
            let ma = m_alpha(&solve_beta(&mv(&[1], &[a]), &SolveOptions::default()).unwrap().beta)
                .unwrap();
            assert!(
                (ma - a.sqrt() * m1).abs() < 1e-8,
                "a = {a}: {ma} vs {}",
                a.sqrt() * m1
            );
        }
    }

    #[test]
    fn lagrangian_identity() {
        // Pointwise G(f*) = p·f* − log(1−e^{−p}) integrates to
        // M = β·α + ∫ −log(1−e^{−p_β}).
        let b = dual(&[1, 2], &[0.5, 0.25]);
        let m = m_alpha(&b).unwrap();
        let alpha = forward_moments(&b).unwrap();
        let dot: f64 = b
            .values()
            .iter()
            .zip(alpha.values())
            .map(|(x, y)| x * y)
            .sum();
        let powers = b.set().powers().to_vec();
        let coeffs = b.values().to_vec();
        let log_part = integrate_zero_to_inf(
            move |x| -log1m_exp_neg(poly_eval(&powers, &coeffs, x)),
            1e-11,
        )
        .unwrap();
        assert!((m - (dot + log_part)).abs() < 1e-8, "{m} vs {}", dot + log_part);
    }

    #[test]
    fn m_alpha_stable_under_refinement() {
        let b = dual(&[1, 2, 3], &[4.0, -8.5, 4.6]);
        let coarse = m_alpha_tol(&b, 1e-9).unwrap();
        let fine = m_alpha_tol(&b, 1e-11).unwrap();
        assert!((coarse - fine).abs() < 1e-9);
    }

    #[test]
    fn forward_map_cubic_example() {
        // β = (4.0, −8.5, 4.6) on J = {1,2,3} attains these moments.
        let b = dual(&[1, 2, 3], &[4.0, -8.5, 4.6]);
        let m = forward_moments(&b).unwrap();
        let expect = [4.31168, 3.86652, 3.65774];
        for (got, want) in m.values().iter().zip(expect) {
            assert!(
                (got - want).abs() < 2e-2 * want,
                "{got} vs {want}"
            );
        }
    }

    #[test]
    fn solve_recovers_quartic_dual() {
        // Five constraints including a zeroth power; the known dual has large
        // negative interior coefficients.
        let alpha = mv(
            &[0, 1, 2, 3, 4],
            &[12.8748, 6.698, 4.66192, 3.72617, 3.15877],
        );
        let report = solve_beta(&alpha, &SolveOptions::default()).unwrap();
        assert!(report.converged, "residual {}", report.residual);
        let expect = [0.95, -10.1, 36.5, -49.5, 22.4];
        for (got, want) in report.beta.values().iter().zip(expect) {
            assert!(
                (got - want).abs() <= 2e-2 * want.abs(),
                "recovered {got} vs published {want}"
            );
        }
    }

    #[test]
    fn forward_inverse_roundtrip_randomized() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let js_choices: [&[u32]; 3] = [&[1, 2], &[1, 3], &[0, 1, 2]];
        let mut done = 0;
        while done < 10 {
            let js = js_choices[done % js_choices.len()];
            let mut vals: Vec<f64> = js
                .iter()
                .map(|_| rng.random::<f64>() * 2.0 + 0.2)
                .collect();
            // Try a negative interior coefficient half the time.
            if js.len() == 3 && rng.random::<bool>() {
                vals[1] = -vals[1] * 0.3;
            }
            let Ok(beta) = DualVector::new(set(js), vals) else {
                continue;
            };
            let alpha = forward_moments(&beta).unwrap();
            let report = solve_beta(&alpha, &SolveOptions::default()).unwrap();
            assert!(report.converged, "J = {js:?}");
            for (got, want) in report.beta.values().iter().zip(beta.values()) {
                assert!(
                    (got - want).abs() <= 1e-7 * want.abs().max(1.0),
                    "J = {js:?}: {got} vs {want}"
                );
            }
            done += 1;
        }
    }

    #[test]
    fn hankel_verdicts() {
        let r = hankel_feasibility(&[1.0, 1.0, 3.0]).unwrap();
        assert_eq!(r.verdict, Feasibility::Feasible);
        let r = hankel_feasibility(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(r.verdict, Feasibility::Boundary);
        let r = hankel_feasibility(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.verdict, Feasibility::Infeasible);
    }

    #[test]
    fn feasible_moments_without_admissible_dual() {
        // (1, 1, 3) passes the Hankel test, yet no admissible dual attains
        // it: the solver must stall honestly instead of fabricating one.
        let alpha = mv(&[0, 1, 2], &[1.0, 1.0, 3.0]);
        let report = solve_beta(
            &alpha,
            &SolveOptions {
                max_iter: 60,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!report.converged);
    }
}
