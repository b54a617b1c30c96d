//! Closed-form ingredients of the asymptotic counting formula, and the
//! estimates they assemble into.
//!
//! For a profile set `J` and targets `α`, the number of partitions with
//! profile `N_j = ⌊α_j n^{(j+1)/2}⌋` grows like
//!
//! ```text
//! (c(α) + o(1)) · e^{√n·M(α)} / n^{b(J)}        (n-feasible N; 0 otherwise)
//! ```
//!
//! where `b(J)` is an exact rational depending only on `J`, and `c(α)`
//! factors into the feasibility-lattice density, a Gaussian normalization,
//! and a boundary correction at the smallest power.  The same count can be
//! computed non-asymptotically as `e^{H(μ_n)} · μ_n(𝒫(N))`: entropy of the
//! discrete maximum-entropy measure times the local-limit probability of
//! hitting `N` exactly.  [`estimate_p`] exposes both routes — `Leading`
//! uses only continuous quantities, `Refined` only discrete ones — so each
//! validates the other.

use num::rational::Rational64;
use num::traits::ToPrimitive;

use crate::domain::{scaled_profile, MomentVector, Profile, ProfileSet};
use crate::error::{Error, Result};
use crate::intpoly::{enumerate_qj, is_n_feasible, FeasibilityLattice, DEFAULT_DEGREE_CAP};
use crate::maxent_continuous::{
    m_alpha, sigma_matrix, solve_beta, DualVector, SigmaMatrix, SolveOptions,
};
use crate::maxent_discrete::{
    covariance_s, entropy_mu, solve_beta_hat, DiscreteDual,
};
use crate::special::{bose_mean, geom_entropy};

/// The polynomial decay exponent `b(J) = (j_* + |J|)/4 + (Σ_{j∈J} j)/2`,
/// exact.
pub fn exponent_b(set: &ProfileSet) -> Rational64 {
    let j_star = set.min_power() as i64;
    let card = set.len() as i64;
    let sum: i64 = set.powers().iter().map(|&j| j as i64).sum();
    Rational64::new(j_star + card, 4) + Rational64::new(sum, 2)
}

/// The logarithmic coefficient `b₁(J) = −j_*/4` of the entropy expansion,
/// exact.
pub fn entropy_log_coefficient(set: &ProfileSet) -> Rational64 {
    Rational64::new(-(set.min_power() as i64), 4)
}

/// The constant term of the entropy expansion:
/// `c₁ = −(j_*/2)·log 2π + 𝟙[j_*=0]·(β₀/(e^{β₀}−1) − G(1/(e^{β₀}−1)))/2
///      + 𝟙[j_*≥1]·(log β_{j_*})/2`.
pub fn entropy_constant(beta: &DualVector) -> f64 {
    let j_star = beta.set().min_power();
    let tau = std::f64::consts::TAU; // 2π
    let mut c1 = -(j_star as f64 / 2.0) * tau.ln();
    let b_low = beta.leading_low();
    if j_star == 0 {
        c1 += 0.5 * (b_low * bose_mean(b_low) - geom_entropy(b_low));
    } else {
        c1 += 0.5 * b_low.ln();
    }
    c1
}

/// The entropy of the measure at scale `n` expands as
/// `H(μ_n) = √n·M + b₁ log n + c₁ + o(1)`; this bundles the three
/// coefficients, with `M` supplied by the continuous solution.
#[derive(Clone, Debug)]
pub struct EntropyExpansion {
    pub m: f64,
    pub b1: Rational64,
    pub c1: f64,
}

pub fn entropy_expansion(beta: &DualVector, m: f64) -> EntropyExpansion {
    EntropyExpansion {
        m,
        b1: entropy_log_coefficient(beta.set()),
        c1: entropy_constant(beta),
    }
}

impl EntropyExpansion {
    pub fn at(&self, n: f64) -> f64 {
        self.m * n.sqrt() + self.b1.to_f64().unwrap() * n.ln() + self.c1
    }
}

/// The prefactor of the counting formula:
/// `c(α) = |Q_J| (2π)^{−(j_*+|J|)/2} det(Σ)^{−1/2} · β_{j_*}^{𝟙[j_*≥1]/2}
///        · exp(𝟙[j_*=0]·(β₀/(e^{β₀}−1) − G(1/(e^{β₀}−1)))/2)`.
pub fn prefactor_c(
    beta: &DualVector,
    sigma: &SigmaMatrix,
    lattice: &FeasibilityLattice,
) -> Result<f64> {
    if beta.set() != sigma.set() || beta.set() != lattice.set() {
        return Err(Error::InvalidInput(
            "dual, covariance, and lattice defined on different power sets".into(),
        ));
    }
    let det = sigma.determinant();
    if !(det > 0.0) {
        return Err(Error::SingularCovariance);
    }
    let j_star = beta.set().min_power();
    let card = beta.set().len();
    let tau = std::f64::consts::TAU;
    let mut c = lattice.cardinality() as f64
        * tau.powf(-((j_star as usize + card) as f64) / 2.0)
        / det.sqrt();
    let b_low = beta.leading_low();
    if j_star == 0 {
        c *= (0.5 * (b_low * bose_mean(b_low) - geom_entropy(b_low))).exp();
    } else {
        c *= b_low.sqrt();
    }
    Ok(c)
}

/// `log` of the local-limit factor `|Q_J| / ((2π)^{|J|/2} det(S)^{1/2})`:
/// the probability that the measure hits its mean profile exactly, to
/// leading order.
pub fn log_lclt_factor(s: &SigmaMatrix, lattice: &FeasibilityLattice) -> Result<f64> {
    if s.set() != lattice.set() {
        return Err(Error::InvalidInput(
            "covariance and lattice defined on different power sets".into(),
        ));
    }
    let det = s.determinant();
    if !(det > 0.0) {
        return Err(Error::SingularCovariance);
    }
    let card = s.set().len() as f64;
    Ok((lattice.cardinality() as f64).ln()
        - card / 2.0 * std::f64::consts::TAU.ln()
        - 0.5 * det.ln())
}

/// Linear-space version of [`log_lclt_factor`].
pub fn lclt_factor(s: &SigmaMatrix, lattice: &FeasibilityLattice) -> Result<f64> {
    Ok(log_lclt_factor(s, lattice)?.exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMode {
    /// Continuous ingredients only: `√n·M + log c − b log n`.
    Leading,
    /// Discrete ingredients only: `H(μ_n) + log lclt`.
    Refined,
}

/// Everything [`estimate_p`] computed on the way to its answer.
#[derive(Clone, Debug)]
pub struct EstimateBreakdown {
    pub mode: EstimateMode,
    pub feasible: bool,
    /// All solver stages converged to tolerance.
    pub converged: bool,
    pub n: u64,
    pub scaled: Profile,
    pub m: f64,
    pub b: Rational64,
    pub c: f64,
    pub b1: Rational64,
    pub c1: f64,
    /// Discrete entropy `H(μ_n)` (refined mode on feasible input).
    pub entropy: Option<f64>,
    /// `log` of the local-limit factor (refined mode on feasible input).
    pub log_lclt: Option<f64>,
    /// Natural log of the estimated count; `−∞` when infeasible.
    pub log_estimate: f64,
    /// `e^{log_estimate}` when it fits a finite f64 (0 when infeasible).
    pub linear_estimate: Option<f64>,
}

/// Estimate the number of partitions with profile `⌊α_j n^{(j+1)/2}⌋`.
///
/// Infeasible targets (the prescribed profile falls off the feasibility
/// lattice) yield `log_estimate = −∞` and `feasible: false` — the count is
/// exactly zero, not small.
pub fn estimate_p(alpha: &MomentVector, n: u64, mode: EstimateMode) -> Result<EstimateBreakdown> {
    let set = alpha.set().clone();
    let scaled = scaled_profile(alpha, n)?;
    let lattice = enumerate_qj(&set, DEFAULT_DEGREE_CAP)?;
    let feasible = is_n_feasible(&scaled, &lattice)?;

    let cont = solve_beta(alpha, &SolveOptions::default())?;
    let m = m_alpha(&cont.beta)?;
    let sigma = sigma_matrix(&cont.beta)?;
    let b = exponent_b(&set);
    let c = prefactor_c(&cont.beta, &sigma, &lattice)?;
    let b1 = entropy_log_coefficient(&set);
    let c1 = entropy_constant(&cont.beta);
    let mut converged = cont.converged;

    let mut entropy = None;
    let mut log_lclt = None;
    let log_estimate = if !feasible {
        f64::NEG_INFINITY
    } else {
        match mode {
            EstimateMode::Leading => {
                let nf = n as f64;
                nf.sqrt() * m + c.ln() - b.to_f64().unwrap() * nf.ln()
            }
            EstimateMode::Refined => {
                let disc = solve_beta_hat(&scaled, &SolveOptions::default())?;
                converged = converged && disc.converged;
                let h = entropy_mu(&disc.dual)?;
                let s = covariance_s(&disc.dual)?;
                let ll = log_lclt_factor(&s, &lattice)?;
                entropy = Some(h);
                log_lclt = Some(ll);
                h + ll
            }
        }
    };

    let linear_estimate = if !feasible {
        Some(0.0)
    } else if log_estimate < 709.0 {
        Some(log_estimate.exp())
    } else {
        None
    };

    Ok(EstimateBreakdown {
        mode,
        feasible,
        converged,
        n,
        scaled,
        m,
        b,
        c,
        b1,
        c1,
        entropy,
        log_lclt,
        log_estimate,
        linear_estimate,
    })
}

/// Both sides of the Euler–Maclaurin comparison at mesh `t ∈ (0, 1/2]`:
///
/// ```text
/// direct     = Σ_{k≥1} G(1/(e^{p_γ(tk)} − 1))
/// asymptotic = t^{−1} M_γ − (j_*/2)·log(2π/t)
///              − 𝟙[j_*=0]·G(1/(e^{γ₀}−1))/2 + 𝟙[j_*≥1]·(log γ_{j_*} − 1)/2
/// ```
///
/// The gap closes as `t → 0⁺`; at moderate `t` both sides are O(1) apart,
/// which is expected and not an error.  The direct sum reuses the certified
/// truncation machinery: scaling the dual by `t^j` turns `p_γ(tk)` into a
/// discrete exponent polynomial.
pub fn em_sum_check(gamma: &DualVector, t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "mesh must lie in (0, 1/2], got {t}"
        )));
    }
    let set = gamma.set().clone();
    let scaled: Vec<f64> = set
        .powers()
        .iter()
        .zip(gamma.values())
        .map(|(&j, &g)| g * t.powi(j as i32))
        .collect();
    let dual = DiscreteDual::new(set.clone(), scaled)?;
    let direct = entropy_mu(&dual)?;

    let m = m_alpha(gamma)?;
    let j_star = set.min_power();
    let tau = std::f64::consts::TAU;
    let mut asymptotic = m / t - (j_star as f64 / 2.0) * (tau / t).ln();
    if j_star == 0 {
        asymptotic -= 0.5 * geom_entropy(gamma.leading_low());
    } else {
        asymptotic += 0.5 * (gamma.leading_low().ln() - 1.0);
    }
    Ok((direct, asymptotic))
}
