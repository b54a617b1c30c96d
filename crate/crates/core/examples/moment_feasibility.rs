//! Not every moment vector is attainable.  Two separate obstructions:
//!
//! 1. Classical moment-problem positivity (Hankel): (1, α₁, …, α_d) must
//!    be the moments of SOME positive measure on [0, ∞).  Necessary, and
//!    cheap to test via leading minors.
//! 2. Family attainability: the specific tilted-geometric family has its
//!    own open attainable set.  A vector can pass the Hankel test and
//!    still admit no dual — the solver then reports non-convergence as an
//!    answer, not an error.
//!
//! The example shows both tests, then traces the attainability boundary
//! for J = {1, 2}: with the first moment pinned, the largest reachable
//! second moment has scaled ratio m₂/m₁^{3/2} = 2ζ(3)/ζ(2)^{3/2} ≈ 1.14.
//!
//! Run: `cargo run --example moment_feasibility`

use maxent_partitions::domain::{MomentVector, ProfileSet};
use maxent_partitions::maxent_continuous::{
    forward_moments, hankel_feasibility, solve_beta, DualVector, SolveOptions,
};

fn main() -> maxent_partitions::Result<()> {
    // Hankel positivity on raw moment sequences (1, α₁, α₂).
    println!("Hankel feasibility of (1, α₁, α₂):");
    for (a1, a2) in [(1.0, 1.2), (1.0, 1.0), (1.0, 0.8)] {
        let report = hankel_feasibility(&[1.0, a1, a2])?;
        println!("  α = ({a1}, {a2}): {:?}  (needs α₂ ≥ α₁² = 1)", report.verdict);
    }
    println!();

    // Attainability within the tilted-geometric family.
    let set = ProfileSet::new([1, 2])?;
    println!("dual solves for α = (1, r), sweeping the ratio r:");
    for r in [1.05, 1.10, 1.13, 1.14, 1.20] {
        let alpha = MomentVector::new(set.clone(), vec![1.0, r])?;
        let report = solve_beta(&alpha, &SolveOptions { max_iter: 120, ..SolveOptions::default() })?;
        println!(
            "  r = {r:<5}: converged = {:<5}  residual = {:.2e}",
            report.converged, report.residual
        );
    }
    println!();

    // The boundary from the family itself: the ratio is scale-invariant
    // along rays and maximal in the pure-first-power limit β₂ → 0.
    println!("scaled ratio m₂/m₁^(3/2) along β₂ → 0 (β₁ = 1):");
    for b2 in [1.0, 0.1, 0.01, 0.001] {
        let dual = DualVector::new(set.clone(), vec![1.0, b2])?;
        let m = forward_moments(&dual)?;
        let ratio = m.values()[1] / m.values()[0].powf(1.5);
        println!("  β = (1, {b2:<6}): ratio = {ratio:.6}");
    }
    let zeta3 = 1.2020569031595943;
    let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    println!("  supremum 2ζ(3)/ζ(2)^(3/2) = {:.6}", 2.0 * zeta3 / zeta2.powf(1.5));
    println!();
    println!("Moment vectors beyond the supremum pass Hankel but have no dual:");
    println!("the solver's converged = false is the honest verdict there.");
    Ok(())
}
