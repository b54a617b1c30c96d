//! Estimate the number of partitions with two prescribed power sums.
//!
//! Target class: partitions λ with Σ parts = N₁ and Σ parts² = N₂, where
//! N_j = ⌊α_j n^{(j+1)/2}⌋ for α = (1, 1).  The estimate factors as
//!
//!     count ≈ exp(√n·M + c̃)·n^{-b}   (leading)
//!     count ≈ exp(H(μ))·(LCLT factor) (refined)
//!
//! with every ingredient exposed in the breakdown.  The exact count for
//! n = 64 is computed by brute force for comparison.
//!
//! Run: `cargo run --example profile_estimate`

use maxent_partitions::asymptotics::{estimate_p, EstimateMode};
use maxent_partitions::domain::{MomentVector, ProfileSet};
use maxent_partitions::exact_count::count_exact;
use num::ToPrimitive;

fn main() -> maxent_partitions::Result<()> {
    let set = ProfileSet::new([1, 2])?;
    let alpha = MomentVector::new(set, vec![1.0, 1.0])?;
    let n = 64;

    let est = estimate_p(&alpha, n, EstimateMode::Refined)?;
    println!("powers J            = {:?}", est.scaled.set().powers());
    println!("scaled profile N    = {:?}", est.scaled.values());
    println!("feasible            = {}", est.feasible);
    println!("dual solve converged= {}", est.converged);
    println!();
    println!("growth constant M   = {:.9}", est.m);
    println!("exponent b          = {} (= {:.3})", est.b, *est.b.numer() as f64 / *est.b.denom() as f64);
    println!("prefactor c         = {:.9}", est.c);
    println!("entropy H(μ)        = {:.6}", est.entropy.expect("feasible"));
    println!("log LCLT factor     = {:.6}", est.log_lclt.expect("feasible"));
    println!("log estimate        = {:.6}", est.log_estimate);
    println!();

    let exact = count_exact(&est.scaled)?;
    let exact_f = exact.to_f64().expect("fits");
    let refined = est.log_estimate.exp();
    println!("refined estimate    = {refined:.6e}");
    println!("exact count         = {exact_f:.6e}  ({exact})");
    println!("ratio               = {:.4}", refined / exact_f);

    let leading = estimate_p(&alpha, n, EstimateMode::Leading)?;
    println!("leading estimate    = {:.6e}  (coarser by design)", leading.log_estimate.exp());
    Ok(())
}
