//! Boltzmann sampling of random partitions.
//!
//! The maximum-entropy measure μ makes part multiplicities independent
//! geometrics with rates p̂(k) = Σ_j β̂_j k^j, tilted so the *mean* profile
//! hits the target.  Conditioned on hitting the target exactly, μ is
//! uniform on the target class — so rejection sampling (draw from μ, keep
//! only exact hits) produces exactly uniform partitions, with acceptance
//! rate equal to μ(class).
//!
//! Run: `cargo run --example boltzmann_sampler`

use maxent_partitions::domain::{profile_of, Profile, ProfileSet};
use maxent_partitions::exact_count::count_exact;
use maxent_partitions::maxent_continuous::SolveOptions;
use maxent_partitions::maxent_discrete::{entropy_mu, solve_beta_hat};
use maxent_partitions::sampler::{sample_mu, sample_uniform_exact};
use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> maxent_partitions::Result<()> {
    let set = ProfileSet::new([1])?;
    let target = Profile::from_u64(set.clone(), &[30])?;
    let report = solve_beta_hat(&target, &SolveOptions::default())?;
    println!(
        "dual for E[Σλ] = 30: β̂₁ = {:.6} (converged in {} iterations)",
        report.dual.values()[0],
        report.iterations
    );

    let mut rng = ChaCha12Rng::seed_from_u64(0);

    // Unconditioned draws: profiles fluctuate around the target.
    println!("\nfive draws from μ (profile fluctuates around 30):");
    for _ in 0..5 {
        let lambda = sample_mu(&report.dual, &mut rng);
        let profile = profile_of(&lambda, &set);
        println!("  Σλ = {:>3}  λ = {lambda}", profile.values()[0]);
    }

    // Exact-hit rejection: uniform draws from 𝒫(30).
    println!("\nthree uniform partitions of 30 via rejection:");
    let mut tries_total = 0u64;
    let draws = 1000u64;
    for i in 0..draws {
        let sample = sample_uniform_exact(&target, &report.dual, &mut rng, 1_000_000)?;
        tries_total += sample.tries;
        if i < 3 {
            println!("  {} (after {} tries)", sample.partition, sample.tries);
        }
    }

    // Acceptance rate ≈ μ(𝒫(30)), and exp(H(μ)) · μ(𝒫(30)) ≈ p(30):
    // the sampler actually measures the count it was built from.
    let rate = draws as f64 / tries_total as f64;
    let entropy = entropy_mu(&report.dual)?;
    let implied = entropy.exp() * rate;
    let exact = count_exact(&target)?.to_f64().expect("fits");
    println!("\nacceptance rate                  = {rate:.5}");
    println!("exp(entropy) × rate              = {implied:.1}");
    println!("exact count of partitions of 30  = {exact}");
    Ok(())
}
