//! The limit shape of random partitions: after scaling both axes by √n,
//! the Young-diagram boundary of a uniform random partition concentrates
//! on a deterministic curve
//!
//!     φ_∞(t) = ∫_t^∞ ds / (e^{p_β(s)} − 1),
//!
//! For the unrestricted uniform case (J = {1}, β = π/√6) this has the
//! closed form φ_∞(t) = −(√6/π)·log(1 − e^{−πt/√6}).  The example prints
//! the curve, checks the closed form, and then watches empirical shapes
//! of sampled partitions converge to it as n grows.
//!
//! Run: `cargo run --example limit_shape`

use maxent_partitions::domain::{Profile, ProfileSet};
use maxent_partitions::maxent_continuous::{DualVector, SolveOptions};
use maxent_partitions::maxent_discrete::solve_beta_hat;
use maxent_partitions::sampler::{
    empirical_shape, limit_shape, linear_grid, sample_uniform_exact, shape_distance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> maxent_partitions::Result<()> {
    let set = ProfileSet::new([1])?;
    let beta = std::f64::consts::PI / 6f64.sqrt();
    let dual = DualVector::new(set.clone(), vec![beta])?;

    let grid = linear_grid(0.25, 3.0, 12)?;
    let curve = limit_shape(&dual, &grid)?;
    println!("t        φ_∞(t)     closed form");
    for (t, phi) in curve.grid().iter().zip(curve.values()) {
        // closed form: −(√6/π)·ln(1 − e^{−βt}), via ln_1p(−e^{−βt})
        let closed = -(6f64.sqrt() / std::f64::consts::PI) * (-((-(beta * t)).exp())).ln_1p();
        println!("{t:<8.3} {phi:<10.6} {closed:<10.6}");
    }
    println!();

    // Empirical shapes: sup-distance to φ_∞ on [0.5, 2] shrinks with n.
    let window = (0.5, 2.0);
    let fine = linear_grid(0.05, 4.0, 400)?;
    let reference = limit_shape(&dual, &fine)?;
    println!("median sup-distance of empirical shapes to φ_∞ on [0.5, 2]:");
    for n in [100u64, 400, 1600] {
        let target = Profile::from_u64(set.clone(), &[n])?;
        let report = solve_beta_hat(&target, &SolveOptions::default())?;
        let mut rng = ChaCha12Rng::seed_from_u64(n);
        let mut distances = Vec::new();
        for _ in 0..20 {
            let sample = sample_uniform_exact(&target, &report.dual, &mut rng, 10_000_000)?;
            let empirical = empirical_shape(&sample.partition, n, &fine)?;
            distances.push(shape_distance(&empirical, &reference, window)?);
        }
        distances.sort_by(f64::total_cmp);
        println!("  n = {n:>5}: {:.4}", distances[distances.len() / 2]);
    }
    Ok(())
}
