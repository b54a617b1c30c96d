//! Which profiles (N_j)_{j∈J} are hit by integer partitions at all?
//!
//! A partition contributes Σ_k a_k·k^j to the j-th power sum, so every
//! achievable profile satisfies: for each integer-valued polynomial
//! q(x) = Σ_j c_j x^j supported on J (integer-valued on all of ℤ, possibly
//! with rational coefficients), the combination Σ_j c_j N_j is an integer.
//! The lattice Q_J of such polynomials modulo ℤ-coefficient ones is finite;
//! its cardinality |Q_J| measures how sparse achievable profiles are, and
//! it enters the counting prefactor as a direct factor.
//!
//! Run: `cargo run --example qj_lattice`

use maxent_partitions::domain::{Profile, ProfileSet};
use maxent_partitions::intpoly::{enumerate_qj, is_n_feasible, nt_density, DEFAULT_DEGREE_CAP};

fn main() -> maxent_partitions::Result<()> {
    println!("lattice cardinalities |Q_J| for initial-segment power sets:");
    for d in 1..=4u32 {
        let set = ProfileSet::new(1..=d)?;
        let lattice = enumerate_qj(&set, DEFAULT_DEGREE_CAP)?;
        println!("  J = {{1..{d}}}: |Q_J| = {}", lattice.cardinality());
    }
    println!();

    let set = ProfileSet::new([1, 2])?;
    let lattice = enumerate_qj(&set, DEFAULT_DEGREE_CAP)?;
    println!("representatives for J = {{1,2}}:");
    for poly in lattice.polys() {
        println!("  {poly}");
    }
    println!();
    println!("(x² + x)/2 is integer on ℤ although its coefficients are not;");
    println!("it forces N₁ + N₂ ≡ 0 (mod 2) for every achievable profile.");
    println!();

    // The congruence in action: (3, 4) violates it, (4, 10) obeys it.
    for (n1, n2) in [(3u64, 4u64), (4, 10)] {
        let profile = Profile::from_u64(set.clone(), &[n1, n2])?;
        println!(
            "profile ({n1:>2}, {n2:>2}): lattice-feasible = {}",
            is_n_feasible(&profile, &lattice)?
        );
    }
    println!();

    // Asymptotic density of feasible profiles in a large box is 1/|Q_J|.
    let density = nt_density(&lattice, 50)?;
    println!("density of feasible profiles in a 50×50 box = {density}");
    println!("matches 1/|Q_J| = 1/{}", lattice.cardinality());
    Ok(())
}
