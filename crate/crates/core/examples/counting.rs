//! Exact counting of partitions with prescribed power sums, by dynamic
//! programming over parts — the brute-force ground truth that the
//! asymptotic machinery is validated against.
//!
//! Run: `cargo run --example counting`

use maxent_partitions::domain::{Profile, ProfileSet};
use maxent_partitions::exact_count::{
    count_exact, count_pn, count_table_upto, enumerate_profile_partitions,
};
use num::{BigUint, Zero};

fn main() -> maxent_partitions::Result<()> {
    // Classical partition numbers.
    println!("p(n) for small n:");
    for n in [1u64, 5, 10, 30, 100] {
        println!("  p({n:>3}) = {}", count_pn(n));
    }
    println!();

    // Two constraints: joint table up to (N1, N2) = (12, 144); the second
    // cap is 12² so no partition of Σλ ≤ 12 is truncated away.
    let set = ProfileSet::new([1, 2])?;
    let table = count_table_upto(&set, &[12, 144])?;
    println!("nonzero joint counts with Σλ = 6:");
    for (profile, count) in &table {
        if profile[0] == 6 && !count.is_zero() {
            println!("  N = (6, {:>2}): {count}", profile[1]);
        }
    }
    println!();

    // Marginalizing the second power sum recovers p(n).
    let n = 12u64;
    let marginal: BigUint = table
        .iter()
        .filter(|(profile, _)| profile[0] == n)
        .map(|(_, count)| count.clone())
        .sum();
    println!("Σ_N2 count(({n}, N2)) = {marginal} = p({n}) = {}", count_pn(n));
    println!();

    // A sharply constrained class can be tiny — or empty.
    let profile = Profile::from_u64(set.clone(), &[4, 10])?;
    println!("count(N = (4,10)) = {}", count_exact(&profile)?);
    for lambda in enumerate_profile_partitions(&profile)? {
        println!("  the unique witness: {lambda}");
    }
    let profile = Profile::from_u64(set, &[3, 4])?;
    println!("count(N = (3,4))  = {} (2 ∤ N₁+N₂: unreachable)", count_exact(&profile)?);
    Ok(())
}
