//! Mesh-refinement check behind the entropy expansion: the lattice sum
//!
//!     S(t) = Σ_{k≥1} G(1/(e^{p_γ(tk)} − 1)),   G = geometric entropy,
//!
//! matches its Euler–Maclaurin description
//!
//!     S(t) = M(γ)/t − (j*/2)·log(2π/t) + C(γ) + O(t)
//!
//! as the mesh t refines, where C(γ) is an explicit constant depending on
//! whether a constant power j = 0 is present.  The example prints both
//! sides and their gap for shrinking t.
//!
//! Run: `cargo run --example euler_maclaurin`

use maxent_partitions::asymptotics::em_sum_check;
use maxent_partitions::domain::ProfileSet;
use maxent_partitions::maxent_continuous::DualVector;

fn main() -> maxent_partitions::Result<()> {
    let cases: [(&str, Vec<u32>, Vec<f64>); 2] = [
        ("γ = (1) on J = {1}", vec![1], vec![1.0]),
        ("γ = (1, 1) on J = {0, 1}", vec![0, 1], vec![1.0, 1.0]),
    ];
    for (label, powers, gamma) in cases {
        let set = ProfileSet::new(powers)?;
        let dual = DualVector::new(set, gamma)?;
        println!("{label}:");
        println!("  {:>8}  {:>16}  {:>16}  {:>12}", "t", "lattice sum", "expansion", "gap");
        for t in [0.1, 0.01, 0.001] {
            let (direct, asymptotic) = em_sum_check(&dual, t)?;
            println!(
                "  {t:>8}  {direct:>16.8}  {asymptotic:>16.8}  {:>12.3e}",
                (direct - asymptotic).abs()
            );
        }
        println!();
    }
    println!("For J = {{1}} the O(t) terms cancel exactly (a modular identity),");
    println!("so the residual gap is pure quadrature noise near 1e-12; for");
    println!("J = {{0,1}} the gap is honest O(t) and falls tenfold per row.");
    Ok(())
}
