//! Sampling the maximum-entropy measure, exact-uniform sampling by
//! rejection, and limit-shape computations.
//!
//! Under the measure, part multiplicities are independent geometrics:
//! `P(Y_k = y) = (1 − e^{−p̂(k)}) e^{−y·p̂(k)}`.  Because every partition
//! with the same profile carries the same probability, conditioning a draw
//! on hitting the profile exactly (rejection) produces the *uniform*
//! distribution on that profile class — an exact sampler, not an
//! approximate one.  Rejection conditions on the full profile vector; any
//! coordinate-wise scheme would break uniformity.
//!
//! Rescaled by `√n` in both directions, samples concentrate around the
//! deterministic limit shape `φ_∞(t) = ∫_t^∞ 1/(e^{p_β(s)} − 1) ds`.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::domain::{profile_of, round_sig12, Partition, Profile};
use crate::error::{Error, Result};
use crate::maxent_continuous::DualVector;
use crate::maxent_discrete::DiscreteDual;
use crate::quad::integrate_t_to_inf;
use crate::special::bose_mean;

/// Beyond this exponent the multiplicity is 0 except with probability
/// `< 1e−15`; skipping the draw avoids `log` of a subnormal.
const GUARD_EXPONENT: f64 = 34.53877639491068; // −ln(1e−15)

/// Quadrature tolerance for limit-shape values.
const SHAPE_REL_TOL: f64 = 1e-9;

/// Draws processed per deterministic substream in parallel Monte Carlo.
const MC_BLOCK: u64 = 4096;

/// One draw from the maximum-entropy measure: independent geometric
/// multiplicities via inverse CDF, `Y_k = ⌊ln U / (−p̂(k))⌋`, for parts up
/// to the dual's certified truncation.  The omitted tail contributes mass
/// below the dual's certified tail bound.
pub fn sample_mu<R: Rng>(dual: &DiscreteDual, rng: &mut R) -> Partition {
    let mut pairs = Vec::new();
    for k in 1..=dual.truncation() {
        let p = dual.exponent_at(k);
        if p >= GUARD_EXPONENT {
            continue;
        }
        let u = 1.0 - rng.random::<f64>(); // (0, 1]: ln is finite
        let y = (u.ln() / -p).floor();
        if y >= 1.0 {
            pairs.push((k, y as u64));
        }
    }
    Partition::new(pairs).expect("positive parts with positive multiplicities")
}

/// A rejection-sampled partition together with how many proposals it took.
#[derive(Clone, Debug)]
pub struct RejectionSample {
    pub partition: Partition,
    pub tries: u64,
}

/// Uniform sample on the set of partitions with profile exactly `target`:
/// redraws from the measure until the full profile matches.  Expected tries
/// is the reciprocal of the measure's profile-hit probability.
pub fn sample_uniform_exact<R: Rng>(
    target: &Profile,
    dual: &DiscreteDual,
    rng: &mut R,
    max_tries: u64,
) -> Result<RejectionSample> {
    if target.set() != dual.set() {
        return Err(Error::InvalidInput(
            "profile and dual defined on different power sets".into(),
        ));
    }
    for tries in 1..=max_tries {
        let lambda = sample_mu(dual, rng);
        if profile_of(&lambda, target.set()) == *target {
            return Ok(RejectionSample {
                partition: lambda,
                tries,
            });
        }
    }
    Err(Error::MaxTriesExceeded { tries: max_tries })
}

/// A shape curve: `φ` sampled on an increasing positive grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeCurve {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl ShapeCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidInput(
                "shape grid and values differ in length".into(),
            ));
        }
        if grid.is_empty() {
            return Err(Error::InvalidInput("shape grid is empty".into()));
        }
        if !grid.iter().all(|t| t.is_finite() && *t > 0.0)
            || grid.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::InvalidInput(
                "shape grid must be strictly increasing and positive".into(),
            ));
        }
        if !values.iter().all(|v| v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidInput(
                "shape values must be finite and non-negative".into(),
            ));
        }
        // Non-increasing up to quadrature noise.
        if values.windows(2).any(|w| w[1] > w[0] + 1e-9) {
            return Err(Error::InvalidInput(
                "shape values must be non-increasing in t".into(),
            ));
        }
        Ok(ShapeCurve { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// CSV with header `t,phi`, one row per grid point, 12 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,phi\n");
        for (t, v) in self.grid.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", round_sig12(*t), round_sig12(*v)));
        }
        out
    }
}

/// `points` evenly spaced grid values spanning `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) || points < 2 {
        return Err(Error::InvalidInput(
            "grid needs 0 < lo < hi and at least two points".into(),
        ));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| lo + step * i as f64).collect())
}

/// The deterministic limit shape `φ_∞(t) = ∫_t^∞ 1/(e^{p_β(s)} − 1) ds`
/// evaluated on the grid by adaptive quadrature (tolerance 1e−8).
pub fn limit_shape(beta: &DualVector, grid: &[f64]) -> Result<ShapeCurve> {
    let values = grid
        .iter()
        .map(|&t| integrate_t_to_inf(|x| bose_mean(beta.exponent_at(x)), t, SHAPE_REL_TOL))
        .collect::<Result<Vec<f64>>>()?;
    ShapeCurve::new(grid.to_vec(), values)
}

/// The rescaled Young-diagram profile of one partition:
/// `φ_{λ,n}(t) = n^{−1/2} · #{parts ≥ t√n}` (with multiplicity).
pub fn empirical_shape(lambda: &Partition, n: u64, grid: &[f64]) -> Result<ShapeCurve> {
    if n == 0 {
        return Err(Error::InvalidInput("scale n must be at least 1".into()));
    }
    let sqrt_n = (n as f64).sqrt();
    let values = grid
        .iter()
        .map(|&t| {
            let threshold = t * sqrt_n;
            let count: u64 = lambda
                .multiplicities()
                .filter(|&(part, _)| part as f64 >= threshold)
                .map(|(_, mult)| mult)
                .sum();
            count as f64 / sqrt_n
        })
        .collect();
    ShapeCurve::new(grid.to_vec(), values)
}

/// Sup distance between two curves over the shared grid points inside
/// `[window.0, window.1]`.  Both curves must span the window and share at
/// least one grid point inside it.
pub fn shape_distance(a: &ShapeCurve, b: &ShapeCurve, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo) {
        return Err(Error::InvalidInput(
            "window must satisfy 0 < lo <= hi".into(),
        ));
    }
    let covers = |c: &ShapeCurve| c.grid[0] <= lo && *c.grid.last().unwrap() >= hi;
    if !covers(a) || !covers(b) {
        return Err(Error::WindowUncovered { lo, hi });
    }
    let mut best: Option<f64> = None;
    let mut ia = 0;
    let mut ib = 0;
    while ia < a.grid.len() && ib < b.grid.len() {
        let (ta, tb) = (a.grid[ia], b.grid[ib]);
        if ta == tb {
            if ta >= lo && ta <= hi {
                let d = (a.values[ia] - b.values[ib]).abs();
                best = Some(best.map_or(d, |m: f64| m.max(d)));
            }
            ia += 1;
            ib += 1;
        } else if ta < tb {
            ia += 1;
        } else {
            ib += 1;
        }
    }
    best.ok_or(Error::WindowUncovered { lo, hi })
}

/// A Monte Carlo estimate of the measure's probability of hitting one
/// profile exactly, with its binomial standard error.
#[derive(Clone, Copy, Debug)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub hits: u64,
    pub samples: u64,
}

/// How many worker threads parallel Monte Carlo uses: the
/// `MAXENT_PARTITIONS_THREADS` environment variable when set, otherwise the
/// machine's available parallelism.
pub fn thread_count() -> usize {
    if let Ok(v) = std::env::var("MAXENT_PARTITIONS_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Fraction of measure draws whose profile is exactly `target`, over
/// `samples ≥ 10⁴` draws.  Work is split into fixed blocks, each on its own
/// counter-based substream of `seed`, so the result is byte-identical for a
/// given seed regardless of thread count.
pub fn mc_profile_probability(
    dual: &DiscreteDual,
    target: &Profile,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < 10_000 {
        return Err(Error::InvalidInput(format!(
            "need at least 10000 samples, got {samples}"
        )));
    }
    if target.set() != dual.set() {
        return Err(Error::InvalidInput(
            "profile and dual defined on different power sets".into(),
        ));
    }
    let blocks = samples.div_ceil(MC_BLOCK);
    let next_block = AtomicU64::new(0);
    let total_hits = AtomicU64::new(0);
    let workers = thread_count().min(blocks as usize).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local_hits = 0u64;
                loop {
                    let b = next_block.fetch_add(1, Ordering::Relaxed);
                    if b >= blocks {
                        break;
                    }
                    let mut rng = ChaCha12Rng::seed_from_u64(seed);
                    rng.set_stream(b + 1);
                    let in_block = MC_BLOCK.min(samples - b * MC_BLOCK);
                    for _ in 0..in_block {
                        let lambda = sample_mu(dual, &mut rng);
                        if profile_of(&lambda, target.set()) == *target {
                            local_hits += 1;
                        }
                    }
                }
                total_hits.fetch_add(local_hits, Ordering::Relaxed);
            });
        }
    });
    let hits = total_hits.into_inner();
    let estimate = hits as f64 / samples as f64;
    let standard_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(MonteCarloEstimate {
        estimate,
        standard_error,
        hits,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{MomentVector, ProfileSet};
    use crate::exact_count::{count_pn, enumerate_profile_partitions};
    use crate::maxent_continuous::{solve_beta, SolveOptions};
    use crate::maxent_discrete::{entropy_mu, log_atom_probability, solve_beta_hat};
    use crate::special::bose_var;
    use num::traits::ToPrimitive;
    use num::BigUint;
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    use std::collections::HashMap;
    use std::f64::consts::PI;

    fn set(js: &[u32]) -> ProfileSet {
        ProfileSet::new(js.iter().copied()).unwrap()
    }

    fn prof(js: &[u32], vals: &[u64]) -> Profile {
        let big = vals.iter().map(|&v| BigUint::from(v)).collect();
        Profile::from_power_sums(set(js), big).unwrap()
    }

    fn solved_dual(js: &[u32], vals: &[u64]) -> DiscreteDual {
        let report = solve_beta_hat(&prof(js, vals), &SolveOptions::default()).unwrap();
        assert!(report.converged);
        report.dual
    }

    #[test]
    fn multiplicity_means_match_geometric_law() {
        let dual = solved_dual(&[1], &[100]);
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        const DRAWS: usize = 100_000;
        let mut sums = [0u64; 3];
        let mut profile_sum = 0u64;
        for _ in 0..DRAWS {
            let lambda = sample_mu(&dual, &mut rng);
            for (i, s) in sums.iter_mut().enumerate() {
                *s += lambda.multiplicity(i as u64 + 1);
            }
            profile_sum += profile_of(&lambda, dual.set()).to_u64_vec().unwrap()[0];
        }
        for (i, s) in sums.iter().enumerate() {
            let k = i as u64 + 1;
            let p = dual.exponent_at(k);
            let mean = bose_mean(p);
            let se = (bose_var(p) / DRAWS as f64).sqrt();
            let got = *s as f64 / DRAWS as f64;
            assert!(
                (got - mean).abs() <= 4.0 * se,
                "k = {k}: {got} vs {mean} ± {se}"
            );
        }
        // Profile mean within 3 standard errors of the target N = (100).
        let s11 = crate::maxent_discrete::covariance_s(&dual)
            .unwrap()
            .entry(0, 0);
        let got = profile_sum as f64 / DRAWS as f64;
        let se = (s11 / DRAWS as f64).sqrt();
        assert!((got - 100.0).abs() <= 3.0 * se, "{got} vs 100 ± {se}");
    }

    #[test]
    fn huge_exponent_samples_empty() {
        let dual = DiscreteDual::new(set(&[1]), vec![40.0]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..1000 {
            assert!(sample_mu(&dual, &mut rng).is_empty());
        }
    }

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let dual = solved_dual(&[1], &[50]);
        let a = sample_mu(&dual, &mut ChaCha12Rng::seed_from_u64(9));
        let b = sample_mu(&dual, &mut ChaCha12Rng::seed_from_u64(9));
        let c = sample_mu(&dual, &mut ChaCha12Rng::seed_from_u64(10));
        assert_eq!(a, b);
        assert_ne!(a, c, "distinct seeds almost surely differ here");
    }

    #[test]
    fn rejection_always_returns_requested_profile() {
        let target = prof(&[1, 2], &[8, 20]);
        let dual = solved_dual(&[1, 2], &[8, 20]);
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for _ in 0..50 {
            let s = sample_uniform_exact(&target, &dual, &mut rng, 100_000).unwrap();
            assert_eq!(profile_of(&s.partition, target.set()), target);
        }
    }

    #[test]
    fn rejection_gives_up_honestly() {
        // Parity-infeasible profile: no partition of 7 has power-sum pair (7, 18).
        let target = prof(&[1, 2], &[7, 18]);
        let dual = solved_dual(&[1, 2], &[7, 18]);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        match sample_uniform_exact(&target, &dual, &mut rng, 2_000) {
            Err(Error::MaxTriesExceeded { tries }) => assert_eq!(tries, 2_000),
            other => panic!("expected MaxTriesExceeded, got {other:?}"),
        }
    }

    #[test]
    fn uniformity_chi_square_on_partitions_of_six() {
        // p(6) = 11 classes; 11000 draws should spread uniformly.
        let target = prof(&[1], &[6]);
        let dual = solved_dual(&[1], &[6]);
        let classes = enumerate_profile_partitions(&target).unwrap();
        assert_eq!(classes.len(), 11);
        let mut counts: HashMap<Vec<(u64, u64)>, u64> = HashMap::new();
        let mut rng = ChaCha12Rng::seed_from_u64(20);
        const DRAWS: u64 = 11_000;
        for _ in 0..DRAWS {
            let s = sample_uniform_exact(&target, &dual, &mut rng, 1_000_000).unwrap();
            let key: Vec<(u64, u64)> = s.partition.multiplicities().collect();
            *counts.entry(key).or_default() += 1;
        }
        assert_eq!(counts.len(), 11, "all classes observed");
        let expected = DRAWS as f64 / 11.0;
        let stat: f64 = counts
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        let p_value = 1.0 - ChiSquared::new(10.0).unwrap().cdf(stat);
        assert!(p_value > 0.001, "chi-square stat {stat}, p {p_value}");
    }

    #[test]
    fn acceptance_rate_times_entropy_recovers_count() {
        // rate estimates μ(𝒫(N)); e^{H}·μ(𝒫(N)) = p(N).
        let target = prof(&[1], &[30]);
        let dual = solved_dual(&[1], &[30]);
        let h = entropy_mu(&dual).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(30);
        const TRIES: u64 = 200_000;
        let mut hits = 0u64;
        for _ in 0..TRIES {
            let lambda = sample_mu(&dual, &mut rng);
            if profile_of(&lambda, target.set()) == target {
                hits += 1;
            }
        }
        let rate = hits as f64 / TRIES as f64;
        let reconstructed = rate * h.exp();
        let exact = count_pn(30).to_f64().unwrap();
        let rel = (reconstructed - exact).abs() / exact;
        assert!(rel <= 0.10, "reconstructed {reconstructed} vs {exact}");
    }

    #[test]
    fn limit_shape_closed_form_single_power() {
        // J = {1}, β = π/√6: φ_∞(t) = −(√6/π)·log(1 − e^{−πt/√6}).
        let beta = DualVector::new(set(&[1]), vec![PI / 6f64.sqrt()]).unwrap();
        let grid = linear_grid(0.05, 3.0, 40).unwrap();
        let curve = limit_shape(&beta, &grid).unwrap();
        let scale = 6f64.sqrt() / PI;
        for (t, v) in curve.grid().iter().zip(curve.values()) {
            let expect = -scale * (-(-t / scale).exp()).ln_1p();
            assert!((v - expect).abs() < 1e-8, "t = {t}: {v} vs {expect}");
        }
    }

    #[test]
    fn limit_shape_has_vertical_asymptote_with_cubic_powers() {
        // Near 0 the density is ≈ 1/(β₁ s), so φ_∞ grows by ln(10)/β₁ per
        // decade without bound — the quantitative form of the vertical
        // asymptote at t = 0.
        let beta = DualVector::new(set(&[1, 2, 3]), vec![4.0, -8.5, 4.6]).unwrap();
        let grid = vec![1e-4, 1e-3, 1e-2];
        let curve = limit_shape(&beta, &grid).unwrap();
        let v = curve.values();
        let decade = 10f64.ln() / 4.0;
        assert!((v[0] - v[1] - decade).abs() < 1e-3, "{} vs {decade}", v[0] - v[1]);
        assert!((v[1] - v[2] - decade).abs() < 5e-3);
        assert!(v[0] > v[2] + 1.0, "unbounded growth toward 0");
    }

    #[test]
    fn limit_shape_derivative_is_negated_density() {
        let beta = DualVector::new(set(&[1, 2]), vec![4.0, 1.5]).unwrap();
        let h = 1e-3;
        for &t in &[0.3f64, 0.7, 1.2] {
            let grid = vec![t - h, t, t + h];
            let curve = limit_shape(&beta, &grid).unwrap();
            let fd = (curve.values()[2] - curve.values()[0]) / (2.0 * h);
            let density = -bose_mean(beta.exponent_at(t));
            assert!((fd - density).abs() < 1e-5, "t = {t}: {fd} vs {density}");
        }
    }

    #[test]
    fn empirical_shape_hand_cases() {
        let lambda = Partition::from_parts([3u64, 1]).unwrap();
        let grid = vec![0.5, 1.0, 2.0];
        let curve = empirical_shape(&lambda, 4, &grid).unwrap();
        // t = 1: parts ≥ 2 → only the 3 → 1/2.
        assert_eq!(curve.values()[1], 0.5);
        // √n·φ is a count at every grid point.
        for v in curve.values() {
            let c = v * 2.0;
            assert_eq!(c, c.round());
        }
        let empty = empirical_shape(&Partition::empty(), 4, &grid).unwrap();
        assert!(empty.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn shape_distance_hand_cases() {
        let grid = vec![0.5, 1.0, 1.5];
        let a = ShapeCurve::new(grid.clone(), vec![3.0, 2.0, 1.0]).unwrap();
        assert_eq!(shape_distance(&a, &a, (0.5, 1.5)).unwrap(), 0.0);
        let b = ShapeCurve::new(grid, vec![3.25, 2.25, 1.25]).unwrap();
        assert!((shape_distance(&a, &b, (0.5, 1.5)).unwrap() - 0.25).abs() < 1e-15);
        let short = ShapeCurve::new(vec![0.5, 1.0], vec![3.0, 2.0]).unwrap();
        match shape_distance(&a, &short, (0.5, 1.5)) {
            Err(Error::WindowUncovered { .. }) => {}
            other => panic!("expected WindowUncovered, got {other:?}"),
        }
    }

    #[test]
    fn diagram_area_matches_first_power_sum() {
        let n = 100u64;
        let target = prof(&[1], &[n]);
        let dual = solved_dual(&[1], &[n]);
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let s = sample_uniform_exact(&target, &dual, &mut rng, 200_000).unwrap();
        // Riemann sum of the empirical shape approximates area = N₁/n = 1.
        let sqrt_n = (n as f64).sqrt();
        let hi = (s.partition.largest_part().unwrap() as f64 + 1.0) / sqrt_n;
        let step = 1e-3;
        let points = (hi / step).ceil() as usize;
        let grid: Vec<f64> = (1..=points).map(|i| i as f64 * step).collect();
        let curve = empirical_shape(&s.partition, n, &grid).unwrap();
        let area: f64 = curve.values().iter().map(|v| v * step).sum();
        assert!((area - 1.0).abs() <= 2.0 / sqrt_n, "area {area}");
    }

    #[test]
    fn shape_distance_decreases_with_n() {
        let alpha = MomentVector::new(set(&[1]), vec![1.0]).unwrap();
        let cont = solve_beta(&alpha, &SolveOptions::default()).unwrap();
        let window = (0.5, 2.0);
        let grid = linear_grid(0.5, 2.0, 31).unwrap();
        let phi = limit_shape(&cont.beta, &grid).unwrap();
        let mut medians = Vec::new();
        for &n in &[100u64, 400] {
            let target = prof(&[1], &[n]);
            let dual = solved_dual(&[1], &[n]);
            let mut rng = ChaCha12Rng::seed_from_u64(100 + n);
            let mut dists: Vec<f64> = (0..30)
                .map(|_| {
                    let s = sample_uniform_exact(&target, &dual, &mut rng, 500_000).unwrap();
                    let emp = empirical_shape(&s.partition, n, &grid).unwrap();
                    shape_distance(&emp, &phi, window).unwrap()
                })
                .collect();
            dists.sort_by(f64::total_cmp);
            medians.push(dists[dists.len() / 2]);
        }
        assert!(
            medians[1] < medians[0],
            "median distances {medians:?} should decrease in n"
        );
    }

    #[test]
    fn mc_estimate_brackets_exact_hit_probability() {
        let target = prof(&[1], &[20]);
        let dual = solved_dual(&[1], &[20]);
        let exact = count_pn(20).to_f64().unwrap().ln()
            + log_atom_probability(&dual, &target).unwrap();
        let exact = exact.exp();
        let mc = mc_profile_probability(&dual, &target, 100_000, 77).unwrap();
        assert!(
            (mc.estimate - exact).abs() <= 3.0 * mc.standard_error,
            "{} vs {exact} ± {}",
            mc.estimate,
            mc.standard_error
        );
    }

    #[test]
    fn mc_is_deterministic_across_thread_counts() {
        let target = prof(&[1], &[20]);
        let dual = solved_dual(&[1], &[20]);
        let a = mc_profile_probability(&dual, &target, 20_000, 5).unwrap();
        std::env::set_var("MAXENT_PARTITIONS_THREADS", "1");
        let b = mc_profile_probability(&dual, &target, 20_000, 5).unwrap();
        std::env::remove_var("MAXENT_PARTITIONS_THREADS");
        assert_eq!(a.hits, b.hits);
    }

    #[test]
    fn mc_infeasible_profile_yields_zero() {
        let target = prof(&[1, 2], &[7, 18]);
        let dual = solved_dual(&[1, 2], &[7, 18]);
        let mc = mc_profile_probability(&dual, &target, 10_000, 1).unwrap();
        assert_eq!(mc.hits, 0);
        assert_eq!(mc.estimate, 0.0);
    }

    #[test]
    fn mc_rejects_undersized_runs() {
        let target = prof(&[1], &[20]);
        let dual = solved_dual(&[1], &[20]);
        assert!(mc_profile_probability(&dual, &target, 9_999, 0).is_err());
    }

    #[test]
    fn csv_round_trips_grid_and_values() {
        let curve = ShapeCurve::new(vec![0.5, 1.0], vec![1.25, 0.5]).unwrap();
        let csv = curve.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,phi"));
        assert_eq!(lines.next(), Some("0.5,1.25"));
        assert_eq!(lines.next(), Some("1,0.5"));
    }
}
