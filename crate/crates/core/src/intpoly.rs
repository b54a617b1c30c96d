//! Integer-valued polynomials supported on a power set, and the congruence
//! lattice they induce on profiles.
//!
//! A polynomial `q(x) = Σ_{j∈J} t_j x^j` with coefficients in `(−1/2, 1/2]`
//! that maps every integer to an integer produces a necessary condition on
//! attainable profiles: `Σ_j t_j N_j` must be an integer for `N` to be the
//! profile of any partition (group the contribution of each part).  The set
//! `Q_J` of all such polynomials is finite, and the fraction of profile space
//! it admits is exactly `1/|Q_J|`.
//!
//! Enumeration walks the binomial basis: every integer-valued polynomial of
//! degree ≤ d is `Σ_i s_i·C(x, i)` with integer `s_i`, and only `s_i mod i!`
//! matters modulo polynomials with integer coefficients.  We expand candidates
//! into monomials with signed Stirling numbers of the first kind (exact
//! rationals), discard those with a fractional coefficient at a power outside
//! `J`, reduce the surviving coefficients into `(−1/2, 1/2]`, and dedupe.
//! Choosing residues from the top degree down lets a violated out-of-`J`
//! coefficient prune the whole subtree, which keeps gappy power sets cheap.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{BigInt, BigUint, One, Signed, ToPrimitive, Zero};

use crate::domain::{Profile, ProfileSet};
use crate::error::{Error, Result};

/// Enumeration refuses degrees past this point; the candidate count is
/// `Π_{i≤d} i!`, which is already ~2.5·10⁷ at d = 6 (the set itself is that
/// large for the full power set — the blow-up is mathematical, not an
/// implementation artifact).
pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// One integer-valued polynomial `Σ_{j∈J} t_j x^j`, coefficients reduced into
/// `(−1/2, 1/2]` and stored aligned with the power set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntValuedPoly {
    set: ProfileSet,
    coeffs: Vec<BigRational>,
}

impl IntValuedPoly {
    pub fn set(&self) -> &ProfileSet {
        &self.set
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact evaluation at an integer argument.
    pub fn eval(&self, m: &BigInt) -> BigRational {
        let mut acc = BigRational::zero();
        for (&j, c) in self.set.powers().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let monomial = BigRational::from_integer(m.pow(j));
            acc += c * monomial;
        }
        acc
    }

    /// `"num/den"` strings per power, fully reduced, e.g. `["1/2", "1/2"]`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

impl std::fmt::Display for IntValuedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&j, c) in self.set.powers().iter().zip(&self.coeffs).rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                1 => {
                    if a.is_one() {
                        write!(f, "x")?
                    } else {
                        write!(f, "{a}·x")?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "x^{j}")?
                    } else {
                        write!(f, "{a}·x^{j}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// The full set `Q_J` plus a fast modular form of the membership test.
#[derive(Clone, Debug)]
pub struct FeasibilityLattice {
    set: ProfileSet,
    polys: Vec<IntValuedPoly>,
    // Per poly: (D, numerators of t_j·D reduced mod D).  Membership of N is
    // Σ_j n_j·N_j ≡ 0 (mod D) — exact integer arithmetic, no rationals.
    modular: Vec<(u64, Vec<u64>)>,
}

impl FeasibilityLattice {
    pub fn set(&self) -> &ProfileSet {
        &self.set
    }

    pub fn polys(&self) -> &[IntValuedPoly] {
        &self.polys
    }

    /// `|Q_J|`; the admissible fraction of profile space is its reciprocal.
    pub fn cardinality(&self) -> usize {
        self.polys.len()
    }

    fn feasible_residues(&self, residues_for: impl Fn(u64) -> Vec<u64>) -> bool {
        for (d, nums) in &self.modular {
            if *d == 1 {
                continue; // zero polynomial (or all-integer coefficients)
            }
            let n_mod = residues_for(*d);
            let mut acc = 0u64;
            for (nj, rj) in nums.iter().zip(&n_mod) {
                acc = (acc + nj * rj) % d;
            }
            if acc != 0 {
                return false;
            }
        }
        true
    }

    fn feasible_u64(&self, coords: &[u64]) -> bool {
        self.feasible_residues(|d| coords.iter().map(|&c| c % d).collect())
    }
}

fn stirling1_rows(d: usize) -> Vec<Vec<BigInt>> {
    // Signed Stirling numbers of the first kind: x(x−1)⋯(x−i+1) = Σ_k s(i,k)x^k,
    // s(i+1,k) = s(i,k−1) − i·s(i,k).
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 0..d {
        let prev = &rows[i];
        let mut next = vec![BigInt::zero(); i + 2];
        for k in 0..=i {
            let shifted = prev[k].clone();
            next[k + 1] += shifted;
            next[k] -= &prev[k] * BigInt::from(i);
        }
        rows.push(next);
    }
    rows
}

/// Reduce a rational into the half-open window `(−1/2, 1/2]`.
fn reduce_to_window(t: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let shift = (t - half).ceil();
    t - shift
}

/// Enumerate `Q_J`: all integer-valued polynomials supported on `set` with
/// coefficients in `(−1/2, 1/2]`.
pub fn enumerate_qj(set: &ProfileSet, degree_cap: u32) -> Result<FeasibilityLattice> {
    let d = set.max_power();
    if d > degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: d,
            cap: degree_cap,
        });
    }
    let d = d as usize;
    let stirling = stirling1_rows(d);
    let factorials: Vec<BigInt> = {
        let mut f = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            f[i] = &f[i - 1] * BigInt::from(i);
        }
        f
    };

    // basis[i][k] = coefficient of x^k in C(x, i) = s(i,k)/i!.
    let basis: Vec<Vec<BigRational>> = (0..=d)
        .map(|i| {
            (0..=d)
                .map(|k| {
                    if k <= i {
                        BigRational::new(stirling[i][k].clone(), factorials[i].clone())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut found: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    // DFS from degree d down to 1; `partial[k]` holds Σ_{i>level} s_i·basis[i][k].
    // Once level i is chosen, coefficients at powers ≥ i are final, so any
    // fractional coefficient at an out-of-J power ≥ i kills the subtree.
    struct Dfs<'a> {
        set: &'a ProfileSet,
        basis: &'a [Vec<BigRational>],
        found: &'a mut BTreeSet<Vec<BigRational>>,
        d: usize,
    }
    impl Dfs<'_> {
        fn go(&mut self, level: usize, partial: &[BigRational]) {
            if level == 0 {
                let reduced: Vec<BigRational> = self
                    .set
                    .powers()
                    .iter()
                    .map(|&j| reduce_to_window(&partial[j as usize]))
                    .collect();
                self.found.insert(reduced);
                return;
            }
            let mut fact_level = BigInt::one();
            for i in 2..=level {
                fact_level *= BigInt::from(i);
            }
            let mut s = BigInt::zero();
            let mut cur = partial.to_vec();
            while s < fact_level {
                // cur = partial + s·C(x, level); incremental add keeps this cheap.
                if !s.is_zero() {
                    for k in 0..=level {
                        if !self.basis[level][k].is_zero() {
                            cur[k] += &self.basis[level][k];
                        }
                    }
                }
                // Coefficients at powers ≥ level are now final.
                let ok = (level..=self.d).all(|k| {
                    self.set.contains(k as u32) || cur[k].denom().is_one()
                });
                if ok {
                    self.go(level - 1, &cur);
                }
                s += BigInt::one();
            }
        }
    }

    let zero = vec![BigRational::zero(); d + 1];
    Dfs {
        set,
        basis: &basis,
        found: &mut found,
        d,
    }
    .go(d, &zero);

    let polys: Vec<IntValuedPoly> = found
        .into_iter()
        .map(|coeffs| IntValuedPoly {
            set: set.clone(),
            coeffs,
        })
        .collect();

    // Modular form: D = lcm of denominators (each divides d!), numerators of
    // t_j·D reduced into [0, D).
    let modular = polys
        .iter()
        .map(|p| {
            let mut dd = BigInt::one();
            for c in &p.coeffs {
                dd = num::integer::lcm(dd, c.denom().clone());
            }
            let d_u64 = dd.to_u64().expect("lcm of denominators ≤ max_power!");
            let nums = p
                .coeffs
                .iter()
                .map(|c| {
                    let n = c.numer() * (&dd / c.denom());
                    let r = ((n % &dd) + &dd) % &dd;
                    r.to_u64().unwrap()
                })
                .collect();
            (d_u64, nums)
        })
        .collect();

    Ok(FeasibilityLattice {
        set: set.clone(),
        polys,
        modular,
    })
}

/// Necessary condition for `profile` to be attainable: every lattice
/// polynomial must evaluate the profile to an integer, `Σ_j t_j N_j ∈ ℤ`.
pub fn is_n_feasible(profile: &Profile, lattice: &FeasibilityLattice) -> Result<bool> {
    if profile.set() != lattice.set() {
        return Err(Error::InvalidInput(
            "profile and lattice use different power sets".into(),
        ));
    }
    let values = profile.values();
    Ok(lattice.feasible_residues(|d| {
        let dd = BigUint::from(d);
        values
            .iter()
            .map(|v| (v % &dd).to_u64().unwrap())
            .collect()
    }))
}

/// Exact admissible density over the box `{0, …, box_side−1}^|J|`.
///
/// Equals `1/|Q_J|` whenever `box_side` is a multiple of every coefficient
/// denominator.  The scan is capped at 10⁷ lattice points.
pub fn nt_density(lattice: &FeasibilityLattice, box_side: u64) -> Result<BigRational> {
    const CAP: u128 = 10_000_000;
    if box_side == 0 {
        return Err(Error::InvalidInput("box side must be >= 1".into()));
    }
    let dims = lattice.set().len() as u32;
    let points = (box_side as u128)
        .checked_pow(dims)
        .ok_or(Error::BoxCapExceeded {
            points: u128::MAX,
            cap: CAP,
        })?;
    if points > CAP {
        return Err(Error::BoxCapExceeded { points, cap: CAP });
    }

    let mut coords = vec![0u64; dims as usize];
    let mut admitted: u64 = 0;
    loop {
        if lattice.feasible_u64(&coords) {
            admitted += 1;
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == coords.len() {
                return Ok(BigRational::new(
                    BigInt::from(admitted),
                    BigInt::from(points),
                ));
            }
            coords[i] += 1;
            if coords[i] < box_side {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(js: &[u32]) -> ProfileSet {
        ProfileSet::new(js.iter().copied()).unwrap()
    }

    fn full_set(d: u32) -> ProfileSet {
        ProfileSet::new(1..=d).unwrap()
    }

    #[test]
    fn stirling_first_kind_table() {
        let rows = stirling1_rows(4);
        // x(x−1)(x−2) = x³ − 3x² + 2x
        assert_eq!(rows[3][1], BigInt::from(2));
        assert_eq!(rows[3][2], BigInt::from(-3));
        assert_eq!(rows[3][3], BigInt::from(1));
        // x(x−1)(x−2)(x−3) = x⁴ − 6x³ + 11x² − 6x
        assert_eq!(rows[4][1], BigInt::from(-6));
        assert_eq!(rows[4][2], BigInt::from(11));
        assert_eq!(rows[4][3], BigInt::from(-6));
    }

    #[test]
    fn single_power_has_only_zero() {
        let lat = enumerate_qj(&set(&[1]), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(lat.cardinality(), 1);
        assert!(lat.polys()[0].is_zero());
    }

    #[test]
    fn full_sets_match_factorial_products() {
        // |Q_[d]| = Π_{j≤d} j! = 1, 2, 12, 288.
        for (d, expect) in [(1u32, 1usize), (2, 2), (3, 12), (4, 288)] {
            let lat = enumerate_qj(&full_set(d), DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(lat.cardinality(), expect, "d = {d}");
        }
    }

    #[test]
    fn pair_lattice_is_triangular_polynomial() {
        let lat = enumerate_qj(&set(&[1, 2]), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(lat.cardinality(), 2);
        let nonzero = lat.polys().iter().find(|p| !p.is_zero()).unwrap();
        // (x² + x)/2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(nonzero.coeffs(), &[half.clone(), half]);
    }

    #[test]
    fn zero_power_adds_nothing() {
        // Constant terms must vanish, so J = {0,1} collapses to {0}.
        let lat = enumerate_qj(&set(&[0, 1]), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(lat.cardinality(), 1);
        // And a lone square-sum constraint admits everything.
        let lat = enumerate_qj(&set(&[2]), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(lat.cardinality(), 1);
    }

    #[test]
    fn enumerated_polys_are_integer_valued() {
        for js in [vec![1u32, 2], vec![1, 2, 3], vec![2, 4], vec![1, 3]] {
            let s = set(&js);
            let lat = enumerate_qj(&s, DEFAULT_DEGREE_CAP).unwrap();
            let d = s.max_power() as i64;
            for p in lat.polys() {
                for m in -d..=2 * d {
                    let v = p.eval(&BigInt::from(m));
                    assert!(
                        v.denom().is_one(),
                        "{p} not integral at {m}: {v}"
                    );
                }
            }
        }
    }

    /// Independent oracle: scan *all* coefficient vectors with denominators
    /// dividing d! and values in (−1/2, 1/2], keeping those integer-valued at
    /// d+1 consecutive points (which suffices for degree ≤ d).  Pure modular
    /// arithmetic: q = Σ a_j x^j / d! is integral at m iff Σ a_j m^j ≡ 0 (d!).
    fn brute_force_count(js: &[u32]) -> usize {
        let d = *js.iter().max().unwrap();
        let df: u64 = (1..=d as u64).product();
        // numerators a with a/d! ∈ (−1/2, 1/2], represented mod d!.
        let numerators: Vec<u64> = (0..df).collect();
        let mut count = 0usize;
        let dims = js.len();
        let mut idx = vec![0usize; dims];
        'outer: loop {
            let ok = (0..=d as u64).all(|m| {
                let mut acc = 0u64;
                for (i, &j) in js.iter().enumerate() {
                    let mj = m.pow(j) % df;
                    acc = (acc + numerators[idx[i]] * mj) % df;
                }
                acc == 0
            });
            if ok {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == dims {
                    break 'outer;
                }
                idx[i] += 1;
                if idx[i] < numerators.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
        count
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for js in [
            vec![1u32, 2],
            vec![1, 2, 3],
            vec![1, 3],
            vec![2, 3],
            vec![1, 4],
            vec![2, 4],
            vec![1, 2, 4],
            vec![1, 2, 3, 4],
        ] {
            let lat = enumerate_qj(&set(&js), DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(
                lat.cardinality(),
                brute_force_count(&js),
                "J = {js:?}"
            );
        }
    }

    #[test]
    fn degree_cap_enforced() {
        let r = enumerate_qj(&set(&[1, 9]), DEFAULT_DEGREE_CAP);
        assert!(matches!(r, Err(Error::DegreeCapExceeded { degree: 9, .. })));
    }

    #[test]
    fn feasibility_parity_example() {
        // Under J = {1,2}: N₁ and N₂ must share parity.
        let s = set(&[1, 2]);
        let lat = enumerate_qj(&s, DEFAULT_DEGREE_CAP).unwrap();
        let p34 = Profile::from_u64(s.clone(), &[3, 4]).unwrap();
        let p410 = Profile::from_u64(s.clone(), &[4, 10]).unwrap();
        assert!(!is_n_feasible(&p34, &lat).unwrap());
        assert!(is_n_feasible(&p410, &lat).unwrap());
        // J = {1}: everything is admissible.
        let s1 = set(&[1]);
        let lat1 = enumerate_qj(&s1, DEFAULT_DEGREE_CAP).unwrap();
        for n in 1..=7u64 {
            let p = Profile::from_u64(s1.clone(), &[n]).unwrap();
            assert!(is_n_feasible(&p, &lat1).unwrap());
        }
    }

    #[test]
    fn density_examples() {
        let lat12 = enumerate_qj(&set(&[1, 2]), DEFAULT_DEGREE_CAP).unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(nt_density(&lat12, 50).unwrap(), half);

        let lat1 = enumerate_qj(&set(&[1]), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(nt_density(&lat1, 10).unwrap(), BigRational::one());

        // Box side a multiple of the lcm of denominators -> exactly 1/|Q_J|.
        let lat123 = enumerate_qj(&set(&[1, 2, 3]), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(lat123.cardinality(), 12);
        let twelfth = BigRational::new(BigInt::one(), BigInt::from(12));
        assert_eq!(nt_density(&lat123, 36).unwrap(), twelfth);
    }

    #[test]
    fn density_box_cap() {
        let lat = enumerate_qj(&set(&[1, 2, 3]), DEFAULT_DEGREE_CAP).unwrap();
        assert!(matches!(
            nt_density(&lat, 100_000),
            Err(Error::BoxCapExceeded { .. })
        ));
    }

    #[test]
    fn display_and_strings() {
        let lat = enumerate_qj(&set(&[1, 2]), DEFAULT_DEGREE_CAP).unwrap();
        let q = lat.polys().iter().find(|p| !p.is_zero()).unwrap();
        assert_eq!(q.to_string(), "1/2·x^2 + 1/2·x");
        assert_eq!(q.coeff_strings(), vec!["1/2", "1/2"]);
    }
}
