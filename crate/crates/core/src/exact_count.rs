//! Exact partition counting by dynamic programming.
//!
//! This is the ground truth the asymptotic machinery is validated against:
//! `count_exact` counts the partitions attaining a prescribed profile
//! exactly, with no approximation beyond arbitrary-precision arithmetic, and
//! `count_pn` independently reproduces the one-constraint case through the
//! classical pentagonal-number recurrence.
//!
//! The state space of the dynamic program is the lattice of profiles
//! dominated by the target.  Parts are added one value at a time in
//! increasing order, so each multiset of parts is built exactly once; since
//! a part of value `m` shifts every profile coordinate by `m^j > 0`, states
//! can be swept in ascending lexicographic order in place, which makes the
//! unbounded multiplicity of each part value come out for free.

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint, Sign};
use num::traits::{One, ToPrimitive, Zero};

use crate::domain::{Partition, Profile, ProfileSet};
use crate::error::{Error, Result};

/// States held by the counting table before the computation is refused.
/// Each state is a full profile vector, so this bounds memory, not time.
pub const MEMORY_CAP_STATES: usize = 20_000_000;

/// Partitions collected by [`enumerate_profile_partitions`] before the
/// enumeration is refused.
pub const ENUMERATION_CAP: usize = 200_000;

/// Largest `m` with `m^n ≤ x` (integer nth root).
fn integer_nth_root(x: u64, n: u32) -> u64 {
    debug_assert!(n >= 1);
    if n == 1 || x <= 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / n as f64).round() as u64 + 1;
    while r.checked_pow(n).map(|p| p > x).unwrap_or(true) {
        r -= 1;
    }
    r
}

/// Contribution of a part of value `m` to each profile coordinate, or `None`
/// if it exceeds the caps anywhere (including u64 overflow).
fn contribution(powers: &[u32], caps: &[u64], m: u64) -> Option<Vec<u64>> {
    let mut c = Vec::with_capacity(powers.len());
    for (&j, &cap) in powers.iter().zip(caps) {
        let v = m.checked_pow(j)?;
        if v > cap {
            return None;
        }
        c.push(v);
    }
    Some(c)
}

/// Number of partitions for every profile dominated by `caps`
/// (componentwise), keyed by profile vector in the order of `set`.  The
/// all-zero key holds 1 for the empty partition.
pub fn count_table_upto(
    set: &ProfileSet,
    caps: &[u64],
) -> Result<BTreeMap<Vec<u64>, BigUint>> {
    count_table_capped(set, caps, MEMORY_CAP_STATES)
}

pub(crate) fn count_table_capped(
    set: &ProfileSet,
    caps: &[u64],
    max_states: usize,
) -> Result<BTreeMap<Vec<u64>, BigUint>> {
    if caps.len() != set.len() {
        return Err(Error::InvalidInput(format!(
            "{} caps for {} powers",
            caps.len(),
            set.len()
        )));
    }
    let powers = set.powers();
    // Any positive power bounds the largest usable part.
    let max_part = powers
        .iter()
        .zip(caps)
        .filter(|(&j, _)| j >= 1)
        .map(|(&j, &cap)| integer_nth_root(cap, j))
        .min()
        .expect("profile set has a positive power");

    let mut table: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
    table.insert(vec![0; caps.len()], BigUint::one());

    for m in 1..=max_part {
        let Some(contrib) = contribution(powers, caps, m) else {
            continue;
        };
        // Ascending in-place sweep: a state written during the pass lies
        // lexicographically above the state it came from (every coordinate
        // of `contrib` is positive), so the cursor revisits it later in the
        // same pass — exactly the unbounded-multiplicity recurrence.
        let mut cursor: Option<Vec<u64>> = Some(vec![0; caps.len()]);
        while let Some(key) = cursor {
            let count = table.get(&key).expect("cursor on live key").clone();
            let mut succ = key.clone();
            let mut fits = true;
            for ((s, &c), &cap) in succ.iter_mut().zip(&contrib).zip(caps) {
                *s += c;
                if *s > cap {
                    fits = false;
                    break;
                }
            }
            if fits {
                *table.entry(succ).or_default() += count;
                if table.len() > max_states {
                    return Err(Error::MemoryCapExceeded {
                        states: table.len(),
                        cap: max_states,
                    });
                }
            }
            cursor = table
                .range((std::ops::Bound::Excluded(key), std::ops::Bound::Unbounded))
                .next()
                .map(|(k, _)| k.clone());
        }
    }
    Ok(table)
}

fn profile_as_u64(profile: &Profile) -> Result<Vec<u64>> {
    profile
        .values()
        .iter()
        .map(|v| {
            v.to_u64().ok_or_else(|| {
                Error::InvalidInput("profile entry too large for exact counting".into())
            })
        })
        .collect()
}

/// The number of partitions with exactly the given profile.
pub fn count_exact(profile: &Profile) -> Result<BigUint> {
    let caps = profile_as_u64(profile)?;
    let table = count_table_upto(profile.set(), &caps)?;
    Ok(table.get(&caps).cloned().unwrap_or_default())
}

/// The number of partitions of `n`, via the pentagonal-number recurrence
/// `p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)]`.
/// Algorithmically independent of the dynamic program, which makes the two
/// mutual cross-checks.
pub fn count_pn(n: u64) -> BigUint {
    let n = n as usize;
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * &p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * &p[m - g2];
            }
            k += 1;
        }
        p.push(acc);
    }
    let (sign, mag) = p[n].clone().into_parts();
    debug_assert_ne!(sign, Sign::Minus);
    mag
}

/// Every partition with exactly the given profile, in no particular order.
/// Intended for small profiles (uniformity tests, spot checks); refuses with
/// [`Error::EnumerationCapExceeded`] beyond [`ENUMERATION_CAP`] results.
pub fn enumerate_profile_partitions(profile: &Profile) -> Result<Vec<Partition>> {
    enumerate_capped(profile, ENUMERATION_CAP)
}

pub(crate) fn enumerate_capped(profile: &Profile, cap: usize) -> Result<Vec<Partition>> {
    let target = profile_as_u64(profile)?;
    let powers = profile.set().powers().to_vec();

    // Largest part allowed by what remains.
    fn bound(powers: &[u32], remaining: &[u64]) -> u64 {
        powers
            .iter()
            .zip(remaining)
            .filter(|(&j, _)| j >= 1)
            .map(|(&j, &r)| integer_nth_root(r, j))
            .min()
            .unwrap_or(0)
    }

    struct Dfs<'a> {
        powers: &'a [u32],
        out: Vec<Partition>,
        stack: Vec<u64>,
        cap: usize,
    }

    impl Dfs<'_> {
        fn go(&mut self, max_part: u64, remaining: &[u64]) -> Result<()> {
            if remaining.iter().all(|&r| r == 0) {
                if self.out.len() == self.cap {
                    return Err(Error::EnumerationCapExceeded { cap: self.cap });
                }
                let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
                for &m in &self.stack {
                    *counts.entry(m).or_default() += 1;
                }
                self.out.push(Partition::new(counts)?);
                return Ok(());
            }
            let hi = max_part.min(bound(self.powers, remaining));
            for m in (1..=hi).rev() {
                let Some(contrib) = contribution(self.powers, remaining, m) else {
                    continue;
                };
                // With parts capped at m, the smallest positive power can
                // gain at most m^j per part; a zeroth coordinate counts
                // parts, so it bounds how much is still reachable.
                if let Some(idx0) = self.powers.iter().position(|&j| j == 0) {
                    if let Some((idx, &j)) = self
                        .powers
                        .iter()
                        .enumerate()
                        .find(|(_, &j)| j >= 1)
                    {
                        let per_part = m.checked_pow(j);
                        let budget =
                            per_part.and_then(|p| p.checked_mul(remaining[idx0]));
                        match budget {
                            Some(b) if b < remaining[idx] => continue,
                            None => {}
                            _ => {}
                        }
                    }
                }
                let next: Vec<u64> = remaining
                    .iter()
                    .zip(&contrib)
                    .map(|(&r, &c)| r - c)
                    .collect();
                self.stack.push(m);
                self.go(m, &next)?;
                self.stack.pop();
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        powers: &powers,
        out: Vec::new(),
        stack: Vec::new(),
        cap,
    };
    dfs.go(u64::MAX, &target)?;
    Ok(dfs.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(js: &[u32]) -> ProfileSet {
        ProfileSet::new(js.iter().copied()).unwrap()
    }

    fn prof(js: &[u32], vals: &[u64]) -> Profile {
        let big = vals.iter().map(|&v| BigUint::from(v)).collect();
        Profile::from_power_sums(set(js), big).unwrap()
    }

    #[test]
    fn pentagonal_known_values() {
        for (n, want) in [
            (0u64, 1u64),
            (1, 1),
            (5, 7),
            (10, 42),
            (50, 204_226),
            (100, 190_569_292),
            (200, 3_972_999_029_388),
        ] {
            assert_eq!(count_pn(n), BigUint::from(want), "p({n})");
        }
    }

    #[test]
    fn dp_matches_pentagonal_recurrence() {
        for n in 0..=40u64 {
            let c = count_exact(&prof(&[1], &[n])).unwrap();
            assert_eq!(c, count_pn(n), "n = {n}");
        }
    }

    #[test]
    fn two_constraint_hand_counts() {
        // Worked by hand from the full partition lists of 4 and 6.
        for (n, n2, want) in [
            (4u64, 10u64, 1u64), // [3,1]
            (4, 9, 0),
            (6, 14, 1),  // [3,2,1]
            (6, 12, 2),  // [3,1,1,1], [2,2,2]
            (6, 36, 1),  // [6]
            (6, 35, 0),
        ] {
            let c = count_exact(&prof(&[1, 2], &[n, n2])).unwrap();
            assert_eq!(c, BigUint::from(want), "({n}, {n2})");
        }
    }

    #[test]
    fn three_constraint_hand_count() {
        // [3,2,1] is the only partition of 6 with square sum 14 and cube sum 36.
        let c = count_exact(&prof(&[1, 2, 3], &[6, 14, 36])).unwrap();
        assert_eq!(c, BigUint::one());
    }

    #[test]
    fn enumeration_agrees_with_dp() {
        // Two independent algorithms over a grid of two-constraint targets.
        for n in 1..=12u64 {
            for n2 in n..=n * n {
                let p = prof(&[1, 2], &[n, n2]);
                let listed = enumerate_profile_partitions(&p).unwrap();
                let counted = count_exact(&p).unwrap();
                assert_eq!(
                    BigUint::from(listed.len() as u64),
                    counted,
                    "({n}, {n2})"
                );
                for lambda in &listed {
                    assert_eq!(crate::domain::profile_of(lambda, &set(&[1, 2])), p);
                }
            }
        }
    }

    #[test]
    fn marginalizing_square_sums_recovers_pn() {
        let n = 12u64;
        let table = count_table_upto(&set(&[1, 2]), &[n, n * n]).unwrap();
        for m in 0..=n {
            let total: BigUint = table
                .iter()
                .filter(|(k, _)| k[0] == m)
                .map(|(_, v)| v)
                .sum();
            assert_eq!(total, count_pn(m), "marginal at {m}");
        }
    }

    #[test]
    fn zeroth_power_counts_parts() {
        // Partitions of 5 into exactly 2 parts: [4,1], [3,2].
        let c = count_exact(&prof(&[0, 1], &[2, 5])).unwrap();
        assert_eq!(c, BigUint::from(2u32));
        let listed = enumerate_profile_partitions(&prof(&[0, 1], &[2, 5])).unwrap();
        assert_eq!(listed.len(), 2);
    }

    #[test]
    fn memory_cap_is_enforced() {
        let err = count_table_capped(&set(&[1]), &[100_000], 50).unwrap_err();
        assert!(matches!(err, Error::MemoryCapExceeded { .. }));
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let err = enumerate_capped(&prof(&[1], &[60]), 100).unwrap_err();
        assert!(matches!(err, Error::EnumerationCapExceeded { cap: 100 }));
    }

    #[test]
    fn empty_profile_has_one_partition() {
        let c = count_exact(&Profile::from_power_sums(set(&[1]), vec![BigUint::zero()]).unwrap())
            .unwrap();
        assert_eq!(c, BigUint::one());
    }
}
