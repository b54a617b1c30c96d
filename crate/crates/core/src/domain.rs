//! Core vocabulary shared by every other module: power sets, profiles,
//! moment vectors, and partitions.
//!
//! A *power set* `J` is a finite set of non-negative integer exponents with at
//! least one positive member.  The *profile* of a partition λ records the power
//! sums `N_j = Σ_{x ∈ λ} x^j` for each `j ∈ J`; under `J = {1}` this is just
//! the number being partitioned, under `J = {0}` the number of parts.  Profiles
//! are exact (arbitrary-precision) integers; moment vectors are their real,
//! `n`-rescaled counterparts.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigUint, One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};

/// A finite set of non-negative integer powers, sorted ascending.
///
/// Invariants: powers are distinct, sorted, and at least one is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileSet {
    powers: Vec<u32>,
}

impl ProfileSet {
    pub fn new<I: IntoIterator<Item = u32>>(powers: I) -> Result<Self> {
        let mut powers: Vec<u32> = powers.into_iter().collect();
        powers.sort_unstable();
        powers.dedup();
        if powers.is_empty() {
            return Err(Error::InvalidInput("power set is empty".into()));
        }
        if *powers.last().unwrap() == 0 {
            return Err(Error::InvalidInput(
                "power set needs at least one positive power".into(),
            ));
        }
        Ok(ProfileSet { powers })
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn contains(&self, j: u32) -> bool {
        self.powers.binary_search(&j).is_ok()
    }

    pub fn index_of(&self, j: u32) -> Option<usize> {
        self.powers.binary_search(&j).ok()
    }

    /// Smallest power in the set (written `j_*` in the asymptotic formulas).
    pub fn min_power(&self) -> u32 {
        self.powers[0]
    }

    /// Largest power in the set.
    pub fn max_power(&self) -> u32 {
        *self.powers.last().unwrap()
    }
}

impl fmt::Display for ProfileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.powers.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical JSON form: a sorted array of powers.
impl Serialize for ProfileSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.powers.serialize(serializer)
    }
}

/// An exact vector of power sums aligned with a [`ProfileSet`].
///
/// Entries are arbitrary-precision naturals.  Targets built with
/// [`Profile::new`] must be strictly positive in every coordinate; profiles
/// *computed* from a partition (see [`profile_of`]) may contain zeros — the
/// empty partition has the zero profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    set: ProfileSet,
    values: Vec<BigUint>,
}

impl Profile {
    /// A target profile: one strictly positive entry per power.
    pub fn new(set: ProfileSet, values: Vec<BigUint>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::InvalidInput(format!(
                "profile has {} entries for {} powers",
                values.len(),
                set.len()
            )));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidInput(
                "target profile entries must be >= 1".into(),
            ));
        }
        Ok(Profile { set, values })
    }

    /// A computed vector of power sums; zeros allowed.
    pub fn from_power_sums(set: ProfileSet, values: Vec<BigUint>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::InvalidInput(format!(
                "profile has {} entries for {} powers",
                values.len(),
                set.len()
            )));
        }
        Ok(Profile { set, values })
    }

    pub fn from_u64(set: ProfileSet, values: &[u64]) -> Result<Self> {
        let v = values.iter().map(|&x| BigUint::from(x)).collect();
        Profile::new(set, v)
    }

    pub fn set(&self) -> &ProfileSet {
        &self.set
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, j: u32) -> Option<&BigUint> {
        self.set.index_of(j).map(|i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Entries as `u64`, or `None` if any entry overflows.
    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.values.iter().map(u64::try_from).map(|r| r.ok()).collect()
    }

    /// Entries as `f64` (exact for values below 2^53).
    pub fn to_f64_vec(&self) -> Vec<f64> {
        use num::ToPrimitive;
        self.values.iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY)).collect()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Canonical JSON form: `{"j": "<decimal>"}` with string keys sorted by power
/// and decimal-string values (entries routinely exceed 2^53).
impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (j, v) in self.set.powers().iter().zip(&self.values) {
            map.serialize_entry(&j.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

/// A real moment vector `(α_j)_{j ∈ J}`, strictly positive and finite.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector {
    set: ProfileSet,
    values: Vec<f64>,
}

impl MomentVector {
    pub fn new(set: ProfileSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::InvalidInput(format!(
                "moment vector has {} entries for {} powers",
                values.len(),
                set.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidInput(
                "moments must be finite and strictly positive".into(),
            ));
        }
        Ok(MomentVector { set, values })
    }

    pub fn set(&self) -> &ProfileSet {
        &self.set
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, j: u32) -> Option<f64> {
        self.set.index_of(j).map(|i| self.values[i])
    }
}

/// Canonical JSON form: `{"j": value}` with string keys sorted by power.
impl Serialize for MomentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (j, v) in self.set.powers().iter().zip(&self.values) {
            map.serialize_entry(&j.to_string(), v)?;
        }
        map.end()
    }
}

/// An integer partition stored as a multiplicity map `part -> multiplicity`.
///
/// Parts are strictly positive; zero multiplicities are never stored, so two
/// equal partitions always compare equal structurally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: BTreeMap<u64, u64>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Build from `(part, multiplicity)` pairs; zero multiplicities are
    /// dropped, duplicate parts accumulate.
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::InvalidInput("partition parts must be >= 1".into()));
            }
            if mult > 0 {
                *parts.entry(part).or_insert(0) += mult;
            }
        }
        Ok(Partition { parts })
    }

    pub fn from_parts<I: IntoIterator<Item = u64>>(parts: I) -> Result<Self> {
        Partition::new(parts.into_iter().map(|p| (p, 1)))
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn multiplicities(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.parts.iter().map(|(&p, &m)| (p, m))
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.parts.get(&part).copied().unwrap_or(0)
    }

    pub fn largest_part(&self) -> Option<u64> {
        self.parts.keys().next_back().copied()
    }

    /// Total number of parts, counted with multiplicity.
    pub fn num_parts(&self) -> u64 {
        self.parts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiset union: multiplicities add.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        for (&p, &m) in &other.parts {
            *parts.entry(p).or_insert(0) += m;
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Conventional notation: parts descending, exponents for repeats.
        write!(f, "[")?;
        for (i, (&p, &m)) in self.parts.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        write!(f, "]")
    }
}

/// Canonical JSON form: `{"part": multiplicity}` with string keys sorted
/// numerically by part.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.parts.len()))?;
        for (&p, &m) in &self.parts {
            map.serialize_entry(&p.to_string(), &m)?;
        }
        map.end()
    }
}

/// Exact profile of a partition: `N_j = Σ_k a_k k^j` over stored parts `k`
/// with multiplicity `a_k`.  The empty partition maps to the zero vector.
pub fn profile_of(lambda: &Partition, set: &ProfileSet) -> Profile {
    let mut sums = vec![BigUint::zero(); set.len()];
    for (part, mult) in lambda.multiplicities() {
        let p = BigUint::from(part);
        let m = BigUint::from(mult);
        for (i, &j) in set.powers().iter().enumerate() {
            // part^0 = 1 counts parts; exact in BigUint throughout.
            let pw = if j == 0 { BigUint::one() } else { p.pow(j) };
            sums[i] += &m * pw;
        }
    }
    Profile::from_power_sums(set.clone(), sums).expect("lengths match by construction")
}

/// The scaled target `N_j(α, n) = ⌊α_j · n^{(j+1)/2}⌋`.
///
/// Computed in binary64: `n^{(j+1)/2}` is evaluated as an integer power times
/// `√n` so that even exponents stay exact.  Fails with [`Error::ZeroEntry`]
/// when a coordinate truncates to zero (the scale `n` is too small for α).
pub fn scaled_profile(alpha: &MomentVector, n: u64) -> Result<Profile> {
    if n == 0 {
        return Err(Error::InvalidInput("scale n must be >= 1".into()));
    }
    let nf = n as f64;
    let mut values = Vec::with_capacity(alpha.set().len());
    for (&j, &a) in alpha.set().powers().iter().zip(alpha.values()) {
        // n^{(j+1)/2} = n^{(j+1)/2} exactly when j is odd, else n^{j/2}·√n.
        let e = j + 1;
        let x = if e % 2 == 0 {
            a * nf.powi((e / 2) as i32)
        } else {
            a * nf.powi((e / 2) as i32) * nf.sqrt()
        };
        if !x.is_finite() {
            return Err(Error::InvalidInput(format!(
                "scaled profile overflows f64 at power {j}"
            )));
        }
        if x < 1.0 {
            return Err(Error::ZeroEntry { j, n });
        }
        values.push(f64_floor_to_biguint(x));
    }
    Profile::new(alpha.set().clone(), values)
}

/// Round to 12 significant decimal digits.  All serialized numbers pass
/// through this so that reports are byte-identical across runs with the
/// same configuration and seed.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float re-parses")
}

fn f64_floor_to_biguint(x: f64) -> BigUint {
    debug_assert!(x >= 1.0 && x.is_finite());
    let f = x.floor();
    if f < 2f64.powi(64) {
        BigUint::from(f as u64)
    } else {
        // Exact: a finite f64 >= 2^64 is an integer with known binary exponent.
        let bits = f.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64 - 1075;
        let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
        BigUint::from(mant) << (exp as u32)
    }
}
