//! Strict partitions and signed Grassmannian permutations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts {0:?} are not strictly decreasing positive integers")]
    NotStrict(Vec<u32>),
    #[error("partition {lambda} does not fit in SP({n})")]
    OutOfRange { lambda: String, n: u32 },
    #[error("cannot parse partition {0:?}: expected comma-separated integers")]
    Parse(String),
    #[error("malformed signed permutation {0:?}")]
    MalformedPermutation(Vec<i32>),
    #[error("type D permutation {0:?} has an odd number of sign changes")]
    Parity(Vec<i32>),
}

/// Lie type of the isotropic Grassmannian: C for LG(n), D for OG(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    C,
    D,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieType::C => "C",
            LieType::D => "D",
        })
    }
}

/// λ₁ > λ₂ > … > λ_k > 0, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
        if ok {
            Ok(StrictPartition(parts))
        } else {
            Err(PartitionError::NotStrict(parts))
        }
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            StrictPartition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, n: u32) -> bool {
        self.first() <= n
    }

    pub fn check_fits(&self, n: u32) -> Result<(), PartitionError> {
        if self.fits(n) {
            Ok(())
        } else {
            Err(PartitionError::OutOfRange { lambda: self.to_string(), n })
        }
    }

    pub fn contains(&self, o: &StrictPartition) -> bool {
        o.len() <= self.len() && o.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn padded(&self) -> PaddedPartition {
        let mut v = self.0.clone();
        if v.len() % 2 == 1 {
            v.push(0);
        }
        PaddedPartition(v)
    }

    /// Parts after dropping the first `k`.
    pub fn drop_front(&self, k: usize) -> StrictPartition {
        StrictPartition(self.0.iter().skip(k).copied().collect())
    }

    /// Canonical order: weight ascending, then lexicographically descending.
    pub fn canonical_cmp(&self, o: &StrictPartition) -> Ordering {
        self.weight().cmp(&o.weight()).then_with(|| o.0.cmp(&self.0))
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, o: &Self) -> Ordering {
        self.canonical_cmp(o)
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Self::new(parts)
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        StrictPartition::new(v).map_err(serde::de::Error::custom)
    }
}

/// A strict partition padded with one trailing zero when its length is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedPartition(Vec<u32>);

impl PaddedPartition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// r, always even.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All 2ⁿ strict partitions with λ₁ ≤ n, in canonical order.
pub fn enumerate_sp(n: u32) -> Vec<StrictPartition> {
    let mut out: Vec<StrictPartition> = (0u64..(1u64 << n))
        .map(|mask| StrictPartition((1..=n).rev().filter(|i| mask >> (i - 1) & 1 == 1).collect()))
        .collect();
    out.sort();
    out
}

/// Strict μ ⊃ λ inside SP(n) with one more box.
pub fn add_box_successors(lambda: &StrictPartition, n: u32) -> Vec<StrictPartition> {
    let p = lambda.parts();
    let mut out = Vec::new();
    for i in 0..p.len() {
        let v = p[i] + 1;
        if v <= n && (i == 0 || p[i - 1] > v) {
            let mut m = p.to_vec();
            m[i] = v;
            out.push(StrictPartition(m));
        }
    }
    if n >= 1 && p.last().is_none_or(|&l| l > 1) {
        let mut m = p.to_vec();
        m.push(1);
        out.push(StrictPartition(m));
    }
    out.sort();
    out
}

/// Strict μ ⊂ λ with one box less.
pub fn remove_box_predecessors(lambda: &StrictPartition) -> Vec<StrictPartition> {
    let p = lambda.parts();
    let mut out = Vec::new();
    for i in 0..p.len() {
        let v = p[i] - 1;
        if v == 0 {
            if i + 1 == p.len() {
                out.push(StrictPartition(p[..i].to_vec()));
            }
        } else if i + 1 == p.len() || p[i + 1] < v {
            let mut m = p.to_vec();
            m[i] = v;
            out.push(StrictPartition(m));
        }
    }
    out.sort();
    out
}

/// Signed permutation in one-line notation, values in ±1..±m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub lie: LieType,
    values: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(lie: LieType, values: Vec<i32>) -> Result<Self, PartitionError> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for &v in &values {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a] {
                return Err(PartitionError::MalformedPermutation(values));
            }
            seen[a] = true;
        }
        if lie == LieType::D && values.iter().filter(|&&v| v < 0).count() % 2 == 1 {
            return Err(PartitionError::Parity(values));
        }
        Ok(SignedPermutation { lie, values })
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn identity(lie: LieType, m: usize) -> Self {
        SignedPermutation { lie, values: (1..=m as i32).collect() }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .values
            .iter()
            .map(|&v| if v < 0 { format!("{}\u{305}", -v) } else { v.to_string() })
            .collect();
        f.write_str(&s.join(" "))
    }
}

/// Grassmannian permutation whose barred values are λ (type C) or λ + 1
/// together with 1 when ℓ(λ) is odd (type D, n+1 letters).
pub fn partition_to_perm(lambda: &StrictPartition, n: u32, lie: LieType) -> Result<SignedPermutation, PartitionError> {
    lambda.check_fits(n)?;
    let (m, mut barred): (u32, Vec<u32>) = match lie {
        LieType::C => (n, lambda.parts().to_vec()),
        LieType::D => (n + 1, lambda.parts().iter().map(|p| p + 1).collect()),
    };
    if lie == LieType::D && lambda.len() % 2 == 1 {
        barred.push(1);
    }
    let mut values: Vec<i32> = barred.iter().map(|&b| -(b as i32)).collect();
    values.extend((1..=m).filter(|v| !barred.contains(v)).map(|v| v as i32));
    SignedPermutation::new(lie, values)
}

pub fn perm_to_partition(w: &SignedPermutation) -> Result<StrictPartition, PartitionError> {
    let vals = w.values();
    let k = vals.iter().take_while(|&&v| v < 0).count();
    let bars: Vec<u32> = vals[..k].iter().map(|v| v.unsigned_abs()).collect();
    let rest = &vals[k..];
    let grassmannian = bars.windows(2).all(|p| p[0] > p[1])
        && rest.iter().all(|&v| v > 0)
        && rest.windows(2).all(|p| p[0] < p[1]);
    if !grassmannian {
        return Err(PartitionError::MalformedPermutation(vals.to_vec()));
    }
    let parts = match w.lie {
        LieType::C => bars,
        LieType::D => {
            let mut b = bars;
            let has_one = b.last() == Some(&1);
            if has_one {
                b.pop();
            }
            if has_one != (b.len() % 2 == 1) {
                return Err(PartitionError::MalformedPermutation(vals.to_vec()));
            }
            b.into_iter().map(|v| v - 1).collect()
        }
    };
    StrictPartition::new(parts)
}

/// Length in the Weyl group of type B/C (inv + neg + nsp) or D (inv + nsp).
pub fn coxeter_length(w: &SignedPermutation) -> u32 {
    let v = w.values();
    let mut inv = 0;
    let mut nsp = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
            if v[i] + v[j] < 0 {
                nsp += 1;
            }
        }
    }
    let neg = v.iter().filter(|&&x| x < 0).count() as u32;
    match w.lie {
        LieType::C => inv + neg + nsp,
        LieType::D => inv + nsp,
    }
}
