use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite divisor-closed set of positive integers, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct TruncationSet(Vec<u64>);

impl TruncationSet {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let ok = elements.iter().all(|&n| {
            n > 0 && divisors(n).iter().all(|d| elements.binary_search(d).is_ok())
        });
        if !ok {
            return Err(Error::NotDivisorClosed(elements));
        }
        Ok(TruncationSet(elements))
    }

    /// `⟨n⟩`, the divisors of `n`.
    pub fn divisors_of(n: u64) -> Self {
        assert!(n > 0, "⟨0⟩ is not a truncation set");
        TruncationSet(divisors(n))
    }

    /// `{1, ..., n}`.
    pub fn initial(n: u64) -> Self {
        TruncationSet((1..=n).collect())
    }

    pub fn empty() -> Self {
        TruncationSet(Vec::new())
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest element, or 0 for the empty set.
    pub fn max(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn position(&self, n: u64) -> Option<usize> {
        self.0.binary_search(&n).ok()
    }

    /// `S/r = {n : rn ∈ S}`; again divisor-closed.
    pub fn quotient(&self, r: u64) -> Self {
        TruncationSet(
            self.0
                .iter()
                .filter(|&&n| n % r == 0)
                .map(|&n| n / r)
                .collect(),
        )
    }

    pub fn is_subset_of(&self, other: &TruncationSet) -> bool {
        self.0.iter().all(|&n| other.contains(n))
    }
}

impl TryFrom<Vec<u64>> for TruncationSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        TruncationSet::new(v)
    }
}

impl From<TruncationSet> for Vec<u64> {
    fn from(s: TruncationSet) -> Vec<u64> {
        s.0
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
