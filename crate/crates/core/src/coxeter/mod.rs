//! Finite reflection groups: root systems, exact element arithmetic on signed
//! permutations of the positive roots, lengths, chambers and parabolic cosets.

mod group;
mod roots;
mod serialize;
mod spec;

pub use group::{Chamber, CoxeterGroup, Element, ParabolicCoset};
pub use roots::{RootSystem, ROOT_TOLERANCE};
pub use serialize::{GroupDocument, GROUP_SCHEMA};
pub use spec::{Component, CoxeterSpec, Family, DEFAULT_ORDER_CAP};

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum CoxeterError {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse group spec {0:?} (expected e.g. A3, B3xA1, I2:5)")]
    Parse(String),
    #[error("group order exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: u64 },
    #[error("numerical ambiguity while matching roots: {0}")]
    NumericalAmbiguity(String),
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("element is not a reflection")]
    NotAReflection,
    #[error("malformed group document: {0}")]
    Document(String),
}

/// Subset of the simple reflections, as a bitmask over generator indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct SimpleSet(u64);

impl SimpleSet {
    pub const EMPTY: SimpleSet = SimpleSet(0);

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            SimpleSet(u64::MAX)
        } else {
            SimpleSet((1u64 << rank) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SimpleSet(indices.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn from_bits(bits: u64) -> Self {
        SimpleSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersection(self, other: SimpleSet) -> SimpleSet {
        SimpleSet(self.0 & other.0)
    }

    pub fn union(self, other: SimpleSet) -> SimpleSet {
        SimpleSet(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> SimpleSet {
        SimpleSet(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: SimpleSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Highest index + 1, i.e. the smallest rank that contains this set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Debug for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl From<SimpleSet> for Vec<usize> {
    fn from(s: SimpleSet) -> Self {
        s.iter().collect()
    }
}

impl TryFrom<Vec<usize>> for SimpleSet {
    type Error = String;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        if let Some(&bad) = v.iter().find(|&&i| i >= 64) {
            return Err(format!("simple reflection index {bad} out of range"));
        }
        Ok(SimpleSet::from_indices(v))
    }
}
