//! Sorted sets of 0-based vertex positions.
//!
//! Positions are what the library computes with; labels are the 1-based
//! names used in every text format. Label `v` maps to position `(v - 1) mod order`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    positions: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a set from arbitrary positions, sorting and dropping repeats.
    pub fn new(order: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut positions: Vec<usize> = positions.into_iter().collect();
        if let Some(&vertex) = positions.iter().find(|&&v| v >= order) {
            return Err(Error::Index { vertex, order });
        }
        positions.sort_unstable();
        positions.dedup();
        Ok(Self { positions })
    }

    /// All positions `0..order`.
    pub fn full(order: usize) -> Self {
        Self {
            positions: (0..order).collect(),
        }
    }

    /// Strict label conversion: every label must lie in `1..=order`.
    pub fn from_labels(order: usize, labels: &[i64]) -> Result<Self> {
        let mut positions = Vec::with_capacity(labels.len());
        for &label in labels {
            if label < 1 || label as u64 > order as u64 {
                return Err(Error::Parameter(format!(
                    "label {label} outside 1..={order}"
                )));
            }
            positions.push(label as usize - 1);
        }
        Self::new(order, positions)
    }

    /// Wrapping label conversion used by the closed-form constructions.
    ///
    /// Returns the set together with the number of labels that collapsed
    /// onto an already-present position.
    pub fn from_labels_wrapping(order: usize, labels: &[i64]) -> (Self, usize) {
        assert!(order > 0, "order must be positive");
        let positions: Vec<usize> = labels
            .iter()
            .map(|&label| (label - 1).rem_euclid(order as i64) as usize)
            .collect();
        let raw = positions.len();
        let set = Self::new(order, positions).expect("reduced positions are in range");
        let collapsed = raw - set.len();
        (set, collapsed)
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut positions = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            positions.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        Self { positions }
    }

    /// Bit mask of the positions; every position must be below 64.
    pub fn to_mask(&self) -> u64 {
        self.positions.iter().fold(0u64, |acc, &v| {
            assert!(v < 64, "position {v} does not fit a 64-bit mask");
            acc | (1u64 << v)
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.positions.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().copied()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn labels(&self) -> Vec<usize> {
        self.positions.iter().map(|&v| v + 1).collect()
    }

    /// Largest position plus one, or zero for the empty set.
    pub fn span(&self) -> usize {
        self.positions.last().map_or(0, |&v| v + 1)
    }

    pub fn with(&self, v: usize) -> Self {
        let mut positions = self.positions.clone();
        if let Err(at) = positions.binary_search(&v) {
            positions.insert(at, v);
        }
        Self { positions }
    }

    pub fn without(&self, v: usize) -> Self {
        Self {
            positions: self.positions.iter().copied().filter(|&u| u != v).collect(),
        }
    }

    /// Rotates every position by `shift` modulo `order`.
    pub fn rotated(&self, order: usize, shift: i64) -> Self {
        assert!(order > 0, "order must be positive");
        let shift = shift.rem_euclid(order as i64) as usize;
        Self::new(order, self.positions.iter().map(|&v| (v + shift) % order))
            .expect("rotated positions are in range")
    }

    /// Space-separated 1-based labels.
    pub fn label_line(&self) -> String {
        self.positions
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.positions.iter().map(|&v| v + 1))
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        if labels.contains(&0) {
            return Err(serde::de::Error::custom("labels are 1-based"));
        }
        let mut positions: Vec<usize> = labels.into_iter().map(|l| l - 1).collect();
        positions.sort_unstable();
        positions.dedup();
        Ok(Self { positions })
    }
}
