//! Block partitions and the canonical matrix-unit basis they induce.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The shape `(n_1, ..., n_k)` of a block upper triangular algebra inside
/// the `n x n` matrices, `n = n_1 + ... + n_k`.
///
/// Indices are 0-based everywhere, including file formats; row or column
/// `i` belongs to block `block_of(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    parts: Vec<usize>,
    /// block_starts[b] = first index of block b; one extra entry = n.
    block_starts: Vec<usize>,
    /// block_index[i] = block containing row/column i.
    block_index: Vec<usize>,
}

impl BlockPartition {
    pub fn new(parts: Vec<usize>) -> crate::Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if let Some(z) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("part {z} is zero")));
        }
        let mut block_starts = Vec::with_capacity(parts.len() + 1);
        let mut block_index = Vec::new();
        let mut start = 0;
        for (b, &p) in parts.iter().enumerate() {
            block_starts.push(start);
            block_index.extend(std::iter::repeat_n(b, p));
            start += p;
        }
        block_starts.push(start);
        Ok(BlockPartition { parts, block_starts, block_index })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total matrix size `n`.
    pub fn n(&self) -> usize {
        *self.block_starts.last().expect("nonempty")
    }

    /// Number of blocks `k`.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Block containing row/column `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_index[i]
    }

    /// First index of block `b`.
    pub fn block_start(&self, b: usize) -> usize {
        self.block_starts[b]
    }

    /// Whether `(i, j)` lies in the block upper triangular support.
    pub fn admissible(&self, i: usize, j: usize) -> bool {
        self.block_of(i) <= self.block_of(j)
    }

    /// The partition `(n_2, ..., n_k)` of the lower-right corner.
    pub fn tail(&self) -> crate::Result<BlockPartition> {
        if self.k() < 2 {
            return Err(Error::NotSplittable);
        }
        BlockPartition::new(self.parts[1..].to_vec())
    }
}

impl fmt::Debug for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockPartition{:?}", self.parts)
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for BlockPartition {
    type Err = Error;

    /// Parses a comma-separated list of positive integers, e.g. `2,1,1`.
    fn from_str(s: &str) -> crate::Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part `{t}`")))
            })
            .collect::<crate::Result<_>>()?;
        BlockPartition::new(parts)
    }
}

impl Serialize for BlockPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlockPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        BlockPartition::new(parts).map_err(de::Error::custom)
    }
}

/// The canonical basis of matrix units `E_ij` with `block(i) <= block(j)`,
/// ordered row-major (by `i`, then `j`). Every serialized map and every
/// constraint system refers to this order.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl AlgebraBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    /// Basis position of `E_ij`, or `None` when the unit is outside the
    /// block pattern.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }
}

/// Canonical matrix-unit basis of `T(partition)`.
pub fn canonical_basis(p: &BlockPartition) -> AlgebraBasis {
    let n = p.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if p.admissible(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let index = pairs.iter().enumerate().map(|(x, &pr)| (pr, x)).collect();
    AlgebraBasis { pairs, index }
}

/// Basis indices of the block-diagonal subalgebra: exactly the pairs with
/// `block(i) = block(j)`. For the all-ones partition this is the plain
/// diagonal; for a single block it is everything.
pub fn diagonal_basis(p: &BlockPartition) -> Vec<usize> {
    let basis = canonical_basis(p);
    basis
        .pairs()
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| p.block_of(i) == p.block_of(j))
        .map(|(idx, _)| idx)
        .collect()
}
