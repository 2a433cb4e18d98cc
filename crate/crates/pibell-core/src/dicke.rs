//! The totally symmetric subspace of n qutrits, spanned by Dicke occupation
//! vectors.
//!
//! A basis state is labelled by the partition 𝛍 = (μ₀, μ₁, μ₂) of n giving
//! the occupation of the three single-particle levels. The subspace has
//! dimension D = (n+1)(n+2)/2. Basis order is lexicographic in (μ₀, μ₁)
//! descending, so index 0 is (n, 0, 0) and index D−1 is (0, 0, n); output
//! files record states in this order.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Occupation numbers (μ₀, μ₁, μ₂) with μ₀ + μ₁ + μ₂ = n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartitionIndex {
    pub mu0: u32,
    pub mu1: u32,
    pub mu2: u32,
}

impl PartitionIndex {
    pub fn new(mu0: u32, mu1: u32, mu2: u32) -> Self {
        PartitionIndex { mu0, mu1, mu2 }
    }

    pub fn n(&self) -> u32 {
        self.mu0 + self.mu1 + self.mu2
    }

    pub fn occupation(&self, level: usize) -> u32 {
        match level {
            0 => self.mu0,
            1 => self.mu1,
            2 => self.mu2,
            _ => panic!("level out of range"),
        }
    }

    /// Partition shifted by one particle from level `from` to level `to`;
    /// `None` when `from` is empty.
    pub fn shift(&self, to: usize, from: usize) -> Option<PartitionIndex> {
        if self.occupation(from) == 0 {
            return None;
        }
        let mut occ = [self.mu0, self.mu1, self.mu2];
        occ[from] -= 1;
        occ[to] += 1;
        Some(PartitionIndex::new(occ[0], occ[1], occ[2]))
    }
}

/// Index bijection between partitions of n and 0..D with D = (n+1)(n+2)/2.
#[derive(Clone, Debug)]
pub struct DickeBasis {
    n: usize,
    parts: Arc<[PartitionIndex]>,
}

impl DickeBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("party count must be at least 1".into()));
        }
        let nn = n as u32;
        let mut parts = Vec::with_capacity(Self::dimension_for(n));
        for mu0 in (0..=nn).rev() {
            for mu1 in (0..=(nn - mu0)).rev() {
                parts.push(PartitionIndex::new(mu0, mu1, nn - mu0 - mu1));
            }
        }
        Ok(DickeBasis { n, parts: parts.into() })
    }

    pub fn dimension_for(n: usize) -> usize {
        (n + 1) * (n + 2) / 2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.parts.len()
    }

    pub fn partitions(&self) -> &[PartitionIndex] {
        &self.parts
    }

    pub fn partition_at(&self, index: usize) -> PartitionIndex {
        self.parts[index]
    }

    /// Index of a partition; errors on a partition of the wrong n.
    pub fn index_of(&self, p: &PartitionIndex) -> Result<usize> {
        if p.n() as usize != self.n {
            return Err(Error::InvalidInput(format!(
                "partition {:?} does not sum to n = {}",
                p, self.n
            )));
        }
        // Blocks of fixed μ₀ = n−k start at k(k+1)/2 and list μ₁ descending.
        let k = (self.n as u32 - p.mu0) as usize;
        let idx = k * (k + 1) / 2 + (k - p.mu1 as usize);
        debug_assert_eq!(self.parts[idx], *p);
        Ok(idx)
    }

    /// True when the two bases describe the same particle number.
    pub fn compatible(&self, other: &DickeBasis) -> bool {
        self.n == other.n
    }
}
