//! Reduced simplicial homology from explicit face lists.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::linalg::{self, SparseColumn};

/// A vector of nonnegative ranks with an explicit starting index.
///
/// Reduced homology uses base `-1`; module Betti numbers use base `0`.
/// Trailing zeros are always stripped.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiVector {
    pub base: i32,
    pub ranks: Vec<usize>,
}

impl BettiVector {
    #[must_use]
    pub fn new(base: i32, mut ranks: Vec<usize>) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        BettiVector { base, ranks }
    }

    #[must_use]
    pub fn zero(base: i32) -> Self {
        BettiVector { base, ranks: Vec::new() }
    }

    /// Entry at index `i` (zero outside the stored range).
    #[must_use]
    pub fn get(&self, i: i32) -> usize {
        if i < self.base {
            return 0;
        }
        self.ranks.get((i - self.base) as usize).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Largest index with a nonzero entry.
    #[must_use]
    pub fn top_degree(&self) -> Option<i32> {
        (!self.ranks.is_empty()).then(|| self.base + self.ranks.len() as i32 - 1)
    }

    #[must_use]
    pub fn total(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Entries from `lo` through `hi`, inclusive.
    #[must_use]
    pub fn range(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[base {}] {:?}", self.base, self.ranks)
    }
}

/// Reduced homology ranks of the complex whose faces of dimension `q` are
/// `faces[q + 1]`, each face a bit mask over the vertex indices.
///
/// `faces[0]` holds the empty face if present; an empty `faces` (or one with
/// `faces[0]` empty) is the void complex.
#[must_use]
pub fn reduced_homology(faces: &[Vec<u128>], field: Field) -> BettiVector {
    if faces.is_empty() || faces[0].is_empty() {
        return BettiVector::zero(-1);
    }
    let index: Vec<HashMap<u128, usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // ranks[q] = rank of the boundary from faces[q] to faces[q - 1]; ranks[0] = 0.
    let mut ranks = vec![0usize; faces.len() + 1];
    for q in 1..faces.len() {
        let cols: Vec<SparseColumn> = faces[q]
            .iter()
            .map(|&f| boundary_column(f, &index[q - 1]))
            .collect();
        ranks[q] = linalg::rank(field, faces[q - 1].len(), &cols);
    }
    let h: Vec<usize> = (0..faces.len())
        .map(|q| faces[q].len() - ranks[q] - ranks[q + 1])
        .collect();
    BettiVector::new(-1, h)
}

fn boundary_column(face: u128, lower: &HashMap<u128, usize>) -> SparseColumn {
    let mut col = Vec::with_capacity(face.count_ones() as usize);
    let mut bits = face;
    let mut pos = 0;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        col.push((lower[&(face ^ b)], sign));
        bits ^= b;
        pos += 1;
    }
    col
}

/// Groups a downward-closed face family by dimension, as expected by
/// [`reduced_homology`].
#[must_use]
pub fn group_by_dimension<I: IntoIterator<Item = u128>>(faces: I) -> Vec<Vec<u128>> {
    let mut out: Vec<Vec<u128>> = Vec::new();
    for f in faces {
        let d = f.count_ones() as usize;
        if out.len() <= d {
            out.resize(d + 1, Vec::new());
        }
        out[d].push(f);
    }
    for fs in &mut out {
        fs.sort_unstable();
    }
    out
}
