//! Simplicial complexes on a ground set `[k]`, stored by their facets.
//!
//! The ground set is part of the value: vertices need not lie in any face
//! (ghost vertices). The void complex has no faces at all; the empty complex
//! `{∅}` has only the empty face.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::canon::{self, CanonError, CanonicalForm};
use crate::field::Field;
use crate::homology::{self, BettiVector};
use crate::linalg::{self, SparseColumn};
use crate::vertex_set::{subsets_of_size, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("face {face:?} uses a vertex outside [{k}]")]
    VertexOutOfRange { face: VertexSet, k: usize },
    #[error("vertex {v} is not in [{k}]")]
    NoSuchVertex { v: usize, k: usize },
    #[error("permutation of length {got} does not match ground set size {k}")]
    BadPermutation { got: usize, k: usize },
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// A simplicial complex given by its inclusion-maximal faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    k: usize,
    facets: Vec<VertexSet>,
}

impl Complex {
    /// Builds the complex generated by `faces` (any generating family; non-maximal
    /// members are dropped).
    pub fn new(k: usize, faces: impl IntoIterator<Item = VertexSet>) -> Result<Self, ComplexError> {
        if k > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(k));
        }
        let mut all: Vec<VertexSet> = faces.into_iter().collect();
        if let Some(&face) = all.iter().find(|f| !f.fits(k)) {
            return Err(ComplexError::VertexOutOfRange { face, k });
        }
        all.sort_by_key(|f| std::cmp::Reverse(f.len()));
        all.dedup();
        let mut facets: Vec<VertexSet> = Vec::new();
        for f in all {
            if !facets.iter().any(|g| f.is_subset(*g)) {
                facets.push(f);
            }
        }
        facets.sort();
        Ok(Complex { k, facets })
    }

    /// The void complex (no faces).
    #[must_use]
    pub fn void(k: usize) -> Self {
        Complex { k, facets: Vec::new() }
    }

    /// The complex `{∅}`.
    #[must_use]
    pub fn empty(k: usize) -> Self {
        Complex { k, facets: vec![VertexSet::EMPTY] }
    }

    /// The full simplex on `[k]`.
    #[must_use]
    pub fn simplex(k: usize) -> Self {
        Complex { k, facets: vec![VertexSet::full(k)] }
    }

    /// The complete `d`-skeleton of the simplex on `[k]`.
    #[must_use]
    pub fn skeleton(k: usize, d: i32) -> Self {
        if d < -1 {
            return Self::void(k);
        }
        let r = ((d + 1) as usize).min(k);
        Complex { k, facets: subsets_of_size(k, r) }
    }

    /// The complex with top faces `top` of size `d + 1` plus the complete
    /// `(d-1)`-skeleton.
    pub fn from_top_faces(k: usize, d: i32, top: &[VertexSet]) -> Result<Self, ComplexError> {
        let skel = Self::skeleton(k, d - 1);
        Self::new(k, skel.facets.into_iter().chain(top.iter().copied()))
    }

    /// Parses the compact notation `"123 134 145"` with 1-based one-digit labels.
    #[must_use]
    pub fn from_digits(k: usize, s: &str) -> Option<Self> {
        let faces: Option<Vec<VertexSet>> = s.split_whitespace().map(VertexSet::parse_digits).collect();
        Self::new(k, faces?).ok()
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.k
    }

    #[must_use]
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    #[must_use]
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `None` for the void complex, `-1` for `{∅}`.
    #[must_use]
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.len() as i32 - 1).max()
    }

    #[must_use]
    pub fn contains(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Vertices lying in some face.
    #[must_use]
    pub fn vertex_support(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    /// All faces, sorted canonically.
    #[must_use]
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            set.extend(f.subsets());
        }
        set.into_iter().collect()
    }

    /// Faces of dimension exactly `d`.
    #[must_use]
    pub fn faces_of_dim(&self, d: i32) -> Vec<VertexSet> {
        self.faces().into_iter().filter(|f| f.len() as i32 - 1 == d).collect()
    }

    /// `f[i]` = number of faces of dimension `i - 1` (so `f[0]` counts `∅`).
    #[must_use]
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in self.faces() {
            let i = face.len();
            if f.len() <= i {
                f.resize(i + 1, 0);
            }
            f[i] += 1;
        }
        f
    }

    /// Number of faces of dimension `dim()` containing `v`.
    #[must_use]
    pub fn top_faces_containing(&self, v: usize) -> usize {
        let Some(d) = self.dim() else { return 0 };
        self.facets
            .iter()
            .filter(|f| f.len() as i32 - 1 == d && f.contains(v))
            .count()
    }

    /// `{F ∈ Δ : F ⊆ V}` on the ground set `V`, relabeled order-preservingly
    /// to `[|V|]`.
    #[must_use]
    pub fn restrict(&self, v: VertexSet) -> Complex {
        let v = v.intersection(VertexSet::full(self.k));
        let index: Vec<usize> = v.iter().collect();
        let relabel = |f: VertexSet| {
            VertexSet::from_vertices(f.iter().map(|x| index.iter().position(|&y| y == x).expect("inside V")))
        };
        let faces = self.facets.iter().map(|f| relabel(f.intersection(v)));
        Complex::new(index.len(), faces).expect("restriction stays in range")
    }

    /// `{F ∈ Δ : F ⊆ V}` keeping the ground set `[k]`.
    #[must_use]
    pub fn induced(&self, v: VertexSet) -> Complex {
        Complex::new(self.k, self.facets.iter().map(|f| f.intersection(v))).expect("in range")
    }

    /// Link and deletion of `v`, both on the ground set `[k]`.
    pub fn link_delete(&self, v: usize) -> Result<(Complex, Complex), ComplexError> {
        if v >= self.k {
            return Err(ComplexError::NoSuchVertex { v, k: self.k });
        }
        let deletion = Complex::new(self.k, self.facets.iter().map(|f| f.without(v)))?;
        let link = if self.contains(VertexSet::singleton(v)) {
            Complex::new(
                self.k,
                self.facets.iter().filter(|f| f.contains(v)).map(|f| f.without(v)),
            )?
        } else {
            Complex::void(self.k)
        };
        Ok((link, deletion))
    }

    /// `self ∪ v * link`: faces of `self` together with `F ∪ {v}` for every
    /// face `F` of `link`.
    pub fn glue_cone(&self, link: &Complex, v: usize) -> Result<Complex, ComplexError> {
        let cone = link.facets.iter().map(|f| f.with(v));
        Complex::new(self.k.max(link.k).max(v + 1), self.facets.iter().copied().chain(cone))
    }

    /// Alexander dual: `{[k] \ F : F ∉ Δ}`.
    #[must_use]
    pub fn alexander_dual(&self) -> Complex {
        let k = self.k;
        let full = VertexSet::full(k);
        let faces = (0..=full.bits())
            .map(VertexSet)
            .filter(|s| !self.contains(*s))
            .map(|s| s.complement(k));
        Complex::new(k, faces).expect("in range")
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Complex, ComplexError> {
        if perm.len() != self.k {
            return Err(ComplexError::BadPermutation { got: perm.len(), k: self.k });
        }
        Complex::new(self.k, self.facets.iter().map(|f| f.permute(perm)))
    }

    /// Faces grouped by dimension as bit masks, starting with the empty face.
    fn faces_by_dim(&self) -> Vec<Vec<u128>> {
        homology::group_by_dimension(self.faces().into_iter().map(|f| u128::from(f.bits())))
    }

    /// Ranks of reduced homology, indexed from `-1`.
    #[must_use]
    pub fn reduced_homology_ranks(&self, field: Field) -> BettiVector {
        homology::reduced_homology(&self.faces_by_dim(), field)
    }

    #[must_use]
    pub fn is_acyclic(&self, field: Field) -> bool {
        self.reduced_homology_ranks(field).is_zero()
    }

    /// True iff `dim = d`, the `(d-1)`-skeleton on `[k]` is complete and the
    /// complex is acyclic over `field`.
    #[must_use]
    pub fn is_stoss(&self, d: i32, field: Field) -> bool {
        if self.dim() != Some(d) || d < 0 {
            return false;
        }
        let skeleton_complete = subsets_of_size(self.k, d as usize)
            .into_iter()
            .all(|f| self.contains(f));
        skeleton_complete && self.is_acyclic(field)
    }

    /// The boundary matrix from faces of dimension `d` to dimension `d - 1`,
    /// with the row order of `subsets_of_size(k, d)`.
    #[must_use]
    pub fn top_boundary(&self, d: i32) -> (usize, Vec<SparseColumn>) {
        boundary_columns(self.k, d, &self.faces_of_dim(d))
    }

    /// True if the boundary map on top faces is injective.
    #[must_use]
    pub fn top_boundary_injective(&self, field: Field) -> bool {
        let Some(d) = self.dim() else { return true };
        let (rows, cols) = self.top_boundary(d);
        linalg::has_full_column_rank(field, rows, &cols)
    }

    /// Graded Betti numbers of the Stanley-Reisner ring by Hochster's formula:
    /// `β_{i,σ} = dim H̃_{|σ|-i-1}(Δ|_σ)`, aggregated by `j = |σ|`.
    ///
    /// Keys are `(i, j)`; only nonzero entries are stored.
    #[must_use]
    pub fn hochster_graded_betti(&self, field: Field) -> BTreeMap<(usize, usize), usize> {
        let mut table = BTreeMap::new();
        for s in VertexSet::full(self.k).subsets() {
            let h = self.induced(s).reduced_homology_ranks(field);
            for (idx, &r) in h.ranks.iter().enumerate() {
                if r == 0 {
                    continue;
                }
                let q = h.base + idx as i32;
                let i = s.len() as i32 - q - 1;
                *table.entry((i as usize, s.len())).or_insert(0) += r;
            }
        }
        table
    }

    /// Canonical encoding over relabelings of `[k]`.
    pub fn canonicalize(&self) -> Result<CanonicalForm, ComplexError> {
        Ok(canon::canonicalize(self.k, &self.facets)?.0)
    }

    /// The complex in canonical labeling.
    pub fn canonical(&self) -> Result<Complex, ComplexError> {
        let (form, _) = canon::canonicalize(self.k, &self.facets)?;
        Ok(Complex { k: self.k, facets: sorted(form.sets()) })
    }

    pub fn is_isomorphic(&self, other: &Complex) -> Result<bool, ComplexError> {
        Ok(self.k == other.k && self.canonicalize()? == other.canonicalize()?)
    }
}

fn sorted(mut v: Vec<VertexSet>) -> Vec<VertexSet> {
    v.sort();
    v
}

/// Boundary columns of the given `d`-faces over all `(d-1)`-subsets of `[k]`.
#[must_use]
pub fn boundary_columns(k: usize, d: i32, faces: &[VertexSet]) -> (usize, Vec<SparseColumn>) {
    if d < 0 {
        return (0, Vec::new());
    }
    let rows = subsets_of_size(k, d as usize);
    let nrows = rows.len();
    let cols = faces
        .iter()
        .map(|f| {
            f.iter()
                .enumerate()
                .map(|(pos, v)| {
                    let r = rows.binary_search(&f.without(v)).expect("subset present");
                    (r, if pos % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    (nrows, cols)
}

/// Closed formula for `β_{i, i+p-1}` of a `(p-1)`-dimensional stoss complex on `k` vertices.
#[must_use]
pub fn stoss_betti_formula(k: usize, p: usize, i: usize) -> u64 {
    if i == 0 || p == 0 || i + p > k {
        return 0;
    }
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let num = fact(k - 1);
    let den = fact(i - 1) * fact(p - 1) * fact(k - i - p) * (i + p - 1) as u128;
    debug_assert_eq!(num % den, 0);
    (num / den) as u64
}
