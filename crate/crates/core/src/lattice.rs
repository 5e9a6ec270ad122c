//! Finite lattices embedded as meet-closed families of subsets of `[k]`.
//!
//! The order is inclusion and the meet is intersection. The join of `a` and
//! `b` is the smallest member containing `a ∪ b`. A lattice is *atomistic*
//! here when its atoms are singletons and its top is their union; ghost
//! vertices of `[k]` outside the top are allowed, which lets deletions keep
//! the original labels.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::canon::{self, CanonError, CanonicalForm};
use crate::field::Field;
use crate::homology::{self, BettiVector};
use crate::simplicial::{Complex, ComplexError};
use crate::vertex_set::VertexSet;

/// Largest ground set for lattices (the membership bitmap has `2^k` bits).
pub const MAX_LATTICE_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_LATTICE_VERTICES}")]
    TooManyVertices(usize),
    #[error("element {0:?} uses a vertex outside the ground set")]
    OutOfRange(VertexSet),
    #[error("the family does not contain the empty set")]
    MissingBottom,
    #[error("the family has several maximal elements, e.g. {0:?} and {1:?}")]
    MultipleMaxima(VertexSet, VertexSet),
    #[error("{0:?} ∩ {1:?} is missing from the family")]
    MeetClosureViolation(VertexSet, VertexSet),
    #[error("{0:?} is not an element of the lattice")]
    NotAnElement(VertexSet),
    #[error("the lattice is not atomistic (atoms must be singletons whose union is the top)")]
    NotAtomistic,
    #[error("removing {0:?} breaks meet-closure")]
    RemovalBreaksMeetClosure(VertexSet),
    #[error("cannot remove the bottom or top element {0:?}")]
    CannotRemoveBound(VertexSet),
    #[error("the sublattice is not contained in the superlattice ({0:?} is missing)")]
    NotASublattice(VertexSet),
    #[error("order complex and crosscut complex disagree at {element:?}: {order:?} vs {crosscut:?}")]
    BettiRouteMismatch {
        element: VertexSet,
        order: BettiVector,
        crosscut: BettiVector,
    },
    #[error("interval below {0:?} is too large for the order complex")]
    IntervalTooLarge(VertexSet),
    #[error("map precondition violated: {0}")]
    MapPrecondition(String),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A finite lattice as a meet-closed family of subsets of `[k]`.
#[derive(Clone)]
pub struct Lattice {
    k: usize,
    elements: Vec<VertexSet>,
    member: Vec<u64>,
    top: VertexSet,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.elements == other.elements
    }
}

impl Eq for Lattice {}

impl std::hash::Hash for Lattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.elements.hash(state);
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(k={}, {:?})", self.k, self.elements)
    }
}

/// Per-element and total Betti numbers of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBetti {
    /// `(m, β_{·,m})` for every element with a nonzero entry, indexed from 0.
    pub per_element: Vec<(VertexSet, BettiVector)>,
    /// `β_i(L)` for `i = 0, 1, ...`.
    pub totals: BettiVector,
}

impl LatticeBetti {
    /// `β_{i,m}`.
    #[must_use]
    pub fn at(&self, m: VertexSet, i: i32) -> usize {
        self.per_element
            .iter()
            .find(|(e, _)| *e == m)
            .map_or(0, |(_, b)| b.get(i))
    }

    /// Largest `i` with `β_i ≠ 0`.
    #[must_use]
    pub fn pdim(&self) -> usize {
        self.totals.top_degree().unwrap_or(0) as usize
    }
}

impl Lattice {
    /// Validates a family as a lattice.
    pub fn from_elements(k: usize, family: impl IntoIterator<Item = VertexSet>) -> Result<Self, LatticeError> {
        if k > MAX_LATTICE_VERTICES {
            return Err(LatticeError::TooManyVertices(k));
        }
        let mut elements: Vec<VertexSet> = family.into_iter().collect();
        if let Some(&e) = elements.iter().find(|e| !e.fits(k)) {
            return Err(LatticeError::OutOfRange(e));
        }
        elements.sort();
        elements.dedup();
        if elements.first() != Some(&VertexSet::EMPTY) {
            return Err(LatticeError::MissingBottom);
        }
        let maxima: Vec<VertexSet> = elements
            .iter()
            .filter(|a| !elements.iter().any(|b| a.is_proper_subset(*b)))
            .copied()
            .collect();
        if maxima.len() > 1 {
            return Err(LatticeError::MultipleMaxima(maxima[0], maxima[1]));
        }
        let top = maxima[0];
        let lattice = Self::from_sorted_unchecked(k, elements, top);
        for (i, &a) in lattice.elements.iter().enumerate() {
            for &b in &lattice.elements[i + 1..] {
                if !lattice.contains(a.intersection(b)) {
                    return Err(LatticeError::MeetClosureViolation(a, b));
                }
            }
        }
        Ok(lattice)
    }

    fn from_sorted_unchecked(k: usize, elements: Vec<VertexSet>, top: VertexSet) -> Self {
        let mut member = vec![0u64; ((1usize << k) / 64).max(1)];
        for e in &elements {
            let b = e.bits() as usize;
            member[b / 64] |= 1 << (b % 64);
        }
        Lattice { k, elements, member, top }
    }

    /// Builds from a family already known to be meet-closed with bottom and top.
    pub(crate) fn from_trusted(k: usize, mut elements: Vec<VertexSet>) -> Self {
        elements.sort();
        elements.dedup();
        let top = *elements.last().expect("nonempty");
        let top = elements.iter().fold(top, |t, e| t.union(*e));
        debug_assert!(elements.contains(&top));
        Self::from_sorted_unchecked(k, elements, top)
    }

    /// The boolean lattice on `[k]`.
    #[must_use]
    pub fn boolean(k: usize) -> Self {
        Self::from_trusted(k, VertexSet::full(k).subsets().collect())
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Elements in canonical order (cardinality, then lexicographic).
    #[must_use]
    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[must_use]
    pub fn top(&self) -> VertexSet {
        self.top
    }

    #[inline]
    #[must_use]
    pub fn contains(&self, a: VertexSet) -> bool {
        let b = a.bits() as usize;
        a.fits(self.k) && self.member[b / 64] & (1 << (b % 64)) != 0
    }

    fn check(&self, a: VertexSet) -> Result<(), LatticeError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(LatticeError::NotAnElement(a))
        }
    }

    /// Members containing `u`, found through the membership bitmap.
    fn supersets(&self, u: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        let free = self.top.difference(u);
        free.subsets().map(move |s| s.union(u)).filter(move |s| self.contains(*s))
    }

    pub fn meet(&self, a: VertexSet, b: VertexSet) -> Result<VertexSet, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.intersection(b))
    }

    pub fn join(&self, a: VertexSet, b: VertexSet) -> Result<VertexSet, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.join_of(a.union(b)).expect("top contains both"))
    }

    /// Smallest member containing `u`, if any.
    #[must_use]
    pub fn join_of(&self, u: VertexSet) -> Option<VertexSet> {
        if !u.is_subset(self.top) {
            return None;
        }
        Some(self.supersets(u).fold(self.top, |acc, s| acc.intersection(s)))
    }

    /// Elements covering `a`.
    pub fn upper_covers(&self, a: VertexSet) -> Result<Vec<VertexSet>, LatticeError> {
        self.check(a)?;
        let above: Vec<VertexSet> = self.supersets(a).filter(|s| *s != a).collect();
        Ok(minimal(&above))
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: VertexSet) -> Result<Vec<VertexSet>, LatticeError> {
        self.check(a)?;
        let below: Vec<VertexSet> = a
            .subsets()
            .filter(|s| *s != a && self.contains(*s))
            .collect();
        Ok(maximal(&below))
    }

    /// Elements covering the bottom.
    #[must_use]
    pub fn atoms(&self) -> Vec<VertexSet> {
        self.upper_covers(VertexSet::EMPTY).expect("bottom present")
    }

    /// True if the atoms are singletons whose union is the top.
    #[must_use]
    pub fn is_atomistic(&self) -> bool {
        // then every nonempty element contains a singleton member
        self.top.iter().all(|v| self.contains(VertexSet::singleton(v)))
    }

    fn require_atomistic(&self) -> Result<(), LatticeError> {
        if self.is_atomistic() {
            Ok(())
        } else {
            Err(LatticeError::NotAtomistic)
        }
    }

    /// Number of join-irreducible elements below `a`.
    pub fn rank(&self, a: VertexSet) -> Result<usize, LatticeError> {
        self.check(a)?;
        if self.is_atomistic() {
            return Ok(a.len());
        }
        let mut count = 0;
        for s in a.subsets() {
            if s != VertexSet::EMPTY && self.contains(s) && self.lower_covers(s)?.len() == 1 {
                count += 1;
            }
        }
        Ok(count)
    }

    /// True if `a` is not the top and has exactly one upper cover.
    #[must_use]
    pub fn is_meet_irreducible(&self, a: VertexSet) -> bool {
        if !self.contains(a) || a == self.top {
            return false;
        }
        let above = self
            .supersets(a)
            .filter(|s| *s != a)
            .fold(self.top, |acc, s| acc.intersection(s));
        above != a
    }

    /// All meet-irreducible elements, in canonical order.
    #[must_use]
    pub fn meet_irreducibles(&self) -> Vec<VertexSet> {
        self.elements
            .iter()
            .copied()
            .filter(|a| self.is_meet_irreducible(*a))
            .collect()
    }

    /// True if every atom is a singleton (the top may be larger than their union).
    #[must_use]
    pub fn has_singleton_atoms(&self) -> bool {
        self.atoms().iter().all(|a| a.len() == 1)
    }

    /// `{a ∈ L : every subset of a is in L}` as a complex on `[k]`.
    ///
    /// Requires singleton atoms.
    pub fn scarf_complex(&self) -> Result<Complex, LatticeError> {
        if !self.has_singleton_atoms() {
            return Err(LatticeError::NotAtomistic);
        }
        let faces = self
            .elements
            .iter()
            .copied()
            .filter(|a| a.subsets().all(|s| self.contains(s)));
        Ok(Complex::new(self.k, faces)?)
    }

    /// True if every subset of `a` is an element.
    #[must_use]
    pub fn in_scarf(&self, a: VertexSet) -> bool {
        self.contains(a) && a.subsets().all(|s| self.contains(s))
    }

    /// Atom labels: for atomistic lattices the atom `{i}` is vertex `i`;
    /// otherwise atoms are numbered in canonical order.
    fn atom_labels(&self) -> (usize, Vec<(usize, VertexSet)>) {
        let atoms = self.atoms();
        if atoms.iter().all(|a| a.len() == 1) {
            (self.k, atoms.iter().map(|a| (a.min_vertex().expect("singleton"), *a)).collect())
        } else {
            (atoms.len(), atoms.iter().copied().enumerate().collect())
        }
    }

    /// Complex on the atoms below `m` whose faces are the atom sets with join
    /// strictly below `m`.
    pub fn crosscut_complex(&self, m: VertexSet) -> Result<Complex, LatticeError> {
        self.check(m)?;
        let (ground, labels) = self.atom_labels();
        if m == VertexSet::EMPTY {
            return Ok(Complex::void(ground));
        }
        let below: Vec<(usize, VertexSet)> = labels.into_iter().filter(|(_, a)| a.is_subset(m)).collect();
        let n = below.len();
        let mut faces = Vec::new();
        for mask in 0u32..(1 << n) {
            let mut u = VertexSet::EMPTY;
            let mut label = VertexSet::EMPTY;
            for (j, (v, a)) in below.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    u = u.union(*a);
                    label = label.with(*v);
                }
            }
            if self.join_of(u) != Some(m) {
                faces.push(label);
            }
        }
        Ok(Complex::new(ground, faces)?)
    }

    /// Reduced homology of the order complex of the open interval `(0̂, m)`.
    pub fn order_complex_homology(&self, m: VertexSet, field: Field) -> Result<BettiVector, LatticeError> {
        self.check(m)?;
        if m == VertexSet::EMPTY {
            return Ok(BettiVector::zero(-1));
        }
        let inner: Vec<VertexSet> = self
            .elements
            .iter()
            .copied()
            .filter(|x| !x.is_empty() && x.is_proper_subset(m))
            .collect();
        if inner.len() > 128 {
            return Err(LatticeError::IntervalTooLarge(m));
        }
        // up[i]: indices of elements strictly above inner[i]
        let up: Vec<u128> = inner
            .iter()
            .map(|x| {
                inner
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| x.is_proper_subset(**y))
                    .fold(0u128, |acc, (j, _)| acc | (1u128 << j))
            })
            .collect();
        let mut chains: Vec<u128> = vec![0];
        let mut stack: Vec<(u128, u128)> = (0..inner.len()).map(|i| (1u128 << i, up[i])).collect();
        while let Some((chain, ext)) = stack.pop() {
            chains.push(chain);
            let mut bits = ext;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                stack.push((chain | (1u128 << j), ext & up[j]));
            }
        }
        let faces = homology::group_by_dimension(chains);
        Ok(homology::reduced_homology(&faces, field))
    }

    fn betti_from(&self, reduced: impl Fn(VertexSet) -> Result<BettiVector, LatticeError>) -> Result<LatticeBetti, LatticeError> {
        let mut per_element = vec![(VertexSet::EMPTY, BettiVector::new(0, vec![1]))];
        let mut totals: Vec<usize> = vec![1];
        for &m in &self.elements[1..] {
            let h = reduced(m)?;
            if h.is_zero() {
                continue;
            }
            // β_{i,m} = H̃_{i-2}
            let b = BettiVector::new((h.base + 2).max(0), h.ranks.clone());
            let b = shift_to_zero(b);
            for (i, &r) in b.ranks.iter().enumerate() {
                if totals.len() <= i {
                    totals.resize(i + 1, 0);
                }
                totals[i] += r;
            }
            per_element.push((m, b));
        }
        Ok(LatticeBetti {
            per_element,
            totals: BettiVector::new(0, totals),
        })
    }

    /// Betti numbers through crosscut complexes only.
    pub fn lattice_betti_crosscut(&self, field: Field) -> Result<LatticeBetti, LatticeError> {
        self.betti_from(|m| Ok(self.crosscut_complex(m)?.reduced_homology_ranks(field)))
    }

    /// Betti numbers computed through both the order complex of `(0̂, m)` and the
    /// crosscut complex of `L_{≤m}`; a disagreement is an error.
    pub fn lattice_betti(&self, field: Field) -> Result<LatticeBetti, LatticeError> {
        self.betti_from(|m| {
            let order = self.order_complex_homology(m, field)?;
            let crosscut = self.crosscut_complex(m)?.reduced_homology_ranks(field);
            if order != crosscut {
                return Err(LatticeError::BettiRouteMismatch { element: m, order, crosscut });
            }
            Ok(crosscut)
        })
    }

    /// Largest `i` with `β_i(L) ≠ 0`.
    pub fn pdim(&self, field: Field) -> Result<usize, LatticeError> {
        Ok(self.lattice_betti_crosscut(field)?.pdim())
    }

    /// `L_{≤m}` on the same ground set.
    pub fn lower_interval(&self, m: VertexSet) -> Result<Lattice, LatticeError> {
        self.check(m)?;
        let els = self.elements.iter().copied().filter(|e| e.is_subset(m)).collect();
        Ok(Self::from_sorted_unchecked(self.k, els, m))
    }

    /// The sublattice of joins of atoms, embedded on its atoms.
    ///
    /// When all atoms are singletons the original labels are kept (elements
    /// are intersected with the union of the atoms); otherwise atoms are
    /// renumbered `0, 1, ...` in canonical order.
    #[must_use]
    pub fn atomistic_sublattice(&self) -> Lattice {
        let atoms = self.atoms();
        let singletons = atoms.iter().all(|a| a.len() == 1);
        let support = atoms.iter().fold(VertexSet::EMPTY, |u, a| u.union(*a));
        let mut out = Vec::new();
        for &e in &self.elements {
            let below: Vec<usize> = atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| a.is_subset(e))
                .map(|(i, _)| i)
                .collect();
            let u = below.iter().fold(VertexSet::EMPTY, |u, &i| u.union(atoms[i]));
            if self.join_of(u) != Some(e) {
                continue;
            }
            out.push(if singletons {
                e.intersection(support)
            } else {
                VertexSet::from_vertices(below)
            });
        }
        let k = if singletons { self.k } else { atoms.len() };
        Self::from_trusted(k, out)
    }

    /// `L \ {a}`, which must remain meet-closed.
    pub fn remove_element(&self, a: VertexSet) -> Result<Lattice, LatticeError> {
        self.check(a)?;
        if a == VertexSet::EMPTY || a == self.top {
            return Err(LatticeError::CannotRemoveBound(a));
        }
        if !self.is_meet_irreducible(a) {
            return Err(LatticeError::RemovalBreaksMeetClosure(a));
        }
        let els = self.elements.iter().copied().filter(|e| *e != a).collect();
        Ok(Self::from_sorted_unchecked(self.k, els, self.top))
    }

    /// The elements of `sup \ sub` ordered by decreasing rank in `sup`, so that
    /// removing any prefix leaves a lattice.
    pub fn interpolation_chain(sup: &Lattice, sub: &Lattice) -> Result<Vec<VertexSet>, LatticeError> {
        if let Some(&e) = sub.elements.iter().find(|e| !sup.contains(**e)) {
            return Err(LatticeError::NotASublattice(e));
        }
        let mut diff: Vec<(usize, VertexSet)> = Vec::new();
        for &e in &sup.elements {
            if !sub.contains(e) {
                diff.push((sup.rank(e)?, e));
            }
        }
        diff.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        Ok(diff.into_iter().map(|(_, e)| e).collect())
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Lattice {
        Self::from_trusted(self.k, self.elements.iter().map(|e| e.permute(perm)).collect())
    }

    /// Elements relabeled onto `[|top|]` (order-preserving).
    #[must_use]
    pub fn compressed(&self) -> Lattice {
        let index: Vec<usize> = self.top.iter().collect();
        let mut map = vec![usize::MAX; self.k];
        for (i, &v) in index.iter().enumerate() {
            map[v] = i;
        }
        let els = self
            .elements
            .iter()
            .map(|e| VertexSet::from_vertices(e.iter().map(|v| map[v])))
            .collect();
        Self::from_trusted(index.len(), els)
    }

    /// Canonical encoding up to relabeling; ghost vertices are ignored.
    pub fn canonicalize(&self) -> Result<CanonicalForm, LatticeError> {
        let c = self.compressed();
        Ok(canon::canonicalize(c.k, &c.elements)?.0)
    }

    pub fn is_isomorphic(&self, other: &Lattice) -> Result<bool, LatticeError> {
        Ok(self.canonicalize()? == other.canonicalize()?)
    }

    /// Lattice from a canonical form.
    #[must_use]
    pub fn from_canonical(form: &CanonicalForm) -> Lattice {
        Self::from_trusted(form.k as usize, form.sets())
    }

    /// Elements grouped by rank (atomistic lattices only).
    pub fn rank_profile(&self) -> Result<BTreeMap<usize, usize>, LatticeError> {
        self.require_atomistic()?;
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry(e.len()).or_insert(0) += 1;
        }
        Ok(m)
    }
}

fn shift_to_zero(b: BettiVector) -> BettiVector {
    if b.base == 0 {
        return b;
    }
    let mut ranks = vec![0; b.base as usize];
    ranks.extend(b.ranks);
    BettiVector::new(0, ranks)
}

fn minimal(sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = sets
        .iter()
        .copied()
        .filter(|a| !sets.iter().any(|b| b.is_proper_subset(*a)))
        .collect();
    out.sort();
    out
}

fn maximal(sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = sets
        .iter()
        .copied()
        .filter(|a| !sets.iter().any(|b| a.is_proper_subset(*b)))
        .collect();
    out.sort();
    out
}

/// A map between lattices, stored as the image of every source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub source: Lattice,
    pub target: Lattice,
    images: HashMap<VertexSet, VertexSet>,
}

impl LatticeMap {
    /// `images[i]` is the image of `source.elements()[i]`.
    pub fn new(source: Lattice, target: Lattice, images: Vec<VertexSet>) -> Result<Self, LatticeError> {
        if images.len() != source.len() {
            return Err(LatticeError::MapPrecondition(format!(
                "{} images for {} elements",
                images.len(),
                source.len()
            )));
        }
        if let Some(&x) = images.iter().find(|x| !target.contains(**x)) {
            return Err(LatticeError::NotAnElement(x));
        }
        let images = source.elements.iter().copied().zip(images).collect();
        Ok(LatticeMap { source, target, images })
    }

    /// The inclusion of a meet-closed subfamily containing the bottom.
    pub fn inclusion(sub: &Lattice, sup: &Lattice) -> Result<Self, LatticeError> {
        Self::new(sub.clone(), sup.clone(), sub.elements.clone())
    }

    #[must_use]
    pub fn identity(l: &Lattice) -> Self {
        Self::inclusion(l, l).expect("identity")
    }

    /// Image of `x` (an element of the source).
    #[must_use]
    pub fn apply(&self, x: VertexSet) -> Option<VertexSet> {
        self.images.get(&x).copied()
    }

    fn pairs(&self) -> impl Iterator<Item = (VertexSet, VertexSet)> + '_ {
        let els = &self.source.elements;
        els.iter().flat_map(move |&a| els.iter().map(move |&b| (a, b)))
    }

    #[must_use]
    pub fn is_meet_preserving(&self) -> bool {
        self.pairs().all(|(a, b)| {
            self.images[&a.intersection(b)] == self.images[&a].intersection(self.images[&b])
        })
    }

    #[must_use]
    pub fn is_join_preserving(&self) -> bool {
        self.pairs().all(|(a, b)| {
            let j = self.source.join(a, b).expect("elements");
            self.images[&j] == self.target.join(self.images[&a], self.images[&b]).expect("elements")
        })
    }

    #[must_use]
    pub fn is_injective(&self) -> bool {
        let mut imgs: Vec<VertexSet> = self.images.values().copied().collect();
        imgs.sort();
        imgs.dedup();
        imgs.len() == self.images.len()
    }

    #[must_use]
    pub fn is_surjective(&self) -> bool {
        self.target.elements.iter().all(|t| self.images.values().any(|x| x == t))
    }

    /// The Galois adjoint.
    ///
    /// For an injective meet-preserving `j: L' → L` with `0̂_L` in its image,
    /// returns `φ(x) = ⋀{x' : j(x') ≥ x}`. For a surjective join-preserving
    /// `φ: L → L'`, returns `j(x') = ⋁{x : φ(x) ≤ x'}`.
    pub fn galois_adjoint(&self) -> Result<LatticeMap, LatticeError> {
        let bottom_hit = self.images.values().any(|x| x.is_empty());
        if self.is_injective() && bottom_hit && self.is_meet_preserving() {
            let images = self
                .target
                .elements
                .iter()
                .map(|&x| {
                    self.source
                        .elements
                        .iter()
                        .filter(|xp| x.is_subset(self.images[xp]))
                        .fold(self.source.top, |acc, xp| acc.intersection(*xp))
                })
                .collect();
            return LatticeMap::new(self.target.clone(), self.source.clone(), images);
        }
        if self.is_surjective() && self.is_join_preserving() {
            let images = self
                .target
                .elements
                .iter()
                .map(|&xp| {
                    let u = self
                        .source
                        .elements
                        .iter()
                        .filter(|x| self.images[x].is_subset(xp))
                        .fold(VertexSet::EMPTY, |acc, x| acc.union(*x));
                    self.source.join_of(u).expect("below top")
                })
                .collect();
            return LatticeMap::new(self.target.clone(), self.source.clone(), images);
        }
        Err(LatticeError::MapPrecondition(
            "expected an injective meet-preserving map hitting the bottom, or a surjective join-preserving map".into(),
        ))
    }
}
