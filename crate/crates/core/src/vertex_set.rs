//! Subsets of a small ground set `[k]`, stored as a 16-bit mask.
//!
//! Vertices are 0-based internally; the JSON layer converts to 1-based.

use std::fmt;

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 16;

/// A subset of `{0, .., k-1}` with `k <= 16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[must_use]
    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_VERTICES, "ground set too large: {k}");
        if k == MAX_VERTICES {
            VertexSet(u16::MAX)
        } else {
            VertexSet((1u16 << k) - 1)
        }
    }

    #[must_use]
    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES, "vertex out of range: {v}");
        VertexSet(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        vs.into_iter().fold(Self::EMPTY, |s, v| s.with(v))
    }

    /// Parses the compact digit notation `"234"` for `{2,3,4}` (1-based, single digits).
    pub fn parse_digits(s: &str) -> Option<Self> {
        let mut set = Self::EMPTY;
        for c in s.chars() {
            let d = c.to_digit(10)? as usize;
            if d == 0 {
                return None;
            }
            set = set.with(d - 1);
        }
        Some(set)
    }

    #[inline]
    #[must_use]
    pub fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    #[must_use]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    #[must_use]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    #[must_use]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    #[inline]
    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    #[inline]
    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    #[inline]
    #[must_use]
    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    #[inline]
    #[must_use]
    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    #[inline]
    #[must_use]
    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    #[inline]
    #[must_use]
    pub fn complement(self, k: usize) -> Self {
        VertexSet(!self.0 & Self::full(k).0)
    }

    #[inline]
    #[must_use]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    #[must_use]
    pub fn is_proper_subset(self, o: Self) -> bool {
        self.is_subset(o) && self != o
    }

    /// True if every element lies in `[k]`.
    #[must_use]
    pub fn fits(self, k: usize) -> bool {
        self.is_subset(Self::full(k))
    }

    #[must_use]
    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, including `self` and the empty set.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut cur = Some(0u16);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full {
                None
            } else {
                Some((s.wrapping_sub(full)) & full)
            };
            Some(VertexSet(s))
        })
    }

    /// Relabels through `perm` (vertex `v` goes to `perm[v]`).
    #[must_use]
    pub fn permute(self, perm: &[usize]) -> Self {
        self.iter().fold(Self::EMPTY, |s, v| s.with(perm[v]))
    }

    /// Sort key for the canonical order: cardinality first, then
    /// lexicographic order of the sorted vertex lists.
    #[inline]
    #[must_use]
    pub fn order_key(self) -> u32 {
        ((self.len() as u32) << 16) | u32::from(0xFFFF ^ self.0.reverse_bits())
    }

    /// Inverse of `order_key`.
    #[must_use]
    pub fn from_order_key(key: u32) -> Self {
        VertexSet((0xFFFF ^ (key as u16)).reverse_bits())
    }

    /// 1-based vertex list, for I/O.
    #[must_use]
    pub fn to_one_based(self) -> Vec<u32> {
        self.iter().map(|v| v as u32 + 1).collect()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by `order_key`.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Binomial coefficient with `C(n, r) = 0` for `r < 0` or `r > n`.
#[must_use]
pub fn binomial(n: i64, r: i64) -> u64 {
    if r < 0 || n < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r) as u64;
    let n = n as u64;
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All `r`-subsets of `[k]` in canonical order.
#[must_use]
pub fn subsets_of_size(k: usize, r: usize) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = VertexSet::full(k)
        .subsets()
        .filter(|s| s.len() == r)
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_key_is_size_then_lex() {
        let a = VertexSet::from_vertices([0, 1]);
        let b = VertexSet::from_vertices([0, 2]);
        let c = VertexSet::from_vertices([1, 2]);
        let d = VertexSet::from_vertices([0, 3]);
        let e = VertexSet::from_vertices([2]);
        assert!(e < a && a < b && b < d && d < c);
        for s in [a, b, c, d, e, VertexSet::EMPTY, VertexSet::full(16)] {
            assert_eq!(VertexSet::from_order_key(s.order_key()), s);
        }
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = VertexSet::from_vertices([1, 4, 6]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn digits_roundtrip() {
        let s = VertexSet::parse_digits("1623").unwrap();
        assert_eq!(s, VertexSet::from_vertices([0, 1, 2, 5]));
        assert_eq!(s.to_one_based(), vec![1, 2, 3, 6]);
        assert!(VertexSet::parse_digits("102").is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(subsets_of_size(6, 3).len(), 20);
    }

    #[test]
    fn complement_relative_to_ground() {
        let s = VertexSet::from_vertices([0, 2]);
        assert_eq!(s.complement(4), VertexSet::from_vertices([1, 3]));
    }
}
