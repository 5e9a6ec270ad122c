//! Stoss complexes and their maximal lattices: construction of `L_Δ`,
//! amalgamation, vertex decomposition, and the enumeration pipelines on up
//! to seven vertices.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{self, CanonicalForm};
use crate::field::Field;
use crate::json::ComplexRecord;
use crate::lattice::{Lattice, LatticeError};
use crate::linalg;
use crate::simplicial::{boundary_columns, Complex, ComplexError};
use crate::vertex_set::{binomial, subsets_of_size, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StossError {
    #[error("the complex is not a stoss complex over {0}")]
    NotStoss(Field),
    #[error("enumeration of {d}-dimensional stoss complexes on {k} vertices is not supported")]
    Unsupported { k: usize, d: i32 },
    #[error("the second lattice is not contained in the first ({0:?} is missing)")]
    NotSublattice(VertexSet),
    #[error("the second lattice does not contain the top {0:?} of the first")]
    MissingTop(VertexSet),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `L_Δ` together with its generating stoss complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalLattice {
    pub lattice: Lattice,
    pub scarf: Complex,
    pub field: Field,
}

impl MaximalLattice {
    #[must_use]
    pub fn dim(&self) -> i32 {
        self.scarf.dim().expect("stoss complexes are nonvoid")
    }

    /// `p = dim Δ + 1`.
    #[must_use]
    pub fn pdim(&self) -> usize {
        (self.dim() + 1) as usize
    }
}

/// Faces of dimension `d` of a stoss complex.
fn top_faces(delta: &Complex) -> (i32, Vec<VertexSet>) {
    let d = delta.dim().expect("nonvoid");
    (d, delta.faces_of_dim(d))
}

/// `L_Δ = {∅} ∪ {V : Δ|_V acyclic}`.
pub fn maximal_lattice(delta: &Complex, field: Field) -> Result<MaximalLattice, StossError> {
    let Some(d) = delta.dim() else {
        return Err(StossError::NotStoss(field));
    };
    if !delta.is_stoss(d, field) {
        return Err(StossError::NotStoss(field));
    }
    let (_, top) = top_faces(delta);
    Ok(MaximalLattice {
        lattice: maximal_lattice_from_top(delta.k(), d, &top),
        scarf: delta.clone(),
        field,
    })
}

/// `L_Δ` for a complex already known to be stoss, given by its top faces.
///
/// Every restriction has complete `(d-1)`-skeleton and injective top boundary,
/// so `Δ|_V` is acyclic exactly when it has `C(|V|-1, d)` top faces.
#[must_use]
pub fn maximal_lattice_from_top(k: usize, d: i32, top: &[VertexSet]) -> Lattice {
    let mut els = vec![VertexSet::EMPTY];
    for v in VertexSet::full(k).subsets().skip(1) {
        let f = top.iter().filter(|t| t.is_subset(v)).count() as u64;
        if f == binomial(v.len() as i64 - 1, i64::from(d)) {
            els.push(v);
        }
    }
    Lattice::from_elements(k, els).expect("L_Δ is a lattice")
}

/// `L1 ∪ {a ∪ {k} : a ∈ L2}` on `k + 1` atoms.
pub fn amalgamate(l1: &Lattice, l2: &Lattice) -> Result<Lattice, StossError> {
    let k = l1.k().max(l2.k());
    if let Some(&e) = l2.elements().iter().find(|e| !l1.contains(**e)) {
        return Err(StossError::NotSublattice(e));
    }
    if !l2.contains(l1.top()) {
        return Err(StossError::MissingTop(l1.top()));
    }
    let new = l2.elements().iter().map(|a| a.with(k));
    Ok(Lattice::from_elements(k + 1, l1.elements().iter().copied().chain(new))?)
}

/// A lattice written as `L1 # L2`, with the doubled vertex `v` restored on
/// reassembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamationSplit {
    pub l1: Lattice,
    pub l2: Lattice,
    /// The element of rank `k - 1` that witnesses the split.
    pub witness: VertexSet,
    /// The vertex missing from the witness.
    pub vertex: usize,
}

impl AmalgamationSplit {
    /// `L1 # L2` with the new vertex moved back to position `vertex`.
    pub fn reassemble(&self) -> Result<Lattice, StossError> {
        let joined = amalgamate(&self.l1, &self.l2)?;
        let k = joined.k();
        // old index i < vertex stays, i >= vertex shifts up, the new vertex k-1 goes to `vertex`
        let perm: Vec<usize> = (0..k)
            .map(|i| {
                if i == k - 1 {
                    self.vertex
                } else if i < self.vertex {
                    i
                } else {
                    i + 1
                }
            })
            .collect();
        Ok(joined.permute(&perm))
    }
}

fn drop_vertex(s: VertexSet, v: usize) -> VertexSet {
    VertexSet::from_vertices(s.iter().filter(|&x| x != v).map(|x| if x > v { x - 1 } else { x }))
}

/// Splits an atomistic lattice on `[k]` with top `[k]` having an element of
/// rank `k - 1`.
pub fn detect_amalgamation(l: &Lattice) -> Result<Option<AmalgamationSplit>, StossError> {
    if !l.is_atomistic() {
        return Err(LatticeError::NotAtomistic.into());
    }
    let k = l.k();
    if l.top() != VertexSet::full(k) || k < 2 {
        return Ok(None);
    }
    let Some(&m) = l.elements().iter().find(|e| e.len() == k - 1) else {
        return Ok(None);
    };
    let v = VertexSet::full(k).difference(m).min_vertex().expect("one vertex");
    let l1 = l.elements().iter().filter(|e| !e.contains(v)).map(|e| drop_vertex(*e, v));
    let l1 = Lattice::from_elements(k - 1, l1.collect::<Vec<_>>())?;
    let l2 = l.elements().iter().filter(|e| e.contains(v)).map(|e| drop_vertex(*e, v));
    let mut l2: Vec<VertexSet> = l2.collect();
    l2.push(VertexSet::EMPTY);
    let l2 = Lattice::from_elements(k - 1, l2)?;
    Ok(Some(AmalgamationSplit { l1, l2, witness: m, vertex: v }))
}

/// The first vertex lying in exactly `C(k-2, p-2)` top faces, with its
/// deletion and link (both on the ground set `[k]`).
#[must_use]
pub fn decompose_vertex(delta: &Complex) -> Option<(usize, Complex, Complex)> {
    let d = delta.dim()?;
    let k = delta.k() as i64;
    let threshold = binomial(k - 2, i64::from(d) - 1) as usize;
    let v = (0..delta.k()).find(|&v| delta.top_faces_containing(v) == threshold)?;
    let (link, del) = delta.link_delete(v).ok()?;
    Some((v, del, link))
}

/// Decodes a Prüfer sequence over `[k]` into the edge list of a tree.
fn prufer_edges(k: usize, seq: &[usize]) -> Vec<VertexSet> {
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &x in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push(VertexSet::from_vertices([leaf, x]));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push(VertexSet::from_vertices(rest));
    edges
}

/// All `k^(k-2)` labeled trees on `[k]`, in Prüfer order.
#[must_use]
pub fn enumerate_trees(k: usize) -> Vec<Complex> {
    assert!((2..=8).contains(&k), "trees are enumerated for 2 <= k <= 8");
    let len = k - 2;
    let total = k.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let x = code % k;
                    code /= k;
                    x
                })
                .collect();
            Complex::new(k, prufer_edges(k, &seq)).expect("tree")
        })
        .collect()
}

/// All connected graphs on `[n]` with exactly `m` edges, as edge lists.
#[must_use]
pub fn enumerate_connected_graphs(n: usize, m: usize) -> Vec<Vec<VertexSet>> {
    let edges = subsets_of_size(n, 2);
    let mut out = Vec::new();
    for_each_combination(edges.len(), m, |idx| {
        let g: Vec<VertexSet> = idx.iter().map(|&i| edges[i]).collect();
        if is_connected(n, &g) {
            out.push(g);
        }
    });
    out
}

fn is_connected(n: usize, edges: &[VertexSet]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = VertexSet::singleton(0);
    loop {
        let grown = edges
            .iter()
            .filter(|e| !e.intersection(seen).is_empty())
            .fold(seen, |s, e| s.union(*e));
        if grown == seen {
            return seen == VertexSet::full(n);
        }
        seen = grown;
    }
}

/// Calls `f` on every increasing `r`-tuple of indices below `n`.
pub fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True if the boundary of the given `d`-faces is injective.
#[must_use]
pub fn top_injective(k: usize, d: i32, top: &[VertexSet], field: Field) -> bool {
    let (rows, cols) = boundary_columns(k, d, top);
    linalg::has_full_column_rank(field, rows, &cols)
}

/// Canonical form of a family of `d`-faces (the skeleton below is implied).
pub fn top_form(k: usize, top: &[VertexSet]) -> CanonicalForm {
    canon::canonicalize(k, top).expect("k <= 9").0
}

/// The complex with complete `(d-1)`-skeleton whose top faces a form lists.
#[must_use]
pub fn complex_from_form(d: i32, form: &CanonicalForm) -> Complex {
    Complex::from_top_faces(form.k as usize, d, &form.sets()).expect("in range")
}

fn collect_classes(d: i32, forms: HashSet<CanonicalForm>) -> Vec<Complex> {
    let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
    forms.sort();
    forms.iter().map(|f| complex_from_form(d, f)).collect()
}

/// Brute force: every `C(k-1, d)`-subset of the `d`-faces of `[k]`.
fn brute_force(k: usize, d: i32, field: Field) -> Vec<Complex> {
    let faces = subsets_of_size(k, (d + 1) as usize);
    let need = binomial(k as i64 - 1, i64::from(d)) as usize;
    // Split on the first chosen face so that workers get independent ranges.
    let firsts: Vec<usize> = (0..faces.len()).collect();
    let forms = firsts
        .par_iter()
        .fold(HashSet::new, |mut acc, &first| {
            if need == 0 {
                return acc;
            }
            let rest = faces.len() - first - 1;
            for_each_combination(rest, need - 1, |idx| {
                let mut top = Vec::with_capacity(need);
                top.push(faces[first]);
                top.extend(idx.iter().map(|&i| faces[first + 1 + i]));
                if top_injective(k, d, &top, field) {
                    acc.insert(top_form(k, &top));
                }
            });
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    collect_classes(d, forms)
}

/// Isomorphism classes of Alexander duals.
fn duals(k: usize, classes: &[Complex]) -> Vec<Complex> {
    let forms: HashSet<CanonicalForm> = classes
        .par_iter()
        .map(|c| {
            let dual = c.alexander_dual();
            let (_, top) = top_faces(&dual);
            top_form(k, &top)
        })
        .collect();
    let d = classes
        .first()
        .map(|c| k as i32 - c.dim().expect("nonvoid") - 2)
        .unwrap_or(0);
    collect_classes(d, forms)
}

/// Representatives of the isomorphism classes of `d`-dimensional stoss
/// complexes on `[k]`, sorted by canonical form.
pub fn enumerate_stoss(k: usize, d: i32, field: Field) -> Result<Vec<Complex>, StossError> {
    if k == 0 || k > 7 || d < 0 || d as usize >= k {
        return Err(StossError::Unsupported { k, d });
    }
    if d as usize == k - 1 {
        return Ok(vec![Complex::simplex(k)]);
    }
    if k <= 6 || d <= 1 {
        return Ok(brute_force(k, d, field));
    }
    match d {
        2 => Ok(enumerate_seven(field)?.classes),
        3 => Ok(duals(7, &enumerate_stoss(7, 2, field)?)),
        4 => Ok(duals(7, &enumerate_stoss(7, 1, field)?)),
        5 => Ok(duals(7, &enumerate_stoss(7, 0, field)?)),
        _ => Err(StossError::Unsupported { k, d }),
    }
}

/// Both seven-vertex pipelines for `d = 2` and their union.
#[derive(Debug, Clone)]
pub struct SevenVertexEnumeration {
    pub amalgam: AmalgamPipeline,
    pub nonamalgam: NonAmalgamPipeline,
    pub classes: Vec<Complex>,
}

pub fn enumerate_seven(field: Field) -> Result<SevenVertexEnumeration, StossError> {
    let six = enumerate_stoss(6, 2, field)?;
    let amalgam = amalgam_pipeline(&six);
    let nonamalgam = nonamalgam_pipeline(&six, field);
    let forms: HashSet<CanonicalForm> = amalgam
        .classes
        .iter()
        .chain(&nonamalgam.classes)
        .map(|c| top_form(7, &top_faces(c).1))
        .collect();
    Ok(SevenVertexEnumeration { amalgam, nonamalgam, classes: collect_classes(2, forms) })
}

/// Output of the seven-vertex amalgamation pipeline.
#[derive(Debug, Clone)]
pub struct AmalgamPipeline {
    pub deletions: usize,
    pub trees: usize,
    pub raw: usize,
    pub classes: Vec<Complex>,
}

/// Glues every six-vertex class `Δ'` with every labeled tree `T` on `[6]` as
/// `Δ' ∪ 7 * T`.
#[must_use]
pub fn amalgam_pipeline(six: &[Complex]) -> AmalgamPipeline {
    let trees = enumerate_trees(6);
    let tree_edges: Vec<Vec<VertexSet>> = trees.iter().map(|t| t.facets().to_vec()).collect();
    let forms: HashSet<CanonicalForm> = six
        .par_iter()
        .fold(HashSet::new, |mut acc, del| {
            let base: Vec<VertexSet> = del.faces_of_dim(2);
            for edges in &tree_edges {
                let mut top = base.clone();
                top.extend(edges.iter().map(|e| e.with(6)));
                acc.insert(top_form(7, &top));
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    AmalgamPipeline {
        deletions: six.len(),
        trees: trees.len(),
        raw: six.len() * trees.len(),
        classes: collect_classes(2, forms),
    }
}

/// Output of the seven-vertex non-amalgamation pipeline.
#[derive(Debug, Clone)]
pub struct NonAmalgamPipeline {
    /// Classes of six-vertex stoss complexes with one top face removed.
    pub deletion_classes: usize,
    /// Connected graphs on `[6]` with six edges.
    pub link_graphs: usize,
    pub candidates: usize,
    /// Glued complexes with injective top boundary (before deduplication).
    pub full_rank: usize,
    /// Deduplicated classes in which no vertex lies in exactly five triangles.
    pub classes: Vec<Complex>,
    /// Deduplicated classes including the ones that are amalgamations.
    pub all_classes: usize,
}

/// Six-vertex 2-dimensional stoss classes with one top face removed, up to
/// isomorphism.
#[must_use]
pub fn deletion_classes(six: &[Complex]) -> Vec<Vec<VertexSet>> {
    let mut forms: Vec<CanonicalForm> = six
        .iter()
        .flat_map(|c| {
            let top = c.faces_of_dim(2);
            (0..top.len())
                .map(|i| {
                    let rest: Vec<VertexSet> =
                        top.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| *f).collect();
                    top_form(6, &rest)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    forms.sort();
    forms.dedup();
    forms.iter().map(CanonicalForm::sets).collect()
}

/// Glues each deletion class with each connected six-edge graph on `[6]` as
/// the link of vertex 7 and keeps the acyclic results.
#[must_use]
pub fn nonamalgam_pipeline(six: &[Complex], field: Field) -> NonAmalgamPipeline {
    let dels = deletion_classes(six);
    let links = enumerate_connected_graphs(6, 6);
    let threshold = binomial(5, 1) as usize;
    let (forms, full_rank) = dels
        .par_iter()
        .fold(
            || (HashSet::new(), 0usize),
            |(mut acc, mut n), del| {
                for g in &links {
                    let mut top = del.clone();
                    top.extend(g.iter().map(|e| e.with(6)));
                    if top_injective(7, 2, &top, field) {
                        n += 1;
                        acc.insert(top_form(7, &top));
                    }
                }
                (acc, n)
            },
        )
        .reduce(
            || (HashSet::new(), 0),
            |(mut a, n), (b, m)| {
                a.extend(b);
                (a, n + m)
            },
        );
    let all_classes = forms.len();
    let forms: HashSet<CanonicalForm> = forms
        .into_iter()
        .filter(|f| {
            let sets = f.sets();
            (0..7).all(|v| sets.iter().filter(|s| s.contains(v)).count() != threshold)
        })
        .collect();
    NonAmalgamPipeline {
        deletion_classes: dels.len(),
        link_graphs: links.len(),
        candidates: dels.len() * links.len(),
        full_rank,
        classes: collect_classes(2, forms),
        all_classes,
    }
}

/// An enumeration result as written by the command-line driver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub k: usize,
    pub d: i32,
    pub field: Field,
    pub count: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub breakdown: BTreeMap<String, usize>,
    pub classes: Vec<ComplexRecord>,
}

impl Manifest {
    #[must_use]
    pub fn new(k: usize, d: i32, field: Field, classes: &[Complex]) -> Self {
        Manifest {
            k,
            d,
            field,
            count: classes.len(),
            breakdown: BTreeMap::new(),
            classes: classes.iter().map(ComplexRecord::from).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1() -> Complex {
        Complex::from_digits(6, "123 134 145 156 126 234 345 456 256 236").unwrap()
    }

    #[test]
    fn path_gives_interval_lattice() {
        let path = Complex::from_digits(3, "12 23").unwrap();
        let l = maximal_lattice(&path, Field::Rational).unwrap().lattice;
        assert_eq!(l.len(), 7);
        assert!(!l.contains(VertexSet::parse_digits("13").unwrap()));
    }

    #[test]
    fn c1_lattice_extra_elements() {
        let m = maximal_lattice(&c1(), Field::Rational).unwrap();
        let extra: Vec<VertexSet> = m
            .lattice
            .elements()
            .iter()
            .copied()
            .filter(|e| !m.scarf.contains(*e))
            .collect();
        let mut expected: Vec<VertexSet> = "1234 1345 1456 1256 1236 123456"
            .split(' ')
            .map(|s| VertexSet::parse_digits(s).unwrap())
            .collect();
        expected.sort();
        assert_eq!(extra, expected);
        assert_eq!(m.lattice.scarf_complex().unwrap(), c1());
    }

    #[test]
    fn rejects_non_stoss() {
        let circle = Complex::from_digits(3, "12 23 13").unwrap();
        assert_eq!(maximal_lattice(&circle, Field::Rational), Err(StossError::NotStoss(Field::Rational)));
    }

    #[test]
    fn amalgamate_boolean() {
        let b2 = Lattice::boolean(2);
        let b3 = amalgamate(&b2, &b2).unwrap();
        assert_eq!(b3, Lattice::boolean(3));
        let split = detect_amalgamation(&b3).unwrap().unwrap();
        assert_eq!(split.l1, b2);
        assert_eq!(split.reassemble().unwrap(), b3);
        let degenerate = Lattice::from_elements(2, [VertexSet::EMPTY, VertexSet::full(2)]).unwrap();
        assert_eq!(amalgamate(&b2, &degenerate).unwrap().len(), 6);
    }

    #[test]
    fn c1_is_not_an_amalgam() {
        let l = maximal_lattice(&c1(), Field::Rational).unwrap().lattice;
        assert!(detect_amalgamation(&l).unwrap().is_none());
        assert!(decompose_vertex(&c1()).is_none());
    }

    #[test]
    fn leaf_decomposition() {
        let path = Complex::from_digits(3, "12 23").unwrap();
        let (v, del, link) = decompose_vertex(&path).unwrap();
        assert_eq!(v, 0);
        assert_eq!(del, Complex::from_digits(3, "23").unwrap());
        assert_eq!(link, Complex::from_digits(3, "2").unwrap());
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_trees(2).len(), 1);
        assert_eq!(enumerate_trees(5).len(), 125);
        assert_eq!(enumerate_stoss(5, 1, Field::Rational).unwrap().len(), 3);
        assert_eq!(enumerate_connected_graphs(4, 4).len(), 15);
    }

    #[test]
    fn combinations() {
        let mut n = 0;
        for_each_combination(6, 3, |_| n += 1);
        assert_eq!(n, 20);
        let mut m = 0;
        for_each_combination(3, 0, |_| m += 1);
        assert_eq!(m, 1);
    }
}
