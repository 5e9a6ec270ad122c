//! Monomial ideals: minimal generators, lcm lattices, Scarf complexes,
//! multigraded Betti numbers, realization of lattices, and Hilbert function
//! queries for `S/I` and `I`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::homology::BettiVector;
use crate::lattice::{Lattice, LatticeError, MAX_LATTICE_VERTICES};
use crate::simplicial::Complex;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one generator")]
    Empty,
    #[error("generator has {got} exponents, expected {n}")]
    LengthMismatch { got: usize, n: usize },
    #[error("{0} generators exceed the lcm lattice limit of {MAX_LATTICE_VERTICES}")]
    TooManyGenerators(usize),
    #[error("unknown module selector {0:?} (expected Q or I)")]
    BadSelector(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A monomial `x^a` given by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    #[must_use]
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_j`.
    #[must_use]
    pub fn var(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Monomial(e)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `self | other`, i.e. `self ⪯ other` componentwise.
    #[must_use]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    #[must_use]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Indices with a nonzero exponent.
    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(j, _)| j).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

/// Which module is meant: the quotient `S/I` or the ideal `I` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModuleSelector {
    Q,
    I,
}

impl fmt::Display for ModuleSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleSelector::Q => "Q",
            ModuleSelector::I => "I",
        })
    }
}

impl FromStr for ModuleSelector {
    type Err = IdealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(ModuleSelector::Q),
            "I" | "i" => Ok(ModuleSelector::I),
            _ => Err(IdealError::BadSelector(s.to_string())),
        }
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

/// Drops generators divisible by another one (and duplicates), keeping the
/// input order of the survivors.
pub fn minimalize(n: usize, gens: &[Monomial]) -> Result<MonomialIdeal, IdealError> {
    if gens.is_empty() {
        return Err(IdealError::Empty);
    }
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(IdealError::LengthMismatch { got: g.n(), n });
    }
    let mut out: Vec<Monomial> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.divides(g) && (h != g || j < i));
        if !redundant {
            out.push(g.clone());
        }
    }
    Ok(MonomialIdeal { n, generators: out })
}

impl MonomialIdeal {
    /// The ideal generated by `gens` (minimalized).
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self, IdealError> {
        minimalize(n, &gens)
    }

    /// Parses exponent rows.
    pub fn from_exponents(n: usize, rows: &[&[u32]]) -> Result<Self, IdealError> {
        Self::new(n, rows.iter().map(|r| Monomial(r.to_vec())).collect())
    }

    /// The ideal generated by the variables.
    #[must_use]
    pub fn maximal(n: usize) -> Self {
        MonomialIdeal { n, generators: (0..n).map(|j| Monomial::var(n, j)).collect() }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// True if `x^a ∈ I`.
    #[must_use]
    pub fn contains(&self, a: &[u32]) -> bool {
        self.generators.iter().any(|g| g.0.iter().zip(a).all(|(x, y)| x <= y))
    }
}

/// `g = lcm` of the generators.
#[must_use]
pub fn lcm_of_generators(ideal: &MonomialIdeal) -> Monomial {
    ideal
        .generators
        .iter()
        .fold(Monomial::one(ideal.n), |acc, g| acc.lcm(g))
}

/// `dim_K M_a` for `M = S/I` (side Q) or `M = I` (side I).
#[must_use]
pub fn graded_dim(ideal: &MonomialIdeal, side: ModuleSelector, a: &[u32]) -> u8 {
    let inside = ideal.contains(a);
    u8::from(match side {
        ModuleSelector::I => inside,
        ModuleSelector::Q => !inside,
    })
}

/// An lcm lattice with the multidegree of each element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    pub lattice: Lattice,
    pub degrees: HashMap<VertexSet, Monomial>,
}

impl LcmLattice {
    #[must_use]
    pub fn degree(&self, element: VertexSet) -> Option<&Monomial> {
        self.degrees.get(&element)
    }
}

/// Lattice of lcms of subsets of `gens` (any generating family), each lcm
/// encoded as the set of generators dividing it.
pub fn lcm_lattice_of(n: usize, gens: &[Monomial]) -> Result<LcmLattice, IdealError> {
    let k = gens.len();
    if k > MAX_LATTICE_VERTICES {
        return Err(IdealError::TooManyGenerators(k));
    }
    let mut degrees: HashMap<VertexSet, Monomial> = HashMap::new();
    degrees.insert(VertexSet::EMPTY, Monomial::one(n));
    // lcm of each subset by extending a smaller subset with its lowest vertex
    let mut lcms: Vec<Monomial> = vec![Monomial::one(n); 1 << k];
    for s in 1usize..(1 << k) {
        let low = s.trailing_zeros() as usize;
        lcms[s] = lcms[s & (s - 1)].lcm(&gens[low]);
        let m = &lcms[s];
        let set = VertexSet::from_vertices((0..k).filter(|&i| gens[i].divides(m)));
        degrees.entry(set).or_insert_with(|| m.clone());
    }
    let lattice = Lattice::from_elements(k, degrees.keys().copied())?;
    Ok(LcmLattice { lattice, degrees })
}

/// `L_I` of an ideal with its minimal generators as atoms.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<LcmLattice, IdealError> {
    lcm_lattice_of(ideal.n, &ideal.generators)
}

/// An ideal with lcm lattice isomorphic to `l`: one variable per
/// meet-irreducible `M_j`, and the generator of atom `i` is the product of
/// the variables with `i ∉ M_j`.
///
/// Generators follow the order of the atoms.
pub fn realize(l: &Lattice) -> Result<MonomialIdeal, IdealError> {
    if !l.has_singleton_atoms() {
        return Err(LatticeError::NotAtomistic.into());
    }
    let mis = l.meet_irreducibles();
    let n = mis.len();
    let gens: Vec<Monomial> = l
        .atoms()
        .iter()
        .map(|a| Monomial(mis.iter().map(|m| u32::from(!a.is_subset(*m))).collect()))
        .collect();
    MonomialIdeal::new(n, gens)
}

/// Subsets of generators whose lcm is attained by no other subset.
pub fn scarf_complex_ideal(ideal: &MonomialIdeal) -> Result<Complex, IdealError> {
    let k = ideal.generators.len();
    if k > MAX_LATTICE_VERTICES {
        return Err(IdealError::TooManyGenerators(k));
    }
    let mut lcms: Vec<Monomial> = vec![Monomial::one(ideal.n); 1 << k];
    let mut count: HashMap<Monomial, usize> = HashMap::new();
    *count.entry(Monomial::one(ideal.n)).or_insert(0) += 1;
    for s in 1usize..(1 << k) {
        let low = s.trailing_zeros() as usize;
        lcms[s] = lcms[s & (s - 1)].lcm(&ideal.generators[low]);
        *count.entry(lcms[s].clone()).or_insert(0) += 1;
    }
    let faces = (0usize..(1 << k))
        .filter(|&s| count[&lcms[s]] == 1)
        .map(|s| VertexSet(s as u16));
    Ok(Complex::new(k, faces).expect("in range"))
}

/// Multigraded Betti numbers of `S/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultigradedBetti {
    /// `(i, multidegree) -> β_{i, multidegree}`, nonzero entries only.
    pub entries: BTreeMap<(usize, Monomial), usize>,
    pub totals: BettiVector,
}

impl MultigradedBetti {
    #[must_use]
    pub fn at(&self, i: usize, m: &Monomial) -> usize {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }
}

/// `β_{i,m}(S/I)` through the lattice Betti numbers of `L_I`.
pub fn multigraded_betti(ideal: &MonomialIdeal, field: Field) -> Result<MultigradedBetti, IdealError> {
    let lcm = lcm_lattice(ideal)?;
    let betti = lcm.lattice.lattice_betti(field)?;
    let mut entries = BTreeMap::new();
    for (element, b) in &betti.per_element {
        for (i, &r) in b.ranks.iter().enumerate() {
            if r > 0 {
                entries.insert((i, lcm.degrees[element].clone()), r);
            }
        }
    }
    Ok(MultigradedBetti { entries, totals: betti.totals })
}
