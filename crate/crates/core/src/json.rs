//! Flat JSON records for complexes, lattices, ideals, certificates and
//! decompositions. Vertex and variable labels are 1-based on disk.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::{Monomial, MonomialIdeal};
use crate::lattice::Lattice;
use crate::simplicial::Complex;
use crate::vertex_set::VertexSet;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid record: {0}")]
    Invalid(String),
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
}

fn to_set(labels: &[u32], k: usize) -> Result<VertexSet, JsonError> {
    let mut s = VertexSet::EMPTY;
    for &x in labels {
        if x == 0 || x as usize > k {
            return Err(JsonError::Invalid(format!("label {x} outside 1..={k}")));
        }
        s = s.with(x as usize - 1);
    }
    Ok(s)
}

/// `{"k": int, "facets": [[int, ...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub k: usize,
    pub facets: Vec<Vec<u32>>,
}

impl From<&Complex> for ComplexRecord {
    fn from(c: &Complex) -> Self {
        ComplexRecord {
            k: c.k(),
            facets: c.facets().iter().map(|f| f.to_one_based()).collect(),
        }
    }
}

impl ComplexRecord {
    pub fn to_complex(&self) -> Result<Complex, JsonError> {
        let faces = self
            .facets
            .iter()
            .map(|f| to_set(f, self.k))
            .collect::<Result<Vec<_>, _>>()?;
        Complex::new(self.k, faces).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

/// `{"k": int, "elements": [[int, ...], ...]}` with `∅` as `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub k: usize,
    pub elements: Vec<Vec<u32>>,
}

impl From<&Lattice> for LatticeRecord {
    fn from(l: &Lattice) -> Self {
        LatticeRecord {
            k: l.k(),
            elements: l.elements().iter().map(|e| e.to_one_based()).collect(),
        }
    }
}

impl LatticeRecord {
    pub fn to_lattice(&self) -> Result<Lattice, JsonError> {
        let els = self
            .elements
            .iter()
            .map(|e| to_set(e, self.k))
            .collect::<Result<Vec<_>, _>>()?;
        Lattice::from_elements(self.k, els).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

/// `{"n": int, "generators": [[int, ...], ...]}` (exponent vectors).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRecord {
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
}

impl From<&MonomialIdeal> for IdealRecord {
    fn from(i: &MonomialIdeal) -> Self {
        IdealRecord {
            n: i.n(),
            generators: i.generators().iter().map(|g| g.0.clone()).collect(),
        }
    }
}

impl IdealRecord {
    pub fn to_ideal(&self) -> Result<MonomialIdeal, JsonError> {
        let gens = self.generators.iter().map(|g| Monomial(g.clone())).collect();
        MonomialIdeal::new(self.n, gens).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

/// Parses a 1-based label list into a set on `[k]`.
pub fn parse_set(labels: &[u32], k: usize) -> Result<VertexSet, JsonError> {
    to_set(labels, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_round_trip() {
        let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1]]).unwrap();
        let text = serde_json::to_string(&IdealRecord::from(&i)).unwrap();
        assert_eq!(text, r#"{"n":2,"generators":[[2,0],[1,1]]}"#);
        let back: IdealRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_ideal().unwrap(), i);
        let bad: IdealRecord = serde_json::from_str(r#"{"n":2,"generators":[[1]]}"#).unwrap();
        assert!(bad.to_ideal().is_err());
    }

    #[test]
    fn complex_round_trip() {
        let c = Complex::from_digits(4, "12 23 34").unwrap();
        let rec = ComplexRecord::from(&c);
        assert_eq!(rec.facets[0], vec![1, 2]);
        let text = serde_json::to_string(&rec).unwrap();
        let back: ComplexRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_complex().unwrap(), c);
    }

    #[test]
    fn lattice_round_trip_and_validation() {
        let l = Lattice::boolean(2);
        let rec = LatticeRecord::from(&l);
        assert_eq!(rec.elements[0], Vec::<u32>::new());
        assert_eq!(rec.to_lattice().unwrap(), l);
        let bad = LatticeRecord { k: 2, elements: vec![vec![], vec![3]] };
        assert!(bad.to_lattice().is_err());
    }
}
