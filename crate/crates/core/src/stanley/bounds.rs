//! Lower and upper bounds on the Stanley projective dimension of a lattice.

use crate::field::Field;
use crate::ideal::ModuleSelector;
use crate::lattice::Lattice;
use crate::stoss::{detect_amalgamation, maximal_lattice};

use super::reduction::{search_reduction, Registry, SearchOutcome};

/// `lower ≤ spdim_side(L) ≤ upper`, with a short description of each witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpdimBounds {
    pub lower: usize,
    pub upper: usize,
    pub lower_witness: String,
    pub upper_witness: String,
}

impl SpdimBounds {
    fn improve_lower(&mut self, value: usize, witness: impl Into<String>) {
        if value > self.lower {
            self.lower = value;
            self.lower_witness = witness.into();
        }
    }

    fn improve_upper(&mut self, value: usize, witness: impl Into<String>) {
        if value < self.upper {
            self.upper = value;
            self.upper_witness = witness.into();
        }
    }
}

/// True if `l` is `L_Δ` for its own Scarf complex.
#[must_use]
pub fn is_maximal(l: &Lattice) -> bool {
    if !l.is_atomistic() {
        return false;
    }
    let c = l.compressed();
    let Ok(scarf) = c.scarf_complex() else { return false };
    maximal_lattice(&scarf, Field::Rational).is_ok_and(|m| m.lattice == c)
}

/// Bounds from the boolean case, maximality, the rank bound, the reduction
/// search (target `pdim` on side Q, `pdim - 1` on side I) and, recursively,
/// amalgamation splits.
#[must_use]
pub fn spdim_bounds(l: &Lattice, side: ModuleSelector, budget: u64, registry: Option<&Registry>) -> SpdimBounds {
    let l = &l.compressed();
    let r = l.top().len();
    let rank_bound = match side {
        ModuleSelector::Q => r,
        ModuleSelector::I => r / 2,
    };
    let mut b = SpdimBounds {
        lower: 0,
        upper: rank_bound,
        lower_witness: "trivial".into(),
        upper_witness: "rank bound".into(),
    };
    if l.len() == 1 << r {
        b.improve_lower(rank_bound, "boolean lattice");
    }
    let pdim = l.pdim(Field::Rational).unwrap_or(r);
    if side == ModuleSelector::Q && is_maximal(l) {
        b.improve_lower(pdim, "maximal lattice: spdim_Q >= pdim");
    }
    if let Some(entry) = registry.and_then(|reg| reg.lookup(l, side)) {
        b.improve_upper(entry.bound, format!("registry:{}", entry.name));
    }
    let target = match side {
        ModuleSelector::Q => pdim,
        ModuleSelector::I => pdim.saturating_sub(1),
    };
    if target < b.upper {
        if let SearchOutcome::Certified(cert) = search_reduction(l, target, side, budget, registry) {
            b.improve_upper(target, format!("reduction certificate ({} deletions, base {})", cert.deletions.len(), cert.base));
        }
    }
    if side == ModuleSelector::Q && l.is_atomistic() {
        if let Ok(Some(split)) = detect_amalgamation(l) {
            let b1 = spdim_bounds(&split.l1, side, budget, registry);
            let b2 = spdim_bounds(&split.l2.atomistic_sublattice(), side, budget, registry);
            b.improve_upper(b1.upper + 1, "amalgamation: spdim L1 + 1");
            b.improve_lower(b1.lower, "amalgamation: spdim L1");
            b.improve_lower(b2.lower + 1, "amalgamation: spdim L2 + 1");
        }
    }
    b
}
