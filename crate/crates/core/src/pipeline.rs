//! Drivers for the six- and seven-generator classifications: the named
//! six-vertex complexes, the P₂ integer program, and per-class outcomes for
//! the quotient and ideal sides.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::ideal::{realize, IdealError, ModuleSelector};
use crate::json::ComplexRecord;
use crate::simplicial::Complex;
use crate::stanley::dio::{build_dio_system, extract_decomposition, DioError, HilbertDecomposition};
use crate::stanley::{search_reduction, verify_decomposition, Registry, SearchOutcome};
use crate::stanley::solver::{solve_feasibility, Solution};
use crate::stoss::{detect_amalgamation, maximal_lattice, StossError};
use crate::vertex_set::VertexSet;

/// A six-vertex complex from the proof table, with its printed deletion order.
#[derive(Debug, Clone)]
pub struct NamedComplex {
    pub name: &'static str,
    pub complex: Complex,
    pub deletion_order: Option<Vec<VertexSet>>,
}

fn digits(s: &str) -> Vec<VertexSet> {
    s.split_whitespace()
        .map(|t| VertexSet::parse_digits(t).expect("digit labels"))
        .collect()
}

fn six_vertex(top: &str) -> Complex {
    Complex::from_top_faces(6, 2, &digits(top)).expect("six-vertex complex")
}

/// The six-vertex triangulation of the real projective plane.
#[must_use]
pub fn p2_complex() -> Complex {
    six_vertex("123 134 145 156 126 235 346 245 356 246")
}

/// C1, C2, C3 with their printed deletion orders, then P₂.
#[must_use]
pub fn six_vertex_table() -> Vec<NamedComplex> {
    let row = |name, top, order: &str| NamedComplex {
        name,
        complex: six_vertex(top),
        deletion_order: Some(digits(order)),
    };
    vec![
        row("C1", "123 134 145 156 126 234 345 456 256 236", "24 234 25 256 36 236 23 26 2"),
        row("C2", "123 134 145 156 126 234 235 256 346 456", "35 235 36 346 24 234 23 34 3"),
        row("C3", "124 125 134 145 136 235 236 256 346 456", "16 136 13 134 24 124 12 125 15 5"),
        NamedComplex { name: "P2", complex: p2_complex(), deletion_order: None },
    ]
}

/// The C3 order with its last atom replaced by the one that is actually
/// meet-irreducible after the first nine deletions.
#[must_use]
pub fn c3_corrected_order() -> Vec<VertexSet> {
    digits("16 136 13 134 24 124 12 125 15 1")
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Stoss(#[from] StossError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Dio(#[from] DioError),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Result of the `h = n - 3` system for the realized P₂ ideal.
#[derive(Debug, Clone)]
pub struct P2Certificate {
    pub n: usize,
    pub h: usize,
    pub variables: usize,
    pub equations: usize,
    pub solution: Solution,
    pub decomposition: Option<HilbertDecomposition>,
    pub verified: bool,
}

/// Solves the Hilbert decomposition system certifying `spdim_Q L_{P₂} ≤ 3`.
pub fn certify_p2(budget: u64) -> Result<P2Certificate, PipelineError> {
    let m = maximal_lattice(&p2_complex(), Field::Rational)?;
    let ideal = realize(&m.lattice)?;
    let n = ideal.n();
    let h = n - 3;
    let sys = build_dio_system(&ideal, ModuleSelector::Q, h)?;
    let solution = solve_feasibility(&sys, budget);
    let decomposition = match &solution {
        Solution::Feasible(v) => Some(extract_decomposition(&sys, v)),
        _ => None,
    };
    let verified = decomposition
        .as_ref()
        .is_some_and(|d| verify_decomposition(&ideal, ModuleSelector::Q, d));
    Ok(P2Certificate {
        n,
        h,
        variables: sys.variables.len(),
        equations: sys.equations.len(),
        solution,
        decomposition,
        verified,
    })
}

/// A registry holding `spdim_Q L_{P₂} ≤ 3` once the integer program has
/// been solved and its decomposition verified.
pub fn p2_registry(budget: u64) -> Result<(Registry, P2Certificate), PipelineError> {
    let cert = certify_p2(budget)?;
    let registry = Registry::new();
    if cert.verified {
        let m = maximal_lattice(&p2_complex(), Field::Rational)?;
        registry.insert(&m.lattice, ModuleSelector::Q, "P2", 3)?;
    }
    Ok((registry, cert))
}

/// Checks `β(L_Δ) = (1, C(k,1), …, C(k,p-1), C(k-1,p-1))` and that every
/// nonzero `β_{i,a}` sits on a Scarf face `a` with `i = |a|`.
pub fn maximal_betti_matches(c: &Complex) -> Result<bool, PipelineError> {
    let m = maximal_lattice(c, Field::Rational)?;
    let k = c.k();
    let p = m.pdim();
    let betti = m.lattice.lattice_betti(Field::Rational)?;
    let expected = |i: usize| -> usize {
        match i {
            0 => 1,
            _ if i < p => crate::vertex_set::binomial(k as i64, i as i64) as usize,
            _ if i == p => crate::vertex_set::binomial(k as i64 - 1, p as i64 - 1) as usize,
            _ => 0,
        }
    };
    let totals_ok = (0..=k + 1).all(|i| betti.totals.get(i as i32) == expected(i));
    let support_ok = betti.per_element.iter().all(|(a, b)| {
        m.scarf.contains(*a) && (0..=k as i32 + 1).all(|i| b.get(i) == usize::from(i as usize == a.len()))
    });
    Ok(totals_ok && support_ok)
}

/// How one class fared on side Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientOutcome {
    /// Reduction alone reaches a base case.
    Reduced,
    /// Reduction reaches a registered lattice.
    ReducedToKnown,
    Open,
    Timeout,
}

/// How one class fared on side I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealOutcome {
    /// `spdim_I ≤ ⌊k/2⌋ ≤ pdim_I` already.
    RankBound,
    Reduced,
    Open,
    Timeout,
}

/// Side Q with target `pdim`: first without the registry, then with it.
pub fn classify_quotient(c: &Complex, registry: &Registry, budget: u64) -> Result<QuotientOutcome, PipelineError> {
    let m = maximal_lattice(c, Field::Rational)?;
    let p = m.pdim();
    match search_reduction(&m.lattice, p, ModuleSelector::Q, budget, None) {
        SearchOutcome::Certified(_) => return Ok(QuotientOutcome::Reduced),
        SearchOutcome::Timeout { .. } => return Ok(QuotientOutcome::Timeout),
        SearchOutcome::Failed(_) => {}
    }
    if registry.is_empty() {
        return Ok(QuotientOutcome::Open);
    }
    Ok(match search_reduction(&m.lattice, p, ModuleSelector::Q, budget, Some(registry)) {
        SearchOutcome::Certified(_) => QuotientOutcome::ReducedToKnown,
        SearchOutcome::Timeout { .. } => QuotientOutcome::Timeout,
        SearchOutcome::Failed(_) => QuotientOutcome::Open,
    })
}

/// Side I with target `pdim_I = pdim - 1`.
pub fn classify_ideal(c: &Complex, budget: u64) -> Result<IdealOutcome, PipelineError> {
    let m = maximal_lattice(c, Field::Rational)?;
    let p = m.pdim().saturating_sub(1);
    if c.k() / 2 <= p {
        return Ok(IdealOutcome::RankBound);
    }
    Ok(match search_reduction(&m.lattice, p, ModuleSelector::I, budget, None) {
        SearchOutcome::Certified(_) => IdealOutcome::Reduced,
        SearchOutcome::Timeout { .. } => IdealOutcome::Timeout,
        SearchOutcome::Failed(_) => IdealOutcome::Open,
    })
}

/// Per-stage tallies; also the checkpoint format of the driver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageSummary {
    pub name: String,
    pub side: ModuleSelector,
    pub total: usize,
    pub reduced: usize,
    pub reduced_to_known: usize,
    pub rank_bound: usize,
    /// Classes that needed the registry, in enumeration order.
    pub known: Vec<ComplexRecord>,
    pub timeouts: usize,
    /// Unresolved classes in enumeration order.
    pub open: Vec<ComplexRecord>,
    /// How many open classes are acyclic over 𝔽₂.
    pub open_f2_acyclic: usize,
    /// How many open classes are amalgamations.
    pub open_amalgamations: usize,
}

impl StageSummary {
    fn new(name: &str, side: ModuleSelector, total: usize) -> Self {
        StageSummary {
            name: name.to_string(),
            side,
            total,
            reduced: 0,
            reduced_to_known: 0,
            rank_bound: 0,
            known: Vec::new(),
            timeouts: 0,
            open: Vec::new(),
            open_f2_acyclic: 0,
            open_amalgamations: 0,
        }
    }

    fn record_open(&mut self, c: &Complex) -> Result<(), PipelineError> {
        if c.is_acyclic(Field::F2) {
            self.open_f2_acyclic += 1;
        }
        let m = maximal_lattice(c, Field::Rational)?;
        if detect_amalgamation(&m.lattice)?.is_some() {
            self.open_amalgamations += 1;
        }
        self.open.push(ComplexRecord::from(c));
        Ok(())
    }

    /// Classes with neither a certificate nor a timeout.
    #[must_use]
    pub fn unresolved(&self) -> usize {
        self.open.len()
    }
}

/// Runs side Q over `classes` in parallel; the summary lists open classes in
/// input order, whatever the thread count.
pub fn run_quotient_stage(
    name: &str,
    classes: &[Complex],
    registry: &Registry,
    budget: u64,
) -> Result<StageSummary, PipelineError> {
    let outcomes: Vec<QuotientOutcome> = classes
        .par_iter()
        .map(|c| classify_quotient(c, registry, budget))
        .collect::<Result<_, _>>()?;
    let mut s = StageSummary::new(name, ModuleSelector::Q, classes.len());
    for (c, o) in classes.iter().zip(outcomes) {
        match o {
            QuotientOutcome::Reduced => s.reduced += 1,
            QuotientOutcome::ReducedToKnown => {
                s.reduced_to_known += 1;
                s.known.push(ComplexRecord::from(c));
            }
            QuotientOutcome::Timeout => s.timeouts += 1,
            QuotientOutcome::Open => s.record_open(c)?,
        }
    }
    Ok(s)
}

/// Runs side I over `classes` in parallel.
pub fn run_ideal_stage(name: &str, classes: &[Complex], budget: u64) -> Result<StageSummary, PipelineError> {
    let outcomes: Vec<IdealOutcome> = classes
        .par_iter()
        .map(|c| classify_ideal(c, budget))
        .collect::<Result<_, _>>()?;
    let mut s = StageSummary::new(name, ModuleSelector::I, classes.len());
    for (c, o) in classes.iter().zip(outcomes) {
        match o {
            IdealOutcome::RankBound => s.rank_bound += 1,
            IdealOutcome::Reduced => s.reduced += 1,
            IdealOutcome::Timeout => s.timeouts += 1,
            IdealOutcome::Open => s.record_open(c)?,
        }
    }
    Ok(s)
}
