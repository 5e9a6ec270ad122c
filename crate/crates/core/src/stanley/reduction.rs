//! Deleting meet-irreducible elements: single-step validity, certificates
//! that replay a deletion order, and a depth-first search for such orders.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::CanonicalForm;
use crate::field::Field;
use crate::ideal::ModuleSelector;
use crate::json::parse_set;
use crate::lattice::{Lattice, LatticeError};
use crate::vertex_set::VertexSet;

/// Why a deletion is or is not allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepReason {
    RankBelowTarget,
    RankAtTargetOffScarf,
    RankBelowTwiceTarget,
    NotAnElement,
    BottomOrTop,
    NotMeetIrreducible,
    InScarfAtTarget,
    RankTooLarge,
    LowerIntervalBelowTarget,
}

impl StepReason {
    #[must_use]
    pub fn is_valid(self) -> bool {
        matches!(
            self,
            StepReason::RankBelowTarget | StepReason::RankAtTargetOffScarf
                | StepReason::RankBelowTwiceTarget
                | StepReason::LowerIntervalBelowTarget
        )
    }
}

impl fmt::Display for StepReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepReason::RankBelowTarget => "rank below target",
            StepReason::RankAtTargetOffScarf => "rank equals target and not in the Scarf complex",
            StepReason::RankBelowTwiceTarget => "rank below twice the target",
            StepReason::NotAnElement => "not an element",
            StepReason::BottomOrTop => "bottom or top element",
            StepReason::NotMeetIrreducible => "not meet-irreducible",
            StepReason::InScarfAtTarget => "rank equals target and in the Scarf complex",
            StepReason::RankTooLarge => "rank too large",
            StepReason::LowerIntervalBelowTarget => "lower interval has few atoms and small pdim",
        })
    }
}

/// Lattices with at most this many atoms satisfy `spdim_Q ≤ pdim` and
/// `spdim_I ≤ pdim - 1`.
pub const FEW_ATOMS: usize = 5;

fn few_atoms_bound(l: &Lattice, side: ModuleSelector) -> Option<usize> {
    let pd = l.pdim(Field::Rational).ok()?;
    Some(match side {
        ModuleSelector::Q => pd,
        ModuleSelector::I => pd.saturating_sub(1),
    })
}

/// Checks whether deleting `a` from `l` keeps `spdim ≤ max(p, spdim(L \ a))`.
///
/// Besides the rank tests, `a` qualifies when `L_{≤a}` has at most
/// [`FEW_ATOMS`] atoms and the bound this gives for its `spdim` is below `p`.
#[must_use]
pub fn reduction_step_valid(l: &Lattice, a: VertexSet, p: usize, side: ModuleSelector) -> StepReason {
    reduction_step_valid_with_limit(l, a, p, side, FEW_ATOMS)
}

/// [`reduction_step_valid`] trusting the few-atoms bound only up to `few_atoms`.
#[must_use]
pub fn reduction_step_valid_with_limit(
    l: &Lattice,
    a: VertexSet,
    p: usize,
    side: ModuleSelector,
    few_atoms: usize,
) -> StepReason {
    if !l.contains(a) {
        return StepReason::NotAnElement;
    }
    if a.is_empty() || a == l.top() {
        return StepReason::BottomOrTop;
    }
    if !l.is_meet_irreducible(a) {
        return StepReason::NotMeetIrreducible;
    }
    let r = l.rank(a).expect("element");
    if r < p {
        return StepReason::RankBelowTarget;
    }
    if side == ModuleSelector::I && r < 2 * p {
        return StepReason::RankBelowTwiceTarget;
    }
    if r == p && !l.in_scarf(a) {
        return StepReason::RankAtTargetOffScarf;
    }
    if r <= few_atoms {
        let below = l.lower_interval(a).expect("element");
        if few_atoms_bound(&below, side).is_some_and(|b| b < p) {
            return StepReason::LowerIntervalBelowTarget;
        }
    }
    if r == p {
        return StepReason::InScarfAtTarget;
    }
    StepReason::RankTooLarge
}

/// `L \ {a}`, restricted to its atomistic part when `a` was an atom.
///
/// Labels are kept: a removed atom becomes a ghost vertex.
pub fn apply_reduction(l: &Lattice, a: VertexSet) -> Result<Lattice, LatticeError> {
    let smaller = l.remove_element(a)?;
    if smaller.is_atomistic() {
        Ok(smaller)
    } else {
        Ok(smaller.atomistic_sublattice())
    }
}

/// The final case a deletion order ends in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseCase {
    /// At most this many atoms (never more than [`FEW_ATOMS`]):
    /// `spdim_Q ≤ pdim`, `spdim_I ≤ pdim - 1`.
    FewAtoms(usize),
    /// A boolean lattice `B_r`: `spdim_Q = r`, `spdim_I = ⌊r/2⌋`.
    Boolean,
    /// `r` atoms: `spdim_Q ≤ r`, `spdim_I ≤ ⌊r/2⌋`.
    RankBound,
    /// A registered lattice with a known bound.
    Registry(String),
}

impl fmt::Display for BaseCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseCase::FewAtoms(n) => write!(f, "atoms<={n}"),
            BaseCase::Boolean => f.write_str("boolean"),
            BaseCase::RankBound => f.write_str("rank-bound"),
            BaseCase::Registry(name) => write!(f, "registry:{name}"),
        }
    }
}

impl std::str::FromStr for BaseCase {
    type Err = CertificateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(n) = s.strip_prefix("atoms<=") {
            return match n.parse::<usize>() {
                Ok(n) if n <= FEW_ATOMS => Ok(BaseCase::FewAtoms(n)),
                _ => Err(CertificateError::Malformed(format!("unsupported base case {s:?}"))),
            };
        }
        match s {
            "boolean" => Ok(BaseCase::Boolean),
            "rank-bound" => Ok(BaseCase::RankBound),
            _ => s
                .strip_prefix("registry:")
                .map(|n| BaseCase::Registry(n.to_string()))
                .ok_or_else(|| CertificateError::Malformed(format!("unknown base case {s:?}"))),
        }
    }
}

/// A known spdim bound for a lattice up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub name: String,
    pub bound: usize,
}

/// Shared table of certified bounds keyed by canonical form and side.
#[derive(Debug, Default)]
pub struct Registry {
    entries: RwLock<HashMap<(CanonicalForm, ModuleSelector), RegistryEntry>>,
}

impl Registry {
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `spdim_side(L) ≤ bound` (later inserts replace earlier ones).
    pub fn insert(&self, l: &Lattice, side: ModuleSelector, name: &str, bound: usize) -> Result<(), LatticeError> {
        let key = (l.canonicalize()?, side);
        let entry = RegistryEntry { name: name.to_string(), bound };
        self.entries.write().expect("registry lock").insert(key, entry);
        Ok(())
    }

    #[must_use]
    pub fn lookup(&self, l: &Lattice, side: ModuleSelector) -> Option<RegistryEntry> {
        let key = (l.canonicalize().ok()?, side);
        self.lookup_form(&key.0, side)
    }

    fn lookup_form(&self, form: &CanonicalForm, side: ModuleSelector) -> Option<RegistryEntry> {
        self.entries
            .read()
            .expect("registry lock")
            .get(&(form.clone(), side))
            .cloned()
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.entries.read().expect("registry lock").len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A deletion order that reduces a lattice to a base case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub side: ModuleSelector,
    pub target_p: usize,
    pub deletions: Vec<VertexSet>,
    pub base: BaseCase,
}

/// On-disk form of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub side: ModuleSelector,
    pub target_p: usize,
    pub deletions: Vec<Vec<u32>>,
    pub base: String,
}

impl ReductionCertificate {
    #[must_use]
    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            side: self.side,
            target_p: self.target_p,
            deletions: self.deletions.iter().map(|d| d.to_one_based()).collect(),
            base: self.base.to_string(),
        }
    }

    /// Reads a record; `k` is the ground set size of the lattice it refers to.
    pub fn from_record(rec: &CertificateRecord, k: usize) -> Result<Self, CertificateError> {
        let deletions = rec
            .deletions
            .iter()
            .map(|d| parse_set(d, k).map_err(|e| CertificateError::Malformed(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ReductionCertificate {
            side: rec.side,
            target_p: rec.target_p,
            deletions,
            base: rec.base.parse()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("step {index} deleting {element:?} is invalid: {reason}")]
    InvalidStep { index: usize, element: VertexSet, reason: StepReason },
    #[error("the reduced lattice does not satisfy the base case {0}")]
    BaseCaseFails(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Bound provided by a base case, if it applies.
fn base_bound(l: &Lattice, side: ModuleSelector, base: &BaseCase, registry: Option<&Registry>) -> Option<usize> {
    let r = l.top().len();
    match base {
        BaseCase::Boolean => (l.len() == 1 << r).then_some(side_bound(side, r)),
        BaseCase::RankBound => Some(side_bound(side, r)),
        BaseCase::FewAtoms(n) => {
            if r > (*n).min(FEW_ATOMS) {
                return None;
            }
            few_atoms_bound(l, side)
        }
        BaseCase::Registry(name) => {
            let entry = registry?.lookup(l, side)?;
            (entry.name == *name).then_some(entry.bound)
        }
    }
}

fn side_bound(side: ModuleSelector, r: usize) -> usize {
    match side {
        ModuleSelector::Q => r,
        ModuleSelector::I => r / 2,
    }
}

/// The first base case whose bound is at most `p`.
fn find_base(
    l: &Lattice,
    p: usize,
    side: ModuleSelector,
    few_atoms: usize,
    registry: Option<&Registry>,
    form: Option<&CanonicalForm>,
) -> Option<BaseCase> {
    let r = l.top().len();
    if l.len() == 1 << r && side_bound(side, r) <= p {
        return Some(BaseCase::Boolean);
    }
    if side_bound(side, r) <= p {
        return Some(BaseCase::RankBound);
    }
    let few = BaseCase::FewAtoms(few_atoms);
    if r <= few_atoms && base_bound(l, side, &few, None).is_some_and(|b| b <= p) {
        return Some(few);
    }
    let registry = registry?;
    let entry = match form {
        Some(f) => registry.lookup_form(f, side),
        None => registry.lookup(l, side),
    }?;
    (entry.bound <= p).then_some(BaseCase::Registry(entry.name))
}

/// Replays a certificate; returns the certified bound `max(target_p, base bound)`.
pub fn verify_certificate(
    l: &Lattice,
    cert: &ReductionCertificate,
    registry: Option<&Registry>,
) -> Result<usize, CertificateError> {
    let few_atoms = match cert.base {
        BaseCase::FewAtoms(n) => n.min(FEW_ATOMS),
        _ => FEW_ATOMS,
    };
    let mut cur = l.clone();
    for (index, &element) in cert.deletions.iter().enumerate() {
        let reason = reduction_step_valid_with_limit(&cur, element, cert.target_p, cert.side, few_atoms);
        if !reason.is_valid() {
            return Err(CertificateError::InvalidStep { index, element, reason });
        }
        cur = apply_reduction(&cur, element)?;
    }
    let bound = base_bound(&cur, cert.side, &cert.base, registry)
        .ok_or_else(|| CertificateError::BaseCaseFails(cert.base.to_string()))?;
    Ok(bound.max(cert.target_p))
}

/// Why a search did not produce a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    /// No deletion is valid in the input lattice.
    NoValidFirstStep,
    /// Every deletion order was explored.
    Exhausted { nodes: u64 },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::NoValidFirstStep => f.write_str("no valid deletion"),
            FailureReason::Exhausted { nodes } => write!(f, "search exhausted after {nodes} nodes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Certified(ReductionCertificate),
    Failed(FailureReason),
    Timeout { nodes: u64 },
}

impl SearchOutcome {
    #[must_use]
    pub fn certificate(&self) -> Option<&ReductionCertificate> {
        match self {
            SearchOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Default node budget for [`search_reduction`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

struct Search<'a> {
    p: usize,
    side: ModuleSelector,
    few_atoms: usize,
    budget: u64,
    nodes: u64,
    registry: Option<&'a Registry>,
    failed: HashSet<CanonicalForm>,
    path: Vec<VertexSet>,
}

struct OutOfBudget;

impl Search<'_> {
    fn valid(&self, l: &Lattice, a: VertexSet) -> bool {
        reduction_step_valid_with_limit(l, a, self.p, self.side, self.few_atoms).is_valid()
    }

    fn valid_atoms(&self, l: &Lattice) -> Vec<VertexSet> {
        l.top()
            .iter()
            .map(VertexSet::singleton)
            .filter(|a| l.contains(*a) && self.valid(l, *a))
            .collect()
    }

    /// Deletes valid non-atoms until none is left, recording them.
    fn saturate(&self, l: &Lattice, out: &mut Vec<VertexSet>) -> Lattice {
        let mut cur = l.clone();
        loop {
            let mut batch: Vec<VertexSet> = cur
                .elements()
                .iter()
                .copied()
                .filter(|a| a.len() >= 2 && self.valid(&cur, *a))
                .collect();
            if batch.is_empty() {
                return cur;
            }
            batch.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
            for &a in &batch {
                cur = cur.remove_element(a).expect("meet-irreducible stays removable");
            }
            out.extend(batch);
        }
    }

    fn dfs(&mut self, l: &Lattice) -> Result<Option<BaseCase>, OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        let form = l.canonicalize().expect("at most nine atoms");
        if let Some(base) = find_base(l, self.p, self.side, self.few_atoms, self.registry, Some(&form)) {
            return Ok(Some(base));
        }
        if self.failed.contains(&form) {
            return Ok(None);
        }
        let mut sat_steps = Vec::new();
        let sat = self.saturate(l, &mut sat_steps);
        let depth = self.path.len();
        if !sat_steps.is_empty() {
            self.path.extend(&sat_steps);
            if let Some(base) = find_base(&sat, self.p, self.side, self.few_atoms, self.registry, None) {
                return Ok(Some(base));
            }
            for a in self.valid_atoms(&sat) {
                self.path.push(a);
                let next = apply_reduction(&sat, a).expect("valid deletion");
                if let Some(base) = self.dfs(&next)? {
                    return Ok(Some(base));
                }
                self.path.pop();
            }
            self.path.truncate(depth);
        }
        for a in self.valid_atoms(l) {
            self.path.push(a);
            let next = apply_reduction(l, a).expect("valid deletion");
            if let Some(base) = self.dfs(&next)? {
                return Ok(Some(base));
            }
            self.path.pop();
        }
        self.failed.insert(form);
        Ok(None)
    }
}

/// Depth-first search for a deletion order certifying `spdim_side(L) ≤ p`.
///
/// Valid non-atoms are deleted eagerly; atoms are branched on both before and
/// after that saturation. Failed lattices are memoized by canonical form.
#[must_use]
pub fn search_reduction(
    l: &Lattice,
    p: usize,
    side: ModuleSelector,
    budget: u64,
    registry: Option<&Registry>,
) -> SearchOutcome {
    search_reduction_with_limit(l, p, side, budget, registry, FEW_ATOMS)
}

/// [`search_reduction`] trusting the few-atoms bound only up to `few_atoms`,
/// both as a base case and for lower intervals.
#[must_use]
pub fn search_reduction_with_limit(
    l: &Lattice,
    p: usize,
    side: ModuleSelector,
    budget: u64,
    registry: Option<&Registry>,
    few_atoms: usize,
) -> SearchOutcome {
    let mut search = Search {
        p,
        side,
        few_atoms: few_atoms.min(FEW_ATOMS),
        budget,
        nodes: 0,
        registry,
        failed: HashSet::new(),
        path: Vec::new(),
    };
    let has_first_step = l.elements().iter().any(|a| search.valid(l, *a));
    match search.dfs(l) {
        Err(OutOfBudget) => SearchOutcome::Timeout { nodes: search.nodes },
        Ok(Some(base)) => SearchOutcome::Certified(ReductionCertificate {
            side,
            target_p: p,
            deletions: search.path,
            base,
        }),
        Ok(None) if !has_first_step => SearchOutcome::Failed(FailureReason::NoValidFirstStep),
        Ok(None) => SearchOutcome::Failed(FailureReason::Exhausted { nodes: search.nodes }),
    }
}
