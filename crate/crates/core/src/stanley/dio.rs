//! The linear Diophantine system whose nonnegative solutions are Hilbert
//! decompositions of `S/I` or `I` with all parts of dimension at least `h`.
//!
//! Degrees are restricted to the box `0 ⪯ a ⪯ g` with `g` the lcm of the
//! generators. A variable `c_{F,b}` stands for the part `x^b K[x_F]`; since
//! the module is `g`-determined, `F` must contain `b_max = {j : b_j = g_j}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::{graded_dim, lcm_of_generators, ModuleSelector, MonomialIdeal};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

use super::solver::{solve_feasibility, Solution};

/// Largest number of lattice points in the degree box.
pub const MAX_BOX_VOLUME: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DioError {
    #[error("{0} variables exceed the supported maximum of {MAX_VERTICES}")]
    TooManyVariables(usize),
    #[error("degree box has {0} points, more than {MAX_BOX_VOLUME}")]
    BoxTooLarge(usize),
    #[error("part size {h} exceeds the number of variables {n}")]
    DepthTooLarge { h: usize, n: usize },
    #[error("solver budget exhausted after {nodes} nodes")]
    Timeout { nodes: u64 },
}

/// Enumerates the degree box `0 ⪯ a ⪯ g`; index `Σ a_j·stride_j` with the first
/// coordinate varying fastest, which is a linear extension of `⪯`.
#[derive(Debug, Clone)]
pub struct DegreeBox {
    pub g: Vec<u32>,
    strides: Vec<usize>,
    volume: usize,
}

impl DegreeBox {
    pub fn new(g: &[u32]) -> Result<Self, DioError> {
        let mut strides = Vec::with_capacity(g.len());
        let mut volume: usize = 1;
        for &x in g {
            strides.push(volume);
            volume = volume
                .checked_mul(x as usize + 1)
                .filter(|v| *v <= MAX_BOX_VOLUME)
                .ok_or(DioError::BoxTooLarge(usize::MAX))?;
        }
        Ok(DegreeBox { g: g.to_vec(), strides, volume })
    }

    #[must_use]
    pub fn volume(&self) -> usize {
        self.volume
    }

    #[must_use]
    pub fn index(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.strides).map(|(x, s)| *x as usize * s).sum()
    }

    #[must_use]
    pub fn point(&self, mut index: usize) -> Vec<u32> {
        self.g
            .iter()
            .map(|&x| {
                let r = x as usize + 1;
                let c = index % r;
                index /= r;
                c as u32
            })
            .collect()
    }

    /// `{j : a_j = g_j}`.
    #[must_use]
    pub fn max_set(&self, a: &[u32]) -> VertexSet {
        VertexSet::from_vertices((0..a.len()).filter(|&j| a[j] == self.g[j]))
    }

    /// Indices of the interval `[b, b ∨ g_F]`: coordinates in `F` range up to
    /// `g`, the others stay at `b`.
    #[must_use]
    pub fn interval(&self, b: &[u32], f: VertexSet) -> Vec<usize> {
        let mut out = vec![self.index(b)];
        for j in f.iter() {
            let steps = (self.g[j] - b[j]) as usize;
            let len = out.len();
            for s in 1..=steps {
                for i in 0..len {
                    out.push(out[i] + s * self.strides[j]);
                }
            }
        }
        out
    }
}

/// The unknown `c_{F,b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DioVariable {
    pub f: VertexSet,
    pub b: Vec<u32>,
}

/// `Σ_{vars} c = rhs` for one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DioEquation {
    pub degree: Vec<u32>,
    pub vars: Vec<usize>,
    pub rhs: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DioSystem {
    pub n: usize,
    pub g: Vec<u32>,
    pub h: usize,
    pub side: ModuleSelector,
    pub variables: Vec<DioVariable>,
    pub equations: Vec<DioEquation>,
}

/// Builds the system for parts of size `max(h, |b_max|)`.
///
/// Exactly `h` is impossible when `|b_max| > h`; such parts keep the forced
/// directions `b_max` and nothing else, which still covers every
/// decomposition of depth at least `h` after splitting.
pub fn build_dio_system(ideal: &MonomialIdeal, side: ModuleSelector, h: usize) -> Result<DioSystem, DioError> {
    let n = ideal.n();
    if n > MAX_VERTICES {
        return Err(DioError::TooManyVariables(n));
    }
    if h > n {
        return Err(DioError::DepthTooLarge { h, n });
    }
    let g = lcm_of_generators(ideal).0;
    let boxx = DegreeBox::new(&g)?;
    let mut equations: Vec<DioEquation> = (0..boxx.volume())
        .map(|i| {
            let degree = boxx.point(i);
            let rhs = u32::from(graded_dim(ideal, side, &degree));
            DioEquation { degree, vars: Vec::new(), rhs }
        })
        .collect();
    let all = VertexSet::full(n);
    let mut variables = Vec::new();
    for i in 0..boxx.volume() {
        if equations[i].rhs == 0 {
            continue;
        }
        let b = equations[i].degree.clone();
        let bmax = boxx.max_set(&b);
        let size = h.max(bmax.len());
        for extra in all.difference(bmax).subsets() {
            if extra.len() + bmax.len() != size {
                continue;
            }
            let f = bmax.union(extra);
            let v = variables.len();
            for idx in boxx.interval(&b, f) {
                equations[idx].vars.push(v);
            }
            variables.push(DioVariable { f, b: b.clone() });
        }
    }
    for e in &mut equations {
        e.vars.sort_unstable();
    }
    Ok(DioSystem { n, g, h, side, variables, equations })
}

/// One Stanley space `x^b K[x_Z]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub b: Vec<u32>,
    pub z: VertexSet,
}

/// A Hilbert decomposition of `S/I` or `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertDecomposition {
    pub n: usize,
    pub side: ModuleSelector,
    pub parts: Vec<Part>,
}

/// On-disk form: `{"n", "side", "parts": [{"b": [...], "z": [...]}]}` with
/// 1-based variable indices in `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub n: usize,
    pub side: ModuleSelector,
    pub parts: Vec<PartRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRecord {
    pub b: Vec<u32>,
    pub z: Vec<u32>,
}

impl HilbertDecomposition {
    /// Smallest part dimension (the depth the decomposition witnesses).
    #[must_use]
    pub fn depth(&self) -> usize {
        self.parts.iter().map(|p| p.z.len()).min().unwrap_or(self.n)
    }

    #[must_use]
    pub fn to_record(&self) -> DecompositionRecord {
        DecompositionRecord {
            n: self.n,
            side: self.side,
            parts: self
                .parts
                .iter()
                .map(|p| PartRecord { b: p.b.clone(), z: p.z.to_one_based() })
                .collect(),
        }
    }

    pub fn from_record(rec: &DecompositionRecord) -> Result<Self, String> {
        let parts = rec
            .parts
            .iter()
            .map(|p| {
                if p.b.len() != rec.n {
                    return Err(format!("part has {} exponents, expected {}", p.b.len(), rec.n));
                }
                let z = crate::json::parse_set(&p.z, rec.n).map_err(|e| e.to_string())?;
                Ok(Part { b: p.b.clone(), z })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HilbertDecomposition { n: rec.n, side: rec.side, parts })
    }
}

/// Reads the parts off a solution (a value `c > 1` repeats the part).
#[must_use]
pub fn extract_decomposition(sys: &DioSystem, values: &[u32]) -> HilbertDecomposition {
    let mut parts = Vec::new();
    for (v, &c) in sys.variables.iter().zip(values) {
        for _ in 0..c {
            parts.push(Part { b: v.b.clone(), z: v.f });
        }
    }
    parts.sort();
    HilbertDecomposition { n: sys.n, side: sys.side, parts }
}

/// Checks `#{parts (b, Z) : b ⪯ a, supp(a - b) ⊆ Z} = dim M_a` for all
/// `a ⪯ g`; parts must satisfy `b ⪯ g` and `b_max ⊆ Z`.
#[must_use]
pub fn verify_decomposition(ideal: &MonomialIdeal, side: ModuleSelector, d: &HilbertDecomposition) -> bool {
    let n = ideal.n();
    if d.n != n || d.side != side || n > MAX_VERTICES {
        return false;
    }
    let g = lcm_of_generators(ideal).0;
    let Ok(boxx) = DegreeBox::new(&g) else { return false };
    let mut count = vec![0u32; boxx.volume()];
    for p in &d.parts {
        if p.b.len() != n || p.b.iter().zip(&g).any(|(x, y)| x > y) || !p.z.fits(n) {
            return false;
        }
        if !boxx.max_set(&p.b).is_subset(p.z) {
            return false;
        }
        for idx in boxx.interval(&p.b, p.z) {
            count[idx] += 1;
        }
    }
    (0..boxx.volume()).all(|i| count[i] == u32::from(graded_dim(ideal, side, &boxx.point(i))))
}

/// Outcome of [`hilbert_depth`]: the depth and a decomposition attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthResult {
    pub depth: usize,
    pub decomposition: HilbertDecomposition,
}

/// Largest `h` with a feasible system, scanning down from `n` (side I) or
/// `n - 1` (side Q).
pub fn hilbert_depth(ideal: &MonomialIdeal, side: ModuleSelector, budget: u64) -> Result<DepthResult, DioError> {
    let n = ideal.n();
    let start = match side {
        ModuleSelector::I => n,
        ModuleSelector::Q => n.saturating_sub(1),
    };
    for h in (0..=start).rev() {
        let sys = build_dio_system(ideal, side, h)?;
        match solve_feasibility(&sys, budget) {
            Solution::Feasible(values) => {
                return Ok(DepthResult { depth: h, decomposition: extract_decomposition(&sys, &values) });
            }
            Solution::Infeasible => {}
            Solution::Timeout { nodes } => return Err(DioError::Timeout { nodes }),
        }
    }
    unreachable!("the system for h = 0 is always feasible")
}
