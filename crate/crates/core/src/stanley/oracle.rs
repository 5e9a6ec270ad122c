//! Stanley depth by exhaustive interval partitions of the `g`-box.
//!
//! A partition of the support poset `P` into intervals `[b, d]` with
//! `ρ(d) = #{j : d_j = g_j} ≥ h` exists iff the module has Stanley depth at
//! least `h`. The search fixes the smallest uncovered point (in a linear
//! extension of `⪯`) as the bottom of the next interval.

use thiserror::Error;

use crate::ideal::{graded_dim, lcm_of_generators, ModuleSelector, MonomialIdeal};

use super::dio::DegreeBox;

/// Largest box the oracle accepts.
pub const MAX_ORACLE_VOLUME: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree box too large for the exhaustive oracle")]
    BoxTooLarge,
    #[error("the module is zero")]
    ZeroModule,
}

pub fn exhaustive_sdepth_oracle(ideal: &MonomialIdeal, side: ModuleSelector) -> Result<usize, OracleError> {
    let g = lcm_of_generators(ideal).0;
    let boxx = DegreeBox::new(&g).map_err(|_| OracleError::BoxTooLarge)?;
    if boxx.volume() > MAX_ORACLE_VOLUME {
        return Err(OracleError::BoxTooLarge);
    }
    let points: Vec<Vec<u32>> = (0..boxx.volume()).map(|i| boxx.point(i)).collect();
    let in_p: Vec<bool> = points.iter().map(|a| graded_dim(ideal, side, a) == 1).collect();
    if !in_p.iter().any(|&x| x) {
        return Err(OracleError::ZeroModule);
    }
    let n = ideal.n();
    for h in (0..=n).rev() {
        let mut covered = vec![false; boxx.volume()];
        if partition(&boxx, &points, &in_p, &mut covered, h, 0) {
            return Ok(h);
        }
    }
    unreachable!("singleton intervals up to the box corner always give depth 0")
}

fn partition(boxx: &DegreeBox, points: &[Vec<u32>], in_p: &[bool], covered: &mut [bool], h: usize, from: usize) -> bool {
    let Some(b) = (from..points.len()).find(|&i| in_p[i] && !covered[i]) else { return true };
    let lo = &points[b];
    for d in b..points.len() {
        let top = &points[d];
        if !in_p[d] || covered[d] || !lo.iter().zip(top).all(|(x, y)| x <= y) {
            continue;
        }
        if boxx.max_set(top).len() < h {
            continue;
        }
        let cells = interval_indices(boxx, lo, top);
        if cells.iter().any(|&c| !in_p[c] || covered[c]) {
            continue;
        }
        for &c in &cells {
            covered[c] = true;
        }
        if partition(boxx, points, in_p, covered, h, b + 1) {
            return true;
        }
        for &c in &cells {
            covered[c] = false;
        }
    }
    false
}

fn interval_indices(boxx: &DegreeBox, lo: &[u32], hi: &[u32]) -> Vec<usize> {
    let mut out = vec![boxx.index(lo)];
    let mut stride = 1usize;
    for j in 0..lo.len() {
        let len = out.len();
        for s in 1..=(hi[j] - lo[j]) as usize {
            for i in 0..len {
                out.push(out[i] + s * stride);
            }
        }
        stride *= boxx.g[j] as usize + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let m2 = MonomialIdeal::maximal(2);
        assert_eq!(exhaustive_sdepth_oracle(&m2, ModuleSelector::I), Ok(1));
        assert_eq!(exhaustive_sdepth_oracle(&m2, ModuleSelector::Q), Ok(0));
        assert_eq!(exhaustive_sdepth_oracle(&MonomialIdeal::maximal(3), ModuleSelector::I), Ok(2));
        let sq = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
        assert_eq!(exhaustive_sdepth_oracle(&sq, ModuleSelector::Q), Ok(0));
        assert_eq!(exhaustive_sdepth_oracle(&sq, ModuleSelector::I), Ok(1));
        let xy = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        assert_eq!(exhaustive_sdepth_oracle(&xy, ModuleSelector::Q), Ok(1));
    }
}
