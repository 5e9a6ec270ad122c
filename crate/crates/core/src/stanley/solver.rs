//! Feasibility of `A c = r`, `c ≥ 0` integral, for 0/1 matrices `A`.
//!
//! Depth-first search with unit propagation: a row with residual zero forces
//! its free variables to zero, a row with one free variable forces that
//! variable. Branching picks the open row with the fewest free variables and
//! tries each of its variables in turn at every admissible value, fixing the
//! variable to zero before moving to the next.

use super::dio::DioSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Feasible(Vec<u32>),
    Infeasible,
    Timeout { nodes: u64 },
}

/// Solves the Hilbert decomposition system of `sys`.
#[must_use]
pub fn solve_feasibility(sys: &DioSystem, budget: u64) -> Solution {
    let rows: Vec<(&[usize], u32)> = sys.equations.iter().map(|e| (e.vars.as_slice(), e.rhs)).collect();
    solve_rows(sys.variables.len(), &rows, budget)
}

/// Solves `Σ_{j ∈ row} c_j = rhs` for every row.
#[must_use]
pub fn solve_rows(nvars: usize, rows: &[(&[usize], u32)], budget: u64) -> Solution {
    let mut var_rows = vec![Vec::new(); nvars];
    for (r, (vars, _)) in rows.iter().enumerate() {
        for &v in *vars {
            var_rows[v].push(r);
        }
    }
    let mut st = State {
        rows: rows.iter().map(|(v, _)| v.to_vec()).collect(),
        residual: rows.iter().map(|(_, b)| i64::from(*b)).collect(),
        free: rows.iter().map(|(v, _)| v.len()).collect(),
        value: vec![None; nvars],
        var_rows,
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    let all: Vec<usize> = (0..rows.len()).collect();
    if !st.propagate(all) {
        return Solution::Infeasible;
    }
    match st.search() {
        Ok(true) => Solution::Feasible(st.value.iter().map(|v| v.unwrap_or(0)).collect()),
        Ok(false) => Solution::Infeasible,
        Err(()) => Solution::Timeout { nodes: st.nodes },
    }
}

struct State {
    rows: Vec<Vec<usize>>,
    residual: Vec<i64>,
    free: Vec<usize>,
    value: Vec<Option<u32>>,
    var_rows: Vec<Vec<usize>>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl State {
    /// Assigns and reports whether every touched row stays nonnegative.
    fn assign(&mut self, x: usize, v: u32, touched: &mut Vec<usize>) -> bool {
        self.value[x] = Some(v);
        self.trail.push(x);
        let mut ok = true;
        for &r in &self.var_rows[x] {
            self.residual[r] -= i64::from(v);
            self.free[r] -= 1;
            ok &= self.residual[r] >= 0;
            touched.push(r);
        }
        ok
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail entry");
            let v = self.value[x].take().expect("assigned value");
            for &r in &self.var_rows[x] {
                self.residual[r] += i64::from(v);
                self.free[r] += 1;
            }
        }
    }

    fn upper(&self, x: usize) -> i64 {
        self.var_rows[x].iter().map(|&r| self.residual[r]).min().unwrap_or(0)
    }

    fn free_vars(&self, r: usize) -> Vec<usize> {
        self.rows[r].iter().copied().filter(|&x| self.value[x].is_none()).collect()
    }

    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            let res = self.residual[r];
            if res < 0 {
                return false;
            }
            match self.free[r] {
                0 => {
                    if res != 0 {
                        return false;
                    }
                }
                _ if res == 0 => {
                    for x in self.free_vars(r) {
                        if self.value[x].is_none() && !self.assign(x, 0, &mut queue) {
                            return false;
                        }
                    }
                }
                1 => {
                    let x = self.free_vars(r)[0];
                    if self.upper(x) < res {
                        return false;
                    }
                    if !self.assign(x, res as u32, &mut queue) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn search(&mut self) -> Result<bool, ()> {
        let mut best: Option<usize> = None;
        for r in 0..self.rows.len() {
            if self.residual[r] > 0 && best.is_none_or(|b| self.free[r] < self.free[b]) {
                best = Some(r);
            }
        }
        let Some(r) = best else { return Ok(true) };
        let entry = self.trail.len();
        for x in self.free_vars(r) {
            if self.value[x].is_some() {
                continue;
            }
            let hi = self.upper(x).min(self.residual[r]);
            for v in (1..=hi).rev() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(());
                }
                let mark = self.trail.len();
                let mut touched = Vec::new();
                if self.assign(x, v as u32, &mut touched) && self.propagate(touched) && self.search()? {
                    return Ok(true);
                }
                self.undo_to(mark);
            }
            let mut touched = Vec::new();
            if !(self.assign(x, 0, &mut touched) && self.propagate(touched)) {
                break;
            }
            if self.residual[r] == 0 {
                if self.search()? {
                    return Ok(true);
                }
                break;
            }
        }
        self.undo_to(entry);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_cover() {
        let rows: Vec<(&[usize], u32)> = vec![(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)];
        assert_eq!(solve_rows(3, &rows, 100), Solution::Infeasible);
        let rows: Vec<(&[usize], u32)> = vec![(&[0, 1], 1), (&[1, 2], 1), (&[2, 3], 1)];
        let Solution::Feasible(v) = solve_rows(4, &rows, 100) else { panic!() };
        assert_eq!(v[0] + v[1], 1);
        assert_eq!(v[1] + v[2], 1);
        assert_eq!(v[2] + v[3], 1);
    }

    #[test]
    fn multiplicities() {
        let rows: Vec<(&[usize], u32)> = vec![(&[0, 1], 3), (&[1], 2)];
        assert_eq!(solve_rows(2, &rows, 100), Solution::Feasible(vec![1, 2]));
    }

    #[test]
    fn row_closed_by_propagation() {
        let rows: Vec<(&[usize], u32)> = vec![(&[0, 1], 1), (&[0, 2, 3], 1), (&[2, 3], 1)];
        let Solution::Feasible(v) = solve_rows(4, &rows, 100) else { panic!() };
        assert_eq!((v[0], v[1], v[2] + v[3]), (0, 1, 1));
    }

    #[test]
    fn empty_row() {
        let rows: Vec<(&[usize], u32)> = vec![(&[], 1)];
        assert_eq!(solve_rows(0, &rows, 100), Solution::Infeasible);
    }
}
