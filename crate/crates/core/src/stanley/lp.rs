//! CPLEX LP export of a Hilbert decomposition system, and a reader for the
//! subset of the format it writes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::dio::DioSystem;

const TERMS_PER_LINE: usize = 8;
const NULL_VAR: &str = "c_null";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing section {0}")]
    MissingSection(&'static str),
}

/// `c_F1.2_b0.1`: `F` 1-based, `b` the exponent vector.
#[must_use]
pub fn variable_name(f: &crate::VertexSet, b: &[u32]) -> String {
    let fs: Vec<String> = f.to_one_based().iter().map(u32::to_string).collect();
    let bs: Vec<String> = b.iter().map(u32::to_string).collect();
    format!("c_F{}_b{}", fs.join("."), bs.join("."))
}

fn row_name(a: &[u32]) -> String {
    let s: Vec<String> = a.iter().map(u32::to_string).collect();
    format!("a{}", s.join("."))
}

/// Rows with unit coefficients; variables that only appear with coefficient
/// zero are dropped, so a written and re-read system compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub rows: Vec<LpRow>,
    pub variables: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub name: String,
    pub vars: Vec<String>,
    pub rhs: i64,
}

impl LpModel {
    #[must_use]
    pub fn from_system(sys: &DioSystem) -> Self {
        let names: Vec<String> = sys.variables.iter().map(|v| variable_name(&v.f, &v.b)).collect();
        let rows = sys
            .equations
            .iter()
            .map(|e| LpRow {
                name: row_name(&e.degree),
                vars: e.vars.iter().map(|&j| names[j].clone()).collect(),
                rhs: i64::from(e.rhs),
            })
            .collect();
        LpModel { rows, variables: names.into_iter().collect() }
    }
}

fn write_terms(out: &mut String, terms: &[String]) {
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            if i % TERMS_PER_LINE == 0 {
                out.push_str("\n   ");
            }
            out.push_str(" + ");
        }
        out.push_str(t);
    }
}

/// Writes `sys` as a pure feasibility integer program.
#[must_use]
pub fn export_lp(sys: &DioSystem) -> String {
    let names: Vec<String> = sys.variables.iter().map(|v| variable_name(&v.f, &v.b)).collect();
    let placeholder = names.first().cloned().unwrap_or_else(|| NULL_VAR.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "\\ Hilbert decomposition system: n={} side={} h={}", sys.n, sys.side, sys.h);
    out.push_str("Minimize\n obj: 0 ");
    out.push_str(&placeholder);
    out.push_str("\nSubject To\n");
    for e in &sys.equations {
        let _ = write!(out, " {}: ", row_name(&e.degree));
        if e.vars.is_empty() {
            out.push_str("0 ");
            out.push_str(&placeholder);
        } else {
            let terms: Vec<String> = e.vars.iter().map(|&j| names[j].clone()).collect();
            write_terms(&mut out, &terms);
        }
        let _ = writeln!(out, " = {}", e.rhs);
    }
    out.push_str("Bounds\n");
    if names.is_empty() {
        let _ = writeln!(out, " 0 <= {NULL_VAR} <= 0");
    }
    for n in &names {
        let _ = writeln!(out, " {n} >= 0");
    }
    out.push_str("General\n");
    let all: Vec<String> = if names.is_empty() { vec![NULL_VAR.to_string()] } else { names };
    for chunk in all.chunks(TERMS_PER_LINE) {
        let _ = writeln!(out, " {}", chunk.join(" "));
    }
    out.push_str("End\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objective,
    Constraints,
    Bounds,
    General,
    End,
}

/// Parses a row body such as `c1 + 0 c2 + c3 = 1`; returns the variables with
/// nonzero coefficient and the right-hand side.
fn parse_body(body: &str, line: usize) -> Result<(Vec<String>, i64), LpError> {
    let err = |msg: &str| LpError::Syntax { line, msg: msg.to_string() };
    let (lhs, rhs) = body.split_once('=').ok_or_else(|| err("expected '='"))?;
    let rhs: i64 = rhs.trim().parse().map_err(|_| err("bad right-hand side"))?;
    let mut vars = Vec::new();
    for term in lhs.split('+') {
        let toks: Vec<&str> = term.split_whitespace().collect();
        match toks.as_slice() {
            [] => return Err(err("empty term")),
            [v] => vars.push((*v).to_string()),
            [c, v] => {
                let c: i64 = c.parse().map_err(|_| err("bad coefficient"))?;
                match c {
                    0 => {}
                    1 => vars.push((*v).to_string()),
                    _ => return Err(err("only 0/1 coefficients are supported")),
                }
            }
            _ => return Err(err("malformed term")),
        }
    }
    Ok((vars, rhs))
}

pub fn parse_lp(text: &str) -> Result<LpModel, LpError> {
    let mut section = Section::None;
    let mut rows = Vec::new();
    let mut variables = BTreeSet::new();
    let mut pending: Option<(String, String, usize)> = None;
    let mut saw = [false; 3];
    let flush = |pending: &mut Option<(String, String, usize)>, rows: &mut Vec<LpRow>| -> Result<(), LpError> {
        if let Some((name, body, line)) = pending.take() {
            let (vars, rhs) = parse_body(&body, line)?;
            rows.push(LpRow { name, vars, rhs });
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.split('\\').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        let header = match t.to_ascii_lowercase().as_str() {
            "minimize" | "maximize" => Some(Section::Objective),
            "subject to" | "st" | "s.t." => Some(Section::Constraints),
            "bounds" => Some(Section::Bounds),
            "general" | "generals" => Some(Section::General),
            "end" => Some(Section::End),
            _ => None,
        };
        if let Some(s) = header {
            flush(&mut pending, &mut rows)?;
            match s {
                Section::Objective => saw[0] = true,
                Section::Constraints => saw[1] = true,
                Section::End => saw[2] = true,
                _ => {}
            }
            section = s;
            continue;
        }
        match section {
            Section::Constraints => {
                let starts_row = t.split_once(':').is_some_and(|(n, _)| !n.contains(' ') && !n.contains('+'));
                if starts_row && !raw.starts_with("   ") {
                    flush(&mut pending, &mut rows)?;
                    let (name, body) = t.split_once(':').expect("checked");
                    pending = Some((name.trim().to_string(), body.to_string(), line));
                } else if let Some((_, body, _)) = pending.as_mut() {
                    body.push(' ');
                    body.push_str(t);
                } else {
                    return Err(LpError::Syntax { line, msg: "constraint without a name".into() });
                }
            }
            Section::General => {
                variables.extend(t.split_whitespace().filter(|v| *v != NULL_VAR).map(str::to_string));
            }
            Section::Objective | Section::Bounds => {}
            Section::None | Section::End => {
                return Err(LpError::Syntax { line, msg: "text outside any section".into() });
            }
        }
    }
    flush(&mut pending, &mut rows)?;
    if !saw[0] {
        return Err(LpError::MissingSection("Minimize"));
    }
    if !saw[1] {
        return Err(LpError::MissingSection("Subject To"));
    }
    if !saw[2] {
        return Err(LpError::MissingSection("End"));
    }
    Ok(LpModel { rows, variables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ModuleSelector, MonomialIdeal};
    use crate::stanley::dio::build_dio_system;

    #[test]
    fn round_trip() {
        let ideal = MonomialIdeal::from_exponents(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]).unwrap();
        for side in [ModuleSelector::Q, ModuleSelector::I] {
            for h in 0..=2 {
                let sys = build_dio_system(&ideal, side, h).unwrap();
                let text = export_lp(&sys);
                assert!(text.lines().all(|l| l.len() < 255));
                assert_eq!(parse_lp(&text).unwrap(), LpModel::from_system(&sys));
            }
        }
    }

    #[test]
    fn names() {
        let f = crate::VertexSet::from_vertices([0, 1]);
        assert_eq!(variable_name(&f, &[0, 1]), "c_F1.2_b0.1");
        assert_eq!(variable_name(&crate::VertexSet::EMPTY, &[0, 0]), "c_F_b0.0");
    }
}
