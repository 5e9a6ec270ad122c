use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stosskit::ideal::{realize, ModuleSelector};
use stosskit::json::{ComplexRecord, IdealRecord};
use stosskit::pipeline::{
    c3_corrected_order, maximal_betti_matches, p2_complex, p2_registry, run_ideal_stage, run_quotient_stage,
    six_vertex_table, StageSummary,
};
use stosskit::stanley::{
    search_reduction, search_reduction_with_limit, spdim_bounds, verify_certificate, BaseCase, FailureReason,
    ReductionCertificate, SearchOutcome, Solution,
};
use stosskit::stoss::{enumerate_connected_graphs, enumerate_seven, enumerate_stoss, enumerate_trees, maximal_lattice};
use stosskit::{Complex, Field};

use crate::io::{checkpointed, write_json, Error};
use crate::{Status, Target};

/// Budget for the P₂ integer program.
const ILP_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Check {
    name: String,
    expected: String,
    actual: String,
    pass: bool,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + ToString>(&mut self, name: &str, expected: T, actual: T) {
        let pass = expected == actual;
        self.push(name, expected.to_string(), actual.to_string(), pass);
    }

    fn at_most(&mut self, name: &str, bound: usize, actual: usize) {
        let detail = format!("{actual} (expected {bound}, at most {bound} accepted)");
        self.push(name, format!("<= {bound}"), detail, actual <= bound);
    }

    fn truth(&mut self, name: &str, actual: bool, detail: String) {
        self.push(name, "true".into(), detail, actual);
    }

    fn push(&mut self, name: &str, expected: String, actual: String, pass: bool) {
        let tag = if pass { "PASS" } else { "FAIL" };
        if pass {
            println!("[{tag}] {name}: {actual}");
        } else {
            println!("[{tag}] {name}: expected {expected}, got {actual}");
        }
        self.0.push(Check { name: name.to_string(), expected, actual, pass });
    }
}

#[derive(Serialize)]
struct Report<'a> {
    target: &'a str,
    pass: bool,
    checks: &'a [Check],
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::FiveGen => "five-gen",
        Target::SixGen => "six-gen",
        Target::SevenGenIdeal => "seven-gen-ideal",
        Target::SevenGenQuotient => "seven-gen-quotient",
        Target::Counts => "counts",
        Target::Stoss5 => "stoss5",
        Target::Stoss6 => "stoss6",
        Target::Trees => "trees",
    }
}

pub fn run(target: Target, out: Option<PathBuf>, budget: u64) -> Result<Status, Error> {
    let mut checks = Checks::default();
    let out = out.as_deref();
    match target {
        Target::Trees => trees(&mut checks)?,
        Target::Stoss5 => stoss_small(&mut checks, 5)?,
        Target::Stoss6 => stoss_small(&mut checks, 6)?,
        Target::Counts => counts(&mut checks, out)?,
        Target::FiveGen => five_gen(&mut checks, budget)?,
        Target::SixGen => six_gen(&mut checks, budget)?,
        Target::SevenGenIdeal => seven_ideal(&mut checks, out, budget)?,
        Target::SevenGenQuotient => seven_quotient(&mut checks, out, budget)?,
    }
    let pass = checks.0.iter().all(|c| c.pass);
    let name = target_name(target);
    if let Some(dir) = out {
        write_json(&dir.join(format!("report-{name}.json")), &Report { target: name, pass, checks: &checks.0 })?;
    }
    let failed = checks.0.iter().filter(|c| !c.pass).count();
    println!("{name}: {} checks, {failed} failed", checks.0.len());
    Ok(if pass { Status::Ok } else { Status::No })
}

fn trees(c: &mut Checks) -> Result<(), Error> {
    c.eq("labeled trees on 5 vertices", 125, enumerate_trees(5).len());
    c.eq("labeled trees on 6 vertices", 1296, enumerate_trees(6).len());
    c.eq("connected 5-edge graphs on 6 vertices", 1296, enumerate_connected_graphs(6, 5).len());
    c.eq("tree classes on 5 vertices", 3, enumerate_stoss(5, 1, Field::Rational)?.len());
    c.eq("tree classes on 6 vertices", 6, enumerate_stoss(6, 1, Field::Rational)?.len());
    Ok(())
}

fn canonical_set(classes: &[Complex]) -> Result<HashSet<stosskit::canon::CanonicalForm>, Error> {
    Ok(classes.iter().map(Complex::canonicalize).collect::<Result<_, _>>()?)
}

/// All classes on `k` vertices with `d ≤ k - 2`, duality and Betti numbers.
fn stoss_small(c: &mut Checks, k: usize) -> Result<(), Error> {
    let mut per_dim = Vec::new();
    for d in 0..=(k as i32 - 2) {
        per_dim.push(enumerate_stoss(k, d, Field::Rational)?);
    }
    let counts: Vec<String> = per_dim.iter().map(|v| v.len().to_string()).collect();
    println!("classes per dimension on {k} vertices: {}", counts.join(" "));
    let total: usize = per_dim.iter().map(Vec::len).sum();
    if k == 5 {
        c.eq("stoss classes on 5 vertices", 8, total);
    } else {
        c.eq("2-dimensional stoss classes on 6 vertices", 84, per_dim[2].len());
    }
    let mut dual_ok = true;
    for d in 0..per_dim.len() {
        let e = per_dim.len() - 1 - d;
        let duals: Vec<Complex> = per_dim[d].iter().map(Complex::alexander_dual).collect();
        dual_ok &= duals.iter().all(|x| x.is_stoss(e as i32, Field::Rational));
        dual_ok &= canonical_set(&duals)? == canonical_set(&per_dim[e])?;
    }
    c.truth("Alexander duality pairs dimensions d and k-d-2", dual_ok, format!("{total} classes"));
    let all: Vec<&Complex> = per_dim.iter().flatten().collect();
    let betti: Vec<bool> = all
        .par_iter()
        .map(|x| maximal_betti_matches(x))
        .collect::<Result<_, _>>()?;
    let good = betti.iter().filter(|b| **b).count();
    c.eq("maximal lattices with the stoss Betti numbers", all.len(), good);
    Ok(())
}

fn counts(c: &mut Checks, out: Option<&Path>) -> Result<(), Error> {
    let five: usize = (0..=3).map(|d| enumerate_stoss(5, d, Field::Rational).map(|v| v.len())).sum::<Result<_, _>>()?;
    c.eq("stoss classes on 5 vertices", 8, five);
    c.eq("tree classes on 5 vertices", 3, enumerate_stoss(5, 1, Field::Rational)?.len());
    c.eq("2-dimensional stoss classes on 6 vertices", 84, enumerate_stoss(6, 2, Field::Rational)?.len());
    c.eq("labeled trees on 6 vertices", 1296, enumerate_trees(6).len());
    c.eq("labeled trees on 5 vertices", 125, enumerate_trees(5).len());
    let seven = seven_classes(out)?;
    let b = &seven.breakdown;
    c.eq("six-vertex stoss classes minus one facet", 234, b["deletion_classes"]);
    c.eq("connected 6-edge graphs on 6 vertices", 3660, b["link_graphs"]);
    c.eq("amalgamation candidates", 108864, b["amalgam_raw"]);
    c.eq("amalgamation classes", 50651, seven.amalgam.len());
    c.eq("non-amalgamation classes", 9726, seven.nonamalgam.len());
    Ok(())
}

fn five_gen(c: &mut Checks, budget: u64) -> Result<(), Error> {
    // Bases of at most four atoms rely only on pdim ∈ {1, 2, k-1, k}.
    let mut k2 = 0;
    let mut k2_ok = 0;
    for d in 0..=3 {
        for x in enumerate_stoss(5, d, Field::Rational)? {
            let m = maximal_lattice(&x, Field::Rational)?;
            let p = m.pdim();
            if p <= 1 {
                continue;
            }
            let q = search_reduction_with_limit(&m.lattice, p, ModuleSelector::Q, budget, None, 4);
            let i = search_reduction_with_limit(&m.lattice, p - 1, ModuleSelector::I, budget, None, 4);
            let ok = q.certificate().is_some() && i.certificate().is_some();
            if p == 3 {
                k2 += 1;
                k2_ok += usize::from(ok);
            }
            c.truth(
                &format!("5 vertices, pdim {p}: spdim_Q <= {p} and spdim_I <= {}", p - 1),
                ok,
                describe(&q),
            );
        }
    }
    c.eq("pdim k-2 classes certified from four-atom bases", k2, k2_ok);
    Ok(())
}

fn describe(o: &SearchOutcome) -> String {
    match o {
        SearchOutcome::Certified(cert) => format!("{} deletions, base {}", cert.deletions.len(), cert.base),
        SearchOutcome::Failed(r) => r.to_string(),
        SearchOutcome::Timeout { nodes } => format!("timeout after {nodes} nodes"),
    }
}

fn six_gen(c: &mut Checks, budget: u64) -> Result<(), Error> {
    for row in six_vertex_table() {
        let Some(order) = &row.deletion_order else { continue };
        let m = maximal_lattice(&row.complex, Field::Rational)?;
        let cert = ReductionCertificate {
            side: ModuleSelector::Q,
            target_p: 3,
            deletions: order.clone(),
            base: BaseCase::FewAtoms(5),
        };
        let res = verify_certificate(&m.lattice, &cert, None);
        let detail = match &res {
            Ok(b) => format!("spdim_Q <= {b}"),
            Err(e) => e.to_string(),
        };
        c.truth(&format!("{} printed deletion order", row.name), res.is_ok(), detail);
        if row.name == "C3" {
            let fixed = ReductionCertificate { deletions: c3_corrected_order(), ..cert };
            let res = verify_certificate(&m.lattice, &fixed, None);
            c.truth("C3 order ending in atom 1", res.is_ok(), format!("{res:?}"));
        }
    }
    let mp = maximal_lattice(&p2_complex(), Field::Rational)?;
    let q = search_reduction(&mp.lattice, 3, ModuleSelector::Q, budget, None);
    c.truth(
        "P2 side Q target 3 has no valid deletion",
        q == SearchOutcome::Failed(FailureReason::NoValidFirstStep),
        describe(&q),
    );
    let i = search_reduction(&mp.lattice, 2, ModuleSelector::I, budget, None);
    c.truth("P2 side I target 2 certified", i.certificate().is_some(), describe(&i));
    let (registry, ilp) = p2_registry(ILP_BUDGET)?;
    c.truth(
        "P2 integer program (side Q, h = n - 3) feasible and verified",
        matches!(ilp.solution, Solution::Feasible(_)) && ilp.verified,
        format!("n = {}, h = {}, {} variables, {} equations", ilp.n, ilp.h, ilp.variables, ilp.equations),
    );
    let six = enumerate_stoss(6, 2, Field::Rational)?;
    let p2_form = p2_complex().canonicalize()?;
    let rows: Vec<(bool, bool, bool, usize)> = six
        .par_iter()
        .map(|x| -> Result<_, stosskit::pipeline::PipelineError> {
            let m = maximal_lattice(x, Field::Rational)?;
            let q = search_reduction(&m.lattice, 3, ModuleSelector::Q, budget, None).certificate().is_some();
            let i = search_reduction(&m.lattice, 2, ModuleSelector::I, budget, None).certificate().is_some();
            let is_p2 = x.canonicalize().map_err(stosskit::stoss::StossError::from)? == p2_form;
            let lower = spdim_bounds(&m.lattice, ModuleSelector::Q, 1, None).lower;
            Ok((q, i, is_p2, lower))
        })
        .collect::<Result<_, _>>()?;
    let q_fail: Vec<bool> = rows.iter().filter(|r| !r.0).map(|r| r.2).collect();
    c.truth(
        "side Q target 3 certified for all 84 classes except P2",
        q_fail == vec![true],
        format!("{} of {} certified", rows.iter().filter(|r| r.0).count(), rows.len()),
    );
    c.eq("side I target 2 certified", rows.len(), rows.iter().filter(|r| r.1).count());
    c.eq("classes with spdim_Q lower bound pdim = 3", rows.len(), rows.iter().filter(|r| r.3 == 3).count());
    let heavy = six.iter().filter(|x| (0..6).all(|v| x.top_faces_containing(v) >= 5)).count();
    c.eq("classes with every vertex in at least 5 facets", 4, heavy);
    let _ = registry;
    Ok(())
}

/// The two seven-vertex class lists (checkpointed).
#[derive(Serialize, Deserialize)]
struct SevenClasses {
    breakdown: BTreeMap<String, usize>,
    amalgam: Vec<ComplexRecord>,
    nonamalgam: Vec<ComplexRecord>,
}

fn seven_classes(out: Option<&Path>) -> Result<SevenClasses, Error> {
    let path = out.map(|d| d.join("checkpoints").join("classes-7-2.json"));
    checkpointed(path.as_deref(), || {
        let e = enumerate_seven(Field::Rational)?;
        let mut breakdown = BTreeMap::new();
        breakdown.insert("amalgam_raw".to_string(), e.amalgam.raw);
        breakdown.insert("deletion_classes".to_string(), e.nonamalgam.deletion_classes);
        breakdown.insert("link_graphs".to_string(), e.nonamalgam.link_graphs);
        breakdown.insert("nonamalgam_candidates".to_string(), e.nonamalgam.candidates);
        breakdown.insert("nonamalgam_full_rank".to_string(), e.nonamalgam.full_rank);
        Ok(SevenClasses {
            breakdown,
            amalgam: e.amalgam.classes.iter().map(ComplexRecord::from).collect(),
            nonamalgam: e.nonamalgam.classes.iter().map(ComplexRecord::from).collect(),
        })
    })
}

fn complexes(recs: &[ComplexRecord]) -> Result<Vec<Complex>, Error> {
    Ok(recs.iter().map(ComplexRecord::to_complex).collect::<Result<_, _>>()?)
}

fn duals(cs: &[Complex]) -> Vec<Complex> {
    cs.par_iter().map(Complex::alexander_dual).collect()
}

fn stage<F>(out: Option<&Path>, name: &str, run: F) -> Result<StageSummary, Error>
where
    F: FnOnce() -> Result<StageSummary, stosskit::pipeline::PipelineError>,
{
    let path = out.map(|d| d.join("checkpoints").join(format!("stage-{name}.json")));
    let s = checkpointed(path.as_deref(), || Ok(run()?))?;
    println!(
        "stage {name}: {} classes, {} reduced, {} via registry, {} rank bound, {} open, {} timeouts",
        s.total,
        s.reduced,
        s.reduced_to_known,
        s.rank_bound,
        s.unresolved(),
        s.timeouts
    );
    Ok(s)
}

fn seven_ideal(c: &mut Checks, out: Option<&Path>, budget: u64) -> Result<(), Error> {
    let seven = seven_classes(out)?;
    let two: Vec<Complex> = complexes(&seven.amalgam)?.into_iter().chain(complexes(&seven.nonamalgam)?).collect();
    let s2 = stage(out, "ideal-pdim3", || run_ideal_stage("ideal-pdim3", &two, budget))?;
    c.truth(
        "side I, pdim S/I = 3: every class certified by reduction",
        s2.reduced == s2.total && s2.timeouts == 0,
        format!("{} of {}", s2.reduced, s2.total),
    );
    let three = duals(&two);
    let s3 = stage(out, "ideal-pdim4", || run_ideal_stage("ideal-pdim4", &three, budget))?;
    c.truth(
        "side I, pdim S/I = 4: spdim_I <= 3 = pdim_I by the rank bound",
        s3.rank_bound == s3.total,
        format!("{} of {}", s3.rank_bound, s3.total),
    );
    Ok(())
}

fn forms(recs: &[ComplexRecord]) -> Result<HashSet<stosskit::canon::CanonicalForm>, Error> {
    canonical_set(&complexes(recs)?)
}

fn dual_forms(recs: &[ComplexRecord]) -> Result<HashSet<stosskit::canon::CanonicalForm>, Error> {
    canonical_set(&duals(&complexes(recs)?))
}

#[derive(Serialize)]
struct OpenCase {
    stage: String,
    complex: ComplexRecord,
    ideal: IdealRecord,
}

fn seven_quotient(c: &mut Checks, out: Option<&Path>, budget: u64) -> Result<(), Error> {
    let (registry, ilp) = p2_registry(ILP_BUDGET)?;
    c.truth("P2 registered after its integer program", ilp.verified, format!("{} variables", ilp.variables));
    let seven = seven_classes(out)?;
    let am2 = complexes(&seven.amalgam)?;
    let na2 = complexes(&seven.nonamalgam)?;
    let am3 = duals(&am2);
    let na3 = duals(&na2);
    let s_am2 = stage(out, "quotient-amalgam-2", || run_quotient_stage("quotient-amalgam-2", &am2, &registry, budget))?;
    let s_na2 = stage(out, "quotient-nonamalgam-2", || {
        run_quotient_stage("quotient-nonamalgam-2", &na2, &registry, budget)
    })?;
    let s_am3 = stage(out, "quotient-amalgam-3", || run_quotient_stage("quotient-amalgam-3", &am3, &registry, budget))?;
    let s_na3 = stage(out, "quotient-nonamalgam-3", || {
        run_quotient_stage("quotient-nonamalgam-3", &na3, &registry, budget)
    })?;
    let stages = [&s_am2, &s_na2, &s_am3, &s_na3];
    c.eq("timeouts", 0, stages.iter().map(|s| s.timeouts).sum::<usize>());
    c.eq("2-dim amalgamations not reducible without P2", 25, s_am2.reduced_to_known + s_am2.unresolved());
    c.eq("2-dim amalgamations open after reducing to P2", 0, s_am2.unresolved());
    c.eq("3-dim amalgamations open", 25, s_am3.unresolved());
    c.at_most("2-dim non-amalgamations open", 93, s_na2.unresolved());
    c.at_most("3-dim non-amalgamations open", 93, s_na3.unresolved());
    let total: usize = stages.iter().map(|s| s.unresolved()).sum();
    c.at_most("open cases in total", 211, total);
    c.eq("open cases acyclic over F2", 0, stages.iter().map(|s| s.open_f2_acyclic).sum::<usize>());
    let hard_am2: Vec<ComplexRecord> = s_am2.known.iter().chain(&s_am2.open).cloned().collect();
    c.truth(
        "3-dim amalgamation cases are the duals of the 2-dim hard cases",
        dual_forms(&hard_am2)? == forms(&s_am3.open)?,
        format!("{} and {}", hard_am2.len(), s_am3.unresolved()),
    );
    c.truth(
        "3-dim non-amalgamation cases are the duals of the 2-dim open cases",
        dual_forms(&s_na2.open)? == forms(&s_na3.open)?,
        format!("{} and {}", s_na2.unresolved(), s_na3.unresolved()),
    );
    if let Some(dir) = out {
        let mut list = Vec::new();
        for s in stages {
            for rec in &s.open {
                let x = rec.to_complex()?;
                let m = maximal_lattice(&x, Field::Rational)?;
                list.push(OpenCase {
                    stage: s.name.clone(),
                    complex: rec.clone(),
                    ideal: IdealRecord::from(&realize(&m.lattice)?),
                });
            }
        }
        let path = dir.join("open-cases.json");
        write_json(&path, &list)?;
        println!("wrote {} open cases to {}", list.len(), path.display());
    }
    Ok(())
}
