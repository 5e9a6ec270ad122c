use std::path::{Path, PathBuf};

use stosskit::ideal::{realize, ModuleSelector, MonomialIdeal};
use stosskit::json::{ComplexRecord, IdealRecord, LatticeRecord};
use stosskit::lattice::Lattice;
use stosskit::pipeline::p2_registry;
use stosskit::stanley::dio::{build_dio_system, extract_decomposition, hilbert_depth, DecompositionRecord, DioError};
use stosskit::stanley::{
    export_lp, search_reduction, solve_feasibility, verify_certificate, verify_decomposition, BaseCase,
    CertificateRecord, FailureReason, HilbertDecomposition, ReductionCertificate, Registry, SearchOutcome, Solution,
};
use stosskit::stoss::{enumerate_seven, enumerate_stoss, maximal_lattice, Manifest};
use stosskit::Field;

use crate::io::{read_json, write_json, write_text, Error};
use crate::Status;

/// Budget for the P₂ integer program when a registry is requested.
const P2_BUDGET: u64 = 100_000_000;

fn load_lattice(lattice: Option<&Path>, complex: Option<&Path>) -> Result<Lattice, Error> {
    match (lattice, complex) {
        (Some(p), None) => Ok(read_json::<LatticeRecord>(p)?.to_lattice()?),
        (None, Some(p)) => {
            let c = read_json::<ComplexRecord>(p)?.to_complex()?;
            Ok(maximal_lattice(&c, Field::Rational)?.lattice)
        }
        _ => Err("give exactly one of --lattice and --complex".into()),
    }
}

fn load_ideal(ideal: Option<&Path>, lattice: Option<&Path>, complex: Option<&Path>) -> Result<MonomialIdeal, Error> {
    if let Some(p) = ideal {
        if lattice.is_some() || complex.is_some() {
            return Err("give exactly one of --ideal, --lattice and --complex".into());
        }
        return Ok(read_json::<IdealRecord>(p)?.to_ideal()?);
    }
    Ok(realize(&load_lattice(lattice, complex)?)?)
}

pub fn enumerate(k: usize, d: i32, field: Field, out: Option<PathBuf>) -> Result<Status, Error> {
    let manifest = if k == 7 && d == 2 {
        let e = match enumerate_seven(field) {
            Ok(e) => e,
            Err(err) => {
                eprintln!("error: {err}");
                return Ok(Status::Usage);
            }
        };
        let mut m = Manifest::new(k, d, field, &e.classes);
        let b = &mut m.breakdown;
        b.insert("amalgam_raw".into(), e.amalgam.raw);
        b.insert("amalgam_classes".into(), e.amalgam.classes.len());
        b.insert("deletion_classes".into(), e.nonamalgam.deletion_classes);
        b.insert("link_graphs".into(), e.nonamalgam.link_graphs);
        b.insert("nonamalgam_candidates".into(), e.nonamalgam.candidates);
        b.insert("nonamalgam_full_rank".into(), e.nonamalgam.full_rank);
        b.insert("nonamalgam_classes".into(), e.nonamalgam.classes.len());
        m
    } else {
        match enumerate_stoss(k, d, field) {
            Ok(classes) => Manifest::new(k, d, field, &classes),
            Err(err) => {
                eprintln!("error: {err}");
                return Ok(Status::Usage);
            }
        }
    };
    println!("{} classes of {}-dimensional stoss complexes on {} vertices over {}", manifest.count, d, k, field);
    for (key, v) in &manifest.breakdown {
        println!("  {key}: {v}");
    }
    match out {
        Some(p) => write_json(&p, &manifest)?,
        None => println!("{}", serde_json::to_string(&manifest)?),
    }
    Ok(Status::Ok)
}

pub fn reduce(
    lattice: Option<PathBuf>,
    complex: Option<PathBuf>,
    target: Option<usize>,
    side: ModuleSelector,
    budget: u64,
    with_p2: bool,
    out: Option<PathBuf>,
) -> Result<Status, Error> {
    let l = load_lattice(lattice.as_deref(), complex.as_deref())?;
    let p = match target {
        Some(p) => p,
        None => {
            let pd = l.pdim(Field::Rational)?;
            match side {
                ModuleSelector::Q => pd,
                ModuleSelector::I => pd.saturating_sub(1),
            }
        }
    };
    let registry = if with_p2 { Some(p2_registry(P2_BUDGET)?.0) } else { None };
    match search_reduction(&l, p, side, budget, registry.as_ref()) {
        SearchOutcome::Certified(cert) => {
            let bound = verify_certificate(&l, &cert, registry.as_ref())?;
            println!(
                "certified spdim_{side} <= {bound} with {} deletions, base {}",
                cert.deletions.len(),
                cert.base
            );
            let rec = cert.to_record();
            match out {
                Some(path) => write_json(&path, &rec)?,
                None => println!("{}", serde_json::to_string(&rec)?),
            }
            Ok(Status::Ok)
        }
        SearchOutcome::Failed(reason) => {
            println!("not certified: {reason}");
            if reason == FailureReason::NoValidFirstStep {
                println!("no valid deletion exists for target {p} on side {side}");
            }
            Ok(Status::No)
        }
        SearchOutcome::Timeout { nodes } => {
            println!("timeout after {nodes} nodes");
            Ok(Status::Timeout)
        }
    }
}

pub struct CertifyArgs {
    pub ideal: Option<PathBuf>,
    pub lattice: Option<PathBuf>,
    pub complex: Option<PathBuf>,
    pub side: ModuleSelector,
    pub depth: Option<usize>,
    pub budget: u64,
    pub export_lp: Option<PathBuf>,
    pub no_solve: bool,
    pub emit_decomposition: Option<PathBuf>,
}

fn emit(ideal: &MonomialIdeal, d: &HilbertDecomposition, path: Option<&Path>) -> Result<(), Error> {
    if !verify_decomposition(ideal, d.side, d) {
        return Err("extracted decomposition failed verification".into());
    }
    println!("decomposition with {} parts verified", d.parts.len());
    if let Some(p) = path {
        write_json(p, &d.to_record())?;
    }
    Ok(())
}

pub fn certify(a: CertifyArgs) -> Result<Status, Error> {
    let ideal = load_ideal(a.ideal.as_deref(), a.lattice.as_deref(), a.complex.as_deref())?;
    let n = ideal.n();
    let Some(h) = a.depth else {
        if a.export_lp.is_some() {
            return Err("--export-lp needs --depth".into());
        }
        return match hilbert_depth(&ideal, a.side, a.budget) {
            Ok(r) => {
                println!("sdepth = {}, spdim = {}", r.depth, n - r.depth);
                emit(&ideal, &r.decomposition, a.emit_decomposition.as_deref())?;
                Ok(Status::Ok)
            }
            Err(DioError::Timeout { nodes }) => {
                println!("timeout after {nodes} nodes");
                Ok(Status::Timeout)
            }
            Err(e) => Err(e.into()),
        };
    };
    if h > n {
        eprintln!("error: depth {h} exceeds the number of variables {n}");
        return Ok(Status::Usage);
    }
    let sys = build_dio_system(&ideal, a.side, h)?;
    println!("n = {n}, h = {h}: {} variables, {} equations", sys.variables.len(), sys.equations.len());
    if let Some(p) = &a.export_lp {
        write_text(p, &export_lp(&sys))?;
    }
    if a.no_solve {
        return Ok(Status::Ok);
    }
    match solve_feasibility(&sys, a.budget) {
        Solution::Feasible(values) => {
            println!("feasible: sdepth >= {h}, spdim_{} <= {}", a.side, n - h);
            emit(&ideal, &extract_decomposition(&sys, &values), a.emit_decomposition.as_deref())?;
            Ok(Status::Ok)
        }
        Solution::Infeasible => {
            println!("infeasible: sdepth < {h}");
            Ok(Status::No)
        }
        Solution::Timeout { nodes } => {
            println!("timeout after {nodes} nodes");
            Ok(Status::Timeout)
        }
    }
}

pub fn verify(
    certificate: Option<PathBuf>,
    decomposition: Option<PathBuf>,
    lattice: Option<PathBuf>,
    complex: Option<PathBuf>,
    ideal: Option<PathBuf>,
) -> Result<Status, Error> {
    match (certificate, decomposition) {
        (Some(c), None) => {
            let l = load_lattice(lattice.as_deref(), complex.as_deref())?;
            let rec: CertificateRecord = read_json(&c)?;
            let cert = ReductionCertificate::from_record(&rec, l.k())?;
            let registry: Option<Registry> = match &cert.base {
                BaseCase::Registry(name) if name == "P2" => Some(p2_registry(P2_BUDGET)?.0),
                _ => None,
            };
            match verify_certificate(&l, &cert, registry.as_ref()) {
                Ok(bound) => {
                    println!("certificate valid: spdim_{} <= {bound}", cert.side);
                    Ok(Status::Ok)
                }
                Err(e) => {
                    println!("certificate invalid: {e}");
                    Ok(Status::No)
                }
            }
        }
        (None, Some(d)) => {
            let ideal = load_ideal(ideal.as_deref(), lattice.as_deref(), complex.as_deref())?;
            let rec: DecompositionRecord = read_json(&d)?;
            let dec = HilbertDecomposition::from_record(&rec)?;
            if verify_decomposition(&ideal, dec.side, &dec) {
                println!("decomposition valid: sdepth >= {}", dec.depth());
                Ok(Status::Ok)
            } else {
                println!("decomposition invalid");
                Ok(Status::No)
            }
        }
        _ => Err("give exactly one of --certificate and --decomposition".into()),
    }
}
