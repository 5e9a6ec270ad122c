//! Stanley projective dimension: the meet-irreducible reduction engine,
//! bounds from amalgamation, and certification through Hilbert
//! decompositions solved as integer feasibility problems.

pub mod bounds;
pub mod dio;
pub mod lp;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use bounds::{spdim_bounds, SpdimBounds};
pub use dio::{build_dio_system, hilbert_depth, verify_decomposition, DioSystem, HilbertDecomposition, Part};
pub use lp::{export_lp, parse_lp, LpModel};
pub use oracle::exhaustive_sdepth_oracle;
pub use reduction::{
    apply_reduction, reduction_step_valid, reduction_step_valid_with_limit, search_reduction,
    search_reduction_with_limit, verify_certificate, FEW_ATOMS, BaseCase, CertificateError,
    CertificateRecord, FailureReason, ReductionCertificate, Registry, RegistryEntry, SearchOutcome, StepReason,
    DEFAULT_BUDGET,
};
pub use solver::{solve_feasibility, Solution};
