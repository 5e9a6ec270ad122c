//! Stoss complexes, their maximal lcm lattices, and Stanley projective
//! dimension certificates for monomial ideals with few generators.

pub mod canon;
pub mod field;
pub mod homology;
pub mod ideal;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod pipeline;
pub mod simplicial;
pub mod stanley;
pub mod stoss;
pub mod vertex_set;

pub use field::Field;
pub use homology::BettiVector;
pub use simplicial::Complex;
pub use vertex_set::VertexSet;
