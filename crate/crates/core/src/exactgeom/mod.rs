//! Exact rational linear algebra and small polyhedral kernels.
//!
//! Everything here works over [`Rat`] (big rationals). Cones and polytopes are
//! kept in H-representation; vertices and extreme rays are recovered by
//! exhaustive tight-set search, which is adequate for the desk-scale
//! dimensions used throughout the crate.

mod cone;
mod linalg;
mod polytope;
mod rat;
mod simplex;

pub use cone::{cone_rays, Cone, ConeRays};
pub use linalg::{dot, nullspace, rank, rref, solve_affine, AffineSolution};
pub use polytope::{enumerate_vertices, lp_feasible, HPolytope, Vertex};
pub use rat::{fmt_rat, int, parse_rat, primitive_integer, rat, rat_serde, rat_vec_serde, Rat};
pub use simplex::{maximize, LpOutcome};

use thiserror::Error;

/// Failures reported by the geometric kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    /// The affine system has no solution.
    #[error("inconsistent linear system")]
    InconsistentSystem,
    /// The polyhedron has a nontrivial recession cone.
    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,
    /// A linear form does not match the ambient dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// A rational literal could not be parsed.
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}
