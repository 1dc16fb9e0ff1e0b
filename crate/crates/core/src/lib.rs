//! Exact construction and verification of cosmohedra.
//!
//! The crate covers Matryoshka nestings of polygon subdivisions, the
//! cosmohedral fan, explicit vertex and facet realizations, the kinematic
//! embedding, face-count generating series, and the one-loop U-polytopes.
//! All geometry is carried out over exact big rationals.

pub mod cosmofan;
pub mod exactgeom;
pub mod matryoshka;
pub mod polygon;
pub mod realization;
pub mod series;
pub mod trees;
pub mod uloop;

pub use exactgeom::{GeomError, Rat};
