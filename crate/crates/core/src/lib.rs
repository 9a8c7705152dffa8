//! Finite volume-characteristics (FVC) solver for the two-dimensional
//! rotating shallow water equations on unstructured triangular meshes,
//! with a first-order Roe baseline, the exact dam-break solution, and the
//! benchmark cases used to validate them.

// `!(x > 0.0)` is used on purpose: unlike `x <= 0.0` it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bc;
pub mod driver;
pub mod error;
pub mod exact;
pub mod fv;
pub mod fvc;
pub mod geometry;
pub mod io;
pub mod mesh;
pub mod roe;
pub mod swe;

pub use error::{ConfigError, MeshError, OutputError, RunError, SolverError};
pub use geometry::Vec2;
pub use mesh::Mesh;
pub use swe::{ConservedField, ConservedState, PhysParams};
