//! Exact lattice computations for brane involutions on K3 and K3^[2]-type
//! manifolds and for the lattice-level hyperkähler mirror construction.

#![allow(clippy::needless_range_loop)]

pub mod classification;
pub mod error;
pub mod involution;
pub mod lattice;
pub mod mirror;
pub mod mukai;
pub mod scalar;
pub mod scenario;

pub use error::Error;
pub use lattice::{FieldVector, IntegralLattice, NikulinTriple};
pub use scalar::QuadScalar;
