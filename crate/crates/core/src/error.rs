//! Crate-level error type.

use thiserror::Error;

use crate::classification::{ClassificationError, ConstructError};
use crate::involution::InvolutionError;
use crate::lattice::LatticeError;
use crate::mirror::MirrorError;
use crate::mukai::MukaiError;
use crate::scalar::ScalarError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Classification(#[from] ClassificationError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Mukai(#[from] MukaiError),
}
