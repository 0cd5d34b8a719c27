//! Moving a class into the chamber cut out by a finite set of walls.

use super::walls::reflect;
use super::{check_len, MirrorError};
use crate::lattice::{FieldVector, IntegralLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberMove {
    /// Indices into the wall list, in the order the reflections are applied.
    pub sequence: Vec<usize>,
    pub image: FieldVector,
}

/// Reflection budget used when none is given: ten per wall.
pub fn default_cap(walls: usize) -> usize {
    10 * walls.max(1)
}

/// Reflects `x` through violated walls until it pairs positively with all of them.
///
/// Every wall must pair positively with `kappa`. The lowest-index violated wall
/// is used at each step. Each reflection strictly lowers `x·κ`, so for `x` in the
/// positive cone of `κ` the process stops.
pub fn chamber_move(
    lattice: &IntegralLattice,
    x: &FieldVector,
    delta_plus: &[Vec<i64>],
    kappa: &FieldVector,
    cap: Option<usize>,
) -> Result<ChamberMove, MirrorError> {
    check_len(lattice, x)?;
    check_len(lattice, kappa)?;
    let walls: Vec<FieldVector> = delta_plus.iter().map(|d| FieldVector::from_ints(d)).collect();
    for (i, d) in walls.iter().enumerate() {
        check_len(lattice, d)?;
        if !lattice.bilinear(d, kappa)?.is_positive() {
            return Err(MirrorError::WallNotPositive(i));
        }
    }
    let cap = cap.unwrap_or_else(|| default_cap(walls.len()));
    let mut image = x.clone();
    let mut sequence = Vec::new();
    loop {
        let mut violated = None;
        for (i, d) in walls.iter().enumerate() {
            let p = lattice.bilinear(&image, d)?;
            if p.is_zero() {
                return Err(MirrorError::WallHit(i));
            }
            if violated.is_none() && p.is_negative() {
                violated = Some(i);
            }
        }
        let Some(i) = violated else {
            return Ok(ChamberMove { sequence, image });
        };
        if sequence.len() == cap {
            return Err(MirrorError::NoConvergence(cap));
        }
        image = reflect(lattice, &walls[i], &image)?;
        sequence.push(i);
    }
}
