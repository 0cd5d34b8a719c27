//! Choosing a multiple of the B-field that avoids the non-reflective walls.

use super::walls::{Wall, WallTag};
use super::{check_beta, HKDatum, HyperbolicSlot, MirrorError};
use crate::lattice::FieldVector;
use crate::scalar::QuadScalar;

/// Largest denominator tried by [`choose_generic_scale`].
pub const DEFAULT_SCALE_BUDGET: u32 = 1000;

/// Whether `λβ` avoids every exclusion attached to the `nd` walls.
///
/// For each such wall `D`, with `p = D·pr(λβ)` and `c = ω² − λ²β²`, none of
/// `p`, `p + ½c(D·v*)`, `2p/c` may be a nonzero integer, and `c ≠ 0`. When
/// `β·ω ≠ 0` the quotient `pr(D)·pr(ω)/(λβ·ω)` is excluded likewise.
pub fn scale_is_generic(
    d: &HKDatum,
    slot: &HyperbolicSlot,
    beta: &FieldVector,
    walls: &[Wall],
    lambda: &QuadScalar,
) -> Result<bool, MirrorError> {
    let l = d.lattice();
    check_beta(d, slot, beta)?;
    let w2 = l.square(&d.omega)?;
    let b2 = &(lambda * lambda) * &l.square(beta)?;
    let c = &w2 - &b2;
    if c.is_zero() {
        return Ok(false);
    }
    let half = QuadScalar::from_ratio(1, 2);
    let bw = lambda * &l.bilinear(beta, &d.omega)?;
    let pr_beta = slot.project(l, beta)?;
    let pr_omega = slot.project(l, &d.omega)?;
    let vs = slot.v_star_field();
    for wall in walls.iter().filter(|w| w.tag == WallTag::Nd) {
        let dv = wall.field();
        let p = lambda * &l.bilinear(&dv, &pr_beta)?;
        if p.is_nonzero_integer() {
            return Ok(false);
        }
        let second = &p + &(&(&half * &c) * &l.bilinear(&dv, &vs)?);
        if second.is_nonzero_integer() {
            return Ok(false);
        }
        let third = (&QuadScalar::from_int(2) * &p).checked_div(&c).expect("c is nonzero");
        if third.is_nonzero_integer() {
            return Ok(false);
        }
        if !bw.is_zero() {
            let quotient = l.bilinear(&slot.project(l, &dv)?, &pr_omega)?.checked_div(&bw).expect("nonzero");
            if quotient.is_nonzero_integer() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first `λ` among `1, 1/2, …, 1/budget` for which [`scale_is_generic`] holds.
pub fn choose_generic_scale(
    d: &HKDatum,
    slot: &HyperbolicSlot,
    beta: &FieldVector,
    walls: &[Wall],
    budget: u32,
) -> Result<QuadScalar, MirrorError> {
    for k in 1..=budget.max(1) {
        let lambda = QuadScalar::from_ratio(1, i64::from(k));
        if scale_is_generic(d, slot, beta, walls, &lambda)? {
            return Ok(lambda);
        }
    }
    Err(MirrorError::ScaleSearchExhausted(budget))
}
