//! Hyperkähler mirror data on a lattice.
//!
//! A marked hyperkähler datum is a triple `(ω, Re σ, Im σ)` in `Γ ⊗ F`. Given a
//! hyperbolic plane `j(U) = ⟨v, v*⟩ ⊂ Γ` and a B-field `β`, the mirror period
//! and Kähler class are computed in closed form.

mod chamber;
mod genericity;
mod walls;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FieldVector, IntegralLattice, LatticeError};
use crate::scalar::QuadScalar;

pub use chamber::{chamber_move, default_cap, ChamberMove};
pub use genericity::{choose_generic_scale, scale_is_generic, DEFAULT_SCALE_BUDGET};
pub use walls::{enumerate_walls, reflect, short_vectors, wall_obstruction, Wall, WallDivisorSpec, WallTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MirrorError {
    #[error("invalid hyperkähler datum: {0}")]
    InvalidDatum(String),
    #[error("invalid hyperbolic slot: {0}")]
    InvalidSlot(String),
    #[error("classes mix the radicands {0} and {1}")]
    RadicandMismatch(i64, i64),
    #[error("datum is not admissible for the slot")]
    NotAdmissible,
    #[error("B-field has a nonzero v*-coordinate")]
    BetaNotInSlotComplement,
    #[error("reflection vector has square zero")]
    IsotropicReflection,
    #[error("class lies on wall {0}")]
    WallHit(usize),
    #[error("wall {0} does not pair positively with the reference chamber class")]
    WallNotPositive(usize),
    #[error("no chamber reached after {0} reflections")]
    NoConvergence(usize),
    #[error("wall enumeration is unbounded: {0}")]
    Unbounded(String),
    #[error("wall divisors are not tabulated for deformation type {0}")]
    UnsupportedDeformation(DeformationType),
    #[error("invalid wall specification: {0}")]
    InvalidWallSpec(String),
    #[error("no admissible scale among 1, 1/2, ..., 1/{0}")]
    ScaleSearchExhausted(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Deformation class of the manifold whose second cohomology is `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeformationType {
    K3,
    K3Hilb2,
    Other,
}

impl fmt::Display for DeformationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeformationType::K3 => "K3",
            DeformationType::K3Hilb2 => "K3Hilb2",
            DeformationType::Other => "Other",
        })
    }
}

/// Common radicand of a family of classes, rejecting two distinct surds.
pub fn common_radicand<'a>(vectors: impl IntoIterator<Item = &'a FieldVector>) -> Result<i64, MirrorError> {
    let mut m = 1;
    for v in vectors {
        for c in &v.coords {
            let r = c.radicand();
            if r == 1 || r == m {
                continue;
            }
            if m != 1 {
                return Err(MirrorError::RadicandMismatch(m, r));
            }
            m = r;
        }
    }
    Ok(m)
}

fn check_len(lattice: &IntegralLattice, x: &FieldVector) -> Result<(), MirrorError> {
    if x.len() != lattice.rank() {
        return Err(LatticeError::RankMismatch { expected: lattice.rank(), found: x.len() }.into());
    }
    Ok(())
}

/// A Kähler class `ω` and a period `σ = Re σ + i Im σ` satisfying the
/// hyperkähler constraints.
#[derive(Clone, Debug)]
pub struct HKDatum {
    lattice: IntegralLattice,
    pub omega: FieldVector,
    pub re_sigma: FieldVector,
    pub im_sigma: FieldVector,
}

impl HKDatum {
    /// Validates `ω² > 0`, `(Re σ)² = (Im σ)²`, `Re σ·Im σ = 0` and `ω ⊥ Re σ, Im σ`.
    pub fn new(
        lattice: IntegralLattice,
        omega: FieldVector,
        re_sigma: FieldVector,
        im_sigma: FieldVector,
    ) -> Result<Self, MirrorError> {
        for x in [&omega, &re_sigma, &im_sigma] {
            check_len(&lattice, x)?;
        }
        common_radicand([&omega, &re_sigma, &im_sigma])?;
        let l = &lattice;
        if !l.square(&omega)?.is_positive() {
            return Err(MirrorError::InvalidDatum("ω² must be positive".into()));
        }
        let re2 = l.square(&re_sigma)?;
        if re2 != l.square(&im_sigma)? {
            return Err(MirrorError::InvalidDatum("(Re σ)² ≠ (Im σ)²".into()));
        }
        if !l.bilinear(&re_sigma, &im_sigma)?.is_zero() {
            return Err(MirrorError::InvalidDatum("Re σ·Im σ ≠ 0".into()));
        }
        if !l.bilinear(&omega, &re_sigma)?.is_zero() || !l.bilinear(&omega, &im_sigma)?.is_zero() {
            return Err(MirrorError::InvalidDatum("ω is not orthogonal to σ".into()));
        }
        Ok(HKDatum { lattice, omega, re_sigma, im_sigma })
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn radicand(&self) -> i64 {
        common_radicand([&self.omega, &self.re_sigma, &self.im_sigma]).unwrap_or(1)
    }
}

/// An embedded hyperbolic plane `⟨v, v*⟩` and a basis of its orthogonal complement `M`.
#[derive(Clone, Debug)]
pub struct HyperbolicSlot {
    pub v: Vec<i64>,
    pub v_star: Vec<i64>,
    pub m_basis: Vec<Vec<i64>>,
}

impl HyperbolicSlot {
    pub fn new(lattice: &IntegralLattice, v: Vec<i64>, v_star: Vec<i64>) -> Result<Self, MirrorError> {
        let vv = lattice.pair_int(&v, &v)?;
        let ss = lattice.pair_int(&v_star, &v_star)?;
        let vs = lattice.pair_int(&v, &v_star)?;
        if vv != 0 || ss != 0 || vs != 1 {
            return Err(MirrorError::InvalidSlot(format!("v² = {vv}, v*² = {ss}, v·v* = {vs}; need 0, 0, 1")));
        }
        let m_basis = lattice.orthogonal_complement(&[v.clone(), v_star.clone()])?;
        Ok(HyperbolicSlot { v, v_star, m_basis })
    }

    pub fn v_field(&self) -> FieldVector {
        FieldVector::from_ints(&self.v)
    }

    pub fn v_star_field(&self) -> FieldVector {
        FieldVector::from_ints(&self.v_star)
    }

    /// Projection `Γ ⊗ F → M ⊗ F`, `x ↦ x − (x·v*)v − (x·v)v*`.
    pub fn project(&self, lattice: &IntegralLattice, x: &FieldVector) -> Result<FieldVector, MirrorError> {
        let (v, vs) = (self.v_field(), self.v_star_field());
        let xv = lattice.bilinear(x, &v)?;
        let xvs = lattice.bilinear(x, &vs)?;
        Ok(x.add_scaled(&-xvs, &v).add_scaled(&-xv, &vs))
    }

    /// The involution that is `+1` on `j(U)` and `−1` on `M`, as a matrix acting on columns.
    pub fn plane_reflection_matrix(&self, lattice: &IntegralLattice) -> Result<Vec<Vec<i64>>, MirrorError> {
        let n = lattice.rank();
        let gv = lattice.gram_times(&self.v)?;
        let gs = lattice.gram_times(&self.v_star)?;
        // τ(x) = 2((x·v*)v + (x·v)v*) − x
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let val = 2 * (self.v[i] as i128 * gs[j] + self.v_star[i] as i128 * gv[j]) - i128::from(i == j);
                *entry = i64::try_from(val).map_err(|_| LatticeError::Overflow)?;
            }
        }
        Ok(m)
    }
}

/// A class in `Γ ⊗ ℂ` stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexClass {
    pub re: FieldVector,
    pub im: FieldVector,
}

/// `ω̌` together with the sign used and whether the sign was forced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorOmega {
    pub omega: FieldVector,
    pub epsilon: i8,
    pub degenerate: bool,
}

fn check_slot(d: &HKDatum, slot: &HyperbolicSlot) -> Result<(), MirrorError> {
    let n = d.lattice.rank();
    if slot.v.len() != n || slot.v_star.len() != n {
        return Err(LatticeError::RankMismatch { expected: n, found: slot.v.len() }.into());
    }
    Ok(())
}

/// `ω·v = 0` (no `v*`-component) and `Im σ·v = 0`.
pub fn check_admissible(d: &HKDatum, slot: &HyperbolicSlot) -> Result<bool, MirrorError> {
    check_slot(d, slot)?;
    let v = slot.v_field();
    Ok(d.lattice.bilinear(&d.omega, &v)?.is_zero() && d.lattice.bilinear(&d.im_sigma, &v)?.is_zero())
}

/// Rotates `σ` by `λ = i − (Re σ·v)/(Im σ·v)` so that the new imaginary part is orthogonal to `v`.
///
/// Returns `(Re, Im)` unchanged when `Im σ·v` already vanishes.
pub fn rescale_sigma(d: &HKDatum, slot: &HyperbolicSlot) -> Result<(FieldVector, FieldVector), MirrorError> {
    check_slot(d, slot)?;
    let v = slot.v_field();
    let iv = d.lattice.bilinear(&d.im_sigma, &v)?;
    if iv.is_zero() {
        return Ok((d.re_sigma.clone(), d.im_sigma.clone()));
    }
    let rv = d.lattice.bilinear(&d.re_sigma, &v)?;
    let c = rv.checked_div(&iv).expect("nonzero divisor");
    // (i − c)(Re + i Im) = (−c Re − Im) + i (Re − c Im)
    let re = d.re_sigma.scale(&-c.clone()).sub(&d.im_sigma);
    let im = d.re_sigma.add_scaled(&-c, &d.im_sigma);
    Ok((re, im))
}

fn check_beta(d: &HKDatum, slot: &HyperbolicSlot, beta: &FieldVector) -> Result<(), MirrorError> {
    check_len(&d.lattice, beta)?;
    common_radicand([&d.omega, &d.re_sigma, &d.im_sigma, beta])?;
    if !check_admissible(d, slot)? {
        return Err(MirrorError::NotAdmissible);
    }
    if !d.lattice.bilinear(beta, &slot.v_field())?.is_zero() {
        return Err(MirrorError::BetaNotInSlotComplement);
    }
    Ok(())
}

/// `σ̌ = pr(β + iω) − ½(β + iω)² v* + v`.
pub fn mirror_sigma(d: &HKDatum, slot: &HyperbolicSlot, beta: &FieldVector) -> Result<ComplexClass, MirrorError> {
    check_beta(d, slot, beta)?;
    let l = &d.lattice;
    let (v, vs) = (slot.v_field(), slot.v_star_field());
    let half = QuadScalar::from_ratio(1, 2);
    let real_sq = &l.square(beta)? - &l.square(&d.omega)?;
    let cross = l.bilinear(beta, &d.omega)?;
    let re = slot.project(l, beta)?.add_scaled(&-(&half * &real_sq), &vs).add(&v);
    let im = slot.project(l, &d.omega)?.add_scaled(&-cross, &vs);
    Ok(ComplexClass { re, im })
}

/// `ω̌ = ε[pr(Im σ) − (Im σ·β)v]`, with `ε` making `ω̌·reference > 0`.
///
/// The reference defaults to `v + v*`. When the pairing vanishes `ε = +1` and
/// the result is flagged as degenerate.
pub fn mirror_omega(
    d: &HKDatum,
    slot: &HyperbolicSlot,
    beta: &FieldVector,
    reference: Option<&FieldVector>,
) -> Result<MirrorOmega, MirrorError> {
    check_beta(d, slot, beta)?;
    let l = &d.lattice;
    let v = slot.v_field();
    let raw = slot.project(l, &d.im_sigma)?.add_scaled(&-l.bilinear(&d.im_sigma, beta)?, &v);
    let default_ref;
    let reference = match reference {
        Some(r) => {
            check_len(l, r)?;
            common_radicand([&raw, r])?;
            r
        }
        None => {
            default_ref = v.add(&slot.v_star_field());
            &default_ref
        }
    };
    let pairing = l.bilinear(&raw, reference)?;
    Ok(match pairing.signum() {
        -1 => MirrorOmega { omega: raw.neg(), epsilon: -1, degenerate: false },
        0 => MirrorOmega { omega: raw, epsilon: 1, degenerate: true },
        _ => MirrorOmega { omega: raw, epsilon: 1, degenerate: false },
    })
}

/// `x² = 0` and `x·x̄ > 0` for `x = re + i·im`.
pub fn period_check(lattice: &IntegralLattice, c: &ComplexClass) -> Result<bool, MirrorError> {
    common_radicand([&c.re, &c.im])?;
    let re2 = lattice.square(&c.re)?;
    let im2 = lattice.square(&c.im)?;
    Ok(re2 == im2 && lattice.bilinear(&c.re, &c.im)?.is_zero() && (&re2 + &im2).is_positive())
}
