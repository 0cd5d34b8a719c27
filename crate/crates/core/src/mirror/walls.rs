//! Wall divisors in a Picard sublattice and reflections through them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{check_len, ComplexClass, DeformationType, MirrorError};
use crate::lattice::{FieldVector, IntegralLattice, LatticeError};
use crate::scalar::QuadScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WallTag {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "nd")]
    Nd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    /// Coordinates in the ambient lattice.
    pub vector: Vec<i64>,
    pub square: i64,
    pub tag: WallTag,
}

impl Wall {
    pub fn field(&self) -> FieldVector {
        FieldVector::from_ints(&self.vector)
    }
}

/// Classes eligible to be wall divisors and the bound that makes them finite.
#[derive(Clone, Debug)]
pub struct WallDivisorSpec {
    /// Basis of the Picard sublattice, in ambient coordinates.
    pub picard_basis: Vec<Vec<i64>>,
    /// Bound on `|D·h|` for a hyperbolic Picard lattice.
    pub norm_bound: u32,
    pub deformation_type: DeformationType,
    /// Polarization `h` in Picard-basis coordinates; searched for when absent.
    pub polarization: Option<Vec<i64>>,
}

impl WallDivisorSpec {
    pub fn new(picard_basis: Vec<Vec<i64>>, norm_bound: u32, deformation_type: DeformationType) -> Self {
        WallDivisorSpec { picard_basis, norm_bound, deformation_type, polarization: None }
    }

    pub fn with_polarization(mut self, h: Vec<i64>) -> Self {
        self.polarization = Some(h);
        self
    }
}

fn to_i64(x: i128) -> Result<i64, MirrorError> {
    i64::try_from(x).map_err(|_| LatticeError::Overflow.into())
}

fn quad_form(a: &[Vec<i128>], x: &[i64]) -> Result<i128, MirrorError> {
    let mut s = 0i128;
    for (i, row) in a.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            let t =
                g.checked_mul(x[i] as i128).and_then(|t| t.checked_mul(x[j] as i128)).ok_or(LatticeError::Overflow)?;
            s = s.checked_add(t).ok_or(LatticeError::Overflow)?;
        }
    }
    Ok(s)
}

fn rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// All nonzero integer `x` with `xᵀAx ≤ bound` for a positive definite `A`.
///
/// Exact Fincke–Pohst: the Cholesky-type decomposition is carried out over
/// `ℚ`, floating point only proposes candidate ranges, and every partial sum is
/// tested exactly. The result is sorted.
pub fn short_vectors(a: &[Vec<i128>], bound: i128) -> Result<Vec<Vec<i64>>, MirrorError> {
    let n = a.len();
    let mut q: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(MirrorError::Unbounded("form is not positive definite".into()));
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let mut out = Vec::new();
    if bound < 0 || n == 0 {
        return Ok(out);
    }
    let mut x = vec![0i64; n];
    descend(&q, n, &rat(bound), &mut x, &mut out);
    out.retain(|v: &Vec<i64>| v.iter().any(|&c| c != 0));
    for v in &out {
        debug_assert!(quad_form(a, v).map(|s| s <= bound).unwrap_or(false));
    }
    out.sort();
    Ok(out)
}

fn descend(q: &[Vec<BigRational>], level: usize, budget: &BigRational, x: &mut [i64], out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        out.push(x.to_vec());
        return;
    }
    let i = level - 1;
    let mut c = BigRational::zero();
    for j in level..q.len() {
        if x[j] != 0 {
            c += &q[i][j] * rat(x[j] as i128);
        }
    }
    let radius = (budget / &q[i][i]).to_f64().unwrap_or(f64::MAX).max(0.0).sqrt();
    let centre = -c.to_f64().unwrap_or(0.0);
    let lo = (centre - radius).floor() as i64 - 1;
    let hi = (centre + radius).ceil() as i64 + 1;
    for xi in lo..=hi {
        let t = &c + rat(xi as i128);
        let used = &q[i][i] * &t * &t;
        if &used > budget {
            continue;
        }
        x[i] = xi;
        descend(q, i, &(budget - used), x, out);
    }
    x[i] = 0;
}

/// A positive class of smallest square in the Picard lattice, found by a box search.
fn find_polarization(p: &[Vec<i128>]) -> Result<Vec<i64>, MirrorError> {
    let k = p.len();
    for radius in 1..=4i64 {
        let side = (2 * radius + 1) as usize;
        let mut best: Option<(i128, Vec<i64>)> = None;
        for idx in 0..side.pow(k as u32) {
            let mut rest = idx;
            let x: Vec<i64> = (0..k)
                .map(|_| {
                    let c = (rest % side) as i64 - radius;
                    rest /= side;
                    c
                })
                .collect();
            let sq = quad_form(p, &x)?;
            if sq > 0 && best.as_ref().is_none_or(|(b, bx)| (sq, &x) < (*b, bx)) {
                best = Some((sq, x));
            }
        }
        if let Some((_, h)) = best {
            return Ok(h);
        }
    }
    Err(MirrorError::Unbounded("no positive class found for the polarization".into()))
}

/// Wall divisors of the Picard sublattice, sorted by ambient coordinates.
///
/// Classes with `D² = −2` are tagged `d`; for `K3Hilb2` classes with
/// `D² = −10` and ambient divisibility 2 are tagged `nd`. A negative definite
/// Picard lattice is enumerated completely. A hyperbolic one is cut off by
/// `|D·h| ≤ norm_bound` for a polarization `h`.
pub fn enumerate_walls(ambient: &IntegralLattice, spec: &WallDivisorSpec) -> Result<Vec<Wall>, MirrorError> {
    let max_norm: i128 = match spec.deformation_type {
        DeformationType::K3 => 2,
        DeformationType::K3Hilb2 => 10,
        DeformationType::Other => return Err(MirrorError::UnsupportedDeformation(spec.deformation_type)),
    };
    if spec.norm_bound < 2 {
        return Err(MirrorError::InvalidWallSpec(format!("norm bound {} is below 2", spec.norm_bound)));
    }
    if spec.picard_basis.is_empty() {
        return Ok(Vec::new());
    }
    for b in &spec.picard_basis {
        if b.len() != ambient.rank() {
            return Err(LatticeError::RankMismatch { expected: ambient.rank(), found: b.len() }.into());
        }
    }
    let picard = ambient.sublattice(&spec.picard_basis)?;
    let p: Vec<Vec<i128>> = picard.gram().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let k = p.len();
    let (a, bound, h) = match picard.signature() {
        (0, _) => (p.iter().map(|r| r.iter().map(|x| -x).collect()).collect::<Vec<Vec<i128>>>(), max_norm, None),
        (1, _) => {
            let h = match &spec.polarization {
                Some(h) => {
                    if h.len() != k {
                        return Err(LatticeError::RankMismatch { expected: k, found: h.len() }.into());
                    }
                    h.clone()
                }
                None => find_polarization(&p)?,
            };
            let h2 = quad_form(&p, &h)?;
            if h2 <= 0 {
                return Err(MirrorError::InvalidWallSpec("polarization must have positive square".into()));
            }
            let ph: Vec<i128> = p.iter().map(|r| r.iter().zip(&h).map(|(g, &c)| g * c as i128).sum()).collect();
            // xᵀAx = 2(x·h)² − h²x², positive definite on a hyperbolic lattice.
            let a = (0..k).map(|i| (0..k).map(|j| 2 * ph[i] * ph[j] - h2 * p[i][j]).collect()).collect();
            let b = spec.norm_bound as i128;
            (a, 2 * b * b + h2 * max_norm, Some(ph))
        }
        sig => {
            return Err(MirrorError::Unbounded(format!(
                "Picard signature {sig:?} is neither negative definite nor hyperbolic"
            )))
        }
    };
    let mut walls = Vec::new();
    for x in short_vectors(&a, bound)? {
        if let Some(ph) = &h {
            let dh: i128 = ph.iter().zip(&x).map(|(a, &b)| a * b as i128).sum();
            if dh.abs() > spec.norm_bound as i128 {
                continue;
            }
        }
        let sq = quad_form(&p, &x)?;
        let mut vector = vec![0i128; ambient.rank()];
        for (c, b) in x.iter().zip(&spec.picard_basis) {
            for (t, &bi) in vector.iter_mut().zip(b) {
                *t += *c as i128 * bi as i128;
            }
        }
        let vector: Vec<i64> = vector.into_iter().map(to_i64).collect::<Result<_, _>>()?;
        let tag = match sq {
            -2 => WallTag::D,
            -10 if spec.deformation_type == DeformationType::K3Hilb2 && ambient.divisibility(&vector)? == 2 => {
                WallTag::Nd
            }
            _ => continue,
        };
        walls.push(Wall { vector, square: to_i64(sq)?, tag });
    }
    walls.sort_by(|a, b| a.vector.cmp(&b.vector));
    Ok(walls)
}

/// Walls orthogonal to the mirror period, and for `d` walls also to `ω̌`.
pub fn wall_obstruction(
    lattice: &IntegralLattice,
    sigma_check: &ComplexClass,
    omega_check: &FieldVector,
    walls: &[Wall],
) -> Result<Vec<Wall>, MirrorError> {
    let mut out = Vec::new();
    for w in walls {
        let d = w.field();
        let on_period =
            lattice.bilinear(&d, &sigma_check.re)?.is_zero() && lattice.bilinear(&d, &sigma_check.im)?.is_zero();
        if !on_period {
            continue;
        }
        if w.tag == WallTag::Nd || lattice.bilinear(&d, omega_check)?.is_zero() {
            out.push(w.clone());
        }
    }
    Ok(out)
}

/// `R_u(x) = x − (2(u·x)/u²)u`.
pub fn reflect(lattice: &IntegralLattice, u: &FieldVector, x: &FieldVector) -> Result<FieldVector, MirrorError> {
    check_len(lattice, u)?;
    check_len(lattice, x)?;
    let u2 = lattice.square(u)?;
    if u2.is_zero() {
        return Err(MirrorError::IsotropicReflection);
    }
    let ux = lattice.bilinear(u, x)?;
    let c = (&QuadScalar::from_int(2) * &ux).checked_div(&u2).expect("nonzero square");
    Ok(x.add_scaled(&-c, u))
}
