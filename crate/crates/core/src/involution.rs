//! Involutions of the cohomology lattice and the brane types they induce.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::intmat::{self, IMat};
use crate::lattice::{rational_inverse, FieldVector, IntegralLattice, LatticeError};
use crate::mirror::{mirror_omega, mirror_sigma, DeformationType, HKDatum, HyperbolicSlot, MirrorError};
use crate::mukai::MukaiVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("matrix is not {0}×{0}")]
    Shape(usize),
    #[error("matrix does not square to the identity")]
    NotInvolution,
    #[error("matrix does not preserve the bilinear form")]
    NotIsometry,
    #[error("{0} is not an eigenvector with eigenvalue ±1")]
    NotBraneCompatible(&'static str),
    #[error("sign pattern {0:?} on (ω, Re σ, Im σ) is not a brane type")]
    InvalidPattern([i8; 3]),
    #[error("isometry is not invertible over the integers")]
    NotInvertible,
    #[error("the glued involution is not integral")]
    NotExtendable,
    #[error("the hyperbolic plane is not contained in the anti-invariant lattice")]
    SlotNotInS,
    #[error("indirect construction requires a deformation type with Mon² = O⁺, not {0}")]
    UnsupportedDeformation(DeformationType),
    #[error("divisor is not in the Picard sublattice")]
    DivisorOutsidePicard,
    #[error("Impossible: the {1} construction does not apply to type {0}")]
    Impossible(BraneType, Construction),
    #[error("table condition violated: {0}")]
    TableCondition(String),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BraneType {
    BBB,
    BAA,
    ABA,
    AAB,
}

impl fmt::Display for BraneType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl BraneType {
    /// Type from the eigenvalues on `(ω, Re σ, Im σ)`.
    pub fn from_signs(signs: [i8; 3]) -> Result<Self, InvolutionError> {
        match signs {
            [1, 1, 1] => Ok(BraneType::BBB),
            [1, -1, -1] => Ok(BraneType::BAA),
            [-1, 1, -1] => Ok(BraneType::ABA),
            [-1, -1, 1] => Ok(BraneType::AAB),
            other => Err(InvolutionError::InvalidPattern(other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Direct,
    Indirect,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Direct => "direct",
            Construction::Indirect => "indirect",
        })
    }
}

/// An integral isometric involution of `Γ`, acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyInvolution {
    matrix: Vec<Vec<i64>>,
    pub deformation_type: DeformationType,
}

impl CohomologyInvolution {
    pub fn new(
        lattice: &IntegralLattice,
        matrix: Vec<Vec<i64>>,
        deformation_type: DeformationType,
    ) -> Result<Self, InvolutionError> {
        let n = lattice.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(InvolutionError::Shape(n));
        }
        let m = intmat::from_i64(&matrix);
        if intmat::matmul(&m, &m)? != intmat::identity(n) {
            return Err(InvolutionError::NotInvolution);
        }
        if !is_isometry(lattice, &m)? {
            return Err(InvolutionError::NotIsometry);
        }
        Ok(CohomologyInvolution { matrix, deformation_type })
    }

    pub fn identity(lattice: &IntegralLattice, deformation_type: DeformationType) -> Self {
        let n = lattice.rank();
        CohomologyInvolution { matrix: scalar_matrix(n, 1), deformation_type }
    }

    pub fn negation(lattice: &IntegralLattice, deformation_type: DeformationType) -> Self {
        let n = lattice.rank();
        CohomologyInvolution { matrix: scalar_matrix(n, -1), deformation_type }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &FieldVector) -> FieldVector {
        x.transform(&self.matrix)
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `+1` or `−1` when `x` is an eigenvector, `+1` for `x = 0`.
    pub fn eigen_sign(&self, x: &FieldVector) -> Option<i8> {
        let y = self.apply(x);
        if y == *x {
            Some(1)
        } else if y == x.neg() {
            Some(-1)
        } else {
            None
        }
    }
}

fn scalar_matrix(n: usize, c: i64) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { c } else { 0 }).collect()).collect()
}

fn is_isometry(lattice: &IntegralLattice, m: &IMat) -> Result<bool, LatticeError> {
    let g = intmat::from_i64(lattice.gram());
    Ok(intmat::matmul(&intmat::transpose(m), &intmat::matmul(&g, m)?)? == g)
}

fn to_i64_rows(rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>, LatticeError> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| LatticeError::Overflow)).collect())
        .collect()
}

/// Bases of the invariant and anti-invariant sublattices.
pub type EigenBases = (Vec<Vec<i64>>, Vec<Vec<i64>>);

/// Primitive bases of `T = ker(ι − 1)` and `S = ker(ι + 1)`.
pub fn invariant_lattices(iota: &CohomologyInvolution) -> Result<EigenBases, InvolutionError> {
    let n = iota.matrix.len();
    let shifted = |c: i128| -> IMat {
        iota.matrix
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| x as i128 - if i == j { c } else { 0 }).collect())
            .collect()
    };
    let t = to_i64_rows(intmat::kernel(&shifted(1), n)?)?;
    let s = to_i64_rows(intmat::kernel(&shifted(-1), n)?)?;
    Ok((t, s))
}

/// Brane type of `ι` with respect to a hyperkähler datum.
pub fn brane_type(iota: &CohomologyInvolution, d: &HKDatum) -> Result<BraneType, InvolutionError> {
    classify_classes(iota, &d.omega, &d.re_sigma, &d.im_sigma)
}

/// Brane type from the action on a Kähler class and the two parts of a period.
pub fn classify_classes(
    iota: &CohomologyInvolution,
    omega: &FieldVector,
    re: &FieldVector,
    im: &FieldVector,
) -> Result<BraneType, InvolutionError> {
    let sign = |x: &FieldVector, name| iota.eigen_sign(x).ok_or(InvolutionError::NotBraneCompatible(name));
    BraneType::from_signs([sign(omega, "ω")?, sign(re, "Re σ")?, sign(im, "Im σ")?])
}

/// Integer inverse of a unimodular matrix.
fn integer_inverse(g: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, InvolutionError> {
    let inv = rational_inverse(g).ok_or(InvolutionError::NotInvertible)?;
    integral_rows(inv).ok_or(InvolutionError::NotInvertible)
}

fn integral_rows(m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<i64>>> {
    m.into_iter()
        .map(|r| r.into_iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
        .collect()
}

/// `g⁻¹ ι g` for an isometry `g` of `Γ`.
pub fn conjugate(
    lattice: &IntegralLattice,
    iota: &CohomologyInvolution,
    g: &[Vec<i64>],
) -> Result<CohomologyInvolution, InvolutionError> {
    let n = lattice.rank();
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(InvolutionError::Shape(n));
    }
    let gi = intmat::from_i64(g);
    if !is_isometry(lattice, &gi)? {
        return Err(InvolutionError::NotIsometry);
    }
    let inv = intmat::from_i64(&integer_inverse(g)?);
    let m = intmat::matmul(&inv, &intmat::matmul(&intmat::from_i64(&iota.matrix), &gi)?)?;
    CohomologyInvolution::new(lattice, to_i64_rows(m)?, iota.deformation_type)
}

/// The involution that is `−1` on `j(U) ⊕ T` and `+1` on `M ∩ S`, if it is integral.
pub fn indirect_mirror(
    lattice: &IntegralLattice,
    t_basis: &[Vec<i64>],
    s_basis: &[Vec<i64>],
    slot: &HyperbolicSlot,
    deformation_type: DeformationType,
) -> Result<CohomologyInvolution, InvolutionError> {
    if deformation_type == DeformationType::Other {
        return Err(InvolutionError::UnsupportedDeformation(deformation_type));
    }
    let n = lattice.rank();
    if t_basis.len() + s_basis.len() != n {
        return Err(LatticeError::RankMismatch { expected: n, found: t_basis.len() + s_basis.len() }.into());
    }
    for t in t_basis {
        if lattice.pair_int(t, &slot.v)? != 0 || lattice.pair_int(t, &slot.v_star)? != 0 {
            return Err(InvolutionError::SlotNotInS);
        }
    }
    let mut minus: Vec<Vec<i64>> = vec![slot.v.clone(), slot.v_star.clone()];
    minus.extend(t_basis.iter().cloned());
    let plus = lattice.orthogonal_complement(&minus)?;
    if minus.len() + plus.len() != n {
        return Err(LatticeError::NotFullRank.into());
    }
    // ι̌ = P·diag(−1…, +1…)·P⁻¹ with the eigenbasis as columns of P.
    let columns: Vec<&Vec<i64>> = minus.iter().chain(plus.iter()).collect();
    let p: Vec<Vec<i64>> = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let p_inv = rational_inverse(&p).ok_or(LatticeError::DependentBasis)?;
    let k = minus.len();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = BigRational::zero();
            for (c, pinv_row) in p_inv.iter().enumerate() {
                if p[i][c] == 0 || pinv_row[j].is_zero() {
                    continue;
                }
                let sign = if c < k { -1 } else { 1 };
                acc += &pinv_row[j] * BigRational::from_integer(BigInt::from(sign * p[i][c]));
            }
            *entry = acc;
        }
    }
    let matrix = integral_rows(m).ok_or(InvolutionError::NotExtendable)?;
    CohomologyInvolution::new(lattice, matrix, deformation_type)
}

/// The involution that is `+1` on `j(U)` and `−1` on `M`.
pub fn sporadic_tau(
    lattice: &IntegralLattice,
    slot: &HyperbolicSlot,
    deformation_type: DeformationType,
) -> Result<CohomologyInvolution, InvolutionError> {
    CohomologyInvolution::new(lattice, slot.plane_reflection_matrix(lattice)?, deformation_type)
}

/// Type of the mirror involution, or `None` when the construction cannot produce one.
pub fn transform_type(input: BraneType, construction: Construction) -> Option<BraneType> {
    use BraneType::*;
    match (construction, input) {
        (Construction::Direct, BBB) => Some(BBB),
        (Construction::Direct, BAA) => Some(AAB),
        (Construction::Direct, ABA) => Some(ABA),
        (Construction::Direct, AAB) => Some(BAA),
        (Construction::Indirect, BAA) => Some(BAA),
        (Construction::Indirect, AAB) => Some(AAB),
        (Construction::Indirect, ABA | BBB) => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub input: BraneType,
    pub expected: BraneType,
    pub computed: BraneType,
    pub matches: bool,
}

fn require(ok: bool, what: &str) -> Result<(), InvolutionError> {
    if ok {
        Ok(())
    } else {
        Err(InvolutionError::TableCondition(what.to_string()))
    }
}

/// Checks one row of the mirror transformation table on explicit data.
///
/// The slot and B-field are validated against the row's conditions: `j(U)`
/// inside `T` or `S`, and `β` fixed or negated by `ι`. The mirror period and
/// Kähler class are computed, the mirror involution is built by the requested
/// construction, and its type is compared with the tabulated one.
pub fn verify_table_row(
    iota: &CohomologyInvolution,
    d: &HKDatum,
    slot: &HyperbolicSlot,
    beta: &FieldVector,
    construction: Construction,
    reference: Option<&FieldVector>,
) -> Result<TableRow, InvolutionError> {
    let input = brane_type(iota, d)?;
    let expected = transform_type(input, construction).ok_or(InvolutionError::Impossible(input, construction))?;
    let slot_sign = |x: &[i64]| {
        let y = iota.apply_int(x);
        if y == x {
            Some(1)
        } else if y.iter().zip(x).all(|(a, b)| *a == -b) {
            Some(-1)
        } else {
            None
        }
    };
    let j_sign = match (slot_sign(&slot.v), slot_sign(&slot.v_star)) {
        (Some(a), Some(b)) if a == b => a,
        _ => return Err(InvolutionError::TableCondition("j(U) lies in neither T nor S".into())),
    };
    let beta_sign = iota.eigen_sign(beta);
    let (want_j, want_beta) = match (construction, input) {
        (Construction::Direct, BraneType::BBB | BraneType::ABA) => (1, 1),
        (Construction::Direct, BraneType::BAA | BraneType::AAB) => (-1, -1),
        (Construction::Indirect, _) => (-1, 1),
    };
    require(j_sign == want_j, if want_j == 1 { "j(U) must lie in T" } else { "j(U) must lie in S" })?;
    require(
        beta.is_zero() || beta_sign == Some(want_beta),
        if want_beta == 1 { "β must lie in T ⊗ ℝ" } else { "β must lie in S ⊗ ℝ" },
    )?;
    let lattice = d.lattice();
    let sigma = mirror_sigma(d, slot, beta)?;
    let omega = mirror_omega(d, slot, beta, reference)?.omega;
    let mirror_iota = match construction {
        Construction::Direct => conjugate(lattice, iota, &scalar_matrix(lattice.rank(), 1))?,
        Construction::Indirect => {
            let (t, s) = invariant_lattices(iota)?;
            indirect_mirror(lattice, &t, &s, slot, iota.deformation_type)?
        }
    };
    let computed = classify_classes(&mirror_iota, &omega, &sigma.re, &sigma.im)?;
    Ok(TableRow { input, expected, computed, matches: computed == expected })
}

/// `(r, ιD, s)` for `ι` preserving the Picard sublattice spanned by `picard_basis`.
pub fn mukai_vector_involution(
    iota: &CohomologyInvolution,
    picard_basis: &[Vec<i64>],
    v: &MukaiVector,
) -> Result<MukaiVector, InvolutionError> {
    let k = picard_basis.len();
    if v.d.len() != k {
        return Err(LatticeError::RankMismatch { expected: k, found: v.d.len() }.into());
    }
    let n = iota.matrix.len();
    let mut ambient = vec![0i64; n];
    for (c, b) in v.d.iter().zip(picard_basis) {
        for (a, x) in ambient.iter_mut().zip(b) {
            *a += c * x;
        }
    }
    let image = iota.apply_int(&ambient);
    let coords = solve_in_basis(picard_basis, &image).ok_or(InvolutionError::DivisorOutsidePicard)?;
    Ok(MukaiVector { r: v.r, d: coords, s: v.s })
}

/// Integer coordinates of `x` in the span of `basis`, if any.
fn solve_in_basis(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    if k == 0 {
        return x.iter().all(|&c| c == 0).then(Vec::new);
    }
    // Normal equations BᵀB c = Bᵀx over ℚ, then an exact check.
    let btb: Vec<Vec<i64>> =
        (0..k).map(|i| (0..k).map(|j| basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum()).collect()).collect();
    let inv = rational_inverse(&btb)?;
    let btx: Vec<i64> = basis.iter().map(|b| b.iter().zip(x).map(|(a, c)| a * c).sum()).collect();
    let coords: Vec<BigRational> = inv
        .iter()
        .map(|row| row.iter().zip(&btx).map(|(a, &b)| a * BigRational::from_integer(BigInt::from(b))).sum())
        .collect();
    let coords: Vec<i64> = coords
        .into_iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect::<Option<_>>()?;
    let mut back = vec![0i64; x.len()];
    for (c, b) in coords.iter().zip(basis) {
        for (t, y) in back.iter_mut().zip(b) {
            *t += c * y;
        }
    }
    (back == x).then_some(coords)
}
