//! Invariants of 2-elementary lattices and the classification data built on them.
//!
//! Covers the K3 and K3^[2] involution tables, predicates for hyperbolic
//! planes inside `T` or `S`, the fixed-locus descriptors, and the admissible
//! sets behind the mirror examples.

pub mod construct;
pub mod figures;
pub mod standard;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{IntegralLattice, LatticeError, NikulinTriple, DEFAULT_CLASS_CAP};

pub use construct::{construct_from_triple, construct_with_signature, decompose, ConstructError, Decomposition};
pub use figures::{k3_triples, k3sq_figure, k3sq_records, EmbeddingRecord, Hilb2Figure, K3_HILB2_RANK};
pub use standard::{standard_lattice, StandardLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassificationError {
    #[error("{0} is not one of the K3 involution triples")]
    NotK3Triple(NikulinTriple),
    #[error("invalid triple {0}: {1}")]
    InvalidTriple(NikulinTriple, &'static str),
    #[error("lattice with invariants {0} does not appear in the K3^[2] embedding tables")]
    NotInTables(NikulinTriple),
    #[error("lattice is not Lorentzian (signature {0:?})")]
    NotLorentzian((usize, usize)),
    #[error("a triple is required for this involution kind")]
    MissingTriple,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn require_k3(t: NikulinTriple) -> Result<(), ClassificationError> {
    if k3_triples().contains(&t) {
        Ok(())
    } else {
        Err(ClassificationError::NotK3Triple(t))
    }
}

/// Whether the invariant lattice `T` contains a copy of `U` as an orthogonal summand.
pub fn admits_u_in_t(t: NikulinTriple) -> Result<bool, ClassificationError> {
    require_k3(t)?;
    let (r, a) = (t.r, t.a);
    Ok(r >= a + 3 || (r == a + 2 && t.delta == 1) || matches!((r, a, t.delta), (2, 0, 0) | (10, 8, 0)))
}

/// Whether `S = T^⊥` in the K3 lattice contains a copy of `U` as an orthogonal summand.
///
/// `S` has invariants `(22 − r, a, δ)`: the glue between `T` and `S` in a
/// unimodular lattice identifies `q_S` with `−q_T`, which preserves `δ`.
pub fn admits_u_in_s(t: NikulinTriple) -> Result<bool, ClassificationError> {
    require_k3(t)?;
    let (r, a) = (t.r, t.a);
    Ok(19 >= r + a || (20 == r + a && t.delta == 1) || matches!((r, a, t.delta), (18, 2, 0) | (10, 10, 0)))
}

/// Invariants of the complement of `T` in the K3 lattice.
pub fn k3_complement(t: NikulinTriple) -> NikulinTriple {
    NikulinTriple::new(22 - t.r, t.a, t.delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FixedLocusDescriptor {
    Empty,
    TwoElliptic,
    GenusPlusRationals { g: u32, l: u32 },
    EightPoints,
}

/// Fixed locus of a holomorphic antisymplectic involution with invariants `t`.
pub fn fixed_locus_k3(t: NikulinTriple) -> Result<FixedLocusDescriptor, ClassificationError> {
    require_k3(t)?;
    Ok(match (t.r, t.a, t.delta) {
        (10, 10, 0) => FixedLocusDescriptor::Empty,
        (10, 8, 0) => FixedLocusDescriptor::TwoElliptic,
        (r, a, _) => {
            if (r + a) % 2 != 0 || r + a > 22 || a > r {
                return Err(ClassificationError::InvalidTriple(
                    t,
                    "genus or rational-curve count is not a nonnegative integer",
                ));
            }
            FixedLocusDescriptor::GenusPlusRationals { g: (22 - r - a) / 2, l: (r - a) / 2 }
        }
    })
}

/// Fixed locus of a holomorphic symplectic involution on a K3 surface.
pub fn fixed_locus_symplectic() -> FixedLocusDescriptor {
    FixedLocusDescriptor::EightPoints
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingOption {
    pub a_s: u32,
    pub delta_s: u8,
}

/// Complements of a primitive embedding of `T` into the K3^[2] lattice.
///
/// Without a discriminant class of square `3/2 mod 2` the only option is
/// `(a(T) + 1, 1)`. Otherwise `(a(T) − 1, δ)` is added for each `δ` the
/// embedding tables realize for `T`.
pub fn k3sq_embedding_options(t: &IntegralLattice) -> Result<Vec<EmbeddingOption>, ClassificationError> {
    let sig = t.signature();
    if sig.0 != 1 {
        return Err(ClassificationError::NotLorentzian(sig));
    }
    let triple = t.two_elementary_invariants_with_cap(DEFAULT_CLASS_CAP)?;
    let mut out = Vec::new();
    if t.has_three_halves_class(DEFAULT_CLASS_CAP)? {
        let mut deltas: BTreeSet<u8> =
            k3sq_records(Hilb2Figure::Minus).into_iter().filter(|r| r.t == triple).map(|r| r.s.delta).collect();
        if deltas.is_empty() && triple.a == 1 {
            // The complement is even and unimodular.
            deltas.insert(0);
        }
        if deltas.is_empty() {
            return Err(ClassificationError::NotInTables(triple));
        }
        out.extend(deltas.into_iter().map(|delta_s| EmbeddingOption { a_s: triple.a - 1, delta_s }));
    }
    out.push(EmbeddingOption { a_s: triple.a + 1, delta_s: 1 });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MirrorExample {
    /// Antiholomorphic involution on K3, `U ⊂ T`.
    Ex51,
    /// Antiholomorphic involution on K3, `U ⊂ S`.
    Ex52,
    /// K3^[2], `a(S) = a(T) − 1`, `U ⊂ T`.
    Ex53,
    /// K3^[2], `a(S) = a(T) + 1`, `U ⊂ S`.
    Ex54,
}

impl MirrorExample {
    pub fn id(self) -> &'static str {
        match self {
            MirrorExample::Ex51 => "ex51",
            MirrorExample::Ex52 => "ex52",
            MirrorExample::Ex53 => "ex53",
            MirrorExample::Ex54 => "ex54",
        }
    }
}

/// Records of a K3^[2] example: markers of the source figure passing the `U`-embedding filter.
pub fn mirror_admissible_records(example: MirrorExample) -> Vec<EmbeddingRecord> {
    match example {
        MirrorExample::Ex53 => k3sq_records(Hilb2Figure::Minus).into_iter().filter(|r| r.t.r >= r.t.a + 2).collect(),
        MirrorExample::Ex54 => k3sq_records(Hilb2Figure::Plus).into_iter().filter(|r| 20 >= r.t.r + r.t.a).collect(),
        MirrorExample::Ex51 | MirrorExample::Ex52 => {
            mirror_admissible_triples(example).into_iter().map(|t| EmbeddingRecord { t, s: k3_complement(t) }).collect()
        }
    }
}

/// Invariant triples `T` admitting the mirror construction of each example.
pub fn mirror_admissible_triples(example: MirrorExample) -> BTreeSet<NikulinTriple> {
    match example {
        MirrorExample::Ex51 => k3_triples().into_iter().filter(|&t| admits_u_in_t(t).unwrap_or(false)).collect(),
        MirrorExample::Ex52 => k3_triples().into_iter().filter(|&t| admits_u_in_s(t).unwrap_or(false)).collect(),
        MirrorExample::Ex53 | MirrorExample::Ex54 => {
            mirror_admissible_records(example).into_iter().map(|r| r.t).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionKind {
    HolSymp,
    HolAntisymp,
    AntiholEither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Hilb2Component {
    /// Blow-up of `X/i` at the eight fixed points, a K3 surface.
    BlownUpQuotient,
    IsolatedPoint,
    /// The quotient surface `X/i`.
    Quotient,
    /// `Sym²(E)` of an elliptic fixed curve.
    SymSquareElliptic,
    /// `E₁ × E₂` of the two elliptic fixed curves.
    EllipticProduct,
    /// `Sym²(C)` of the genus-`g` fixed curve.
    SymSquareCurve {
        g: u32,
    },
    ProjectivePlane,
    /// `C × ℙ¹` with `C` of genus `g`.
    CurveTimesLine {
        g: u32,
    },
    LineTimesLine,
    /// A closed smooth real 4-manifold, unnamed beyond its label.
    FourManifold {
        label: &'static str,
    },
    TorusProduct,
    /// `Σ_g × S²`.
    SurfaceTimesSphere {
        g: u32,
    },
    SphereTimesSphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCount {
    pub component: Hilb2Component,
    pub count: u32,
}

fn comp(component: Hilb2Component, count: u32) -> ComponentCount {
    ComponentCount { component, count }
}

/// Components of the fixed locus of the natural involution on `Hilb²` of a K3 surface.
pub fn hilb2_fixed_locus(
    kind: InvolutionKind,
    t: Option<NikulinTriple>,
) -> Result<Vec<ComponentCount>, ClassificationError> {
    use Hilb2Component::*;
    if kind == InvolutionKind::HolSymp {
        // Unordered pairs of the 8 isolated fixed points.
        return Ok(vec![comp(BlownUpQuotient, 1), comp(IsolatedPoint, 8 * 7 / 2)]);
    }
    let t = t.ok_or(ClassificationError::MissingTriple)?;
    let locus = fixed_locus_k3(t)?;
    let holomorphic = kind == InvolutionKind::HolAntisymp;
    let mut out = match locus {
        FixedLocusDescriptor::Empty => vec![comp(Quotient, 1)],
        FixedLocusDescriptor::TwoElliptic if holomorphic => {
            vec![comp(Quotient, 1), comp(SymSquareElliptic, 2), comp(EllipticProduct, 1)]
        }
        FixedLocusDescriptor::TwoElliptic => vec![comp(FourManifold { label: "M" }, 1), comp(TorusProduct, 1)],
        FixedLocusDescriptor::GenusPlusRationals { g, l } if holomorphic => vec![
            comp(Quotient, 1),
            comp(SymSquareCurve { g }, 1),
            comp(ProjectivePlane, l),
            comp(CurveTimesLine { g }, l),
            comp(LineTimesLine, l * l.saturating_sub(1) / 2),
        ],
        FixedLocusDescriptor::GenusPlusRationals { g, l } => vec![
            comp(FourManifold { label: "M'" }, 1),
            comp(SurfaceTimesSphere { g }, l),
            comp(SphereTimesSphere, l * l.saturating_sub(1) / 2),
        ],
        FixedLocusDescriptor::EightPoints => unreachable!("antisymplectic loci are never isolated points"),
    };
    out.retain(|c| c.count > 0);
    Ok(out)
}
