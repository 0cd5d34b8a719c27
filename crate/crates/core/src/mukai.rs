//! Mukai vectors `(r, D, s)` on K3 and abelian surfaces.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::intmat::gcd;
use crate::lattice::{IntegralLattice, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MukaiError {
    #[error("rank must be nonnegative, got {0}")]
    NegativeRank(i64),
    #[error("number of points must be at least 1, got {0}")]
    NoPoints(i64),
    #[error("cannot parse Mukai vector `{0}`; expected `r;d1,...,dk;s`")]
    Parse(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `(r, D, s)` with `D` in coordinates of a Picard lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MukaiVector {
    pub r: i64,
    pub d: Vec<i64>,
    pub s: i64,
}

impl MukaiVector {
    pub fn new(r: i64, d: Vec<i64>, s: i64) -> Result<Self, MukaiError> {
        if r < 0 {
            return Err(MukaiError::NegativeRank(r));
        }
        Ok(MukaiVector { r, d, s })
    }
}

impl FromStr for MukaiVector {
    type Err = MukaiError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || MukaiError::Parse(text.to_string());
        let parts: Vec<&str> = text.trim().split(';').collect();
        let [r, d, s] = parts[..] else { return Err(bad()) };
        let r = r.trim().parse().map_err(|_| bad())?;
        let s = s.trim().parse().map_err(|_| bad())?;
        let d = if d.trim().is_empty() {
            Vec::new()
        } else {
            d.split(',').map(|c| c.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        MukaiVector::new(r, d, s)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(ToString::to_string).collect();
        write!(f, "{};{};{}", self.r, d.join(","), self.s)
    }
}

/// `v·w = D·D' − r s' − r' s`.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector, picard: &IntegralLattice) -> Result<i128, MukaiError> {
    let dd = picard.pair_int(&v.d, &w.d)?;
    Ok(dd - v.r as i128 * w.s as i128 - w.r as i128 * v.s as i128)
}

/// Dimension `D² − 2rs + 2` of the moduli space of stable sheaves with vector `v`.
pub fn moduli_dimension(v: &MukaiVector, picard: &IntegralLattice) -> Result<i128, MukaiError> {
    Ok(mukai_pairing(v, v, picard)? + 2)
}

/// Whether `gcd(r, s, D·b₁, …, D·b_k) = 1` over the Picard basis.
pub fn is_fine(v: &MukaiVector, picard: &IntegralLattice) -> Result<bool, MukaiError> {
    let g = picard.gram_times(&v.d)?.into_iter().fold(gcd(v.r as i128, v.s as i128), gcd);
    Ok(g == 1)
}

/// Outcome of the lattice part of the reflexive K3 test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexiveCheck {
    pub accepted: bool,
    /// Conditions that are part of the definition but not decidable from lattice data.
    pub unchecked: Vec<&'static str>,
}

pub const UNCHECKED_NOT_EFFECTIVE: &str = "D+2H-not-effective unchecked";

/// `H² = 2`, `H·D = 0`, `D² = −12`.
pub fn is_reflexive_datum(h_sq: i64, hd: i64, d_sq: i64) -> ReflexiveCheck {
    ReflexiveCheck { accepted: (h_sq, hd, d_sq) == (2, 0, -12), unchecked: vec![UNCHECKED_NOT_EFFECTIVE] }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Surface {
    K3,
    Abelian,
}

impl FromStr for Surface {
    type Err = MukaiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "k3" => Ok(Surface::K3),
            "abelian" => Ok(Surface::Abelian),
            _ => Err(MukaiError::Parse(s.to_string())),
        }
    }
}

/// Mukai vector of the ideal sheaf of `n` points.
///
/// `s = χ − ε·rk` with `χ(I_Z) = χ(O) − n`, so `s = 1 − n` on a K3 surface
/// (`χ(O) = 2`, `ε = 1`) and `s = −n` on an abelian surface (`χ(O) = 0`, `ε = 0`).
pub fn hilbert_vector(n: i64, surface: Surface, picard_rank: usize) -> Result<MukaiVector, MukaiError> {
    if n < 1 {
        return Err(MukaiError::NoPoints(n));
    }
    let s = match surface {
        Surface::K3 => 1 - n,
        Surface::Abelian => -n,
    };
    MukaiVector::new(1, vec![0; picard_rank], s)
}

/// The hypothesis that the polarization lies in the interior of a `v`-chamber.
///
/// Not decidable from lattice data; it is recorded as asserted by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VChamberHypothesis {
    pub asserted: bool,
}

impl VChamberHypothesis {
    pub fn holds(&self) -> bool {
        self.asserted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus12() -> IntegralLattice {
        IntegralLattice::new(vec![vec![-12]]).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let v: MukaiVector = "2;1;-3".parse().unwrap();
        assert_eq!(v, MukaiVector { r: 2, d: vec![1], s: -3 });
        assert_eq!(v.to_string(), "2;1;-3");
        let w: MukaiVector = " 1;;0 ".parse().unwrap();
        assert!(w.d.is_empty());
        assert_eq!(w.to_string(), "1;;0");
        for bad in ["", "1;2", "1;a;0", "-1;;0", "1;1,;0", "1;;0;4"] {
            assert!(bad.parse::<MukaiVector>().is_err(), "{bad}");
        }
    }

    #[test]
    fn dimensions() {
        let empty = IntegralLattice::zero();
        for n in 1..=10 {
            let v = hilbert_vector(n, Surface::K3, 0).unwrap();
            assert_eq!(moduli_dimension(&v, &empty).unwrap(), 2 * n as i128);
        }
        let v = MukaiVector::new(2, vec![1], -3).unwrap();
        assert_eq!(moduli_dimension(&v, &minus12()).unwrap(), 2);
        assert_eq!(moduli_dimension(&MukaiVector::new(1, vec![], 1).unwrap(), &empty).unwrap(), 0);
        assert_eq!(hilbert_vector(2, Surface::K3, 0).unwrap(), MukaiVector { r: 1, d: vec![], s: -1 });
        assert_eq!(hilbert_vector(1, Surface::K3, 0).unwrap().s, 0);
        assert!(hilbert_vector(0, Surface::K3, 0).is_err());
    }

    #[test]
    fn abelian_hilbert_vector_includes_dual_torus() {
        let empty = IntegralLattice::zero();
        let v = hilbert_vector(2, Surface::Abelian, 0).unwrap();
        assert_eq!(v.s, -2);
        // Hilbⁿ(A) × Â has dimension 2n + 2.
        assert_eq!(moduli_dimension(&v, &empty).unwrap(), 6);
    }

    #[test]
    fn pairing() {
        let l = minus12();
        let v = MukaiVector::new(2, vec![1], -3).unwrap();
        assert_eq!(mukai_pairing(&v, &v, &l).unwrap(), 0);
        let empty = IntegralLattice::zero();
        let a = MukaiVector::new(1, vec![], 0).unwrap();
        let b = MukaiVector::new(0, vec![], 1).unwrap();
        assert_eq!(mukai_pairing(&a, &b, &empty).unwrap(), -1);
    }

    #[test]
    fn fineness() {
        let l = IntegralLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(is_fine(&MukaiVector::new(2, vec![5, 7], -3).unwrap(), &l).unwrap());
        let even = IntegralLattice::new(vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert!(!is_fine(&MukaiVector::new(2, vec![0, 0], -2).unwrap(), &even).unwrap());
        assert!(!is_fine(&MukaiVector::new(2, vec![1, 3], -2).unwrap(), &even).unwrap());
        assert!(is_fine(&MukaiVector::new(0, vec![1, 0], 0).unwrap(), &l).unwrap());
    }

    #[test]
    fn reflexive() {
        let ok = is_reflexive_datum(2, 0, -12);
        assert!(ok.accepted);
        assert_eq!(ok.unchecked, vec![UNCHECKED_NOT_EFFECTIVE]);
        assert!(!is_reflexive_datum(2, 0, -10).accepted);
        assert!(!is_reflexive_datum(4, 0, -12).accepted);
        assert!(!is_reflexive_datum(2, 1, -12).unchecked.is_empty());
    }
}
