//! Discriminant groups `L*/L` and their quadratic forms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::{self, IMat};
use super::{IntegralLattice, LatticeError};

/// Default upper bound on the 2-rank for brute force over discriminant classes.
pub const DEFAULT_CLASS_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub elementary_divisors: Vec<i128>,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> i128 {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }

    /// `a` with `A ≅ (ℤ/2)^a`, if the group is 2-elementary.
    pub fn two_rank(&self) -> Option<usize> {
        self.elementary_divisors.iter().all(|&d| d == 2).then_some(self.elementary_divisors.len())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.elementary_divisors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A value of the discriminant quadratic form, reduced into `[0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscriminantFormValue(BigRational);

impl DiscriminantFormValue {
    pub fn reduce(q: BigRational) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        let k = (&q / &two).floor();
        DiscriminantFormValue(q - k * two)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for DiscriminantFormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Invariants `(r, a, δ)` of a 2-elementary lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NikulinTriple {
    pub r: u32,
    pub a: u32,
    pub delta: u8,
}

impl NikulinTriple {
    pub const fn new(r: u32, a: u32, delta: u8) -> Self {
        NikulinTriple { r, a, delta }
    }
}

impl fmt::Display for NikulinTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.a, self.delta)
    }
}

/// Generators of `L*/L` read off a Smith form `U·G·V = D`.
///
/// The `i`-th generator is `V e_i / d_i` for each `d_i > 1`; a dual vector
/// `x` has coordinates `U·G·x` modulo the `d_i`.
#[derive(Clone, Debug)]
pub struct DiscriminantData {
    pub group: FiniteAbelianGroup,
    /// Columns of `V` for the nontrivial divisors, one generator numerator each.
    pub generator_numerators: Vec<Vec<i128>>,
    left: IMat,
    offset: usize,
}

impl DiscriminantData {
    /// Canonical coordinates of the coset `x + L` of a dual vector `x`.
    pub fn coset_coordinates(&self, lattice: &IntegralLattice, x: &[BigRational]) -> Result<Vec<i128>, LatticeError> {
        let g = lattice.gram_i128();
        let mut gx = Vec::with_capacity(x.len());
        for row in &g {
            let s: BigRational =
                row.iter().zip(x).map(|(&a, xi)| xi * BigRational::from_integer(BigInt::from(a))).sum();
            if !s.is_integer() {
                return Err(LatticeError::NotInDual);
            }
            gx.push(s.to_integer().to_i128().ok_or(LatticeError::Overflow)?);
        }
        let c = intmat::matvec(&self.left, &gx)?;
        Ok(self.group.elementary_divisors.iter().enumerate().map(|(k, &d)| c[self.offset + k].rem_euclid(d)).collect())
    }

    /// Dual vector `Σ c_i · g_i` as rational lattice coordinates.
    pub fn class_vector(&self, coefficients: &[i128]) -> Vec<BigRational> {
        let n = self.generator_numerators.first().map_or(0, Vec::len);
        let mut x = vec![BigRational::zero(); n];
        for ((num, &d), &c) in self.generator_numerators.iter().zip(&self.group.elementary_divisors).zip(coefficients) {
            if c == 0 {
                continue;
            }
            for (xi, &v) in x.iter_mut().zip(num) {
                *xi += BigRational::new(BigInt::from(c * v), BigInt::from(d));
            }
        }
        x
    }
}

impl IntegralLattice {
    pub fn discriminant_data(&self) -> Result<DiscriminantData, LatticeError> {
        let s = intmat::smith(&self.gram_i128())?;
        if s.rank < self.rank() {
            return Err(LatticeError::Degenerate);
        }
        let offset = s.diagonal.iter().take_while(|&&d| d == 1).count();
        let divisors: Vec<i128> = s.diagonal[offset..].to_vec();
        let generator_numerators = (offset..self.rank()).map(|j| s.right.iter().map(|row| row[j]).collect()).collect();
        Ok(DiscriminantData {
            group: FiniteAbelianGroup { elementary_divisors: divisors },
            generator_numerators,
            left: s.left,
            offset,
        })
    }

    pub fn discriminant_group(&self) -> Result<FiniteAbelianGroup, LatticeError> {
        Ok(self.discriminant_data()?.group)
    }

    /// All values `q(x) ∈ [0, 2)` over the `2^a` classes of a 2-elementary
    /// discriminant group, in Gray-code order starting from the zero class.
    ///
    /// Values are returned in units of `1/4`, as integers in `0..8`.
    pub fn two_elementary_class_values(&self, cap: usize) -> Result<Vec<u8>, LatticeError> {
        let data = self.discriminant_data()?;
        let a = data
            .group
            .two_rank()
            .ok_or_else(|| LatticeError::NotTwoElementary(data.group.elementary_divisors.clone()))?;
        if a > cap {
            return Err(LatticeError::CapExceeded { a, cap });
        }
        let g = self.gram_i128();
        // 4·b(g_i, g_j) = n_iᵀ G n_j for numerators n_i.
        let gn: Vec<Vec<i128>> =
            data.generator_numerators.iter().map(|n| intmat::matvec(&g, n)).collect::<Result<_, _>>()?;
        let mut b4 = vec![vec![0i128; a]; a];
        for i in 0..a {
            for j in 0..a {
                let mut s = 0i128;
                for (x, y) in data.generator_numerators[i].iter().zip(&gn[j]) {
                    s = intmat::mul_add(s, *x, *y)?;
                }
                b4[i][j] = s;
            }
        }
        // q(x + g_i) = q(x) + 2 b(x, g_i) + q(g_i); track 4·b(x, g_j) mod 8 for all j.
        let mut values = Vec::with_capacity(1 << a);
        let mut q = 0i128;
        let mut bx = vec![0i128; a];
        let mut coeff = vec![false; a];
        values.push(0u8);
        for step in 1u64..(1u64 << a) {
            let i = step.trailing_zeros() as usize;
            let sgn = if coeff[i] { -1 } else { 1 };
            // Toggle generator i: x' = x ± g_i; q changes by ±2b(x,g_i) + q(g_i).
            q = (q + sgn * 2 * bx[i] + b4[i][i]).rem_euclid(8);
            for j in 0..a {
                bx[j] = (bx[j] + sgn * b4[i][j]).rem_euclid(8);
            }
            coeff[i] = !coeff[i];
            values.push(q as u8);
        }
        Ok(values)
    }

    /// `(r, a, δ)` for a 2-elementary lattice, brute-forcing δ over all classes.
    pub fn two_elementary_invariants_with_cap(&self, cap: usize) -> Result<NikulinTriple, LatticeError> {
        let values = self.two_elementary_class_values(cap)?;
        let a = values.len().trailing_zeros();
        let delta = u8::from(values.iter().any(|&v| v % 4 != 0));
        Ok(NikulinTriple { r: self.rank() as u32, a, delta })
    }

    pub fn two_elementary_invariants(&self) -> Result<NikulinTriple, LatticeError> {
        self.two_elementary_invariants_with_cap(DEFAULT_CLASS_CAP)
    }

    /// Whether some discriminant class has `q(x) ≡ 3/2 mod 2`.
    pub fn has_three_halves_class(&self, cap: usize) -> Result<bool, LatticeError> {
        Ok(self.two_elementary_class_values(cap)?.contains(&6))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(g: &[&[i64]]) -> IntegralLattice {
        IntegralLattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_groups() {
        assert!(lat(&[&[0, 1], &[1, 0]]).discriminant_group().unwrap().is_trivial());
        assert_eq!(lat(&[&[-2]]).discriminant_group().unwrap().elementary_divisors, vec![2]);
        assert_eq!(lat(&[&[0, 2], &[2, 0]]).discriminant_group().unwrap().elementary_divisors, vec![2, 2]);
        assert_eq!(lat(&[&[2, 1], &[1, 2]]).discriminant_group().unwrap().elementary_divisors, vec![3]);
    }

    #[test]
    fn small_triples() {
        assert_eq!(lat(&[&[-2]]).two_elementary_invariants().unwrap(), NikulinTriple::new(1, 1, 1));
        assert_eq!(lat(&[&[0, 2], &[2, 0]]).two_elementary_invariants().unwrap(), NikulinTriple::new(2, 2, 0));
        assert!(matches!(lat(&[&[2, 1], &[1, 2]]).two_elementary_invariants(), Err(LatticeError::NotTwoElementary(_))));
        let big = IntegralLattice::new((0..4).map(|i| (0..4).map(|j| if i == j { 2 } else { 0 }).collect()).collect())
            .unwrap();
        assert!(matches!(big.two_elementary_invariants_with_cap(3), Err(LatticeError::CapExceeded { a: 4, cap: 3 })));
    }

    #[test]
    fn form_values() {
        assert_eq!(lat(&[&[-2]]).discriminant_form_value(&[q(1, 2)]).unwrap().value(), &q(3, 2));
        assert_eq!(lat(&[&[2]]).discriminant_form_value(&[q(1, 2)]).unwrap().value(), &q(1, 2));
        assert_eq!(lat(&[&[2]]).discriminant_form_value(&[q(0, 1)]).unwrap().value(), &q(0, 1));
        assert!(lat(&[&[2]]).discriminant_form_value(&[q(1, 3)]).is_err());
    }

    #[test]
    fn three_halves_detection() {
        let u_m2 = lat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]);
        assert!(u_m2.has_three_halves_class(16).unwrap());
        assert!(!lat(&[&[2]]).has_three_halves_class(16).unwrap());
    }

    #[test]
    fn coset_coordinates_round_trip() {
        let l = lat(&[&[0, 2, 0], &[2, 0, 0], &[0, 0, -2]]);
        let d = l.discriminant_data().unwrap();
        for c in 0..8i128 {
            let coeff: Vec<i128> = (0..3).map(|k| (c >> k) & 1).collect();
            let x = d.class_vector(&coeff);
            assert_eq!(d.coset_coordinates(&l, &x).unwrap(), coeff);
        }
    }
}
