//! Even integral lattices given by exact Gram matrices.
//!
//! The [`IntegralLattice`] type validates symmetry, evenness and
//! nondegeneracy on construction. Classes in `L ⊗ F` for `F = ℚ(√m)` are
//! [`FieldVector`]s of [`QuadScalar`] coordinates in the lattice basis.

pub mod discriminant;
pub mod intmat;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::QuadScalar;
use intmat::IMat;

pub use discriminant::{DiscriminantFormValue, FiniteAbelianGroup, NikulinTriple, DEFAULT_CLASS_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("diagonal entry {0} is odd; lattice is not even")]
    OddDiagonal(i64),
    #[error("degenerate bilinear form")]
    Degenerate,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("twist factor must be nonzero")]
    ZeroTwist,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("vector is not integral")]
    NotIntegral,
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("basis does not span a finite-index sublattice")]
    NotFullRank,
    #[error("determinant ratio {0} is not a perfect square")]
    NotPerfectSquare(String),
    #[error("discriminant group has elementary divisors {0:?}, not 2-elementary")]
    NotTwoElementary(Vec<i128>),
    #[error("2-rank {a} exceeds the brute-force cap {cap}")]
    CapExceeded { a: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
    name: Option<String>,
    det: i128,
    signature: OnceLock<(usize, usize)>,
}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralLattice").field("name", &self.name).field("gram", &self.gram).finish()
    }
}

impl PartialEq for IntegralLattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for IntegralLattice {}

/// Validates a Gram matrix and returns its determinant and signature.
fn validate(gram: &[Vec<i64>]) -> Result<(i128, (usize, usize)), LatticeError> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(LatticeError::NotSquare);
    }
    for i in 0..n {
        if gram[i][i] % 2 != 0 {
            return Err(LatticeError::OddDiagonal(gram[i][i]));
        }
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(LatticeError::NotSymmetric);
            }
        }
    }
    let red = intmat::symmetric_reduce(&intmat::from_i64(gram))?;
    Ok((red.determinant(), red.signature()))
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let (det, sig) = validate(&gram)?;
        Ok(IntegralLattice { gram, name: None, det, signature: OnceLock::from(sig) })
    }

    pub fn named(gram: Vec<Vec<i64>>, name: impl Into<String>) -> Result<Self, LatticeError> {
        Ok(Self::new(gram)?.with_name(name))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Rank-zero lattice, the neutral element of [`IntegralLattice::direct_sum`].
    pub fn zero() -> Self {
        IntegralLattice { gram: Vec::new(), name: None, det: 1, signature: OnceLock::from((0, 0)) }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn det(&self) -> i128 {
        self.det
    }

    pub(crate) fn gram_i128(&self) -> IMat {
        intmat::from_i64(&self.gram)
    }

    pub fn signature(&self) -> (usize, usize) {
        *self
            .signature
            .get_or_init(|| intmat::symmetric_reduce(&self.gram_i128()).map(|r| r.signature()).unwrap_or((0, 0)))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == 1
    }

    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let (p1, n1) = self.signature();
        let (p2, n2) = other.signature();
        IntegralLattice {
            gram,
            name: match (&self.name, &other.name) {
                (Some(a), Some(b)) => Some(format!("{a}+{b}")),
                _ => None,
            },
            det: self.det * other.det,
            signature: OnceLock::from((p1 + p2, n1 + n2)),
        }
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a IntegralLattice>) -> IntegralLattice {
        parts.into_iter().fold(IntegralLattice::zero(), |acc, l| acc.direct_sum(l))
    }

    /// The lattice `L(n)`: every entry multiplied by `n`.
    pub fn twist(&self, n: i64) -> Result<IntegralLattice, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroTwist);
        }
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| x.checked_mul(n).ok_or(LatticeError::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        let lat = IntegralLattice::new(gram)?;
        Ok(match &self.name {
            Some(name) => lat.with_name(format!("{name}({n})")),
            None => lat,
        })
    }

    fn check_len(&self, len: usize) -> Result<(), LatticeError> {
        if len != self.rank() {
            return Err(LatticeError::RankMismatch { expected: self.rank(), found: len });
        }
        Ok(())
    }

    /// `x·y` for integer coordinate vectors.
    pub fn pair_int(&self, x: &[i64], y: &[i64]) -> Result<i128, LatticeError> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut s = 0i128;
        for (i, row) in self.gram.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let mut t = 0i128;
            for (j, &g) in row.iter().enumerate() {
                if g != 0 && y[j] != 0 {
                    t = intmat::mul_add(t, g as i128, y[j] as i128)?;
                }
            }
            s = intmat::mul_add(s, x[i] as i128, t)?;
        }
        Ok(s)
    }

    /// `gram · x` for an integer vector.
    pub fn gram_times(&self, x: &[i64]) -> Result<Vec<i128>, LatticeError> {
        self.check_len(x.len())?;
        intmat::matvec(&self.gram_i128(), &x.iter().map(|&v| v as i128).collect::<Vec<_>>())
    }

    /// Gram matrix of the vectors in `basis` (rows).
    pub fn restricted_gram(&self, basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, LatticeError> {
        basis
            .iter()
            .map(|b| {
                basis
                    .iter()
                    .map(|c| {
                        let v = self.pair_int(b, c)?;
                        i64::try_from(v).map_err(|_| LatticeError::Overflow)
                    })
                    .collect()
            })
            .collect()
    }

    /// The sublattice spanned by `basis`, with its induced form.
    pub fn sublattice(&self, basis: &[Vec<i64>]) -> Result<IntegralLattice, LatticeError> {
        IntegralLattice::new(self.restricted_gram(basis)?)
    }

    /// Bilinear form on `L ⊗ F`.
    pub fn bilinear(&self, x: &FieldVector, y: &FieldVector) -> Result<QuadScalar, LatticeError> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut total = QuadScalar::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if x.coords[i].is_zero() {
                continue;
            }
            let mut gy = QuadScalar::zero();
            for (j, &g) in row.iter().enumerate() {
                if g != 0 && !y.coords[j].is_zero() {
                    gy += &y.coords[j].scale(&BigRational::from_integer(BigInt::from(g)));
                }
            }
            if !gy.is_zero() {
                total += &(&x.coords[i] * &gy);
            }
        }
        Ok(total)
    }

    pub fn square(&self, x: &FieldVector) -> Result<QuadScalar, LatticeError> {
        self.bilinear(x, x)
    }

    /// Positive generator of `{x·D : x ∈ L}`.
    pub fn divisibility(&self, d: &[i64]) -> Result<i128, LatticeError> {
        self.check_len(d.len())?;
        if d.iter().all(|&x| x == 0) {
            return Err(LatticeError::ZeroVector);
        }
        Ok(self.gram_times(d)?.into_iter().fold(0, intmat::gcd))
    }

    /// Primitive basis of `{x ∈ L : x·s = 0 for all s in basis}`.
    pub fn orthogonal_complement(&self, basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, LatticeError> {
        for b in basis {
            self.check_len(b.len())?;
        }
        let rows: IMat = basis.iter().map(|b| self.gram_times(b)).collect::<Result<_, _>>()?;
        if intmat::rank(&rows)? != basis.len() {
            return Err(LatticeError::DependentBasis);
        }
        to_i64_rows(intmat::kernel(&rows, self.rank())?)
    }

    /// Orthogonal projection of `x` onto `span_F(basis)`, solving the Gram system exactly.
    pub fn orthogonal_projection(&self, basis: &[Vec<i64>], x: &FieldVector) -> Result<FieldVector, LatticeError> {
        self.check_len(x.len())?;
        let k = basis.len();
        let gram_n = self.restricted_gram(basis)?;
        let inv = rational_inverse(&gram_n).ok_or(LatticeError::Degenerate)?;
        let rhs: Vec<QuadScalar> =
            basis.iter().map(|b| self.bilinear(&FieldVector::from_ints(b), x)).collect::<Result<_, _>>()?;
        let mut out = FieldVector::zeros(self.rank());
        for i in 0..k {
            let mut c = QuadScalar::zero();
            for (j, r) in rhs.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    c += &r.scale(&inv[i][j]);
                }
            }
            if c.is_zero() {
                continue;
            }
            for (t, &b) in basis[i].iter().enumerate() {
                if b != 0 {
                    out.coords[t] += &c.scale(&BigRational::from_integer(BigInt::from(b)));
                }
            }
        }
        Ok(out)
    }

    /// Index of the full-rank sublattice spanned by `basis`, from `index² = det(sub)/det(L)`.
    pub fn sublattice_index(&self, basis: &[Vec<i64>]) -> Result<u128, LatticeError> {
        if basis.len() != self.rank() {
            return Err(LatticeError::NotFullRank);
        }
        let sub = intmat::symmetric_reduce(&intmat::from_i64(&self.restricted_gram(basis)?))
            .map_err(|e| if e == LatticeError::Degenerate { LatticeError::NotFullRank } else { e })?
            .determinant();
        if sub % self.det != 0 {
            return Err(LatticeError::NotPerfectSquare(format!("{sub}/{}", self.det)));
        }
        let ratio = sub / self.det;
        let root = isqrt(ratio.unsigned_abs());
        if ratio < 0 || root * root != ratio.unsigned_abs() {
            return Err(LatticeError::NotPerfectSquare(ratio.to_string()));
        }
        Ok(root)
    }

    /// `x²` mod `2ℤ` for a dual vector given in lattice coordinates.
    pub fn discriminant_form_value(&self, x: &[BigRational]) -> Result<DiscriminantFormValue, LatticeError> {
        self.check_len(x.len())?;
        for row in &self.gram {
            let gx: BigRational =
                row.iter().zip(x).map(|(&g, xi)| xi * BigRational::from_integer(BigInt::from(g))).sum();
            if !gx.is_integer() {
                return Err(LatticeError::NotInDual);
            }
        }
        let mut q = BigRational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    q += &x[i] * &x[j] * BigRational::from_integer(BigInt::from(g));
                }
            }
        }
        Ok(DiscriminantFormValue::reduce(q))
    }

    /// Parses the text format: rank on the first line, then one row per line.
    pub fn parse_gram_text(text: &str) -> Result<IntegralLattice, LatticeError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| LatticeError::Parse("empty input".into()))?
            .parse()
            .map_err(|_| LatticeError::Parse("first line must be the rank".into()))?;
        let mut gram = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next().ok_or_else(|| LatticeError::Parse(format!("missing row {}", i + 1)))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| LatticeError::Parse(format!("bad entry `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(LatticeError::Parse(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
            gram.push(row);
        }
        if lines.next().is_some() {
            return Err(LatticeError::Parse("trailing data after gram rows".into()));
        }
        IntegralLattice::new(gram)
    }
}

pub(crate) fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub(crate) fn to_i64_rows(rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>, LatticeError> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| LatticeError::Overflow)).collect())
        .collect()
}

/// Exact inverse of an integer matrix over ℚ, `None` if singular.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A class in `L ⊗ F`, stored as coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldVector {
    pub coords: Vec<QuadScalar>,
}

impl FieldVector {
    pub fn new(coords: Vec<QuadScalar>) -> Self {
        FieldVector { coords }
    }

    pub fn zeros(n: usize) -> Self {
        FieldVector { coords: vec![QuadScalar::zero(); n] }
    }

    pub fn from_ints(x: &[i64]) -> Self {
        FieldVector { coords: x.iter().map(|&v| QuadScalar::from_int(v)).collect() }
    }

    /// The standard basis vector `e_i` of an `n`-dimensional space.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[i] = QuadScalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QuadScalar::is_zero)
    }

    pub fn add(&self, other: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        FieldVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &FieldVector) -> FieldVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        FieldVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &QuadScalar) -> FieldVector {
        FieldVector {
            coords: self.coords.iter().map(|c| if c.is_zero() { QuadScalar::zero() } else { c * s }).collect(),
        }
    }

    pub fn neg(&self) -> FieldVector {
        FieldVector { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: &QuadScalar, other: &FieldVector) -> FieldVector {
        if s.is_zero() {
            return self.clone();
        }
        self.add(&other.scale(s))
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(QuadScalar::to_i64).collect()
    }

    /// Common radicand of the coordinates, `1` when all are rational.
    pub fn radicand(&self) -> i64 {
        self.coords.iter().map(QuadScalar::radicand).find(|&m| m != 1).unwrap_or(1)
    }

    /// Applies an integer matrix acting on coordinate columns: `M·x`.
    pub fn transform(&self, m: &[Vec<i64>]) -> FieldVector {
        FieldVector {
            coords: m
                .iter()
                .map(|row| {
                    let mut s = QuadScalar::zero();
                    for (&a, c) in row.iter().zip(&self.coords) {
                        if a != 0 && !c.is_zero() {
                            s += &c.scale(&BigRational::from_integer(BigInt::from(a)));
                        }
                    }
                    s
                })
                .collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

impl serde::Serialize for FieldVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter())
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::standard::StandardLattice;

    fn u() -> IntegralLattice {
        StandardLattice::U.lattice()
    }

    fn k3() -> IntegralLattice {
        let e8 = StandardLattice::E8Minus1.lattice();
        IntegralLattice::direct_sum_all([&u(), &u(), &u(), &e8, &e8])
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(IntegralLattice::new(vec![vec![0, 1], vec![2, 0]]).is_err());
        assert!(IntegralLattice::new(vec![vec![1]]).is_err());
        assert!(IntegralLattice::new(vec![vec![2, 2], vec![2, 2]]).is_err());
        assert!(IntegralLattice::parse_gram_text("2\n0 1\n1 0\n5").is_err());
    }

    #[test]
    fn pairings() {
        let u = u();
        assert_eq!(u.pair_int(&[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(u.pair_int(&[1, 1], &[1, 1]).unwrap(), 2);
        let e8 = StandardLattice::E8Minus1.lattice();
        for i in 0..8 {
            let mut x = vec![0; 8];
            x[i] = 1;
            assert_eq!(e8.pair_int(&x, &x).unwrap(), -2);
        }
    }

    #[test]
    fn sums_and_twists() {
        assert_eq!(u().direct_sum(&u()).det(), 1);
        let k3 = k3();
        assert_eq!((k3.rank(), k3.signature()), (22, (3, 19)));
        let hilb = k3.direct_sum(&StandardLattice::Minus2.lattice());
        assert_eq!((hilb.rank(), hilb.det().abs(), hilb.signature()), (23, 2, (3, 20)));
        assert_eq!(u().twist(2).unwrap().gram(), &[vec![0, 2], vec![2, 0]]);
        assert_eq!(IntegralLattice::new(vec![vec![2]]).unwrap().twist(-1).unwrap().gram(), &[vec![-2]]);
        let e8_2 = StandardLattice::E8Minus1.lattice().twist(2).unwrap();
        assert_eq!(e8_2.det().abs(), 256);
        assert!(u().twist(0).is_err());
    }

    #[test]
    fn discriminant_groups_and_triples() {
        assert!(u().discriminant_group().unwrap().is_trivial());
        let m2 = StandardLattice::Minus2.lattice();
        assert_eq!(m2.discriminant_group().unwrap().elementary_divisors, vec![2]);
        assert_eq!(u().twist(2).unwrap().discriminant_group().unwrap().elementary_divisors, vec![2, 2]);
        assert_eq!(m2.two_elementary_invariants().unwrap(), NikulinTriple::new(1, 1, 1));
        assert_eq!(u().twist(2).unwrap().two_elementary_invariants().unwrap(), NikulinTriple::new(2, 2, 0));
        let t = u().direct_sum(&StandardLattice::E8Minus1.lattice().twist(2).unwrap());
        assert_eq!(t.two_elementary_invariants().unwrap(), NikulinTriple::new(10, 8, 0));
        assert!(IntegralLattice::new(vec![vec![-4]]).unwrap().two_elementary_invariants().is_err());
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(u().divisibility(&[1, 0]).unwrap(), 1);
        assert_eq!(u().twist(2).unwrap().divisibility(&[1, 0]).unwrap(), 2);
        let hilb = k3().direct_sum(&StandardLattice::Minus2.lattice());
        let mut delta = vec![0; 23];
        delta[22] = 1;
        assert_eq!(hilb.divisibility(&delta).unwrap(), 2);
    }

    #[test]
    fn complements() {
        let u2 = u().direct_sum(&u());
        let c = u2.orthogonal_complement(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(u2.sublattice_index(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], c[0].clone(), c[1].clone()]).unwrap(), 1);
        for x in &c {
            assert_eq!(&x[..2], &[0, 0]);
        }
        let c = u().orthogonal_complement(&[vec![1, 1]]).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0] == vec![1, -1] || c[0] == vec![-1, 1]);
        let k3 = k3();
        let mut first_u = vec![vec![0; 22]; 2];
        first_u[0][0] = 1;
        first_u[1][1] = 1;
        let rest = k3.orthogonal_complement(&first_u).unwrap();
        assert_eq!(k3.sublattice(&rest).unwrap().signature(), (2, 18));
        assert!(k3.sublattice(&rest).unwrap().is_unimodular());
    }

    #[test]
    fn projections() {
        let u2 = u().direct_sum(&u());
        let x = FieldVector::from_ints(&[3, -1, 4, 7]);
        let p = u2.orthogonal_projection(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]], &x).unwrap();
        assert_eq!(p, FieldVector::from_ints(&[0, 0, 4, 7]));
        let half = QuadScalar::from_ratio(1, 2);
        let p = u().orthogonal_projection(&[vec![1, 1]], &FieldVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(p, FieldVector::new(vec![half.clone(), half]));
    }

    #[test]
    fn indices() {
        assert_eq!(u().sublattice_index(&[vec![2, 0], vec![0, 2]]).unwrap(), 4);
        assert_eq!(u().sublattice_index(&[vec![1, 0], vec![0, 1]]).unwrap(), 1);
        assert!(u().sublattice_index(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn discriminant_values() {
        let half = BigRational::new(1.into(), 2.into());
        let m2 = StandardLattice::Minus2.lattice();
        assert_eq!(
            m2.discriminant_form_value(std::slice::from_ref(&half)).unwrap().value(),
            &BigRational::new(3.into(), 2.into())
        );
        let p2 = IntegralLattice::new(vec![vec![2]]).unwrap();
        assert_eq!(p2.discriminant_form_value(&[half]).unwrap().value(), &BigRational::new(1.into(), 2.into()));
        assert!(m2.discriminant_form_value(&[BigRational::zero()]).unwrap().value().is_zero());
    }
}
