//! Exact elements of a real quadratic field `ℚ(√m)`.
//!
//! A [`QuadScalar`] stores `a + b·√m` with rational `a`, `b` and a square-free
//! radicand `m ≥ 1`. Radicand `1` denotes plain rationals. Values with a zero
//! surd part combine freely with any radicand; mixing two genuine surds over
//! different radicands is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("radicand {0} is not a square-free integer ≥ 1")]
    BadRadicand(i64),
    #[error("scalar `{text}` uses radicand {found}, expected {expected}")]
    RadicandMismatch { text: String, found: i64, expected: i64 },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    m: i64,
}

pub fn is_squarefree(m: i64) -> bool {
    if m < 1 {
        return false;
    }
    let mut k = 2i64;
    while k * k <= m {
        if m % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadScalar { a, b: BigRational::zero(), m: 1 }
    }

    /// `a + b√m`. Panics if `m` is not square-free.
    pub fn new(a: BigRational, b: BigRational, m: i64) -> Self {
        assert!(is_squarefree(m), "radicand {m} is not square-free");
        if m == 1 {
            return Self::from_rational(a + b);
        }
        QuadScalar { a, b, m }.normalized()
    }

    /// `√m` itself.
    pub fn sqrt(m: i64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), m)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.m = 1;
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand of the surd part, `1` when the value is rational.
    pub fn radicand(&self) -> i64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// True for a nonzero integer value.
    pub fn is_nonzero_integer(&self) -> bool {
        matches!(self.to_integer(), Some(n) if !n.is_zero())
    }

    fn common_radicand(&self, other: &Self) -> i64 {
        match (self.m, other.m) {
            (1, m) | (m, 1) => m,
            (m, n) if m == n => m,
            (m, n) => panic!("cannot combine ℚ(√{m}) with ℚ(√{n})"),
        }
    }

    /// Galois conjugate `a − b√m`.
    pub fn conjugate(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -self.b.clone(), m: self.m }
    }

    /// Field norm `a² − m b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m))
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and m·b² wins.
        let a2 = &self.a * &self.a;
        let mb2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m));
        match a2.cmp(&mb2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadScalar { a: &self.a / &n, b: -(&self.b / &n), m: self.m }.normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadScalar { a: &self.a * q, b: &self.b * q, m: self.m }.normalized()
    }

    /// Parses `p/q`, `p`, or `p/q+r/s*sqrt(m)` (also with `-` before the surd).
    pub fn parse_with_radicand(text: &str, radicand: i64) -> Result<Self, ScalarError> {
        let value: QuadScalar = text.parse()?;
        if value.m != 1 && value.m != radicand {
            return Err(ScalarError::RadicandMismatch { text: text.to_string(), found: value.m, expected: radicand });
        }
        Ok(value)
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    write!(f, "{}/{}", q.numer(), q.denom())
}

impl FromStr for QuadScalar {
    type Err = ScalarError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Malformed(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(head) = s.strip_suffix(')') else {
            return parse_rational(&s).map(QuadScalar::from_rational).ok_or_else(bad);
        };
        let (front, m_text) = head.rsplit_once("sqrt(").ok_or_else(bad)?;
        let m: i64 = m_text.parse().map_err(|_| bad())?;
        if !is_squarefree(m) {
            return Err(ScalarError::BadRadicand(m));
        }
        let front = front.strip_suffix('*').unwrap_or(front);
        // Split `front` into the rational part and the surd coefficient at the
        // last sign that is not at position 0.
        let split = front
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !front[..i].ends_with(['+', '-']))
            .map(|(i, _)| i);
        let (a, coeff) = match split {
            Some(i) => (parse_rational(&front[..i]).ok_or_else(bad)?, &front[i..]),
            None => (BigRational::zero(), front),
        };
        let coeff = coeff.strip_prefix('+').unwrap_or(coeff);
        let b = match coeff {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c).ok_or_else(bad)?,
        };
        Ok(QuadScalar::new(a, b, m))
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.a)?;
        if !self.b.is_zero() {
            f.write_str("+")?;
            write_rational(f, &self.b)?;
            write!(f, "*sqrt({})", self.m)?;
        }
        Ok(())
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.m == other.m)
    }
}

impl Eq for QuadScalar {}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl serde::Serialize for QuadScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        QuadScalar::from_int(n)
    }
}

impl From<BigRational> for QuadScalar {
    fn from(q: BigRational) -> Self {
        QuadScalar::from_rational(q)
    }
}

impl Add<&QuadScalar> for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        let m = self.common_radicand(rhs);
        QuadScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, m }.normalized()
    }
}

impl Sub<&QuadScalar> for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        let m = self.common_radicand(rhs);
        QuadScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, m }.normalized()
    }
}

impl Mul<&QuadScalar> for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &QuadScalar) -> QuadScalar {
        let m = self.common_radicand(rhs);
        if self.b.is_zero() {
            return QuadScalar { a: &self.a * &rhs.a, b: &self.a * &rhs.b, m }.normalized();
        }
        if rhs.b.is_zero() {
            return QuadScalar { a: &self.a * &rhs.a, b: &self.b * &rhs.a, m }.normalized();
        }
        let mm = BigRational::from_integer(BigInt::from(m));
        QuadScalar { a: &self.a * &rhs.a + &self.b * &rhs.b * mm, b: &self.a * &rhs.b + &self.b * &rhs.a, m }
            .normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $f(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $f(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $f(self, rhs: QuadScalar) -> QuadScalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, rhs: &QuadScalar) {
        self.m = self.common_radicand(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
        if self.b.is_zero() {
            self.m = 1;
        }
    }
}

impl SubAssign<&QuadScalar> for QuadScalar {
    fn sub_assign(&mut self, rhs: &QuadScalar) {
        self.m = self.common_radicand(rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        if self.b.is_zero() {
            self.m = 1;
        }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b, m: self.m }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -self.clone()
    }
}

impl std::iter::Sum for QuadScalar {
    fn sum<I: Iterator<Item = QuadScalar>>(iter: I) -> Self {
        iter.fold(QuadScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
