//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the library's arithmetic: forms, minors, inverses
//! and the quadratic field are recomputed from scratch.

#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use hk_lattice::{FieldVector, QuadScalar};

/// Nikulin's existence conditions for an even 2-elementary lattice of
/// signature `(tp, tm)` with invariants `(a, δ)`.
pub fn nikulin_exists(tp: i64, tm: i64, a: i64, delta: u8) -> bool {
    let r = tp + tm;
    if tp < 0 || tm < 0 {
        return false;
    }
    if r == 0 {
        return a == 0 && delta == 0;
    }
    let s = (tp - tm).rem_euclid(8);
    if a > r || (r - a) % 2 != 0 {
        return false;
    }
    if delta == 0 && s % 4 != 0 {
        return false;
    }
    if a == 0 && (delta != 0 || s != 0) {
        return false;
    }
    if a == 1 && s != 1 && s != 7 {
        return false;
    }
    if a == 2 && s == 4 && delta != 0 {
        return false;
    }
    if delta == 0 && a == r && s != 0 {
        return false;
    }
    true
}

/// `a + b√2` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2 {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Q2 {
    pub fn int(n: i64) -> Self {
        Q2 { a: rat(n), b: BigRational::zero() }
    }

    pub fn new(a: BigRational, b: BigRational) -> Self {
        Q2 { a, b }
    }

    pub fn zero() -> Self {
        Q2::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of `a + b√2`, decided by comparing `a²` with `2b²`.
    pub fn sign(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * rat(2);
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn half(&self) -> Self {
        let h = BigRational::new(BigInt::from(1), BigInt::from(2));
        Q2 { a: &self.a * &h, b: &self.b * &h }
    }

    pub fn from_scalar(x: &QuadScalar) -> Self {
        assert!(x.is_rational() || x.radicand() == 2, "oracle only handles ℚ(√2)");
        Q2 { a: x.rational_part().clone(), b: x.surd_part().clone() }
    }
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &Q2 {
    type Output = Q2;
    fn add(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Q2 {
    type Output = Q2;
    fn sub(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &Q2 {
    type Output = Q2;
    fn mul(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a * &o.a + &self.b * &o.b * rat(2), b: &self.a * &o.b + &self.b * &o.a }
    }
}

impl Neg for &Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2 { a: -&self.a, b: -&self.b }
    }
}

pub type V2 = Vec<Q2>;

pub fn v2(x: &FieldVector) -> V2 {
    x.to_strings().iter().map(|s| Q2::from_scalar(&s.parse::<QuadScalar>().expect("library output parses"))).collect()
}

pub fn v2_ints(x: &[i64]) -> V2 {
    x.iter().map(|&c| Q2::int(c)).collect()
}

pub fn pair(gram: &[Vec<i64>], x: &[Q2], y: &[Q2]) -> Q2 {
    let mut acc = Q2::zero();
    for (i, row) in gram.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            if g != 0 && !x[i].is_zero() && !y[j].is_zero() {
                acc = &acc + &(&(&x[i] * &y[j]) * &Q2::int(g));
            }
        }
    }
    acc
}

pub fn axpy(s: &Q2, x: &[Q2], y: &[Q2]) -> V2 {
    x.iter().zip(y).map(|(xi, yi)| &(s * xi) + yi).collect()
}

pub fn scale(s: &Q2, x: &[Q2]) -> V2 {
    x.iter().map(|xi| s * xi).collect()
}

pub fn sub(x: &[Q2], y: &[Q2]) -> V2 {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn pair_int(gram: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, row) in gram.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            acc += x[i] * g * y[j];
        }
    }
    acc
}

/// `M·x` for an integer matrix given by rows.
pub fn mat_vec(m: &[Vec<i64>], x: &[Q2]) -> V2 {
    m.iter()
        .map(|row| {
            row.iter().zip(x).fold(Q2::zero(), |acc, (&c, xi)| if c == 0 { acc } else { &acc + &(&Q2::int(c) * xi) })
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Nontrivial elementary divisors from gcds of `k × k` minors.
pub fn elementary_divisors(gram: &[Vec<i64>]) -> Vec<i128> {
    let n = gram.len();
    let m: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut d_prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g = 0i128;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        assert!(g != 0, "degenerate form");
        let e = g / d_prev;
        if e != 1 {
            out.push(e);
        }
        d_prev = g;
    }
    out
}

/// Coefficients of `det(tI − G)`, leading first, by Faddeev–LeVerrier.
pub fn char_poly(gram: &[Vec<i64>]) -> Vec<i128> {
    let n = gram.len();
    let g: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut coeffs = vec![1i128];
    let mut m = vec![vec![0i128; n]; n];
    let mut c = 1i128;
    for k in 1..=n {
        // M_k = G·M_{k−1} + c_{k−1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| g[i][l] * m[l][j]).sum::<i128>() + if i == j { c } else { 0 };
            }
        }
        m = next;
        let trace: i128 = (0..n).map(|i| (0..n).map(|l| g[i][l] * m[l][i]).sum::<i128>()).sum();
        assert_eq!(trace % k as i128, 0);
        c = -trace / k as i128;
        coeffs.push(c);
    }
    coeffs
}

fn sign_changes(coeffs: impl Iterator<Item = i128>) -> usize {
    let nonzero: Vec<i128> = coeffs.filter(|&c| c != 0).collect();
    nonzero.windows(2).filter(|w| (w[0] < 0) != (w[1] < 0)).count()
}

/// Signature from Descartes' rule, exact for the real-rooted characteristic polynomial.
pub fn signature(gram: &[Vec<i64>]) -> (usize, usize) {
    let p = char_poly(gram);
    let n = p.len() - 1;
    let pos = sign_changes(p.iter().copied());
    let neg = sign_changes(p.iter().enumerate().map(|(i, &c)| if (n - i) % 2 == 1 { -c } else { c }));
    (pos, neg)
}

/// gcd of `d·x` over all `x ∈ {−1, 0, 1}ⁿ`.
pub fn divisibility_box(gram: &[Vec<i64>], d: &[i64]) -> i64 {
    let n = gram.len();
    let mut g = 0i64;
    let mut x = vec![-1i64; n];
    loop {
        g = g.gcd(&pair_int(gram, d, &x));
        let mut i = 0;
        while i < n && x[i] == 1 {
            x[i] = -1;
            i += 1;
        }
        if i == n {
            return g;
        }
        x[i] += 1;
    }
}

/// gcd of `d·bᵢ` over the basis vectors `bᵢ`.
pub fn divisibility_gcd(gram: &[Vec<i64>], d: &[i64]) -> i64 {
    gram.iter().map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum::<i64>()).fold(0, |g, x| g.gcd(&x))
}

/// Inverse of a nonsingular integer matrix via the adjugate.
pub fn inverse(m: &[Vec<i128>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let d = det(m);
    assert!(d != 0);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // (A⁻¹)_{ij} = (−1)^{i+j} M_{ji} / det
                    let minor: Vec<Vec<i128>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                        .collect();
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    BigRational::new(BigInt::from(s * det(&minor)), BigInt::from(d))
                })
                .collect()
        })
        .collect()
}

/// Integer vectors with `xᵀAx ≤ bound` for positive definite `A`, by a coordinate box.
///
/// The box `|x_i| ≤ √(bound·(A⁻¹)_ii)` contains every such vector.
pub fn box_short_vectors(a: &[Vec<i128>], bound: i128) -> Vec<Vec<i64>> {
    let n = a.len();
    let radius = box_radii(a, bound);
    let mut out = Vec::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let q: i128 = (0..n).map(|i| (0..n).map(|j| x[i] as i128 * a[i][j] * x[j] as i128).sum::<i128>()).sum();
        if q <= bound && x.iter().any(|&c| c != 0) {
            out.push(x.clone());
        }
        let mut i = 0;
        while i < n && x[i] == radius[i] {
            x[i] = -radius[i];
            i += 1;
        }
        if i == n {
            return out;
        }
        x[i] += 1;
    }
}

/// Coordinate bounds `⌊√(bound·(A⁻¹)ᵢᵢ)⌋` of the ellipsoid `xᵀAx ≤ bound`.
pub fn box_radii(a: &[Vec<i128>], bound: i128) -> Vec<i64> {
    let inv = inverse(a);
    (0..a.len())
        .map(|i| {
            let r2 = &inv[i][i] * BigRational::from_integer(BigInt::from(bound));
            let mut r = 0i64;
            while BigRational::from_integer(BigInt::from((r + 1) * (r + 1))) <= r2 {
                r += 1;
            }
            r
        })
        .collect()
}

/// `(−2)`-classes of a negative definite lattice, or with `|D·h| ≤ b` for a hyperbolic one.
pub fn brute_force_roots(gram: &[Vec<i64>], h: Option<&[i64]>, b: i64) -> Vec<Vec<i64>> {
    let n = gram.len();
    let g: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let candidates = match h {
        None => box_short_vectors(&g.iter().map(|r| r.iter().map(|x| -x).collect()).collect::<Vec<_>>(), 2),
        Some(h) => {
            let gh: Vec<i128> = (0..n).map(|i| (0..n).map(|j| g[i][j] * h[j] as i128).sum()).collect();
            let h2: i128 = (0..n).map(|i| h[i] as i128 * gh[i]).sum();
            let a: Vec<Vec<i128>> =
                (0..n).map(|i| (0..n).map(|j| 2 * gh[i] * gh[j] - h2 * g[i][j]).collect()).collect();
            box_short_vectors(&a, 2 * (b as i128) * (b as i128) + 2 * h2)
        }
    };
    let mut out: Vec<Vec<i64>> = candidates
        .into_iter()
        .filter(|x| pair_int(gram, x, x) == -2)
        .filter(|x| h.is_none_or(|h| pair_int(gram, x, h).abs() <= b))
        .collect();
    out.sort();
    out
}

/// A vector of smallest positive square in the first box that contains one.
pub fn positive_vector(gram: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = gram.len();
    for radius in 1..=4i64 {
        let mut best: Option<(i64, Vec<i64>)> = None;
        let mut x = vec![-radius; n];
        loop {
            let q = pair_int(gram, &x, &x);
            if q > 0 && best.as_ref().is_none_or(|(b, _)| q < *b) {
                best = Some((q, x.clone()));
            }
            let mut i = 0;
            while i < n && x[i] == radius {
                x[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        if let Some((_, v)) = best {
            return Some(v);
        }
    }
    None
}

/// Integer vector over `Q2` with every entry rational and integral.
pub fn is_integral(x: &[Q2]) -> bool {
    x.iter().all(|c| c.b.is_zero() && c.a.is_integer())
}

pub fn basis_vec(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

/// Columns `E(b_j)` of the transvection `x ↦ x − (x·m)v + (x·v)m − ½m²(x·v)v` for `v = e₁`.
pub fn transvection(gram: &[Vec<i64>], m: &[i64]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let v = basis_vec(n, 0);
    let m2 = pair_int(gram, m, m);
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let x = basis_vec(n, j);
            let xm = pair_int(gram, &x, m);
            let xv = pair_int(gram, &x, &v);
            (0..n).map(|i| x[i] - xm * v[i] + xv * m[i] - m2 / 2 * xv * v[i]).collect()
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// Reflection `x ↦ x + (x·r)r` in a root `r` of square −2.
pub fn root_reflection(gram: &[Vec<i64>], r: &[i64]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let x = basis_vec(n, j);
            let xr = pair_int(gram, &x, r);
            (0..n).map(|i| x[i] + xr * r[i]).collect()
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}
