//! Dense integer matrix algorithms over `i128` with overflow detection.
//!
//! Everything here is exact: Smith normal form with unimodular transforms,
//! integral kernels, Bareiss determinants and a congruence diagonalization
//! that yields signatures of symmetric matrices.

use super::LatticeError;

pub type IMat = Vec<Vec<i128>>;

fn ck(v: Option<i128>) -> Result<i128, LatticeError> {
    v.ok_or(LatticeError::Overflow)
}

pub fn mul_add(acc: i128, a: i128, b: i128) -> Result<i128, LatticeError> {
    ck(acc.checked_add(ck(a.checked_mul(b))?))
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn from_i64(m: &[Vec<i64>]) -> IMat {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

pub fn transpose(m: &IMat) -> IMat {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn matmul(a: &IMat, b: &IMat) -> Result<IMat, LatticeError> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut s = 0i128;
                    for (k, &x) in row.iter().enumerate() {
                        if x != 0 {
                            s = mul_add(s, x, b[k][j])?;
                        }
                    }
                    Ok(s)
                })
                .collect()
        })
        .collect()
}

pub fn matvec(a: &IMat, x: &[i128]) -> Result<Vec<i128>, LatticeError> {
    a.iter()
        .map(|row| {
            let mut s = 0i128;
            for (&r, &v) in row.iter().zip(x) {
                if r != 0 && v != 0 {
                    s = mul_add(s, r, v)?;
                }
            }
            Ok(s)
        })
        .collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g ≥ 0`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a != 0 && b % a == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
pub fn det(m: &IMat) -> Result<i128, LatticeError> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ck(ck(a[k][k].checked_mul(a[i][j]))?.checked_sub(ck(a[i][k].checked_mul(a[k][j]))?))?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    ck(sign.checked_mul(a[n - 1][n - 1]))
}

/// Result of a congruence diagonalization of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricReduction {
    /// Leading principal minors after the congruence, `p_0, …, p_{n-1}`.
    pub minors: Vec<i128>,
}

impl SymmetricReduction {
    pub fn determinant(&self) -> i128 {
        self.minors.last().copied().unwrap_or(1)
    }

    /// Number of positive and negative diagonal entries of the congruent diagonal form.
    pub fn signature(&self) -> (usize, usize) {
        let mut prev = 1i128;
        let (mut pos, mut neg) = (0, 0);
        for &p in &self.minors {
            if p.signum() == prev.signum() {
                pos += 1;
            } else {
                neg += 1;
            }
            prev = p;
        }
        (pos, neg)
    }
}

/// Congruence-diagonalizes a symmetric matrix with Bareiss-style exact division.
///
/// A zero pivot is replaced by swapping in a later nonzero diagonal entry, or,
/// when the remaining diagonal vanishes, by adding a row/column with a nonzero
/// off-diagonal entry (which turns the pivot into `2·a_kj`). Returns
/// [`LatticeError::Degenerate`] when the matrix is singular.
pub fn symmetric_reduce(m: &IMat) -> Result<SymmetricReduction, LatticeError> {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = 1i128;
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k] == 0 {
            if let Some(j) = (k + 1..n).find(|&j| a[j][j] != 0) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| a[k][j] != 0) {
                // e_k += e_j on rows then columns.
                for c in k..n {
                    a[k][c] = ck(a[k][c].checked_add(a[j][c]))?;
                }
                for r in k..n {
                    a[r][k] = ck(a[r][k].checked_add(a[r][j]))?;
                }
            } else {
                return Err(LatticeError::Degenerate);
            }
        }
        let p = a[k][k];
        for i in k + 1..n {
            for j in i..n {
                let num = ck(ck(p.checked_mul(a[i][j]))?.checked_sub(ck(a[i][k].checked_mul(a[k][j]))?))?;
                let v = num / prev;
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        minors.push(p);
        prev = p;
    }
    Ok(SymmetricReduction { minors })
}

/// Smith normal form `U·A·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries `d_0 | d_1 | …`, nonnegative, length `min(rows, cols)`.
    pub diagonal: Vec<i128>,
    pub left: IMat,
    pub right: IMat,
    pub rank: usize,
}

pub fn smith(m: &IMat) -> Result<Smith, LatticeError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry of the trailing block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let (g, s, x) = xgcd(a[t][t], a[i][t]);
                    let (p, q) = (a[t][t] / g, a[i][t] / g);
                    combine_rows(&mut a, t, i, s, x, p, q)?;
                    combine_rows(&mut u, t, i, s, x, p, q)?;
                    done = false;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let (g, s, x) = xgcd(a[t][t], a[t][j]);
                    let (p, q) = (a[t][t] / g, a[t][j] / g);
                    combine_cols(&mut a, t, j, s, x, p, q)?;
                    combine_cols(&mut v, t, j, s, x, p, q)?;
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let d = a[t][t];
            let bad = (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| a[i][j] % d != 0).map(|j| (i, j)));
            match bad {
                Some((i, _)) => {
                    for c in 0..cols {
                        a[t][c] = ck(a[t][c].checked_add(a[i][c]))?;
                    }
                    for c in 0..rows {
                        u[t][c] = ck(u[t][c].checked_add(u[i][c]))?;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for c in 0..cols {
                a[t][c] = -a[t][c];
            }
            for c in 0..rows {
                u[t][c] = -u[t][c];
            }
        }
        t += 1;
    }
    let diagonal: Vec<i128> = (0..rows.min(cols)).map(|i| a[i][i]).collect();
    let rank = diagonal.iter().filter(|&&d| d != 0).count();
    Ok(Smith { diagonal, left: u, right: v, rank })
}

/// Replaces rows `(r1, r2)` by `(s·r1 + x·r2, −q·r1 + p·r2)`; unimodular since `s·p + x·q = 1`.
fn combine_rows(a: &mut IMat, r1: usize, r2: usize, s: i128, x: i128, p: i128, q: i128) -> Result<(), LatticeError> {
    for c in 0..a[r1].len() {
        let (y1, y2) = (a[r1][c], a[r2][c]);
        a[r1][c] = mul_add(ck(s.checked_mul(y1))?, x, y2)?;
        a[r2][c] = mul_add(ck((-q).checked_mul(y1))?, p, y2)?;
    }
    Ok(())
}

fn combine_cols(a: &mut IMat, c1: usize, c2: usize, s: i128, x: i128, p: i128, q: i128) -> Result<(), LatticeError> {
    for row in a.iter_mut() {
        let (y1, y2) = (row[c1], row[c2]);
        row[c1] = mul_add(ck(s.checked_mul(y1))?, x, y2)?;
        row[c2] = mul_add(ck((-q).checked_mul(y1))?, p, y2)?;
    }
    Ok(())
}

/// Basis (as rows) of the saturated integral kernel `{x ∈ ℤ^cols : A·x = 0}`.
pub fn kernel(m: &IMat, cols: usize) -> Result<Vec<Vec<i128>>, LatticeError> {
    if m.is_empty() {
        return Ok(identity(cols));
    }
    let s = smith(m)?;
    Ok((s.rank..cols).map(|j| s.right.iter().map(|row| row[j]).collect()).collect())
}

/// Rank of an integer matrix.
pub fn rank(m: &IMat) -> Result<usize, LatticeError> {
    if m.is_empty() {
        return Ok(0);
    }
    Ok(smith(m)?.rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i128]]) -> IMat {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn assert_smith_identity(m: &IMat) {
        let s = smith(m).unwrap();
        let d = matmul(&matmul(&s.left, m).unwrap(), &s.right).unwrap();
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expect = if i == j { s.diagonal[i] } else { 0 };
                assert_eq!(x, expect, "{m:?}");
            }
        }
        for w in s.diagonal.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        assert_eq!(det(&s.left).unwrap().abs(), 1);
        assert_eq!(det(&s.right).unwrap().abs(), 1);
    }

    #[test]
    fn smith_examples() {
        assert_smith_identity(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(smith(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap().diagonal, vec![2, 6, 12]);
        assert_smith_identity(&mat(&[&[0, 2], &[2, 0]]));
        assert_smith_identity(&mat(&[&[6, 4], &[4, 6], &[1, 1]]));
        assert_smith_identity(&mat(&[&[0, 0], &[0, 0]]));
        assert_eq!(smith(&mat(&[&[4, 0], &[0, 6]])).unwrap().diagonal, vec![2, 12]);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])).unwrap(), -1);
        assert_eq!(det(&mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])).unwrap(), 4);
        assert_eq!(det(&mat(&[&[1, 2], &[2, 4]])).unwrap(), 0);
        assert_eq!(det(&mat(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])).unwrap(), -1);
    }

    #[test]
    fn reduction_handles_zero_diagonal() {
        let u = mat(&[&[0, 1], &[1, 0]]);
        let r = symmetric_reduce(&u).unwrap();
        assert_eq!(r.signature(), (1, 1));
        assert_eq!(r.determinant(), -1);
        let h = mat(&[&[0, 2, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 3], &[0, 0, 3, 0]]);
        let r = symmetric_reduce(&h).unwrap();
        assert_eq!(r.signature(), (2, 2));
        assert_eq!(r.determinant(), 36);
        assert!(matches!(symmetric_reduce(&mat(&[&[0, 0], &[0, 2]])), Err(LatticeError::Degenerate)));
    }

    #[test]
    fn kernel_is_saturated() {
        let k = kernel(&mat(&[&[2, 2]]), 2).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(gcd(k[0][0], k[0][1]), 1);
        assert_eq!(k[0][0], -k[0][1]);
    }
}
