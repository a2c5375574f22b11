//! Exact linear algebra: fraction-free elimination over the integers and
//! dense elimination over the rationals and Gaussian rationals.
//!
//! Row spaces arising here come from Lie-algebra bases with small integer
//! entries, so integer echelon forms with gcd normalization keep entries
//! small in practice while staying exact.

use crate::scalar::{ExactScalar, Int};
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Incremental integer row-echelon accumulator.
///
/// Rows are kept primitive (divided by their gcd); each inserted row is
/// reduced against the current echelon before being added.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    /// Rows in echelon order, each with its leading column.
    rows: Vec<(usize, Vec<Int>)>,
}

fn leading(v: &[Int]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn primitive_normalize(v: &mut [Int]) {
    let mut g = Int::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_zero() || g == Int::one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.exact_div(&g);
    }
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the echelon in place, zeroing every coordinate
    /// at an existing leading column. The result spans the same residue
    /// class modulo the row space up to a positive scalar.
    pub fn reduce(&self, v: &mut Vec<Int>) {
        for (lead, row) in &self.rows {
            if v[*lead].is_zero() {
                continue;
            }
            let a = row[*lead].clone();
            let b = v[*lead].clone();
            for (x, r) in v.iter_mut().zip(row.iter()) {
                *x = &(&*x * &a) - &(&b * r);
            }
            primitive_normalize(v);
        }
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn push(&mut self, mut v: Vec<Int>) -> bool {
        self.reduce(&mut v);
        match leading(&v) {
            None => false,
            Some(lead) => {
                primitive_normalize(&mut v);
                let pos = self
                    .rows
                    .iter()
                    .position(|(l, _)| *l > lead)
                    .unwrap_or(self.rows.len());
                self.rows.insert(pos, (lead, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        leading(&w).is_none()
    }
}

/// Rank of a set of integer rows.
pub fn int_rank<I: IntoIterator<Item = Vec<Int>>>(rows: I) -> usize {
    let mut ech = IntEchelon::new();
    for r in rows {
        ech.push(r);
    }
    ech.rank()
}

/// Fully reduced fraction-free row basis (Gauss–Jordan with Bareiss
/// divisions). After construction every pivot entry equals the same
/// determinant-like scalar `d`, and residuals of arbitrary vectors modulo
/// the row space are computed by a single linear pass with the uniform
/// scale `d`, which makes them usable as rows of a larger exact system.
#[derive(Clone, Debug)]
pub struct ReducedBasis {
    pub cols: usize,
    pub pivots: Vec<usize>,
    rows: Vec<Vec<Int>>,
    d: Int,
}

impl ReducedBasis {
    pub fn new(cols: usize, input: Vec<Vec<Int>>) -> Self {
        let mut rows: Vec<Vec<Int>> = input.into_iter().filter(|r| leading(r).is_some()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = Int::one();
        let mut k = 0usize;
        for col in 0..cols {
            let Some(pr) = (k..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(k, pr);
            let pivot = rows[k][col].clone();
            for i in 0..rows.len() {
                if i == k {
                    continue;
                }
                let factor = rows[i][col].clone();
                for c in 0..cols {
                    let t = &(&rows[i][c] * &pivot) - &(&factor * &rows[k][c]);
                    rows[i][c] = t.exact_div(&prev);
                }
            }
            prev = pivot;
            pivots.push(col);
            k += 1;
            if k == rows.len() {
                break;
            }
        }
        rows.truncate(k);
        // After the Jordan sweep every pivot entry equals the last pivot;
        // the rescale below only fires in degenerate inputs and keeps the
        // uniform-scale invariant explicit.
        let d = if k == 0 {
            Int::one()
        } else {
            rows[k - 1][pivots[k - 1]].clone()
        };
        for (j, row) in rows.iter_mut().enumerate() {
            let pj = row[pivots[j]].clone();
            if pj != d {
                // row := row * (d / pj); division is exact because every
                // entry of a Bareiss-reduced row is divisible appropriately
                // only after multiplication, so multiply first.
                for c in 0..cols {
                    let t = &row[c] * &d;
                    row[c] = t.exact_div(&pj);
                }
            }
        }
        ReducedBasis {
            cols,
            pivots,
            rows,
            d,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn scale(&self) -> &Int {
        &self.d
    }

    /// Returns `d * v  -  sum_j v[p_j] * row_j`, which vanishes exactly on
    /// the row space and has zeros at every pivot coordinate. The map is
    /// linear in `v` with coefficients independent of `v`.
    pub fn residual(&self, v: &[Int]) -> Vec<Int> {
        debug_assert_eq!(v.len(), self.cols);
        let mut w: Vec<Int> = v.iter().map(|x| x * &self.d).collect();
        for (j, row) in self.rows.iter().enumerate() {
            let c = v[self.pivots[j]].clone();
            if c.is_zero() {
                continue;
            }
            for (wx, rx) in w.iter_mut().zip(row.iter()) {
                *wx = &*wx - &(&c * rx);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }
}

/// Determinant of a square integer matrix (Bareiss).
pub fn int_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = false;
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, sw);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Determinant of a square Gaussian-rational matrix.
pub fn complex_det(mut m: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let n = m.len();
    let mut det = ExactScalar::one();
    for k in 0..n {
        let Some(pr) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return ExactScalar::zero();
        };
        if pr != k {
            m.swap(k, pr);
            det = -&det;
        }
        let pivot = m[k][k].clone();
        det = &det * &pivot;
        let inv = pivot.inv();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &inv;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    det
}

/// Reduced row-echelon form over the rationals. Returns pivot columns;
/// rows are normalized to leading coefficient 1 and back-eliminated.
pub fn rat_rref(m: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    m.truncate(r);
    pivots
}

/// Basis of the right nullspace { x : M x = 0 } over the rationals.
pub fn rat_nullspace(mut m: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rat_rref(&mut m);
    let mut basis = Vec::new();
    let piv_set: alloc::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if piv_set.contains(&free) {
            continue;
        }
        let mut x = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -m[r][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Kronecker product of dense Gaussian-rational matrices.
pub fn kron(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    let (ra, ca) = (a.len(), a.first().map_or(0, |r| r.len()));
    let (rb, cb) = (b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![ExactScalar::zero(); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    if b[k][l].is_zero() {
                        continue;
                    }
                    out[i * rb + k][j * cb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Dense Gaussian-rational matrix product.
pub fn matmul(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    let ra = a.len();
    let inner = b.len();
    let cb = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![ExactScalar::zero(); cb]; ra];
    for i in 0..ra {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                if b[k][j].is_zero() {
                    continue;
                }
                let t = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &t;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from_i64(x)).collect()
    }

    #[test]
    fn echelon_rank_and_containment() {
        let mut e = IntEchelon::new();
        assert!(e.push(iv(&[1, 2, 3])));
        assert!(e.push(iv(&[0, 1, 1])));
        assert!(!e.push(iv(&[2, 5, 7])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&iv(&[1, 3, 4])));
        assert!(!e.contains(&iv(&[0, 0, 1])));
    }

    #[test]
    fn reduced_basis_residual_is_linear_and_exact() {
        let rows = vec![iv(&[2, 0, 1, 0]), iv(&[0, 3, 0, 1])];
        let rb = ReducedBasis::new(4, rows);
        assert_eq!(rb.rank(), 2);
        assert!(rb.contains(&iv(&[2, 3, 1, 1])));
        assert!(!rb.contains(&iv(&[0, 0, 1, 0])));
        // Residual vanishes at pivot coordinates.
        let r = rb.residual(&iv(&[5, 7, 11, 13]));
        for &p in &rb.pivots {
            assert!(r[p].is_zero());
        }
        // Linearity: residual(u+v) = residual(u) + residual(v).
        let u = iv(&[1, 2, 3, 4]);
        let v = iv(&[0, 1, -1, 2]);
        let sum: Vec<Int> = u.iter().zip(v.iter()).map(|(a, b)| a + b).collect();
        let ru = rb.residual(&u);
        let rv = rb.residual(&v);
        let rs = rb.residual(&sum);
        for i in 0..4 {
            assert_eq!(rs[i], &ru[i] + &rv[i]);
        }
    }

    #[test]
    fn determinants() {
        let m = vec![iv(&[1, 2]), iv(&[3, 4])];
        assert_eq!(int_det(m), Int::from_i64(-2));
        let c = vec![
            vec![ExactScalar::from_parts(0, 1), ExactScalar::zero()],
            vec![ExactScalar::zero(), ExactScalar::from_parts(0, -1)],
        ];
        assert_eq!(complex_det(c), ExactScalar::one());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![
            BigRational::from_integer(1.into()),
            BigRational::from_integer(2.into()),
            BigRational::from_integer(3.into()),
        ]];
        let ns = rat_nullspace(m, 3);
        assert_eq!(ns.len(), 2);
    }
}
