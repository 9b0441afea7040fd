//! Dense integer matrices with Smith normal form and rational solving.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn ck(x: Option<i64>) -> i64 {
    x.expect("integer overflow in lattice computation")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_cols(cols: &[Vec<i64>], rows: usize) -> Self {
        Mat::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ck(a.checked_mul(other.get(k, j)).and_then(|p| p.checked_add(out.get(i, j))));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut s = 0i64;
                for (j, &x) in v.iter().enumerate() {
                    s = ck(self.get(i, j).checked_mul(x).and_then(|p| p.checked_add(s)));
                }
                s
            })
            .collect()
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ck(a.checked_add(*b))).collect(),
        }
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        self.transpose().vstack(&other.transpose()).transpose()
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_cols(&idx.iter().map(|&j| self.col(j)).collect::<Vec<_>>(), self.rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(&idx.iter().map(|&i| self.row(i)).collect::<Vec<_>>(), self.cols)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    /// Determinant via fraction-free elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    /// Inverse over Q, if nonsingular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = self.row(i).into_iter().map(rat).collect();
                r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        let piv = rref(&mut a, n);
        if piv.len() < n {
            return None;
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Mat> {
        if !self.is_unimodular() {
            return None;
        }
        let inv = self.inverse_rational()?;
        rat_matrix_to_int(&inv, self.cols)
    }

    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigRational>> = self.to_rows().into_iter().map(|r| r.into_iter().map(rat).collect()).collect();
        rref(&mut a, self.cols).len()
    }

    /// Integer basis (as columns) of {x : self·x = 0}; it is saturated.
    pub fn kernel(&self) -> Mat {
        let s = smith(self);
        let r = s.rank();
        let idx: Vec<usize> = (r..self.cols).collect();
        s.v.select_cols(&idx)
    }

    /// Solve self·x = b over Q.
    pub fn solve_rational(&self, b: &[i64]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                let mut r: Vec<BigRational> = self.row(i).into_iter().map(rat).collect();
                r.push(rat(b[i]));
                r
            })
            .collect();
        let piv = rref(&mut a, self.cols);
        if a.iter().any(|r| r[..self.cols].iter().all(|x| x.is_zero()) && !r[self.cols].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (row, &c) in piv.iter().enumerate() {
            x[c] = a[row][self.cols].clone();
        }
        Some(x)
    }

    /// Solve self·x = b over Z, if an integral solution exists.
    pub fn solve_integer(&self, b: &[i64]) -> Option<Vec<i64>> {
        // With U·A·V = D, A x = b  <=>  D y = U b, x = V y.
        let s = smith(self);
        let ub = s.u.mul_vec(b);
        let mut y = vec![0i64; self.cols];
        for i in 0..self.rows {
            let d = if i < self.cols { s.d.get(i, i) } else { 0 };
            if d == 0 {
                if ub[i] != 0 {
                    return None;
                }
            } else {
                if ub[i] % d != 0 {
                    return None;
                }
                y[i] = ub[i] / d;
            }
        }
        Some(s.v.mul_vec(&y))
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Convert a rational matrix to integers if every entry is integral.
pub fn rat_matrix_to_int(m: &[Vec<BigRational>], cols: usize) -> Option<Mat> {
    let mut out = Mat::zeros(m.len(), cols);
    for (i, r) in m.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            if !x.is_integer() {
                return None;
            }
            out.set(i, j, x.to_integer().to_i64()?);
        }
    }
    Some(out)
}

/// Reduced row echelon form on the first `ncols` columns; returns pivot columns.
fn rref(a: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut piv = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        if row >= a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    let t = &a[row][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        piv.push(c);
        row += 1;
    }
    piv
}

/// Smith normal form `u·a·v = d` with unimodular `u`, `v`, and the inverses
/// `u_inv`, `v_inv`. Diagonal entries are nonnegative and successively divide.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Mat,
    pub u_inv: Mat,
    pub d: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols)).take_while(|&i| self.d.get(i, i) != 0).count()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).collect()
    }
}

struct Work {
    a: Mat,
    u: Mat,
    u_inv: Mat,
    v: Mat,
    v_inv: Mat,
}

impl Work {
    // row_i += k·row_j on a and u; inverse column op on u_inv.
    fn row_add(&mut self, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let v = ck(m.get(j, c).checked_mul(k).and_then(|p| p.checked_add(m.get(i, c))));
                m.set(i, c, v);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            let v = ck(m.get(r, i).checked_mul(k).and_then(|p| m.get(r, j).checked_sub(p)));
            m.set(r, j, v);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let t = m.get(i, c);
                m.set(i, c, m.get(j, c));
                m.set(j, c, t);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            let t = m.get(r, i);
            m.set(r, i, m.get(r, j));
            m.set(r, j, t);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                m.set(i, c, -m.get(i, c));
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            m.set(r, i, -m.get(r, i));
        }
    }

    // col_i += k·col_j on a and v; inverse row op on v_inv.
    fn col_add(&mut self, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                let v = ck(m.get(r, j).checked_mul(k).and_then(|p| p.checked_add(m.get(r, i))));
                m.set(r, i, v);
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols {
            let v = ck(m.get(i, c).checked_mul(k).and_then(|p| m.get(j, c).checked_sub(p)));
            m.set(j, c, v);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                let t = m.get(r, i);
                m.set(r, i, m.get(r, j));
                m.set(r, j, t);
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols {
            let t = m.get(i, c);
            m.set(i, c, m.get(j, c));
            m.set(j, c, t);
        }
    }
}

pub fn smith(a: &Mat) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work { a: a.clone(), u: Mat::identity(m), u_inv: Mat::identity(m), v: Mat::identity(n), v_inv: Mat::identity(n) };
    let mut t = 0;
    while t < m.min(n) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = w.a.get(i, j);
                if x != 0 && best.map_or(true, |(bi, bj)| x.abs() < w.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let p = w.a.get(t, t);
            let mut dirty = false;
            for i in t + 1..m {
                let q = w.a.get(i, t).div_euclid(p);
                w.row_add(i, t, -q);
                if w.a.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = w.a.get(t, j).div_euclid(p);
                w.col_add(j, t, -q);
                if w.a.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the rest of the block.
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| w.a.get(i, j) % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        w.row_add(t, i, 1);
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row/col t to the pivot.
            let mut bi = (t, t);
            for i in t..m {
                let x = w.a.get(i, t);
                if x != 0 && x.abs() < w.a.get(bi.0, bi.1).abs() {
                    bi = (i, t);
                }
            }
            for j in t..n {
                let x = w.a.get(t, j);
                if x != 0 && x.abs() < w.a.get(bi.0, bi.1).abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                w.row_swap(t, bi.0);
            } else if bi.1 != t {
                w.col_swap(t, bi.1);
            }
        }
        if w.a.get(t, t) < 0 {
            w.row_neg(t);
        }
        t += 1;
    }
    Smith { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len(), "pairing of vectors of different length");
    a.iter().zip(b).fold(0i64, |s, (x, y)| ck(x.checked_mul(*y).and_then(|p| p.checked_add(s))))
}

pub fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| ck(x.checked_add(*y))).collect()
}

pub fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| ck(x.checked_sub(*y))).collect()
}

pub fn vscale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| ck(x.checked_mul(k))).collect()
}

pub fn vneg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(Mat::from_rows(&rows, cols))
    }
}

/// Rational entries as `i64` when integral.
pub fn rat_vec_to_int(v: &[BigRational]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

pub fn rat_is_nonneg(v: &[BigRational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        let c = v.first().map_or(0, |r| r.len());
        Mat::from_rows(&v, c)
    }

    fn check_smith(a: &Mat) -> Smith {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        for w in diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn smith_of_a2_cartan() {
        let s = check_smith(&m(&[&[2, -1], &[-1, 2]]));
        assert_eq!(s.diagonal(), vec![1, 3]);
    }

    #[test]
    fn smith_rectangular_and_degenerate() {
        check_smith(&m(&[&[4, 6, 2], &[6, 9, 3]]));
        check_smith(&Mat::zeros(2, 3));
        check_smith(&Mat::zeros(0, 2));
        let s = check_smith(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![1, 6]);
    }

    #[test]
    fn determinants_and_inverse() {
        assert_eq!(m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]).det(), 4);
        let u = m(&[&[2, 1], &[1, 1]]);
        let inv = u.inverse_unimodular().unwrap();
        assert!(u.mul(&inv).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
    }

    #[test]
    fn kernel_and_solving() {
        let a = m(&[&[1, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).data.iter().all(|&x| x == 0));
        let b = m(&[&[2, 0], &[0, 2]]);
        assert_eq!(b.solve_integer(&[2, 4]), Some(vec![1, 2]));
        assert_eq!(b.solve_integer(&[1, 0]), None);
        assert!(b.solve_rational(&[1, 0]).is_some());
    }
}
