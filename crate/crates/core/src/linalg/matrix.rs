use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Rational, Subspace, Vector};
use crate::error::Error;

/// Dense rational matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from rows; every row must have the same length.
    pub fn from_rows(rows: &[Vector]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a `rows × vectors.len()` matrix whose columns are `vectors`.
    pub fn from_columns(rows: usize, vectors: &[Vector]) -> Result<Self, Error> {
        if vectors.iter().any(|v| v.len() != rows) {
            return Err(Error::DimensionMismatch("column length differs from row count".into()));
        }
        let cols = vectors.len();
        let mut m = Self::zeros(rows, cols);
        for (j, v) in vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::rat(x)).collect())
            .collect();
        Self::from_rows(&v).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Entries in row-major order, i.e. the matrix flattened to a vector.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `vᵀ·M·w`, the bilinear form with Gram matrix `self`.
    pub fn bilinear(&self, v: &[Rational], w: &[Rational]) -> Rational {
        super::dot(v, &self.mul_vec(w))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        (self * other) == (other * self)
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = &m.data[r * m.cols + j] * &inv;
                m.data[r * m.cols + j] = x;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = &f * &m.data[r * m.cols + j];
                    if !sub.is_zero() {
                        m.data[i * m.cols + j] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and right kernel; `rank + dim kernel = cols`.
    pub fn rank_kernel(&self) -> (usize, Subspace) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = super::zero_vector(self.cols);
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect::<Vec<_>>();
        (
            pivots.len(),
            Subspace::from_spanning(self.cols, &basis).expect("kernel vectors have ambient length"),
        )
    }

    pub fn kernel(&self) -> Subspace {
        self.rank_kernel().1
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some solution `x` of `self · x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j).clone();
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = super::zero_vector(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by fraction-free elimination over the rationals.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pivot;
                for j in c..n {
                    let sub = &f * m.get(c, j);
                    m.data[i * n + j] -= sub;
                }
            }
        }
        det
    }

    /// Row-major nested string form used by every file format.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rational(self.get(i, j))).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self, Error> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vector, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&parsed)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_strings() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat, unit_vector};

    #[test]
    fn rank_kernel_of_zero_matrix() {
        let (rank, ker) = Matrix::zeros(3, 3).rank_kernel();
        assert_eq!(rank, 0);
        assert_eq!(ker, Subspace::full(3));
    }

    #[test]
    fn rank_kernel_of_identity() {
        let (rank, ker) = Matrix::identity(4).rank_kernel();
        assert_eq!(rank, 4);
        assert_eq!(ker.dim(), 0);
    }

    #[test]
    fn rank_kernel_single_entry() {
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 2, rat(2));
        let (rank, ker) = m.rank_kernel();
        assert_eq!(rank, 1);
        let expected = Subspace::from_spanning(3, &[unit_vector(3, 0), unit_vector(3, 1)]).unwrap();
        assert_eq!(ker, expected);
        for v in ker.basis() {
            assert!(crate::linalg::is_zero_vector(&m.mul_vec(v)));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(m.determinant(), rat(1));
        let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.determinant(), rat(0));
        let h = Matrix::from_rows(&[vec![frac(1, 2), rat(0)], vec![rat(3), rat(4)]]).unwrap();
        assert_eq!(h.determinant(), rat(2));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let x = m.solve(&[rat(3), rat(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(3), rat(6)]);
        assert!(m.solve(&[rat(3), rat(5)]).is_none());
    }

    #[test]
    fn string_form_round_trips() {
        let m = Matrix::from_rows(&[vec![frac(-1, 3), rat(2)]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["-1/3","2"]]"#);
        assert_eq!(serde_json::from_str::<Matrix>(&json).unwrap(), m);
    }
}
