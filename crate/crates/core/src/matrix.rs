//! Dense matrices over any [`Ring`].

use std::fmt;

use crate::error::{shape, Result};
use crate::poly::Poly;
use crate::ring::{Rat, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix with polynomial entries; the value type of Lie-algebra elements.
pub type PolyMatrix = Matrix<Poly>;

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(shape("empty matrix"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(shape("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn filled(rows: usize, cols: usize, value: &T) -> Self {
        Matrix { rows, cols, data: vec![value.clone(); rows * cols] }
    }

    /// Zero matrix whose entries have the shape of `like`.
    pub fn zeros(rows: usize, cols: usize, like: &T) -> Self {
        Self::filled(rows, cols, &like.zero_like())
    }

    pub fn identity(k: usize, like: &T) -> Self {
        let mut m = Self::zeros(k, k, like);
        for i in 0..k {
            m.data[i * k + i] = like.one_like();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::vanishes)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(idx, v)| {
                if idx / self.cols == idx % self.cols {
                    *v == v.one_like()
                } else {
                    v.vanishes()
                }
            })
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(self.add(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::negated)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        self.map(|v| v.scaled(r))
    }

    /// Multiplies every entry by the ring element `c` on the left.
    pub fn scale_by(&self, c: &T) -> Self {
        self.map(|v| c.times(v))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let zero = self.data[0].zero_like();
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let pairs = (0..self.cols)
                    .map(|l| (&self.data[i * self.cols + l], &o.data[l * o.cols + j]))
                    .filter(|(a, b)| !a.vanishes() && !b.vanishes());
                data.push(T::sum_of_products(&zero, pairs));
            }
        }
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, o: &Self) -> Self {
        assert!(self.is_square() && o.rows == self.rows && o.cols == self.cols, "matrix shape mismatch");
        let n = self.rows;
        let zero = self.data[0].zero_like();
        let neg_o = o.neg();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let ab = (0..n).map(|l| (&self.data[i * n + l], &o.data[l * n + j]));
                let ba = (0..n).map(|l| (&neg_o.data[i * n + l], &self.data[l * n + j]));
                let pairs = ab.chain(ba).filter(|(a, b)| !a.vanishes() && !b.vanishes());
                data.push(T::sum_of_products(&zero, pairs));
            }
        }
        Matrix { rows: n, cols: n, data }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Inverse of `I + N` for nilpotent `N` by the terminating Neumann series.
    /// Returns `None` if the series does not terminate within the matrix size
    /// times the nilpotency bound `max_terms`.
    pub fn unipotent_inverse(&self, max_terms: usize) -> Option<Self> {
        let like = &self.data[0];
        let id = Matrix::identity(self.rows, like);
        let minus_n = id.sub(self);
        let mut term = id.clone();
        let mut acc = id;
        for _ in 0..max_terms {
            term = term.mul(&minus_n);
            if term.is_zero() {
                return Some(acc);
            }
            acc = acc.add(&term);
        }
        None
    }
}

impl PolyMatrix {
    pub fn poly_zeros(k: usize, dim: usize) -> Self {
        Matrix::zeros(k, k, &Poly::zero(dim))
    }

    pub fn poly_identity(k: usize, dim: usize) -> Self {
        Matrix::identity(k, &Poly::zero(dim))
    }

    /// Elementary matrix `E_{ij}` (0-based) scaled by `p`.
    pub fn elementary(k: usize, i: usize, j: usize, p: Poly) -> Self {
        let dim = p.dim();
        let mut m = Self::poly_zeros(k, dim);
        m.set(i, j, p);
        m
    }

    pub fn dim(&self) -> usize {
        self.data[0].dim()
    }

    /// Entrywise partial derivative with respect to the 0-based variable.
    pub fn derivative(&self, var: usize) -> Self {
        self.map(|p| p.derivative(var))
    }

    /// First nonzero entry in row-major order, for diagnostics.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        self.data
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(idx, p)| (idx / self.cols, idx % self.cols, p))
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        let rows: Vec<String> = self
            .data
            .chunks(self.cols)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|p| p.to_string_with(vars)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&crate::poly::default_vars(self.dim())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn unipotent_inverse_pair() {
        let x1 = Poly::var(2, 0);
        let a = PolyMatrix::poly_identity(2, 2).add(&PolyMatrix::elementary(2, 0, 1, x1));
        let inv = a.unipotent_inverse(4).unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn three_by_three_upper_product() {
        let d = 2;
        let id = PolyMatrix::poly_identity(3, d);
        let a = id.add(&PolyMatrix::elementary(3, 0, 1, Poly::var(d, 0)));
        let b = id.add(&PolyMatrix::elementary(3, 0, 2, Poly::var(d, 1)));
        let expected = id
            .add(&PolyMatrix::elementary(3, 0, 1, Poly::var(d, 0)))
            .add(&PolyMatrix::elementary(3, 0, 2, Poly::var(d, 1)));
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn rational_matrices() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        let t = m.transpose();
        assert_eq!(*t.get(0, 1), int(3));
        assert!(Matrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).is_err());
        assert!(m.checked_mul(&Matrix::identity(3, &int(0))).is_err());
    }
}
