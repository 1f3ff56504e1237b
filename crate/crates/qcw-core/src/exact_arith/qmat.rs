use std::fmt;

use num_traits::{One, Zero};

use super::ring::Rational;

/// Dense matrix over Q; the workhorse for finite-dimensional representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| Rational::from_integer(vals[i * cols + j].into()))
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        QMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        QMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Rational) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        QMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> QMat {
        QMat::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> QMat {
        QMat::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> QMat {
        QMat::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn kron(&self, other: &QMat) -> QMat {
        QMat::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.get(r / other.rows, c / other.cols) * other.get(r % other.rows, c % other.cols)
        })
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
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
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] *= &inv;
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = &m.data[r * m.cols + j];
                    if v.is_zero() {
                        continue;
                    }
                    let sub = &f * v;
                    m.data[i * m.cols + j] -= sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns forming a basis of the null space.
    pub fn nullspace(&self) -> QMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, Rational::one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.get(row, f).clone());
            }
        }
        out
    }

    /// Rows forming a basis of the left null space, as a matrix `q` with `q * self = 0`.
    pub fn left_nullspace(&self) -> QMat {
        self.transpose().nullspace().transpose()
    }

    /// A column basis of the column space, chosen among the columns of `self`.
    pub fn column_basis(&self) -> QMat {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `self * x = b`; any particular solution.
    pub fn solve(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMat::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&QMat::identity(self.rows))?;
        (self.mul(&x) == QMat::identity(self.rows)).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Indices of standard basis vectors completing the column span of
    /// `self` to the whole space, chosen greedily in index order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let n = self.rows;
        let mut current = self.column_basis();
        let mut rank = current.cols();
        let mut out = Vec::new();
        for i in 0..n {
            if rank == n {
                break;
            }
            let mut e = QMat::zeros(n, 1);
            e.set(i, 0, Rational::one());
            let trial = current.hstack(&e);
            if trial.rank() > rank {
                current = trial;
                rank += 1;
                out.push(i);
            }
        }
        out
    }

    /// Flattened row-major entries as a column vector.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> QMat {
        assert_eq!(data.len(), rows * cols);
        QMat { rows, cols, data }
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_solve() {
        let a = QMat::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(a.mul(&n).is_zero());
        let b = QMat::from_i64(2, 1, &[1, 2]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert!(a.solve(&QMat::from_i64(2, 1, &[1, 3])).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = QMat::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        assert!(QMat::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn complement() {
        let a = QMat::from_i64(3, 1, &[1, 0, 0]);
        assert_eq!(a.complement_indices(), vec![1, 2]);
    }
}
