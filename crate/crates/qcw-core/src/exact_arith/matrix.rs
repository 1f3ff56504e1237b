use std::fmt;

use super::ring::{RingElement, RingMap, RingSpec};
use crate::error::{Error, Result};

/// A dense matrix over one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    pub ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Self { ring, rows, cols, data: vec![RingElement::zero(); rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one());
        }
        m
    }

    pub fn from_fn(ring: RingSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { ring, rows, cols, data }
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<RingElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { ring, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn column_vector(ring: RingSpec, entries: Vec<RingElement>) -> Self {
        let n = entries.len();
        Self { ring, rows: n, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    /// Checks that every entry lies in the owning ring.
    pub fn check_entries(&self) -> Result<()> {
        match self.data.iter().find(|e| !self.ring.contains(e)) {
            Some(e) => {
                Err(Error::Invalid(format!("entry {} does not lie in {}", e.fmt_with_var(self.ring.var()), self.ring)))
            }
            None => Ok(()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn mul(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RingMatrix::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        RingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &RingMatrix) -> RingMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingMatrix {
        let data = self.data.iter().map(RingElement::neg).collect();
        RingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &RingElement) -> RingMatrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        RingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> RingMatrix {
        RingMatrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> RingMatrix {
        RingMatrix::from_fn(self.ring.clone(), self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> RingMatrix {
        RingMatrix::from_fn(self.ring.clone(), self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: impl Into<Vec<usize>>) -> RingMatrix {
        let rows = rows.into();
        RingMatrix::from_fn(self.ring.clone(), rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn hstack(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        RingMatrix::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        RingMatrix::from_fn(self.ring.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &RingMatrix) -> RingMatrix {
        RingMatrix::from_fn(self.ring.clone(), self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => RingElement::zero(),
            }
        })
    }

    /// Kronecker product; row index (i, k) maps to i * other.rows + k.
    pub fn kron(&self, other: &RingMatrix) -> RingMatrix {
        RingMatrix::from_fn(self.ring.clone(), self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            self.get(i, j).mul(other.get(k, l))
        })
    }

    /// Applies a ring map entrywise; the result lives over the map's target.
    pub fn map_ring(&self, f: &RingMap) -> RingMatrix {
        let data = self.data.iter().map(|e| f.apply(e)).collect();
        RingMatrix { ring: f.target.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Reinterprets the entries over another ring without changing them.
    pub fn with_ring(&self, ring: RingSpec) -> RingMatrix {
        RingMatrix { ring, rows: self.rows, cols: self.cols, data: self.data.clone() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &RingElement) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = self.get(src, j).mul(c);
            if !add.is_zero() {
                let idx = dst * self.cols + j;
                self.data[idx] = self.data[idx].add(&add);
            }
        }
    }

    /// col[dst] += c * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &RingElement) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = self.get(i, src).mul(c);
            if !add.is_zero() {
                let idx = i * self.cols + dst;
                self.data[idx] = self.data[idx].add(&add);
            }
        }
    }

    pub fn scale_row(&mut self, r: usize, c: &RingElement) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.data[idx].mul(c);
        }
    }

    pub fn scale_col(&mut self, col: usize, c: &RingElement) {
        for i in 0..self.rows {
            let idx = i * self.cols + col;
            self.data[idx] = self.data[idx].mul(c);
        }
    }

    /// Determinant by fraction-free elimination; quotients are exact in any
    /// integral domain, so Laurent division is safe here.
    pub fn determinant(&self) -> RingElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return RingElement::one();
        }
        let full = RingSpec::laurent("x");
        let mut m = self.clone();
        let mut sign = RingElement::one();
        let mut prev = RingElement::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = sign.neg();
                    }
                    None => return RingElement::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).mul(m.get(k, k)).sub(&m.get(i, k).mul(m.get(k, j)));
                    let q = full.exact_div(&num, &prev).expect("fraction-free step is exact");
                    m.set(i, j, q);
                }
            }
            prev = m.get(k, k).clone();
        }
        prev.mul(&sign)
    }

    /// Inverse of a square matrix whose determinant is a unit, via the adjugate.
    pub fn unit_inverse(&self) -> Option<RingMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let det_inv = self.ring.unit_inverse(&self.determinant())?;
        let minor = |r: usize, c: usize| -> RingMatrix {
            let rows: Vec<usize> = (0..n).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
            self.select_rows(rows).select_columns(&cols)
        };
        Some(RingMatrix::from_fn(self.ring.clone(), n, n, |i, j| {
            let cofactor = minor(j, i).determinant().mul(&det_inv);
            if (i + j) % 2 == 0 {
                cofactor
            } else {
                cofactor.neg()
            }
        }))
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.data
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j).fmt_with_var(self.ring.var()))?;
            }
        }
        write!(f, "]")
    }
}
