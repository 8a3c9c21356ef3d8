//! Dense complex square matrices with 1-based indexing.
//!
//! Indices run from 1 to `dim` to mirror the matrix-unit notation
//! `e_{i,j}` used by the realization formulas; the offset is converted
//! exactly once at the storage boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = Complex64::new(0.0, 0.0);
pub const ONE: C64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl SquareMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 1..=dim {
            m.set(i, i, ONE);
        }
        m
    }

    /// Matrix unit `e_{i,j}` (1-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.set(i, j, ONE);
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zero(diag.len());
        for (k, &v) in diag.iter().enumerate() {
            m.set(k + 1, k + 1, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        debug_assert!(i >= 1 && i <= self.dim && j >= 1 && j <= self.dim);
        self.data[(i - 1) * self.dim + (j - 1)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        debug_assert!(i >= 1 && i <= self.dim && j >= 1 && j <= self.dim);
        self.data[(i - 1) * self.dim + (j - 1)] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: C64) {
        let cur = self.at(i, j);
        self.set(i, j, cur + v);
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (1..=self.dim).map(|i| self.at(i, i)).collect()
    }

    pub fn trace(&self) -> C64 {
        (1..=self.dim).map(|i| self.at(i, i)).sum()
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.max_norm() <= tol
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    /// `A v` for a 1-based column vector.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        let d = self.dim;
        let mut out = vec![ZERO; d];
        for i in 0..d {
            let mut acc = ZERO;
            for j in 0..d {
                acc += self.data[i * d + j] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Outer product `u v^t` (usual transpose).
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let d = u.len();
        assert_eq!(d, v.len());
        let mut m = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                m.data[i * d + j] = u[i] * v[j];
            }
        }
        m
    }

    /// Determinant via LU decomposition with partial pivoting.
    pub fn determinant(&self) -> C64 {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..d {
            let mut pivot = col;
            let mut best = a[col * d + col].norm();
            for row in col + 1..d {
                let mag = a[row * d + col].norm();
                if mag > best {
                    best = mag;
                    pivot = row;
                }
            }
            if best == 0.0 {
                return ZERO;
            }
            if pivot != col {
                for j in 0..d {
                    a.swap(col * d + j, pivot * d + j);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det *= p;
            for row in col + 1..d {
                let factor = a[row * d + col] / p;
                if factor == ZERO {
                    continue;
                }
                for j in col..d {
                    let v = a[col * d + j];
                    a[row * d + j] -= factor * v;
                }
            }
        }
        det
    }

    /// Numerical rank via Gaussian elimination; pivots below `tol` count as zero.
    pub fn rank(&self, tol: f64) -> usize {
        rank_of_rows(
            (0..self.dim)
                .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
                .collect(),
            tol,
        )
    }
}

/// Rank of a list of complex row vectors.
pub fn rank_of_rows(mut rows: Vec<Vec<C64>>, tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows.len() && col < cols {
        let mut pivot = rank;
        let mut best = rows[rank][col].norm();
        for r in rank + 1..rows.len() {
            let mag = rows[r][col].norm();
            if mag > best {
                best = mag;
                pivot = r;
            }
        }
        if best <= tol {
            col += 1;
            continue;
        }
        rows.swap(rank, pivot);
        let p = rows[rank][col];
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / p;
            if factor == ZERO {
                continue;
            }
            for c in col..cols {
                let v = rows[rank][c];
                rows[r][c] -= factor * v;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim);
        SquareMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim);
        SquareMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        self.scaled(-ONE)
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.matmul(rhs).expect("dimension mismatch")
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({}x{})", self.dim, self.dim)?;
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let v = self.at(i, j);
                write!(f, " {:>6.2}{:+.2}i", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
