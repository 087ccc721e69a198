//! Dense complex matrices, the Re/Im decompositions, and the tridiagonal
//! characteristic-polynomial recursion.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Default relative tolerance for accepting a matrix as Hermitian.
pub const TOL_HERM: f64 = 1e-12;
/// Default relative tolerance for eigensystem residuals.
pub const TOL_EIG: f64 = 1e-11;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::BadDimensions { n, expected: n * n, got: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Build from rows of (re, im) pairs; rows must be square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::BadDimensions { n, expected: n * n, got: row.len() * n });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Convenience for real test matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::BadDimensions { n, expected: n * n, got: row.len() * n });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&v| v * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Ok(Self { n: self.n, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, v.len())));
        }
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max_{i,j} |a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.n;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Hermitian within a relative tolerance (scaled by the largest entry).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol * self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn is_tridiagonal(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1 && self[(i, j)].norm_sqr() != 0.0 {
                    return false;
                }
            }
        }
        true
    }

    /// `Re(e^{i theta} A) = (e^{i theta} A + e^{-i theta} A*) / 2`.
    ///
    /// Hermitian by construction: the (j,i) entry is written as the exact
    /// conjugate of the (i,j) entry.
    pub fn rotated_real(&self, theta: f64) -> Self {
        let n = self.n;
        let w = Complex64::from_polar(1.0, theta);
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new((w * self[(i, i)]).re, 0.0);
            for j in (i + 1)..n {
                let v = (w * self[(i, j)] + (w * self[(j, i)]).conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// `Re A` at angle zero.
    pub fn real_part(&self) -> Self {
        self.rotated_real(0.0)
    }

    /// `Im A = (A - A*) / 2i`, Hermitian by construction.
    pub fn imag_part(&self) -> Self {
        self.rotated_imag(0.0)
    }

    /// `Im(e^{i theta} A) = (e^{i theta} A - e^{-i theta} A*) / 2i`,
    /// Hermitian by construction. This is `-dH/dtheta` for
    /// `H = Re(e^{i theta} A)`.
    pub fn rotated_imag(&self, theta: f64) -> Self {
        let n = self.n;
        let w = Complex64::from_polar(1.0, theta);
        let half_over_i = Complex64::new(0.0, -0.5); // 1/(2i)
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] =
                Complex64::new(((w * self[(i, i)] - (w * self[(i, i)]).conj()) * half_over_i).re, 0.0);
            for j in (i + 1)..n {
                let v = (w * self[(i, j)] - (w * self[(j, i)]).conj()) * half_over_i;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// det(xI - T) for tridiagonal T via the three-term recursion on leading
    /// principal minors. The value only depends on the products of opposite
    /// off-diagonal entries, so it is invariant under swapping any pair.
    pub fn tridiag_charpoly(&self, x: f64) -> Result<Complex64> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1 && self[(i, j)].norm_sqr() != 0.0 {
                    return Err(Error::NotTridiagonal { i, j });
                }
            }
        }
        let x = Complex64::new(x, 0.0);
        let mut prev = Complex64::new(1.0, 0.0); // Delta_0
        let mut cur = x - self[(0, 0)]; // Delta_1
        for k in 1..n {
            let offprod = self[(k - 1, k)] * self[(k, k - 1)];
            let next = (x - self[(k, k)]) * cur - offprod * prev;
            prev = cur;
            cur = next;
        }
        Ok(if n == 0 { prev } else { cur })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}
