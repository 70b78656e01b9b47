//! Small dense linear algebra: vectors, row-major matrices, cyclic Jacobi
//! eigenvalues for symmetric matrices, singular values and numeric rank.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

/// Sweep cap for cyclic Jacobi. Convergence is quadratic once the
/// off-diagonal mass is small, so this is never reached in practice.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Dense vector with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    /// Wraps `entries`, rejecting NaN or infinite values.
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(entries))
    }

    /// Unchecked constructor for values produced by arithmetic on finite data.
    pub(crate) fn from_raw(entries: Vec<T>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![T::zero(); n])
    }

    pub fn filled(n: usize, value: T) -> Self {
        Self(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(|v| v.as_f64()).collect()
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(&a, &b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.iter().map(|&a| a * s).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: T, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a + s * b).collect())
    }

    /// Euclidean distance.
    pub fn dist(&self, other: &Self) -> T {
        self.sub(other).norm()
    }

    pub(crate) fn check_dim(&self, expected: usize, context: &'static str) -> Result<()> {
        if self.len() != expected {
            return Err(Error::Dimension {
                context,
                expected,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for Vector<T> {
    type Error = Error;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

/// Dense row-major matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Dimension {
                context: "matrix entries",
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension {
                    context: "matrix row",
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Self::new(r, c, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    /// `u vᵀ`
    pub fn outer(u: &Vector<T>, v: &Vector<T>) -> Self {
        let mut data = Vec::with_capacity(u.len() * v.len());
        for &a in u.iter() {
            data.extend(v.iter().map(|&b| a * b));
        }
        Self {
            rows: u.len(),
            cols: v.len(),
            data,
        }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `M v`
    pub fn matvec(&self, v: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.cols, v.len());
        Vector::from_raw(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.iter()).map(|(&a, &b)| a * b).sum())
                .collect(),
        )
    }

    /// `Mᵀ v` without forming the transpose.
    pub fn matvec_transposed(&self, v: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.rows, v.len());
        let mut out = vec![T::zero(); self.cols];
        for (i, &vi) in v.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * vi;
            }
        }
        Vector::from_raw(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                context: "matmul inner dimension",
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx] + a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                context: "elementwise matrix op",
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// `½ (M + Mᵀ)`, exactly symmetric by construction.
    pub fn symmetric_part(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let half = T::lit(0.5);
        let mut s = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = (self.get(i, j) + self.get(j, i)) * half;
                s.set(i, j, v);
                s.set(j, i, v);
            }
        }
        Ok(s)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&a| a * a).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi.
///
/// Sweeps visit the upper triangle in row-major order and stop once every
/// off-diagonal magnitude is at most `tol * ‖M‖_F`. Symmetry is checked
/// against the same scale (floored at 1).
pub fn symmetric_eigenvalues<T: Scalar>(m: &Matrix<T>, tol: T) -> Result<Vector<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let norm = m.frobenius_norm();
    let sym_tol = tol * norm.max(T::one());
    for i in 0..n {
        for j in i + 1..n {
            let gap = (m.get(i, j) - m.get(j, i)).abs();
            if gap > sym_tol {
                return Err(Error::NotSymmetric {
                    i,
                    j,
                    gap: gap.as_f64(),
                });
            }
        }
    }

    let threshold = tol * norm;
    let mut a = m.data.clone();
    let at = |i: usize, j: usize| i * n + j;

    let mut converged = false;
    for _ in 0..=MAX_JACOBI_SWEEPS {
        let off_max = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[at(p, q)].abs())
            .fold(T::zero(), T::max);
        if off_max <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[at(p, q)];
                if apq.abs() <= threshold {
                    continue;
                }
                let theta = (a[at(q, q)] - a[at(p, p)]) / (apq + apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(T::one()));
                let c = T::one() / t.hypot(T::one());
                let s = t * c;
                for k in 0..n {
                    let akp = a[at(k, p)];
                    let akq = a[at(k, q)];
                    a[at(k, p)] = c * akp - s * akq;
                    a[at(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[at(p, k)];
                    let aqk = a[at(q, k)];
                    a[at(p, k)] = c * apk - s * aqk;
                    a[at(q, k)] = s * apk + c * aqk;
                }
                a[at(p, q)] = T::zero();
                a[at(q, p)] = T::zero();
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            method: "cyclic Jacobi",
            iterations: MAX_JACOBI_SWEEPS,
            last: (0..n).map(|i| a[at(i, i)].as_f64()).collect(),
        });
    }

    let mut eig: Vec<T> = (0..n).map(|i| a[at(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(Vector::from_raw(eig))
}

/// Singular values, descending, as square roots of the eigenvalues of the
/// smaller Gram matrix (`MᵀM` or `MMᵀ`). Returns `min(rows, cols)` values.
pub fn singular_values<T: Scalar>(m: &Matrix<T>, tol: T) -> Result<Vector<T>> {
    let gram = if m.rows >= m.cols {
        m.transpose().matmul(m)?
    } else {
        m.matmul(&m.transpose())?
    };
    let eig = symmetric_eigenvalues(&gram, tol)?;
    let mut sv: Vec<T> = eig.iter().map(|&l| l.max(T::zero()).sqrt()).collect();
    sv.reverse();
    Ok(Vector::from_raw(sv))
}

/// Number of values strictly above `tol * max(1, values[0])`.
pub fn numeric_rank<T: Scalar>(values: &Vector<T>, tol: T) -> Result<usize> {
    for (i, w) in values.as_slice().windows(2).enumerate() {
        if w[1] > w[0] {
            return Err(Error::Unsorted { index: i + 1 });
        }
    }
    let Some(&largest) = values.as_slice().first() else {
        return Ok(0);
    };
    let cutoff = tol * largest.max(T::one());
    Ok(values.iter().filter(|&&v| v > cutoff).count())
}
