use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::scalar::Real;
use crate::exact_arith::Rational;
use crate::lie_symbolic::{AssocAlgebra, LinearSpace};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: cannot parse {token:?}")]
    Parse {
        path: String,
        line: usize,
        token: String,
    },
}

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Real> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            data.extend(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn diag(d: &[S]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, &v) in d.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    fn check_dim(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(MatrixError::DimensionMismatch(self.n, other.n))
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: S) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn div_f64(&self, d: f64) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&a| a.div_f64(d)).collect(),
        }
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.data
            .iter()
            .map(|a| a.to_f64().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Matrix product. Panics on dimension mismatch; use [`Matrix::try_mul`]
    /// for a checked variant.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == S::zero() {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_dim(other)?;
        Ok(self.mul(other))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == S::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.is_finite())
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|i| self.get(i, j).to_f64().abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|a| a.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Rounds every entry to `f64`.
    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a.to_f64()).collect(),
        }
    }

    /// Exact embedding of a double-precision matrix.
    pub fn from_f64(m: &Matrix<f64>) -> Self {
        Matrix {
            n: m.n,
            data: m.data.iter().map(|&a| S::from_f64(a)).collect(),
        }
    }
}

/// Spectral norm (largest singular value), computed in double precision.
pub fn norm2<S: Real>(a: &Matrix<S>) -> f64 {
    if a.n == 0 {
        return 0.0;
    }
    let f: Vec<f64> = a.data.iter().map(|v| v.to_f64()).collect();
    let m = nalgebra::DMatrix::from_row_slice(a.n, a.n, &f);
    m.singular_values().max()
}

/// Matrix exponential by scaling and squaring with a Taylor kernel. The
/// argument is scaled to 1-norm at most 1/2; the series is summed until a
/// term drops below the unit roundoff relative to the running sum.
pub fn expm<S: Real>(a: &Matrix<S>) -> Result<Matrix<S>, MatrixError> {
    if !a.is_finite() {
        return Err(MatrixError::NonFinite);
    }
    let n = a.n;
    let norm = a.norm1();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale(S::from_f64(0.5f64.powi(squarings as i32)));
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    let eps = S::epsilon();
    for k in 1..=80 {
        term = term.mul(&scaled).div_f64(k as f64);
        sum = sum.add(&term);
        if term.norm1() <= eps * sum.norm1() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    if !sum.is_finite() {
        return Err(MatrixError::NonFinite);
    }
    Ok(sum)
}

/// Space of `dim × dim` matrices as an associative algebra.
#[derive(Clone, Copy, Debug)]
pub struct MatrixAlgebra<S> {
    pub dim: usize,
    _scalar: std::marker::PhantomData<S>,
}

impl<S: Real> MatrixAlgebra<S> {
    pub fn new(dim: usize) -> Self {
        MatrixAlgebra {
            dim,
            _scalar: std::marker::PhantomData,
        }
    }
}

impl<S: Real> LinearSpace for MatrixAlgebra<S> {
    type Elem = Matrix<S>;

    fn zero(&self) -> Matrix<S> {
        Matrix::zeros(self.dim)
    }
    fn add(&self, a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
        a.add(b)
    }
    fn scale(&self, a: &Matrix<S>, c: &Rational) -> Matrix<S> {
        a.scale(S::from_rational(c))
    }
    fn is_zero(&self, a: &Matrix<S>) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
        a.sub(b)
    }
    fn add_scaled(&self, acc: &mut Matrix<S>, c: &Rational, b: &Matrix<S>) {
        if c.is_zero() {
            return;
        }
        let c = S::from_rational(c);
        for (d, &v) in acc.data.iter_mut().zip(&b.data) {
            *d = *d + c * v;
        }
    }
}

impl<S: Real> AssocAlgebra for MatrixAlgebra<S> {
    fn one(&self) -> Matrix<S> {
        Matrix::identity(self.dim)
    }
    fn mul(&self, a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
        a.mul(b)
    }
}

impl Matrix<f64> {
    /// One row per line, entries separated by commas, shortest round-trip
    /// decimal form.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    s.push(',');
                }
                write!(s, "{:?}", self.get(i, j)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str, origin: &str) -> Result<Self, MatrixError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<f64>().map_err(|_| MatrixError::Parse {
                        path: origin.to_string(),
                        line: lineno + 1,
                        token: tok.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let m = Matrix::from_rows(rows)?;
        if !m.is_finite() {
            return Err(MatrixError::NonFinite);
        }
        Ok(m)
    }

    pub fn load_csv(path: &Path) -> Result<Self, MatrixError> {
        let text = std::fs::read_to_string(path).map_err(|source| MatrixError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_csv(&text, &path.display().to_string())
    }

    pub fn store_csv(&self, path: &Path) -> Result<(), MatrixError> {
        std::fs::write(path, self.to_csv()).map_err(|source| MatrixError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twofloat::TwoFloat;

    fn close(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) -> bool {
        a.sub(b).max_abs() <= tol
    }

    #[test]
    fn expm_examples() {
        let z = Matrix::<f64>::zeros(3);
        assert_eq!(expm(&z).unwrap(), Matrix::identity(3));

        let d = Matrix::diag(&[0.3, -2.0]);
        let e = expm(&d).unwrap();
        assert!(close(
            &e,
            &Matrix::diag(&[0.3f64.exp(), (-2.0f64).exp()]),
            1e-15
        ));

        let nil = Matrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let e = expm(&nil).unwrap();
        assert_eq!(
            e,
            Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap()
        );

        let mut bad = Matrix::<f64>::zeros(2);
        bad.set(0, 1, f64::NAN);
        assert!(matches!(expm(&bad), Err(MatrixError::NonFinite)));
    }

    #[test]
    fn expm_rotation_large_angle() {
        // exp of the generator of rotations by t
        let t = 7.5;
        let a = Matrix::from_rows(vec![vec![0.0, -t], vec![t, 0.0]]).unwrap();
        let e = expm(&a).unwrap();
        let r = Matrix::from_rows(vec![vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]).unwrap();
        assert!(close(&e, &r, 1e-13), "{e:?}");
    }

    #[test]
    fn expm_extended_precision() {
        let t = TwoFloat::from(1.0);
        let a = Matrix::<TwoFloat>::diag(&[t]);
        let e = expm(&a).unwrap().get(0, 0);
        let e_ref = twofloat::consts::E;
        assert!((e - e_ref).abs().to_f64() < 1e-30, "{e:?}");
    }

    #[test]
    fn norm2_examples() {
        assert!((norm2(&Matrix::<f64>::identity(4)) - 1.0).abs() < 1e-14);
        assert!((norm2(&Matrix::diag(&[3.0, -4.0])) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn csv_round_trip() {
        let m = Matrix::from_rows(vec![vec![0.1, -2.5e-17], vec![3.0, 1.0 / 3.0]]).unwrap();
        let back = Matrix::from_csv(&m.to_csv(), "mem").unwrap();
        assert_eq!(m, back);
        assert!(matches!(
            Matrix::from_csv("1,2\n3\n", "mem"),
            Err(MatrixError::NotSquare { .. })
        ));
        assert!(matches!(
            Matrix::from_csv("1,x\n3,4\n", "mem"),
            Err(MatrixError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn checked_product_reports_mismatch() {
        let a = Matrix::<f64>::identity(2);
        let b = Matrix::<f64>::identity(3);
        assert!(matches!(
            a.try_mul(&b),
            Err(MatrixError::DimensionMismatch(2, 3))
        ));
    }
}
