//! Dense matrices over exact or floating-point complex scalars.
//!
//! Storage is row-major. Matrices in this crate never exceed 16x16, so every
//! operation is the naive dense one.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{exact_to_complex, ExactScalar, Real, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape { rows, cols, got: data.len() });
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(k / cols, k % cols));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Row-major construction from integer pairs `(re, im)`; convenient for printed matrices.
    pub fn from_int_pairs(rows: usize, cols: usize, entries: &[(i64, i64)]) -> Result<Self> {
        let i = T::i();
        let data = entries
            .iter()
            .map(|&(re, im)| T::from_i64(re) + i.clone() * T::from_i64(im))
            .collect();
        Self::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }

    /// Assembles a matrix from a grid of blocks. Block heights must agree along
    /// each block row and widths along each block column.
    pub fn from_blocks(blocks: &[Vec<&Matrix<T>>]) -> Result<Self> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for row in blocks {
            if row.len() != widths.len() {
                return Err(Error::Construction("ragged block rows".into()));
            }
        }
        let rows = heights.iter().sum();
        let cols = widths.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, block) in row.iter().enumerate() {
                if block.rows != heights[bi] || block.cols != widths[bj] {
                    return Err(Error::DimensionMismatch {
                        op: "from_blocks",
                        left: (heights[bi], widths[bj]),
                        right: block.shape(),
                    });
                }
                for r in 0..block.rows {
                    for c in 0..block.cols {
                        out[(r0 + r, c0 + c)] = block[(r, c)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Number of entries that are not exactly zero.
    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Positions of nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !self[(r, c)].is_zero())
            .collect()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, k| acc + self[(k, k)].clone())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mat_mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[k * other.cols + c];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    fn check_square_pair(&self, other: &Self, op: &'static str) -> Result<()> {
        if !self.is_square() || self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_square_pair(other, "commutator")?;
        self.mat_mul(other)?.try_sub(&other.mat_mul(self)?)
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.check_square_pair(other, "anticommutator")?;
        self.mat_mul(other)?.try_add(&other.mat_mul(self)?)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = out.mat_mul(self)?;
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { op: "apply", left: self.shape(), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect())
    }

    /// Coefficients `c_0 .. c_n` of `det(x I - A)` in ascending order (`c_n = 1`),
    /// by the Faddeev-LeVerrier recursion. Exact when `T` is exact.
    pub fn char_poly(&self) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let id = Self::identity(n);
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = self.mat_mul(&m)?.try_add(&id.scale(&coeffs[n - k + 1]))?;
            let am = self.mat_mul(&m)?;
            coeffs[n - k] = -(am.trace() * T::from_frac(1, k as i64));
        }
        Ok(coeffs)
    }

    /// Largest entry magnitude (`|re| + |im|`).
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// Multiplicity of `root` in a polynomial given by ascending coefficients.
pub fn root_multiplicity<T: Scalar>(coeffs: &[T], root: &T) -> usize {
    let mut poly: Vec<T> = coeffs.to_vec();
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let mut count = 0;
    while poly.len() > 1 {
        // Horner division by (x - root); the last remainder is p(root).
        let deg = poly.len() - 1;
        let mut quotient = vec![T::zero(); deg];
        let mut carry = T::zero();
        for k in (0..=deg).rev() {
            let value = poly[k].clone() + carry.clone() * root.clone();
            if k == 0 {
                if !value.is_zero() {
                    return count;
                }
            } else {
                quotient[k - 1] = value.clone();
            }
            carry = value;
        }
        poly = quotient;
        count += 1;
    }
    count
}

/// Truncated Baker-Hausdorff series for `exp(-i x) g exp(i x)`:
/// `sum_{k=0}^{order} (-i)^k / k! ad_x^k(g)` with `ad_x(g) = [x, g]`.
pub fn bch_conjugate<T: Scalar>(x: &Matrix<T>, g: &Matrix<T>, order: usize) -> Result<Matrix<T>> {
    x.check_square_pair(g, "bch_conjugate")?;
    let minus_i = -T::i();
    let mut term = g.clone();
    let mut sum = g.clone();
    let mut coeff = T::one();
    for k in 1..=order {
        term = x.commutator(&term)?;
        if term.is_zero() {
            break;
        }
        coeff = coeff * minus_i.clone() * T::from_frac(1, k as i64);
        sum = sum.try_add(&term.scale(&coeff))?;
    }
    Ok(sum)
}

/// Entrywise conversion of an exact matrix to floating point.
pub fn to_numeric<F: Real>(m: &Matrix<ExactScalar>) -> Matrix<Complex<F>> {
    m.map(exact_to_complex::<F>)
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

// Operator forms panic on shape mismatch; use the `try_*` / `mat_mul` methods
// when shapes are not known statically.
impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.mat_mul(rhs).expect("matrix product shape")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix sum shape")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix difference shape")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:?} ", self.data[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
