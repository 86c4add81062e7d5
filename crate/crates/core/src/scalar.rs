//! Scalar traits shared by the exact and floating-point layers.
//!
//! Matrix code is written once against [`Scalar`]. Two families implement it:
//! Gaussian rationals (`Complex<BigRational>`) for identity proofs, and
//! `Complex<f32>` / `Complex<f64>` for residuals and quadrature. Field-level
//! numerics are generic over [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Real floating-point type used by the numerical layer.
///
/// Implemented for `f32` and `f64` only.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; constants in the numerical code go through this.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite float")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex field element usable as a matrix entry.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and equality is a proof.
    const EXACT: bool;

    fn i() -> Self;
    fn from_frac(num: i64, den: i64) -> Self;
    fn conj(&self) -> Self;
    /// `|re| + |im|` as an `f64`, for ranking and tolerance tests.
    fn magnitude(&self) -> f64;
    fn is_finite(&self) -> bool;
    fn to_complex64(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_frac(n, 1)
    }
}

impl<F: Real> Scalar for Complex<F> {
    const EXACT: bool = false;

    fn i() -> Self {
        Complex::new(F::zero(), F::one())
    }

    fn from_frac(num: i64, den: i64) -> Self {
        let v = F::from_i64(num).expect("numerator") / F::from_i64(den).expect("denominator");
        Complex::new(v, F::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn magnitude(&self) -> f64 {
        self.re.abs().as_f64() + self.im.abs().as_f64()
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.as_f64(), self.im.as_f64())
    }
}

/// Exact Gaussian rational `a + b i` with arbitrary-precision `a, b`.
pub type ExactScalar = Complex<BigRational>;

impl Scalar for ExactScalar {
    const EXACT: bool = true;

    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn magnitude(&self) -> f64 {
        ratio_to_f64(&self.re.abs()) + ratio_to_f64(&self.im.abs())
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Builds an exact scalar `re + im i` from integer parts.
pub fn exact(re: i64, im: i64) -> ExactScalar {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

/// Exact scalar from a rational real part.
pub fn exact_frac(num: i64, den: i64) -> ExactScalar {
    ExactScalar::from_frac(num, den)
}

/// The exact dyadic rational equal to a finite `f64`.
pub fn exact_from_f64(x: f64) -> Option<ExactScalar> {
    BigRational::from_float(x).map(|r| Complex::new(r, BigRational::zero()))
}

/// Converts an exact scalar to a floating-point complex number.
pub fn exact_to_complex<F: Real>(x: &ExactScalar) -> Complex<F> {
    Complex::new(
        F::from_f64(ratio_to_f64(&x.re)).unwrap_or_else(F::nan),
        F::from_f64(ratio_to_f64(&x.im)).unwrap_or_else(F::nan),
    )
}
