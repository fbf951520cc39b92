//! Real and complex scalars behind one trait.
//!
//! The interpolation system matrix is always real; sample vectors may be
//! complex (Hankel and Hallén kernels). Everything downstream of the
//! samples is generic over [`Scalar`].

use std::fmt::Debug;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Mul<f64, Output = Self>
    + Sum
{
    const IS_COMPLEX: bool;

    fn zero() -> Self;
    fn from_real(x: f64) -> Self;
    /// Builds a scalar from real and imaginary parts. Real scalars drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn conj(self) -> Self;
    fn modulus(self) -> f64;

    fn is_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }
}

impl Scalar for f64 {
    const IS_COMPLEX: bool = false;

    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn im(self) -> f64 {
        0.0
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    const IS_COMPLEX: bool = true;

    #[inline]
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn im(self) -> f64 {
        self.im
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Euclidean norm of a scalar vector.
pub fn norm2<T: Scalar>(v: &[T]) -> f64 {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.modulus()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s: f64 = v
        .iter()
        .map(|x| {
            let r = x.modulus() / scale;
            r * r
        })
        .sum();
    scale * s.sqrt()
}

/// Largest modulus in `v` (0 for an empty slice).
pub fn max_modulus<T: Scalar>(v: &[T]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.modulus()))
}
