//! Unnormalized DCT-II and DCT-III.
//!
//! With `A` the Chebyshev Vandermonde matrix at first-kind points
//! (`A[j][k] = T_k(x_j)`), [`dct2`] computes `Aᵀu` and [`dct3`] computes
//! `Av`. The pair satisfies `AᵀA = diag(n, n/2, ..., n/2)`.
//!
//! The fast path reorders the input and runs one real FFT of length `n`
//! (any `n`, not only powers of two); both spectra involved are Hermitian, so
//! only `n/2 + 1` complex values are stored. Sizes below [`NAIVE_CUTOFF`] use the
//! direct sums, which are also exported as the reference implementation.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Below this length the O(n²) sums are used directly.
pub const NAIVE_CUTOFF: usize = 16;

/// `cos(π·m / (2n))` with `m` reduced modulo `4n` first.
#[inline]
fn cos_quarter(m: usize, n: usize) -> f64 {
    let period = 4 * n;
    let m = m % period;
    (PI * m as f64 / (2 * n) as f64).cos()
}

/// Direct evaluation of `ũ_k = Σ_j u_j cos(k(2j+1)π/2n)`.
pub fn dct2_naive<T: Scalar>(u: &[T]) -> Result<Vec<T>> {
    let n = u.len();
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    Ok((0..n)
        .map(|k| {
            u.iter()
                .enumerate()
                .map(|(j, &uj)| uj * cos_quarter(k * (2 * j + 1), n))
                .sum()
        })
        .collect())
}

/// Direct evaluation of `u_j = Σ_k v_k cos(k(2j+1)π/2n)`.
pub fn dct3_naive<T: Scalar>(v: &[T]) -> Result<Vec<T>> {
    let n = v.len();
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    Ok((0..n)
        .map(|j| {
            v.iter()
                .enumerate()
                .map(|(k, &vk)| vk * cos_quarter(k * (2 * j + 1), n))
                .sum()
        })
        .collect())
}

/// Precomputed FFTs and twiddles for transforms of one length.
///
/// Building a plan is `O(n)`; reuse it when applying many transforms of the
/// same size (the Krylov solve applies the reduced operator repeatedly).
#[derive(Clone)]
pub struct DctPlan {
    n: usize,
    fft: Option<Arc<dyn RealToComplex<f64>>>,
    ifft: Option<Arc<dyn ComplexToReal<f64>>>,
    // e^{-iπk/(2n)}
    twiddles: Vec<Complex64>,
}

impl std::fmt::Debug for DctPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DctPlan")
            .field("n", &self.n)
            .field("fast", &self.fft.is_some())
            .finish()
    }
}

impl DctPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        if n < NAIVE_CUTOFF {
            return Ok(Self {
                n,
                fft: None,
                ifft: None,
                twiddles: Vec::new(),
            });
        }
        Ok(Self::new_fast(n))
    }

    /// Plan that always takes the FFT path, regardless of size.
    pub fn new_fast(n: usize) -> Self {
        assert!(n > 0, "transform length must be positive");
        let mut planner = RealFftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let twiddles = (0..n)
            .map(|k| {
                let theta = PI * k as f64 / (2 * n) as f64;
                Complex64::new(theta.cos(), -theta.sin())
            })
            .collect();
        Self {
            n,
            fft: Some(fft),
            ifft: Some(ifft),
            twiddles,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got == 0 {
            return Err(Error::EmptyVector);
        }
        if got != self.n {
            return Err(Error::InvalidSize(format!(
                "plan is for length {}, got {got}",
                self.n
            )));
        }
        Ok(())
    }

    /// `Aᵀu`.
    pub fn dct2<T: Scalar>(&self, u: &[T]) -> Result<Vec<T>> {
        self.check_len(u.len())?;
        let Some(fft) = &self.fft else {
            return dct2_naive(u);
        };
        let re = self.dct2_real(fft.as_ref(), u.iter().map(|x| x.re()));
        if T::IS_COMPLEX {
            let im = self.dct2_real(fft.as_ref(), u.iter().map(|x| x.im()));
            Ok(re
                .into_iter()
                .zip(im)
                .map(|(r, i)| T::from_parts(r, i))
                .collect())
        } else {
            Ok(re.into_iter().map(T::from_real).collect())
        }
    }

    /// `Av`.
    pub fn dct3<T: Scalar>(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_len(v.len())?;
        let Some(ifft) = &self.ifft else {
            return dct3_naive(v);
        };
        let re = self.dct3_real(ifft.as_ref(), &v.iter().map(|x| x.re()).collect::<Vec<_>>());
        if T::IS_COMPLEX {
            let im = self.dct3_real(ifft.as_ref(), &v.iter().map(|x| x.im()).collect::<Vec<_>>());
            Ok(re
                .into_iter()
                .zip(im)
                .map(|(r, i)| T::from_parts(r, i))
                .collect())
        } else {
            Ok(re.into_iter().map(T::from_real).collect())
        }
    }

    fn dct2_real(&self, fft: &dyn RealToComplex<f64>, u: impl Iterator<Item = f64>) -> Vec<f64> {
        let n = self.n;
        WORK.with_borrow_mut(|w| {
            w.size(n, fft.get_scratch_len());
            // Even-indexed entries ascending, then odd-indexed entries descending.
            for (j, x) in u.enumerate() {
                let slot = if j % 2 == 0 { j / 2 } else { n - 1 - j / 2 };
                w.real[slot] = x;
            }
            fft.process_with_scratch(&mut w.real, &mut w.spectrum, &mut w.scratch)
                .expect("buffers sized by the plan");
            let half = w.spectrum.len();
            (0..n)
                .map(|k| {
                    let v = if k < half {
                        w.spectrum[k]
                    } else {
                        w.spectrum[n - k].conj()
                    };
                    (v * self.twiddles[k]).re
                })
                .collect()
        })
    }

    fn dct3_real(&self, ifft: &dyn ComplexToReal<f64>, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        WORK.with_borrow_mut(|w| {
            w.size(n, ifft.get_scratch_len());
            for (k, slot) in w.spectrum.iter_mut().enumerate() {
                let mirror = if k == 0 { 0.0 } else { v[n - k] };
                *slot = Complex64::new(v[k], -mirror) * self.twiddles[k].conj();
            }
            // Exactly real in exact arithmetic; clear the rounding.
            w.spectrum[0].im = 0.0;
            if n % 2 == 0 {
                w.spectrum[n / 2].im = 0.0;
            }
            ifft.process_with_scratch(&mut w.spectrum, &mut w.real, &mut w.scratch)
                .expect("buffers sized by the plan");
            let half = |m: usize| 0.5 * (w.real[m] + v[0]);
            let mut out = vec![0.0; n];
            for m in 0..n.div_ceil(2) {
                out[2 * m] = half(m);
            }
            for m in 0..n / 2 {
                out[2 * m + 1] = half(n - 1 - m);
            }
            out
        })
    }
}

/// Per-thread FFT buffers. Reusing them keeps large transforms from
/// allocating (and page-faulting) fresh memory on every call.
#[derive(Default)]
struct Workspace {
    real: Vec<f64>,
    spectrum: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Workspace {
    fn size(&mut self, n: usize, scratch: usize) {
        let zero = Complex64::new(0.0, 0.0);
        self.real.resize(n, 0.0);
        self.spectrum.resize(n / 2 + 1, zero);
        self.scratch.resize(scratch, zero);
    }
}

thread_local! {
    static WORK: RefCell<Workspace> = RefCell::new(Workspace::default());
}

/// DCT-II, `ũ_k = Σ_j u_j cos(k(2j+1)π/2n)`.
pub fn dct2<T: Scalar>(u: &[T]) -> Result<Vec<T>> {
    DctPlan::new(u.len())?.dct2(u)
}

/// DCT-III, `u_j = Σ_k v_k cos(k(2j+1)π/2n)` (no halving of `v_0`).
pub fn dct3<T: Scalar>(v: &[T]) -> Result<Vec<T>> {
    DctPlan::new(v.len())?.dct3(v)
}

/// Diagonal of `AᵀA`: `[n, n/2, ..., n/2]`.
pub fn gram_diagonal(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| if k == 0 { n as f64 } else { n as f64 / 2.0 })
        .collect()
}
