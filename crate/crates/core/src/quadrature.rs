//! Quadrature for `∫_{-1}^{1} K(x) dx` with `K = g₁ + g₂ log|x−α|`, plus the
//! Fejér/graded-mesh baselines and the error metrics used to assess them.
//!
//! The enriched rule integrates the fitted interpolant exactly:
//! `I_{n₁,n₂}[K] = Σ a_j ξ₁,ⱼ + Σ b_k ξ₂,ₖ`.

use std::time::Instant;

use crate::chebyshev::cheb_points;
use crate::error::{Error, Result};
use crate::loginterp::{FitOptions, ReducedSystem, SingularInterpolant};
use crate::moments::{xi1, MomentTable};
use crate::scalar::Scalar;
use crate::transforms::{dct3, gram_diagonal};

/// Graded segments for the L¹ metric (× [`L1_NODES_PER_SEGMENT`] = 1024 points).
pub const L1_SEGMENTS: usize = 256;
pub const L1_NODES_PER_SEGMENT: usize = 4;
/// Grading exponent `q` for the baseline and the L¹ metric.
pub const DEFAULT_GRADING: f64 = 4.0;
pub const DEFAULT_NODES_PER_SEGMENT: usize = 4;
/// Samples in the max-norm metric.
pub const MAX_ERROR_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub n1: usize,
    pub n2: usize,
    pub function_evals: usize,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

/// Both halves of a split integral; `total.value` is their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult<T> {
    pub total: QuadratureResult<T>,
    /// Part over `[-1, α]`.
    pub left: QuadratureResult<T>,
    /// Part over `[α, 1]`.
    pub right: QuadratureResult<T>,
}

/// Exact integral of an interpolant over `[-1, 1]`.
pub fn integrate_interpolant<T: Scalar>(interp: &SingularInterpolant<T>) -> Result<T> {
    let moments = MomentTable::new(interp.alpha, interp.n1.max(interp.n2).max(1))?;
    let poly: T = interp
        .a
        .iter()
        .zip(&moments.xi1)
        .map(|(&a, &w)| a * w)
        .sum();
    let log: T = interp
        .b
        .iter()
        .zip(&moments.xi2)
        .map(|(&b, &w)| b * w)
        .sum();
    Ok(poly + log)
}

/// `I_{n₁,n₂}[f]` using `n₁+n₂` samples of `f` at Chebyshev points.
pub fn integrate_singular<T: Scalar>(
    f: impl Fn(f64) -> T,
    alpha: f64,
    n1: usize,
    n2: usize,
) -> Result<QuadratureResult<T>> {
    integrate_singular_with(f, alpha, n1, n2, &FitOptions::default())
}

pub fn integrate_singular_with<T: Scalar>(
    f: impl Fn(f64) -> T,
    alpha: f64,
    n1: usize,
    n2: usize,
    opts: &FitOptions,
) -> Result<QuadratureResult<T>> {
    let start = Instant::now();
    let system = ReducedSystem::new(alpha, n1, n2)?;
    let samples: Vec<T> = system.nodes().iter().map(|&x| f(x)).collect();
    let interp = system.fit(&samples, opts)?.interpolant;
    let value = integrate_interpolant(&interp)?;
    Ok(QuadratureResult {
        value,
        n1,
        n2,
        function_evals: samples.len(),
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Splits `[-1, 1]` at an interior `α` and maps each half onto `[-1, 1]` with
/// the singularity at `-1`:
///
/// ```text
/// ∫f = ∫_{-1}^{1} (1−α)/2 · f(α + (1−α)(t+1)/2) dt + ∫_{-1}^{1} (1+α)/2 · f(α − (1+α)(t+1)/2) dt
/// ```
pub fn split_integrate<T: Scalar>(
    f: impl Fn(f64) -> T,
    alpha: f64,
    n1: usize,
    n2: usize,
) -> Result<SplitResult<T>> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if alpha == -1.0 || alpha == 1.0 {
        return Err(Error::UseDirectRule(alpha));
    }
    let start = Instant::now();
    let (hr, hl) = ((1.0 - alpha) / 2.0, (1.0 + alpha) / 2.0);
    let right = integrate_singular(|t| f(alpha + hr * (t + 1.0)) * hr, -1.0, n1, n2)?;
    let left = integrate_singular(|t| f(alpha - hl * (t + 1.0)) * hl, -1.0, n1, n2)?;
    let total = QuadratureResult {
        value: left.value + right.value,
        n1,
        n2,
        function_evals: left.function_evals + right.function_evals,
        elapsed: start.elapsed().as_secs_f64(),
    };
    Ok(SplitResult { total, left, right })
}

/// Fejér's first rule: nodes `cheb_points(m)`, weights `A D⁻¹ ξ₁`.
pub fn fejer1(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let nodes = cheb_points(m)?.into_points();
    let scaled: Vec<f64> = gram_diagonal(m)
        .into_iter()
        .enumerate()
        .map(|(k, d)| xi1(k) / d)
        .collect();
    let weights = dct3(&scaled)?;
    Ok((nodes, weights))
}

/// Breakpoints `(j/n)^q`, `j = 0..=n`, on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMesh {
    breakpoints: Vec<f64>,
}

impl GradedMesh {
    pub fn new(segments: usize, q: f64) -> Result<Self> {
        if segments == 0 {
            return Err(Error::InvalidSize("graded mesh needs >= 1 segment".into()));
        }
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "grading exponent must be > 0, got {q}"
            )));
        }
        let n = segments as f64;
        let breakpoints = (0..=segments).map(|j| (j as f64 / n).powf(q)).collect();
        Ok(Self { breakpoints })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> usize {
        self.breakpoints.len() - 1
    }
}

/// Composite Fejér-1 over a graded mesh on the interval between
/// `singular_end` and `other_end`, clustered toward `singular_end`.
/// Returns `∫` over that interval with its natural (unsigned) orientation.
pub fn graded_fejer<T: Scalar>(
    f: impl Fn(f64) -> T,
    segments: usize,
    per_segment: usize,
    q: f64,
    singular_end: f64,
    other_end: f64,
) -> Result<T> {
    let mesh = GradedMesh::new(segments, q)?;
    let (nodes, weights) = fejer1(per_segment)?;
    let span = other_end - singular_end;
    let mut total = T::zero();
    for w in mesh.breakpoints().windows(2) {
        let h = w[1] - w[0];
        let seg: T = nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &wt)| {
                let s = w[0] + 0.5 * h * (x + 1.0);
                f(singular_end + span * s) * wt
            })
            .sum();
        total += seg * (0.5 * h);
    }
    Ok(total * span.abs())
}

/// Graded-mesh baseline on `[-1, 1]`: one graded interval when `α = ±1`,
/// otherwise `segments` graded toward `α` on each side.
pub fn graded_baseline<T: Scalar>(
    f: impl Fn(f64) -> T,
    alpha: f64,
    segments: usize,
    per_segment: usize,
    q: f64,
) -> Result<T> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if alpha == -1.0 {
        graded_fejer(&f, segments, per_segment, q, -1.0, 1.0)
    } else if alpha == 1.0 {
        graded_fejer(&f, segments, per_segment, q, 1.0, -1.0)
    } else {
        Ok(graded_fejer(&f, segments, per_segment, q, alpha, -1.0)?
            + graded_fejer(&f, segments, per_segment, q, alpha, 1.0)?)
    }
}

/// `∫_{-1}^{1} |f|` on a graded Fejér mesh with `segments` × 4 nodes in total,
/// graded toward `α` (split at `α` when interior, half the segments per side).
pub fn l1_norm<T: Scalar>(f: impl Fn(f64) -> T, alpha: f64, segments: usize) -> Result<f64> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let g = |x: f64| f(x).modulus();
    let q = DEFAULT_GRADING;
    let p = L1_NODES_PER_SEGMENT;
    if alpha == -1.0 {
        graded_fejer(g, segments, p, q, -1.0, 1.0)
    } else if alpha == 1.0 {
        graded_fejer(g, segments, p, q, 1.0, -1.0)
    } else {
        let half = (segments / 2).max(1);
        Ok(graded_fejer(g, half, p, q, alpha, -1.0)? + graded_fejer(g, half, p, q, alpha, 1.0)?)
    }
}

/// `∫_{-1}^{1} |f − g|` with the 1024-point graded Fejér metric.
pub fn l1_error<T: Scalar>(f: impl Fn(f64) -> T, g: impl Fn(f64) -> T, alpha: f64) -> Result<f64> {
    l1_norm(|x| f(x) - g(x), alpha, L1_SEGMENTS)
}

/// `max |f − g|` over `x_i = −1 + 2i/100000`, `i = 1..=100000`.
/// Points where either side is not finite (a singular point) are skipped.
pub fn max_error<T: Scalar>(f: impl Fn(f64) -> T, g: impl Fn(f64) -> T) -> f64 {
    let m = MAX_ERROR_SAMPLES;
    (1..=m)
        .map(|i| {
            let x = -1.0 + 2.0 * i as f64 / m as f64;
            (f(x) - g(x)).modulus()
        })
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn constant_is_exact() {
        let r = integrate_singular(|_| 1.0, -1.0, 2, 1).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        assert_eq!(r.function_evals, 3);
    }

    #[test]
    fn log_is_exact() {
        let r = integrate_singular(|x: f64| (x + 1.0).ln(), -1.0, 1, 1).unwrap();
        assert!((r.value - (2.0 * LN2 - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn split_examples() {
        let r = split_integrate(|_| 1.0, 0.5, 3, 1).unwrap();
        assert!((r.total.value - 2.0).abs() < 1e-14);
        assert_eq!(r.total.function_evals, 8);
        assert!((r.left.value - 1.5).abs() < 1e-14);

        let a = 0.3f64;
        let exact = (1.0 - a) * (1.0 - a).ln() + (1.0 + a) * (1.0 + a).ln() - 2.0;
        let r = split_integrate(|x: f64| (x - a).abs().ln(), a, 2, 2).unwrap();
        assert!((r.total.value - exact).abs() < 1e-12);

        assert!(matches!(
            split_integrate(|_| 1.0, -1.0, 2, 1),
            Err(Error::UseDirectRule(_))
        ));
        assert!(split_integrate(|_| 1.0, 2.0, 2, 1).is_err());
    }

    #[test]
    fn fejer_small_rules() {
        let (x, w) = fejer1(1).unwrap();
        assert_eq!(x, vec![0.0]);
        assert!((w[0] - 2.0).abs() < 1e-15);
        let (x, w) = fejer1(3).unwrap();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-15);
        let m1: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
        let m2: f64 = x.iter().zip(&w).map(|(a, b)| a * a * b).sum();
        assert!(m1.abs() < 1e-15);
        assert!((m2 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn fejer_exp() {
        let (x, w) = fejer1(16).unwrap();
        let q: f64 = x.iter().zip(&w).map(|(a, b)| a.exp() * b).sum();
        let e = std::f64::consts::E;
        assert!((q - (e - 1.0 / e)).abs() < 1e-12);
    }

    #[test]
    fn fejer_exactness_degree() {
        for m in [2, 5, 16, 33] {
            let (x, w) = fejer1(m).unwrap();
            for p in 0..m {
                let q: f64 = x.iter().zip(&w).map(|(a, b)| a.powi(p as i32) * b).sum();
                let exact = if p % 2 == 1 {
                    0.0
                } else {
                    2.0 / (p + 1) as f64
                };
                assert!((q - exact).abs() < 1e-13, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn graded_mesh_shape() {
        let m = GradedMesh::new(8, 4.0).unwrap();
        let b = m.breakpoints();
        assert_eq!(b.first(), Some(&0.0));
        assert_eq!(b.last(), Some(&1.0));
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(GradedMesh::new(0, 4.0).is_err());
        assert!(GradedMesh::new(4, 0.0).is_err());
    }

    #[test]
    fn graded_fejer_constant_and_log() {
        let v = graded_fejer(|_| 1.0, 7, 3, 2.0, 0.25, -0.5).unwrap();
        assert!((v - 0.75).abs() < 1e-14);
        let v = graded_fejer(|x: f64| x.ln(), 32, 4, 4.0, 0.0, 1.0).unwrap();
        assert!((v + 1.0).abs() < 1e-6);
    }

    #[test]
    fn l1_examples() {
        let f = |x: f64| x.sin();
        assert!(l1_error(f, f, -1.0).unwrap() < 1e-14);
        let v = l1_error(|x: f64| x, |_| 0.0, 0.0).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let v = l1_error(|x: f64| x * x, |_| 0.0, -1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn max_error_examples() {
        let f = |x: f64| x.cos();
        assert_eq!(max_error(f, f), 0.0);
        assert!((max_error(|x: f64| x * x, |_| 0.0) - 1.0).abs() < 1e-15);
    }
}
