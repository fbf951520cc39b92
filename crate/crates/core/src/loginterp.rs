//! Interpolation in `span{T_j} ∪ span{T_k·log|x−α|}` at first-kind Chebyshev points.
//!
//! For `n = n₁ + n₂` nodes the interpolant is
//!
//! ```text
//! K_{n₁,n₂}(x) = Σ_{j<n₁} a_j T_j(x) + log|x−α| Σ_{k<n₂} b_k T_k(x)
//! ```
//!
//! Writing `A` for the Chebyshev Vandermonde matrix and `P = diag(log|x_j−α|)`,
//! the interpolation conditions `A₁:ₙ₁ a + P A₁:ₙ₂ b = k` decouple because
//! `AᵀA = D` is diagonal: `b` solves the `n₂×n₂` system
//! `(Aₙ₁₊₁:ₙ)ᵀ P A₁:ₙ₂ b = (Aₙ₁₊₁:ₙ)ᵀ k`, and then `â = D⁻¹Aᵀ(k − PAb̂)`.
//! Every product with `A` or `Aᵀ` is a DCT, so one operator application costs
//! `O(n log n)` and the whole fit costs `O(n₂ n log n)`.

use nalgebra::DMatrix;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::chebyshev::{cheb_points, clenshaw_unchecked};
use crate::error::{Error, Result};
use crate::krylov::{gmres, DenseMatrix, GmresOptions, LinearMap, SolveStats};
use crate::quadrature::{l1_norm, L1_SEGMENTS};
use crate::scalar::{max_modulus, norm2, Scalar};
use crate::transforms::{gram_diagonal, DctPlan};

/// Minimum distance between `α` and every node.
pub const COLLISION_TOL: f64 = 1e-12;

/// Interpolation conditions must hold to this multiple of `max|samples|`.
pub const INTERPOLATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub gmres: GmresOptions,
    /// When GMRES stops above its tolerance (a rounding floor rather than a
    /// singular system), the fit is still accepted if the interpolation
    /// conditions hold to this multiple of `max|samples|`.
    pub accept_residual: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            gmres: GmresOptions::default(),
            accept_residual: 1e-10,
        }
    }
}

/// The fitted function `Σ a_j T_j + log|x−α| Σ b_k T_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularInterpolant<T> {
    pub alpha: f64,
    pub n1: usize,
    pub n2: usize,
    pub a: Vec<T>,
    pub b: Vec<T>,
}

impl<T: Scalar> SingularInterpolant<T> {
    pub fn new(alpha: f64, a: Vec<T>, b: Vec<T>) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            alpha,
            n1: a.len(),
            n2: b.len(),
            a,
            b,
        })
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn evaluate(&self, x: f64) -> Result<T> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::OutsideDomain(x));
        }
        if self.n2 > 0 && x == self.alpha {
            return Err(Error::EvaluationAtSingularPoint(x));
        }
        Ok(self.value(x))
    }

    /// [`evaluate`](Self::evaluate) without the domain checks.
    #[inline]
    pub fn value(&self, x: f64) -> T {
        let poly = clenshaw_unchecked(&self.a, x);
        if self.b.is_empty() {
            return poly;
        }
        poly + clenshaw_unchecked(&self.b, x) * (x - self.alpha).abs().ln()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// Nodes, log weights and DCT plan for one `(α, n₁, n₂)`.
///
/// As a [`LinearMap`] it is the reduced operator `(Aₙ₁₊₁:ₙ)ᵀ P A₁:ₙ₂`.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    alpha: f64,
    n1: usize,
    n2: usize,
    nodes: Vec<f64>,
    logs: Vec<f64>,
    plan: DctPlan,
}

impl ReducedSystem {
    pub fn new(alpha: f64, n1: usize, n2: usize) -> Result<Self> {
        check_alpha(alpha)?;
        let n = n1 + n2;
        if n == 0 {
            return Err(Error::InvalidSize("n1 + n2 must be >= 1".into()));
        }
        let grid = cheb_points(n)?;
        let (node, distance) = grid.nearest(alpha);
        if n2 > 0 && distance < COLLISION_TOL {
            return Err(Error::SingularityOnGrid {
                alpha,
                node,
                distance,
            });
        }
        let nodes = grid.into_points();
        // P is unused without log terms; zeros keep 0·P finite when α sits on a node.
        let logs = if n2 == 0 {
            vec![0.0; n]
        } else {
            nodes.iter().map(|&x| (x - alpha).abs().ln()).collect()
        };
        Ok(Self {
            alpha,
            n1,
            n2,
            nodes,
            logs,
            plan: DctPlan::new(n)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn n1(&self) -> usize {
        self.n1
    }
    pub fn n2(&self) -> usize {
        self.n2
    }
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    /// Diagonal of `P`.
    pub fn log_weights(&self) -> &[f64] {
        &self.logs
    }

    fn pad<T: Scalar>(&self, head: &[T]) -> Vec<T> {
        let mut v = vec![T::zero(); self.n()];
        v[..head.len()].copy_from_slice(head);
        v
    }

    /// `(Aₙ₁₊₁:ₙ)ᵀ k`.
    pub fn rhs<T: Scalar>(&self, samples: &[T]) -> Result<Vec<T>> {
        self.check_samples(samples)?;
        let mut t = self.plan.dct2(samples)?;
        Ok(t.split_off(self.n1))
    }

    fn check_samples<T>(&self, samples: &[T]) -> Result<()> {
        if samples.len() != self.n() {
            return Err(Error::InvalidSize(format!(
                "expected {} samples, got {}",
                self.n(),
                samples.len()
            )));
        }
        Ok(())
    }

    /// Polynomial coefficients from samples and log coefficients,
    /// `â = D⁻¹Aᵀ(k − PAb̂)`, truncated to `n₁` entries.
    pub fn recover_a<T: Scalar>(&self, samples: &[T], b: &[T]) -> Result<Vec<T>> {
        self.check_samples(samples)?;
        let ab = self.plan.dct3(&self.pad(b))?;
        let r: Vec<T> = samples
            .iter()
            .zip(ab)
            .zip(&self.logs)
            .map(|((&k, v), &p)| k - v * p)
            .collect();
        let d = gram_diagonal(self.n());
        let a_hat = self.plan.dct2(&r)?;
        Ok(a_hat
            .into_iter()
            .zip(d)
            .take(self.n1)
            .map(|(v, dk)| v * (1.0 / dk))
            .collect())
    }

    /// Values of `Σ a_j T_j + P Σ b_k T_k` at the nodes.
    pub fn values_on_grid<T: Scalar>(&self, a: &[T], b: &[T]) -> Result<Vec<T>> {
        let pa = self.plan.dct3(&self.pad(a))?;
        let pb = self.plan.dct3(&self.pad(b))?;
        Ok(pa
            .into_iter()
            .zip(pb)
            .zip(&self.logs)
            .map(|((u, v), &p)| u + v * p)
            .collect())
    }

    pub fn fit<T: Scalar>(&self, samples: &[T], opts: &FitOptions) -> Result<FitOutcome<T>> {
        self.check_samples(samples)?;
        if self.n2 > self.n1 {
            log::warn!(
                "n2 = {} exceeds n1 = {}; the reduced system may be unstable",
                self.n2,
                self.n1
            );
        }
        let (b, stats) = if self.n2 == 0 {
            (Vec::new(), None)
        } else {
            let rhs = self.rhs(samples)?;
            match gmres(self, &rhs, opts.gmres) {
                Ok((b, stats)) => (b, Some(stats)),
                Err(Error::SingularOperator { residual, .. }) => {
                    return Err(Error::NotSolvable {
                        relative_residual: relative(residual, norm2(&rhs)),
                    })
                }
                Err(e) => return Err(e),
            }
        };
        let a = self.recover_a(samples, &b)?;
        let on_grid = self.values_on_grid(&a, &b)?;
        let worst = samples
            .iter()
            .zip(&on_grid)
            .map(|(&k, &v)| (k - v).modulus())
            .fold(0.0f64, f64::max);
        let interpolation_residual = relative(worst, max_modulus(samples));
        if let Some(stats) = stats.as_ref().filter(|s| !s.converged) {
            // The reduced right-hand side is a projection of the samples and
            // can be far smaller than they are, so its relative residual may
            // stall well above the GMRES tolerance. Judge the solve by the
            // interpolation conditions instead.
            if !(interpolation_residual <= opts.accept_residual) {
                return Err(Error::NotSolvable {
                    relative_residual: interpolation_residual,
                });
            }
            log::debug!(
                "GMRES stopped at residual {:e} after {} iterations; interpolation residual {interpolation_residual:e} accepted",
                stats.final_residual,
                stats.iterations
            );
        }
        if interpolation_residual > INTERPOLATION_TOL {
            log::warn!(
                "interpolation conditions hold only to {interpolation_residual:e} (alpha = {}, n1 = {}, n2 = {})",
                self.alpha,
                self.n1,
                self.n2
            );
        }
        Ok(FitOutcome {
            interpolant: SingularInterpolant {
                alpha: self.alpha,
                n1: self.n1,
                n2: self.n2,
                a,
                b,
            },
            solve: stats,
            interpolation_residual,
        })
    }
}

fn relative(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

impl<T: Scalar> LinearMap<T> for ReducedSystem {
    fn dim(&self) -> usize {
        self.n2
    }

    fn apply(&self, u: &[T]) -> Result<Vec<T>> {
        if u.len() != self.n2 {
            return Err(Error::InvalidSize(format!(
                "reduced operator expects {} entries, got {}",
                self.n2,
                u.len()
            )));
        }
        let mut w = self.plan.dct3(&self.pad(u))?;
        for (wj, &p) in w.iter_mut().zip(&self.logs) {
            *wj = *wj * p;
        }
        let mut y = self.plan.dct2(&w)?;
        Ok(y.split_off(self.n1))
    }
}

/// Result of a fit together with solver diagnostics.
#[derive(Debug, Clone)]
pub struct FitOutcome<T> {
    pub interpolant: SingularInterpolant<T>,
    /// `None` when `n₂ = 0` (no reduced system).
    pub solve: Option<SolveStats>,
    /// `max_j |K(x_j) − K_{n₁,n₂}(x_j)| / max_j |K(x_j)|`.
    pub interpolation_residual: f64,
}

/// Applies the reduced operator once.
pub fn reduced_matvec<T: Scalar>(u: &[T], alpha: f64, n1: usize, n2: usize) -> Result<Vec<T>> {
    ReducedSystem::new(alpha, n1, n2)?.apply(u)
}

/// Fits from samples at `cheb_points(n₁+n₂)`.
pub fn fit<T: Scalar>(
    samples: &[T],
    alpha: f64,
    n1: usize,
    n2: usize,
    opts: &FitOptions,
) -> Result<SingularInterpolant<T>> {
    Ok(ReducedSystem::new(alpha, n1, n2)?
        .fit(samples, opts)?
        .interpolant)
}

/// Samples `f` at the Chebyshev grid and fits.
pub fn fit_fn<T: Scalar>(
    f: impl Fn(f64) -> T,
    alpha: f64,
    n1: usize,
    n2: usize,
    opts: &FitOptions,
) -> Result<SingularInterpolant<T>> {
    let system = ReducedSystem::new(alpha, n1, n2)?;
    let samples: Vec<T> = system.nodes().iter().map(|&x| f(x)).collect();
    Ok(system.fit(&samples, opts)?.interpolant)
}

/// `T_k(x_j)` from the trigonometric form.
fn cheb_entry(k: usize, j: usize, n: usize) -> f64 {
    let m = (k * (2 * j + 1)) % (4 * n);
    (std::f64::consts::PI * m as f64 / (2 * n) as f64).cos()
}

/// The reduced matrix built entry by entry from its definition.
pub fn reduced_matrix_dense(alpha: f64, n1: usize, n2: usize) -> Result<DenseMatrix<f64>> {
    let system = ReducedSystem::new(alpha, n1, n2)?;
    let n = system.n();
    let rows = (0..n2)
        .map(|r| {
            (0..n2)
                .map(|c| {
                    (0..n)
                        .map(|j| cheb_entry(n1 + r, j, n) * system.logs[j] * cheb_entry(c, j, n))
                        .sum()
                })
                .collect()
        })
        .collect();
    DenseMatrix::from_rows(rows)
}

/// Solves the full `n×n` collocation system `[A₁:ₙ₁ | P A₁:ₙ₂] [a; b] = k`
/// by dense LU. Independent of the DCT/GMRES route; `O(n³)`.
pub fn fit_dense<T: Scalar>(
    samples: &[T],
    alpha: f64,
    n1: usize,
    n2: usize,
) -> Result<SingularInterpolant<T>> {
    let system = ReducedSystem::new(alpha, n1, n2)?;
    system.check_samples(samples)?;
    let n = system.n();
    let rows = (0..n)
        .map(|j| {
            (0..n)
                .map(|c| {
                    let v = if c < n1 {
                        cheb_entry(c, j, n)
                    } else {
                        system.logs[j] * cheb_entry(c - n1, j, n)
                    };
                    T::from_real(v)
                })
                .collect()
        })
        .collect();
    let coeffs = DenseMatrix::from_rows(rows)?.solve(samples)?;
    let b = coeffs[n1..].to_vec();
    let mut a = coeffs;
    a.truncate(n1);
    SingularInterpolant::new(alpha, a, b)
}

/// Smallest and largest singular values of the reduced matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invertibility {
    pub invertible: bool,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

impl Invertibility {
    pub fn condition(&self) -> f64 {
        if self.sigma_min == 0.0 {
            f64::INFINITY
        } else {
            self.sigma_max / self.sigma_min
        }
    }
}

/// Builds the reduced matrix from unit-vector products and inspects its SVD.
/// Singular means `σ_min < 1e-13·σ_max`.
pub fn check_invertibility(alpha: f64, n1: usize, n2: usize) -> Result<Invertibility> {
    let system = ReducedSystem::new(alpha, n1, n2)?;
    if n2 == 0 {
        return Ok(Invertibility {
            invertible: true,
            sigma_min: 1.0,
            sigma_max: 1.0,
        });
    }
    let dense = DenseMatrix::<f64>::from_map(&system)?;
    let m = DMatrix::from_fn(n2, n2, |r, c| dense.get(r, c));
    let sv = m.singular_values();
    let sigma_max = sv.iter().cloned().fold(0.0f64, f64::max);
    let sigma_min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(Invertibility {
        invertible: sigma_min >= 1e-13 * sigma_max && sigma_max > 0.0,
        sigma_min,
        sigma_max,
    })
}

/// `Σ_j ‖ℓ_j‖₁` over the Lagrange-type basis, measured with the graded
/// Fejér L¹ rule (`segments` × 4 nodes).
pub fn lebesgue_l1_with(alpha: f64, n1: usize, n2: usize, segments: usize) -> Result<f64> {
    let system = ReducedSystem::new(alpha, n1, n2)?;
    let n = system.n();
    let opts = FitOptions::default();
    let mut total = 0.0;
    let mut unit = vec![0.0; n];
    for j in 0..n {
        unit[j] = 1.0;
        let basis = system.fit(&unit, &opts)?.interpolant;
        unit[j] = 0.0;
        total += l1_norm(|x| basis.value(x), alpha, segments)?;
    }
    Ok(total)
}

pub fn lebesgue_l1(alpha: f64, n1: usize, n2: usize) -> Result<f64> {
    lebesgue_l1_with(alpha, n1, n2, L1_SEGMENTS)
}

#[derive(Serialize, Deserialize)]
struct InterpolantJson {
    alpha: f64,
    n1: usize,
    n2: usize,
    a: Vec<[f64; 2]>,
    b: Vec<[f64; 2]>,
}

impl<T: Scalar> Serialize for SingularInterpolant<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = |v: &[T]| v.iter().map(|x| [x.re(), x.im()]).collect();
        InterpolantJson {
            alpha: self.alpha,
            n1: self.n1,
            n2: self.n2,
            a: pairs(&self.a),
            b: pairs(&self.b),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for SingularInterpolant<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = InterpolantJson::deserialize(d)?;
        if raw.a.len() != raw.n1 || raw.b.len() != raw.n2 {
            return Err(de::Error::custom(format!(
                "coefficient lengths ({}, {}) do not match n1 = {}, n2 = {}",
                raw.a.len(),
                raw.b.len(),
                raw.n1,
                raw.n2
            )));
        }
        let convert = |v: Vec<[f64; 2]>| -> std::result::Result<Vec<T>, D::Error> {
            v.into_iter()
                .map(|[re, im]| {
                    if !T::IS_COMPLEX && im != 0.0 {
                        Err(de::Error::custom(
                            "complex coefficient in a real interpolant",
                        ))
                    } else {
                        Ok(T::from_parts(re, im))
                    }
                })
                .collect()
        };
        SingularInterpolant::new(raw.alpha, convert(raw.a)?, convert(raw.b)?)
            .map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn opts() -> FitOptions {
        FitOptions::default()
    }

    #[test]
    fn reduced_matvec_matches_scalar_sum() {
        // n1 = 3, n2 = 1, alpha = -1: Σ_j T3(x_j) log(x_j + 1) T0(x_j).
        let nodes = cheb_points(4).unwrap();
        let expect: f64 = nodes
            .points()
            .iter()
            .map(|&x| (3.0 * x.acos()).cos() * (x + 1.0).ln())
            .sum();
        let got = reduced_matvec(&[1.0], -1.0, 3, 1).unwrap();
        assert!((got[0] - expect).abs() < 1e-12 * expect.abs().max(1.0));
    }

    #[test]
    fn reduced_matvec_zero_and_dense() {
        assert_eq!(
            reduced_matvec(&[0.0, 0.0], 0.3, 2, 2).unwrap(),
            vec![0.0, 0.0]
        );
        let dense = reduced_matrix_dense(0.3, 2, 2).unwrap();
        let u = [0.7, -1.3];
        let fast = reduced_matvec(&u, 0.3, 2, 2).unwrap();
        let slow = dense.apply(&u).unwrap();
        for (p, q) in fast.iter().zip(&slow) {
            assert!((p - q).abs() < 1e-12 * q.abs().max(1.0));
        }
    }

    #[test]
    fn collision_rejected() {
        // n = 3 has a node at 0.
        let err = ReducedSystem::new(0.0, 2, 1).unwrap_err();
        assert!(matches!(err, Error::SingularityOnGrid { .. }));
        assert!(reduced_matvec(&[1.0], 0.0, 2, 1).is_err());
        let x0 = (PI / 8.0).cos();
        assert!(ReducedSystem::new(x0, 2, 2).is_err());
        assert!(matches!(
            ReducedSystem::new(1.5, 2, 2),
            Err(Error::AlphaOutOfRange(_))
        ));
    }

    #[test]
    fn fit_pure_log() {
        let f = |x: f64| (x + 1.0).abs().ln();
        let interp = fit_fn(f, -1.0, 1, 1, &opts()).unwrap();
        assert!(interp.a[0].abs() < 1e-12);
        assert!((interp.b[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_pure_polynomial() {
        let interp = fit_fn(|x: f64| x, -1.0, 2, 1, &opts()).unwrap();
        assert!(interp.a[0].abs() < 1e-12);
        assert!((interp.a[1] - 1.0).abs() < 1e-12);
        assert!(interp.b[0].abs() < 1e-12);
    }

    #[test]
    fn evaluate_examples() {
        let c = SingularInterpolant::new(0.2, vec![1.0], vec![]).unwrap();
        assert_eq!(c.evaluate(0.2).unwrap(), 1.0);
        assert_eq!(c.evaluate(-0.9).unwrap(), 1.0);
        let l = SingularInterpolant::new(-1.0, vec![0.0], vec![1.0]).unwrap();
        assert_eq!(l.evaluate(0.0).unwrap(), 0.0);
        assert!(matches!(
            l.evaluate(-1.0),
            Err(Error::EvaluationAtSingularPoint(_))
        ));
        assert!(matches!(l.evaluate(1.1), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn fitted_k1_off_grid() {
        let k1 = |x: f64| x.sin() + x.exp() * (x + 1.0).ln();
        let interp = fit_fn(k1, -1.0, 6, 2, &opts()).unwrap();
        assert!((interp.evaluate(0.5).unwrap() - k1(0.5)).abs() < 1e-3);
    }

    #[test]
    fn interpolation_conditions_hold() {
        let k1 = |x: f64| x.sin() + x.exp() * (x - 0.3).abs().ln();
        let system = ReducedSystem::new(0.3, 13, 3).unwrap();
        let samples: Vec<f64> = system.nodes().iter().map(|&x| k1(x)).collect();
        let out = system.fit(&samples, &opts()).unwrap();
        assert!(out.interpolation_residual < INTERPOLATION_TOL);
        let scale = max_modulus(&samples);
        for (&x, &k) in system.nodes().iter().zip(&samples) {
            assert!((out.interpolant.evaluate(x).unwrap() - k).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn complex_samples() {
        let f = |x: f64| Complex64::new(x * x * x - x, 2.0 * (x + 1.0).ln());
        let interp = fit_fn(f, -1.0, 10, 2, &opts()).unwrap();
        assert!((interp.b[0] - Complex64::new(0.0, 2.0)).norm() < 1e-10);
        assert!(interp.b[1].norm() < 1e-10);
        let v = interp.evaluate(0.25).unwrap();
        assert!((v - f(0.25)).norm() < 1e-10);
    }

    #[test]
    fn fit_agrees_with_dense() {
        let f = |x: f64| (2.0 * x).cos() + (1.0 + x * x) * (x - 0.6).abs().ln();
        // Kept to configurations whose reduced system is well conditioned;
        // coefficient agreement degrades like cond·eps otherwise.
        for (n1, n2) in [(5, 3), (13, 1), (14, 2), (6, 2), (3, 5)] {
            let system = ReducedSystem::new(0.6, n1, n2).unwrap();
            let samples: Vec<f64> = system.nodes().iter().map(|&x| f(x)).collect();
            let fast = system.fit(&samples, &opts()).unwrap().interpolant;
            let slow = fit_dense(&samples, 0.6, n1, n2).unwrap();
            for (p, q) in fast
                .a
                .iter()
                .chain(&fast.b)
                .zip(slow.a.iter().chain(&slow.b))
            {
                assert!((p - q).abs() < 1e-10, "n1={n1} n2={n2}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn invertibility_examples() {
        let inv = check_invertibility(-1.0, 3, 1).unwrap();
        let entry = reduced_matvec(&[1.0], -1.0, 3, 1).unwrap()[0];
        assert!(inv.invertible);
        assert!((inv.sigma_min - entry.abs()).abs() < 1e-12 * entry.abs());
        assert!(check_invertibility(0.5, 4, 0).unwrap().invertible);
        let inv = check_invertibility(0.1, 6, 2).unwrap();
        assert!(inv.sigma_min > 0.0 && inv.sigma_min <= inv.sigma_max);
    }

    #[test]
    fn lebesgue_constant_polynomial() {
        let l = lebesgue_l1(0.0, 1, 0).unwrap();
        assert!((l - 2.0).abs() < 1e-12);
    }

    #[test]
    fn large_fit_accepted_on_residual() {
        // GMRES stalls a little above its tolerance here; the fit still
        // interpolates the samples.
        let k1 = |x: f64| x.sin() + x.exp() * (x + 1.0).ln();
        let system = ReducedSystem::new(-1.0, 2045, 3).unwrap();
        let samples: Vec<f64> = system.nodes().iter().map(|&x| k1(x)).collect();
        let out = system.fit(&samples, &opts()).unwrap();
        assert!(out.interpolation_residual <= opts().accept_residual);
        assert!((out.interpolant.evaluate(0.3).unwrap() - k1(0.3)).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let interp = SingularInterpolant::new(
            -1.0,
            vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)],
            vec![Complex64::new(0.25, -1.0)],
        )
        .unwrap();
        let s = serde_json::to_string(&interp).unwrap();
        assert_eq!(
            s,
            r#"{"alpha":-1.0,"n1":2,"n2":1,"a":[[1.0,2.0],[-0.5,0.0]],"b":[[0.25,-1.0]]}"#
        );
        let back: SingularInterpolant<Complex64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, interp);
        assert!(serde_json::from_str::<SingularInterpolant<f64>>(&s).is_err());
        let bad = r#"{"alpha":0.0,"n1":2,"n2":0,"a":[[1.0,0.0]],"b":[]}"#;
        assert!(serde_json::from_str::<SingularInterpolant<f64>>(bad).is_err());
    }
}
