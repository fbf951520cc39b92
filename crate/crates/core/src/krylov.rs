//! Matrix-free GMRES and a dense direct fallback.

use crate::error::{Error, Result};
use crate::scalar::{norm2, Scalar};

/// A square linear operator known only through its action on vectors.
pub trait LinearMap<T: Scalar> {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[T]) -> Result<Vec<T>>;
}

impl<T: Scalar, M: LinearMap<T> + ?Sized> LinearMap<T> for &M {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        (**self).apply(x)
    }
}

/// Adapts a closure into a [`LinearMap`].
pub struct FnMap<F> {
    dim: usize,
    f: F,
}

impl<F> FnMap<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<T: Scalar, F: Fn(&[T]) -> Result<Vec<T>>> LinearMap<T> for FnMap<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        (self.f)(x)
    }
}

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSize("matrix must be square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Materializes `op` by applying it to each unit vector.
    pub fn from_map(op: &impl LinearMap<T>) -> Result<Self> {
        let n = op.dim();
        let mut data = vec![T::zero(); n * n];
        let mut e = vec![T::zero(); n];
        for col in 0..n {
            e[col] = T::from_real(1.0);
            let y = op.apply(&e)?;
            e[col] = T::zero();
            if y.len() != n {
                return Err(Error::InvalidSize(format!(
                    "operator returned {} entries, expected {n}",
                    y.len()
                )));
            }
            for (row, v) in y.into_iter().enumerate() {
                data[row * n + col] = v;
            }
        }
        Ok(Self { n, data })
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.n + col]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Solves `self · x = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        if rhs.len() != n {
            return Err(Error::InvalidSize(format!(
                "rhs has {} entries, expected {n}",
                rhs.len()
            )));
        }
        let mut a = self.data.clone();
        let mut x = rhs.to_vec();
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.modulus()));
        for k in 0..n {
            let (piv, piv_abs) =
                (k..n)
                    .map(|r| (r, a[r * n + k].modulus()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if piv_abs <= f64::EPSILON * scale * n as f64 || piv_abs == 0.0 {
                return Err(Error::SingularOperator {
                    iterations: 0,
                    residual: norm2(rhs),
                });
            }
            if piv != k {
                for c in 0..n {
                    a.swap(k * n + c, piv * n + c);
                }
                x.swap(k, piv);
            }
            let d = a[k * n + k];
            for r in k + 1..n {
                let f = a[r * n + k] / d;
                if f.modulus() == 0.0 {
                    continue;
                }
                for c in k..n {
                    let akc = a[k * n + c];
                    a[r * n + c] -= f * akc;
                }
                let xk = x[k];
                x[r] -= f * xk;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for c in k + 1..n {
                s -= a[k * n + c] * x[c];
            }
            x[k] = s / a[k * n + k];
        }
        Ok(x)
    }
}

impl<T: Scalar> LinearMap<T> for DenseMatrix<T> {
    fn dim(&self) -> usize {
        self.n
    }
    fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return Err(Error::InvalidSize(format!(
                "vector has {} entries, expected {}",
                x.len(),
                self.n
            )));
        }
        Ok(self
            .data
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }
}

/// Builds the dense matrix of `op` and solves directly.
pub fn dense_solve<T: Scalar>(op: &impl LinearMap<T>, rhs: &[T]) -> Result<Vec<T>> {
    DenseMatrix::from_map(op)?.solve(rhs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresOptions {
    /// Normwise backward-error target, `‖op(x) − rhs‖ ≤ tol·(‖op‖·‖x‖ + ‖rhs‖)`,
    /// with `‖op‖` estimated by the largest `‖op(v)‖` over the unit Krylov
    /// vectors. A residual relative to `‖rhs‖` alone cannot drop below
    /// `ε·‖op‖·‖x‖/‖rhs‖`, which is large when the solution is.
    pub tol: f64,
    /// Iteration cap; `None` means `max(2m, 50)`.
    pub max_iter: Option<usize>,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: None,
        }
    }
}

pub const DEFAULT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    /// Absolute residual norm `‖op(x) − rhs‖₂` of the returned iterate.
    pub final_residual: f64,
    pub converged: bool,
    /// Residual norm before the first iteration and after each one.
    pub residual_history: Vec<f64>,
}

fn dot<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter().zip(v).map(|(&a, &b)| a.conj() * b).sum()
}

fn axpy<T: Scalar>(y: &mut [T], a: T, x: &[T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn residual<T: Scalar>(op: &impl LinearMap<T>, x: &[T], rhs: &[T]) -> Result<Vec<T>> {
    let ax = op.apply(x)?;
    Ok(rhs.iter().zip(ax).map(|(&b, y)| b - y).collect())
}

/// Rotation zeroing `b` in `[a; b]`; `c` is real.
fn givens<T: Scalar>(a: T, b: T) -> (f64, T) {
    let (abs_a, abs_b) = (a.modulus(), b.modulus());
    if abs_b == 0.0 {
        return (1.0, T::zero());
    }
    if abs_a == 0.0 {
        return (0.0, T::from_real(1.0));
    }
    let t = abs_a.hypot(abs_b);
    let phase = a * (1.0 / abs_a);
    (abs_a / t, phase * b.conj() * (1.0 / t))
}

/// Full (unrestarted) GMRES starting from the zero vector.
///
/// The Krylov dimension is capped at `m`. If `m` steps do not reach the
/// tolerance because of rounding, another cycle starts from the current
/// iterate while the iteration budget lasts.
pub fn gmres<T: Scalar>(
    op: &impl LinearMap<T>,
    rhs: &[T],
    opts: GmresOptions,
) -> Result<(Vec<T>, SolveStats)> {
    let m = op.dim();
    if m == 0 {
        return Err(Error::InvalidSize("operator dimension must be >= 1".into()));
    }
    if rhs.len() != m {
        return Err(Error::InvalidSize(format!(
            "rhs has {} entries, operator dimension is {m}",
            rhs.len()
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be > 0, got {}",
            opts.tol
        )));
    }
    let max_iter = opts.max_iter.unwrap_or((2 * m).max(50));
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be >= 1".into()));
    }

    let rhs_norm = norm2(rhs);
    let mut x = vec![T::zero(); m];
    let mut stats = SolveStats {
        iterations: 0,
        final_residual: rhs_norm,
        converged: rhs_norm == 0.0,
        residual_history: vec![rhs_norm],
    };
    if stats.converged {
        return Ok((x, stats));
    }
    let target = opts.tol * rhs_norm;
    let mut r = rhs.to_vec();
    let mut beta = rhs_norm;
    let mut op_norm = 0.0f64;

    while stats.iterations < max_iter {
        let budget = (max_iter - stats.iterations).min(m);
        let cycle = arnoldi_cycle(op, &r, beta, target, budget)?;
        stats.iterations += cycle.steps;
        op_norm = op_norm.max(cycle.op_norm);
        let mut estimate = *stats.residual_history.last().unwrap();
        for est in cycle.estimates {
            // Later cycles restart from a true residual that may sit slightly
            // above the previous estimate; keep the history non-increasing.
            estimate = estimate.min(est);
            stats.residual_history.push(estimate);
        }
        let mut x_new = x.clone();
        axpy_all(&mut x_new, &cycle.update);
        let r_new = residual(op, &x_new, rhs)?;
        let r_new_norm = norm2(&r_new);

        if !(r_new_norm < stats.final_residual) {
            // No progress from a full cycle: rounding floor reached.
            break;
        }
        let stagnating = r_new_norm > 0.5 * stats.final_residual;
        x = x_new;
        r = r_new;
        beta = r_new_norm;
        stats.final_residual = r_new_norm;
        if stats.final_residual <= opts.tol * (rhs_norm + op_norm * norm2(&x)) {
            stats.converged = true;
            break;
        }
        if cycle.breakdown {
            return Err(Error::SingularOperator {
                iterations: stats.iterations,
                residual: stats.final_residual,
            });
        }
        if stagnating {
            break;
        }
    }
    Ok((x, stats))
}

fn axpy_all<T: Scalar>(x: &mut [T], dx: &[T]) {
    for (a, &b) in x.iter_mut().zip(dx) {
        *a += b;
    }
}

struct Cycle<T> {
    update: Vec<T>,
    steps: usize,
    estimates: Vec<f64>,
    breakdown: bool,
    /// Largest `‖op(v)‖` over the cycle's unit basis vectors.
    op_norm: f64,
}

fn arnoldi_cycle<T: Scalar>(
    op: &impl LinearMap<T>,
    r0: &[T],
    beta: f64,
    target: f64,
    max_steps: usize,
) -> Result<Cycle<T>> {
    let m = r0.len();
    let inv_beta = 1.0 / beta;
    let mut basis: Vec<Vec<T>> = vec![r0.iter().map(|&v| v * inv_beta).collect()];
    // Columns of the (rotated) Hessenberg matrix.
    let mut h_cols: Vec<Vec<T>> = Vec::new();
    let mut cs: Vec<(f64, T)> = Vec::new();
    let mut g = vec![T::from_real(beta)];
    let mut estimates = Vec::new();
    let mut breakdown = false;
    let mut op_norm = 0.0f64;

    for j in 0..max_steps {
        let mut w = op.apply(&basis[j])?;
        if w.len() != m {
            return Err(Error::InvalidSize(format!(
                "operator returned {} entries, expected {m}",
                w.len()
            )));
        }
        let w_norm0 = norm2(&w);
        op_norm = op_norm.max(w_norm0);
        let mut h = vec![T::zero(); j + 2];
        for _pass in 0..2 {
            for (i, v) in basis.iter().enumerate() {
                let hij = dot(v, &w);
                axpy(&mut w, -hij, v);
                h[i] += hij;
            }
        }
        let h_next = norm2(&w);
        h[j + 1] = T::from_real(h_next);

        for (i, &(c, s)) in cs.iter().enumerate() {
            let (a, b) = (h[i], h[i + 1]);
            h[i] = a * c + s * b;
            h[i + 1] = b * c - s.conj() * a;
        }
        let (c, s) = givens(h[j], h[j + 1]);
        h[j] = h[j] * c + s * h[j + 1];
        h[j + 1] = T::zero();
        cs.push((c, s));
        let gj = g[j];
        g[j] = gj * c;
        g.push(-(s.conj() * gj));
        h_cols.push(h);

        let est = g[j + 1].modulus();
        estimates.push(est);
        if est <= target {
            break;
        }
        let degenerate = h_next <= 1e-14 * w_norm0.max(f64::MIN_POSITIVE);
        if degenerate || j + 1 == m {
            breakdown = degenerate && j + 1 < m;
            break;
        }
        basis.push(w.iter().map(|&v| v * (1.0 / h_next)).collect());
    }

    let k = h_cols.len();
    let mut y = vec![T::zero(); k];
    for i in (0..k).rev() {
        let mut s = g[i];
        for (c, yc) in y.iter().enumerate().take(k).skip(i + 1) {
            s -= h_cols[c][i] * *yc;
        }
        let diag = h_cols[i][i];
        y[i] = if diag.modulus() == 0.0 {
            T::zero()
        } else {
            s / diag
        };
    }
    let mut update = vec![T::zero(); m];
    for (v, &yi) in basis.iter().zip(&y) {
        axpy(&mut update, yi, v);
    }
    Ok(Cycle {
        update,
        steps: k,
        estimates,
        breakdown,
        op_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, shift: f64) -> DenseMatrix<f64> {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rng.gen_range(-1.0..1.0) + if i == j { shift } else { 0.0 })
                    .collect()
            })
            .collect();
        DenseMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_converges_in_one_step() {
        let id = FnMap::new(5, |x: &[f64]| Ok(x.to_vec()));
        let rhs = vec![1.0, -2.0, 3.0, 0.5, 4.0];
        let (x, stats) = gmres(&id, &rhs, GmresOptions::default()).unwrap();
        assert!(stats.converged);
        assert_eq!(stats.iterations, 1);
        for (a, b) in x.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_system() {
        let d = DenseMatrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let (x, stats) = gmres(&d, &[2.0, 3.0], GmresOptions::default()).unwrap();
        assert!(stats.converged);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matches_dense_lu() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(&mut rng, 8, 4.0);
        let rhs: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (x, stats) = gmres(&a, &rhs, GmresOptions::default()).unwrap();
        let x_lu = a.solve(&rhs).unwrap();
        assert!(stats.converged);
        for (p, q) in x.iter().zip(&x_lu) {
            assert!((p - q).abs() < 1e-10);
        }
    }

    #[test]
    fn terminates_within_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for m in 1..=12 {
            for _ in 0..5 {
                let a = random_matrix(&mut rng, m, 3.0);
                let rhs: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let opts = GmresOptions {
                    tol: 1e-13,
                    max_iter: None,
                };
                let (_, stats) = gmres(&a, &rhs, opts).unwrap();
                assert!(stats.converged, "m={m}: {stats:?}");
                assert!(
                    stats.iterations <= m,
                    "m={m}: {} iterations",
                    stats.iterations
                );
            }
        }
    }

    #[test]
    fn residual_history_is_non_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 10, 0.5);
        let rhs: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (_, stats) = gmres(&a, &rhs, GmresOptions::default()).unwrap();
        for w in stats.residual_history.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "{:?}", stats.residual_history);
        }
    }

    #[test]
    fn complex_rhs_real_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let real = random_matrix(&mut rng, 6, 3.0);
        let rows = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| Complex64::new(real.get(i, j), 0.0))
                    .collect()
            })
            .collect();
        let a = DenseMatrix::from_rows(rows).unwrap();
        let rhs: Vec<Complex64> = (0..6)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let (x, stats) = gmres(&a, &rhs, GmresOptions::default()).unwrap();
        assert!(stats.converged);
        let x_lu = a.solve(&rhs).unwrap();
        for (p, q) in x.iter().zip(&x_lu) {
            assert!((p - q).norm() < 1e-12);
        }
    }

    #[test]
    fn complex_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rows = (0..7)
            .map(|i| {
                (0..7)
                    .map(|j| {
                        Complex64::new(
                            rng.gen_range(-1.0..1.0) + if i == j { 3.0 } else { 0.0 },
                            rng.gen_range(-1.0..1.0),
                        )
                    })
                    .collect()
            })
            .collect();
        let a = DenseMatrix::from_rows(rows).unwrap();
        let rhs: Vec<Complex64> = (0..7)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let (x, stats) = gmres(&a, &rhs, GmresOptions::default()).unwrap();
        assert!(stats.converged);
        let r = residual(&a, &x, &rhs).unwrap();
        assert!(norm2(&r) <= 1e-14 * norm2(&rhs) * 10.0);
    }

    #[test]
    fn singular_operator_reports_breakdown() {
        // Range is span{e0}; rhs has a component outside it.
        let a = DenseMatrix::from_rows(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        let err = gmres(&a, &[1.0, 1.0, 0.0], GmresOptions::default()).unwrap_err();
        assert!(matches!(err, Error::SingularOperator { .. }), "{err:?}");
        assert!(a.solve(&[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn iteration_cap_returns_unconverged_iterate() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_matrix(&mut rng, 10, 0.0);
        let rhs: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let opts = GmresOptions {
            tol: 1e-14,
            max_iter: Some(2),
        };
        let (x, stats) = gmres(&a, &rhs, opts).unwrap();
        assert!(!stats.converged);
        assert_eq!(stats.iterations, 2);
        assert_eq!(x.len(), 10);
        assert!(stats.final_residual < norm2(&rhs));
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let a = DenseMatrix::from_rows(vec![vec![2.0]]).unwrap();
        let (x, stats) = gmres(&a, &[0.0], GmresOptions::default()).unwrap();
        assert_eq!(x, vec![0.0]);
        assert!(stats.converged);
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn bad_arguments() {
        let a = DenseMatrix::from_rows(vec![vec![2.0]]).unwrap();
        let bad_tol = GmresOptions {
            tol: 0.0,
            max_iter: None,
        };
        assert!(gmres(&a, &[1.0], bad_tol).is_err());
        assert!(gmres(&a, &[1.0, 2.0], GmresOptions::default()).is_err());
    }
}
