//! Gauss–Legendre nodes and a globally adaptive Gauss–Kronrod integrator.
//!
//! The adaptive routine is the reference integrator used to check moments
//! and to generate reference values. It is not on the fast path.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `m`-point Gauss–Legendre rule on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(Error::InvalidSize(
            "Gauss-Legendre rule needs m >= 1".into(),
        ));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok((nodes, weights))
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if m == 0 { 1.0 } else { p1 };
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

// Kronrod 15-point abscissae and weights, with the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<T: Scalar>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * wk;
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).modulus();
    (value, err)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 0.0,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub intervals: usize,
    pub converged: bool,
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Neumaier-compensated sum of scalars.
fn compensated_sum<T: Scalar>(values: impl Iterator<Item = T>) -> T {
    let (mut s_re, mut c_re, mut s_im, mut c_im) = (0.0, 0.0, 0.0, 0.0);
    for v in values {
        neumaier(&mut s_re, &mut c_re, v.re());
        neumaier(&mut s_im, &mut c_im, v.im());
    }
    T::from_parts(s_re + c_re, s_im + c_im)
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

/// Integrates `f` over `[points[0], points[last]]`, treating every interior
/// entry of `points` as a forced breakpoint (e.g. a singularity).
///
/// Intervals with the largest error estimate are bisected until the summed
/// estimate falls below `max(abs_tol, rel_tol·|I|)`.
pub fn adaptive_integrate<T: Scalar>(
    f: impl Fn(f64) -> T,
    points: &[f64],
    opts: AdaptiveOptions,
) -> Result<AdaptiveResult<T>> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two integration limits".into(),
        ));
    }
    if points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "integration breakpoints must be strictly increasing".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let (value, err) = gk15(&f, w[0], w[1]);
        evaluations += 15;
        heap.push(Piece {
            a: w[0],
            b: w[1],
            value,
            err,
        });
    }
    let mut converged = false;
    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        let total = compensated_sum(heap.iter().map(|p| p.value));
        if total_err <= opts.abs_tol.max(opts.rel_tol * total.modulus()) {
            converged = true;
            break;
        }
        if heap.len() >= opts.max_intervals {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Interval can no longer be split in floating point.
            heap.push(Piece { err: 0.0, ..worst });
            continue;
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, err) = gk15(&f, a, b);
            evaluations += 15;
            heap.push(Piece { a, b, value, err });
        }
    }
    let error_estimate = heap.iter().map(|p| p.err).sum();
    let intervals = heap.len();
    let value = compensated_sum(heap.into_iter().map(|p| p.value));
    Ok(AdaptiveResult {
        value,
        error_estimate,
        evaluations,
        intervals,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_rules() {
        let (x, w) = gauss_legendre(1).unwrap();
        assert_eq!(x, vec![0.0]);
        assert!((w[0] - 2.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn gauss_legendre_exactness() {
        for m in [5, 16, 64, 128] {
            let (x, w) = gauss_legendre(m).unwrap();
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for p in 0..2 * m {
                let q: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(xi, wi)| wi * xi.powi(p as i32))
                    .sum();
                let exact = if p % 2 == 1 {
                    0.0
                } else {
                    2.0 / (p + 1) as f64
                };
                assert!((q - exact).abs() < 1e-13, "m={m} p={p}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn adaptive_endpoint_log() {
        let r =
            adaptive_integrate(|x: f64| x.ln(), &[0.0, 1.0], AdaptiveOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.value + 1.0).abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn adaptive_interior_log_with_breakpoint() {
        let a = 0.3f64;
        let exact = (1.0 - a) * (1.0 - a).ln() + (1.0 + a) * (1.0 + a).ln() - 2.0;
        let r = adaptive_integrate(
            |x: f64| (x - a).abs().ln(),
            &[-1.0, a, 1.0],
            AdaptiveOptions::default(),
        )
        .unwrap();
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_limits() {
        let o = AdaptiveOptions::default();
        assert!(adaptive_integrate(|x: f64| x, &[1.0], o).is_err());
        assert!(adaptive_integrate(|x: f64| x, &[1.0, 0.0], o).is_err());
    }
}
