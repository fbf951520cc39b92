//! First-kind Chebyshev grids and series evaluation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The `n` zeros of `T_n`, `x_j = cos((2j+1)π/2n)`, in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevGrid {
    points: Vec<f64>,
}

impl ChebyshevGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("Chebyshev grid needs n >= 1".into()));
        }
        let points = (0..n)
            .map(|j| {
                // Evaluate the lower half and mirror it so that x_j = -x_{n-1-j} exactly.
                let mirror = n - 1 - j;
                if mirror < j {
                    -node(mirror, n)
                } else {
                    node(j, n)
                }
            })
            .collect();
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Index and distance of the node closest to `x`.
    pub fn nearest(&self, x: f64) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(j, &p)| (j, (p - x).abs()))
            .fold(
                (0, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            )
    }

    pub fn into_points(self) -> Vec<f64> {
        self.points
    }
}

fn node(j: usize, n: usize) -> f64 {
    // cos(θ) = sin(π/2 - θ); the sine form keeps full relative accuracy near 0.
    let numer = n as f64 - (2 * j + 1) as f64;
    (PI * numer / (2 * n) as f64).sin()
}

pub fn cheb_points(n: usize) -> Result<ChebyshevGrid> {
    ChebyshevGrid::new(n)
}

/// Evaluates `Σ_k c_k T_k(x)` with the Clenshaw recurrence.
pub fn clenshaw_t<T: Scalar>(coeffs: &[T], x: f64) -> Result<T> {
    if coeffs.is_empty() {
        return Err(Error::EmptyVector);
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::OutsideDomain(x));
    }
    Ok(clenshaw_unchecked(coeffs, x))
}

/// Clenshaw without the domain or emptiness checks; an empty series is zero.
pub(crate) fn clenshaw_unchecked<T: Scalar>(coeffs: &[T], x: f64) -> T {
    let Some((&c0, rest)) = coeffs.split_first() else {
        return T::zero();
    };
    let two_x = 2.0 * x;
    let mut b1 = T::zero();
    let mut b2 = T::zero();
    for &c in rest.iter().rev() {
        let b0 = c + b1 * two_x - b2;
        b2 = b1;
        b1 = b0;
    }
    c0 + b1 * x - b2
}

/// `U_k(x)` by the three-term recurrence.
pub fn u_poly_eval(k: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::OutsideDomain(x));
    }
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return Ok(prev);
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::transforms::dct3;

    #[test]
    fn small_grids() {
        assert_eq!(cheb_points(1).unwrap().points(), &[0.0]);
        let g = cheb_points(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.points()[0] - h).abs() < 1e-15);
        assert!((g.points()[1] + h).abs() < 1e-15);
        let g = cheb_points(4).unwrap();
        for (j, &x) in g.points().iter().enumerate() {
            let expect = ((2 * j + 1) as f64 * PI / 8.0).cos();
            assert!((x - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_points_rejected() {
        assert!(cheb_points(0).is_err());
    }

    #[test]
    fn grid_is_symmetric_decreasing_interior() {
        for n in 1..200 {
            let g = cheb_points(n).unwrap();
            let p = g.points();
            for j in 0..n {
                assert!(p[j].abs() < 1.0);
                assert!((p[j] + p[n - 1 - j]).abs() <= 1e-15);
                if j > 0 {
                    assert!(p[j] < p[j - 1]);
                }
            }
        }
    }

    #[test]
    fn clenshaw_examples() {
        assert!((clenshaw_t(&[0.0, 0.0, 1.0], 0.5).unwrap() + 0.5).abs() < 1e-16);
        assert_eq!(clenshaw_t(&[1.0], -0.3).unwrap(), 1.0);
        assert_eq!(clenshaw_t(&[1.0], 1.0).unwrap(), 1.0);
        assert!(matches!(
            clenshaw_t(&[1.0], 1.5),
            Err(Error::OutsideDomain(_))
        ));
        assert!(matches!(
            clenshaw_t::<f64>(&[], 0.0),
            Err(Error::EmptyVector)
        ));
    }

    #[test]
    fn clenshaw_matches_trig_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x: f64 = 0.3;
        let theta = x.acos();
        let direct: f64 = c
            .iter()
            .enumerate()
            .map(|(k, ck)| ck * (k as f64 * theta).cos())
            .sum();
        assert!((clenshaw_t(&c, x).unwrap() - direct).abs() < 1e-13);
    }

    #[test]
    fn clenshaw_on_grid_reproduces_dct3() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [3, 16, 33] {
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let via_dct = dct3(&c).unwrap();
            for (j, &x) in cheb_points(n).unwrap().points().iter().enumerate() {
                assert!((clenshaw_t(&c, x).unwrap() - via_dct[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn u_poly_examples() {
        assert_eq!(u_poly_eval(0, 0.7).unwrap(), 1.0);
        assert_eq!(u_poly_eval(1, 0.5).unwrap(), 1.0);
        assert!(u_poly_eval(2, 0.5).unwrap().abs() < 1e-16);
        assert!(u_poly_eval(3, 1.5).is_err());
    }

    #[test]
    fn t_from_u_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-1.0..=1.0);
            for k in 2..=32usize {
                let mut c = vec![0.0; k + 1];
                c[k] = 1.0;
                let t = clenshaw_t(&c, x).unwrap();
                let u = (u_poly_eval(k, x).unwrap() - u_poly_eval(k - 2, x).unwrap()) / 2.0;
                assert!((t - u).abs() < 1e-13, "k={k} x={x}");
            }
        }
    }
}
