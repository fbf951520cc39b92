//! Test corpus of log-singular functions.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauss::gauss_legendre;

/// Euler–Mascheroni constant, 0.57721566490153286061.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Default `β` of the Hallén kernel.
pub const HALLEN_BETA: f64 = 0.1;

/// Default inner Gauss–Legendre node count for [`hallen_k3`].
pub const HALLEN_NODES: usize = 64;

/// `K₁(x) = sin x + eˣ log|x−α|`.
pub fn k1(x: f64, alpha: f64) -> Result<f64> {
    if x == alpha {
        return Err(Error::EvaluationAtSingularPoint(x));
    }
    Ok(x.sin() + x.exp() * (x - alpha).abs().ln())
}

/// `S_j(x) = sin x + (eˣ − Σ_{i<j} e^α (x−α)^i / i!) log|x−α|`, which lies in `H^j`.
/// At `x = α` the log term vanishes and `sin α` is returned.
pub fn s_smooth(j: u8, x: f64, alpha: f64) -> Result<f64> {
    if !(1..=3).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "S_j is defined for j = 1, 2, 3; got {j}"
        )));
    }
    if x == alpha {
        return Ok(alpha.sin());
    }
    let d = x - alpha;
    // eˣ − e^α = e^α·expm1(d), then peel off Taylor terms.
    let mut remainder = d.exp_m1();
    if j >= 2 {
        remainder -= d;
    }
    if j >= 3 {
        remainder -= 0.5 * d * d;
    }
    Ok(x.sin() + alpha.exp() * remainder * d.abs().ln())
}

fn bessel_series(z: f64) -> (f64, f64) {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut j0 = 1.0;
    let mut tail = 0.0;
    let mut harmonic = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        j0 += term;
        // Y₀ series carries (−1)^{k+1} H_k q^k/(k!)² = −H_k · term.
        tail -= harmonic * term;
        if term.abs() * harmonic < 1e-17 * j0.abs().max(tail.abs()).max(1e-300) {
            break;
        }
    }
    let y0 = FRAC_2_PI * (((0.5 * z).ln() + EULER_GAMMA) * j0 + tail);
    (j0, y0)
}

/// `J₀(z)` by its ascending series; accurate to ~1e-16 on `(0, 2]`.
pub fn bessel_j0(z: f64) -> f64 {
    bessel_series(z).0
}

/// `Y₀(z)` by its ascending series with the logarithmic term.
pub fn bessel_y0(z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!("Y0 needs z > 0, got {z}")));
    }
    Ok(bessel_series(z).1)
}

/// `H₀⁽¹⁾(z) = J₀(z) + i Y₀(z)` for `z > 0`. Series evaluation is intended
/// for `z ≤ 2`; larger arguments lose digits to cancellation.
pub fn hankel0_first(z: f64) -> Result<Complex64> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!("H0 needs z > 0, got {z}")));
    }
    let (j0, y0) = bessel_series(z);
    Ok(Complex64::new(j0, y0))
}

/// `K₃(x) = (1/π) ∫_0^{π/2} e^{−2iβR}/R dφ`, `R = √((x+1)² + sin²φ)`.
pub fn hallen_k3(x: f64, beta: f64) -> Result<Complex64> {
    hallen_k3_with(x, beta, HALLEN_NODES)
}

pub fn hallen_k3_with(x: f64, beta: f64, nodes: usize) -> Result<Complex64> {
    if !(x > -1.0) {
        return Err(Error::EvaluationAtSingularPoint(x));
    }
    hallen_kernel(x + 1.0, beta, nodes)
}

/// The Hallén integral as a function of the distance `ε > 0` to the
/// singularity.
///
/// The integrand peaks in a layer of width `ε` at `φ = 0`; substituting
/// `φ = ε sinh s` flattens it, and the Gauss–Legendre rule runs over
/// `s ∈ [0, asinh(π/(2ε))]`.
pub fn hallen_kernel(eps: f64, beta: f64, nodes: usize) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::EvaluationAtSingularPoint(-1.0));
    }
    let (xs, ws) = gauss_legendre(nodes)?;
    let s_max = (FRAC_PI_2 / eps).asinh();
    let half = 0.5 * s_max;
    let mut sum = Complex64::new(0.0, 0.0);
    for (&t, &w) in xs.iter().zip(&ws) {
        let s = half * (t + 1.0);
        let phi = eps * s.sinh();
        let jac = eps * s.cosh();
        let sin_phi = phi.sin();
        let r = eps.hypot(sin_phi);
        let phase = Complex64::new(0.0, -2.0 * beta * r).exp();
        sum += phase * (w * jac / r);
    }
    Ok(sum * (half / PI))
}

/// Identifiers for the corpus, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorpusId {
    /// `f ≡ 1`.
    Const,
    /// `log|x−α|`.
    Log,
    K1,
    S1,
    S2,
    S3,
    /// `H₀⁽¹⁾(|x−α|)`; the Hankel kernel and the `I₂(α)` integrand.
    K2,
    /// Hallén kernel at distance `|x−α|`.
    K3,
}

impl CorpusId {
    pub const ALL: [CorpusId; 8] = [
        CorpusId::Const,
        CorpusId::Log,
        CorpusId::K1,
        CorpusId::S1,
        CorpusId::S2,
        CorpusId::S3,
        CorpusId::K2,
        CorpusId::K3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusId::Const => "const",
            CorpusId::Log => "log",
            CorpusId::K1 => "k1",
            CorpusId::S1 => "s1",
            CorpusId::S2 => "s2",
            CorpusId::S3 => "s3",
            CorpusId::K2 => "k2",
            CorpusId::K3 => "k3",
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, CorpusId::K2 | CorpusId::K3)
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "const" | "one" => CorpusId::Const,
            "log" => CorpusId::Log,
            "k1" | "i1" => CorpusId::K1,
            "s1" => CorpusId::S1,
            "s2" => CorpusId::S2,
            "s3" => CorpusId::S3,
            "k2" | "i2" | "hankel" => CorpusId::K2,
            "k3" | "hallen" => CorpusId::K3,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown function '{other}' (expected one of const, log, k1, i1, s1, s2, s3, k2, i2, k3)"
                )))
            }
        })
    }
}

/// A corpus member bound to its singularity location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusFunction {
    pub id: CorpusId,
    pub alpha: f64,
    /// `β` for the Hallén kernel; ignored otherwise.
    pub beta: f64,
    /// Multiplies the distance `|x−α|` passed to the `K₂`/`K₃` kernels;
    /// ignored by the other members.
    pub scale: f64,
}

impl CorpusFunction {
    pub fn new(id: CorpusId, alpha: f64) -> Self {
        Self {
            id,
            alpha,
            beta: HALLEN_BETA,
            scale: 1.0,
        }
    }

    /// Same member with the kernel distance multiplied by `scale`.
    pub fn with_scale(self, scale: f64) -> Self {
        Self { scale, ..self }
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    /// Value at `x`; complex for every member so callers can treat the corpus
    /// uniformly.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let alpha = self.alpha;
        let real = |v: f64| Ok(Complex64::new(v, 0.0));
        match self.id {
            CorpusId::Const => real(1.0),
            CorpusId::Log => {
                if x == alpha {
                    Err(Error::EvaluationAtSingularPoint(x))
                } else {
                    real((x - alpha).abs().ln())
                }
            }
            CorpusId::K1 => real(k1(x, alpha)?),
            CorpusId::S1 => real(s_smooth(1, x, alpha)?),
            CorpusId::S2 => real(s_smooth(2, x, alpha)?),
            CorpusId::S3 => real(s_smooth(3, x, alpha)?),
            CorpusId::K2 => {
                if x == alpha {
                    Err(Error::EvaluationAtSingularPoint(x))
                } else {
                    hankel0_first(self.scale * (x - alpha).abs())
                }
            }
            CorpusId::K3 => {
                if x == alpha {
                    Err(Error::EvaluationAtSingularPoint(x))
                } else {
                    hallen_kernel(self.scale * (x - alpha).abs(), self.beta, HALLEN_NODES)
                }
            }
        }
    }

    /// [`eval`](Self::eval) with singular points mapped to NaN.
    pub fn value(&self, x: f64) -> Complex64 {
        self.eval(x)
            .unwrap_or_else(|_| Complex64::new(f64::NAN, f64::NAN))
    }
}
