//! Reference integrals `I₁`, `I₂(−1)`, `I₂(1/4)`.
//!
//! Values come from the global adaptive Gauss–Kronrod integrator, split at the
//! singularity, and are cross-checked against power series that integrate
//! the ascending expansions term by term.

use std::f64::consts::{FRAC_2_PI, LN_2};
use std::path::Path;

use anyhow::{bail, Context, Result};
use logcheb::functions::{hankel0_first, EULER_GAMMA};
use logcheb::gauss::{adaptive_integrate, AdaptiveOptions};
use logcheb::Complex64;
use serde::{Deserialize, Serialize};

const EMBEDDED: &str = include_str!("../fixtures/references.json");

/// Largest tolerated gap between the adaptive value and the series.
pub const CROSS_CHECK_TOL: f64 = 1e-13;

const ADAPTIVE: AdaptiveOptions = AdaptiveOptions {
    abs_tol: 1e-15,
    rel_tol: 0.0,
    max_intervals: 50_000,
};
const SERIES_TERMS: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub method: String,
    pub abs_tol: f64,
    pub max_intervals: usize,
    pub cross_check: String,
    pub series_terms: usize,
    pub cross_check_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub name: String,
    pub integrand: String,
    pub alpha: f64,
    pub re: f64,
    pub im: f64,
    pub adaptive_error_estimate: f64,
    /// `|adaptive − series|`.
    pub series_discrepancy: f64,
}

impl Reference {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixtures {
    pub generator: Generator,
    pub references: Vec<Reference>,
}

impl Fixtures {
    /// The checked-in fixture file.
    pub fn embedded() -> Result<Self> {
        serde_json::from_str(EMBEDDED).context("parsing embedded reference fixtures")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.references
            .iter()
            .find(|r| r.name == name)
            .map(Reference::value)
    }

    /// Recomputes every reference; fails if a value disagrees with its series.
    pub fn generate() -> Result<Self> {
        let i1 = adaptive_integrate(
            |x: f64| Complex64::new(x.sin() + x.exp() * (x + 1.0).ln(), 0.0),
            &[-1.0, 1.0],
            ADAPTIVE,
        )?;
        let mut references = vec![reference(
            "I1",
            "sin(x) + exp(x) log(x + 1)",
            -1.0,
            i1,
            Complex64::new(i1_series(SERIES_TERMS), 0.0),
        )?];
        for (name, alpha) in [("I2(-1)", -1.0), ("I2(1/4)", 0.25)] {
            let mut breaks = vec![-1.0];
            if alpha > -1.0 {
                breaks.push(alpha);
            }
            breaks.push(1.0);
            let r = adaptive_integrate(
                |x: f64| hankel0_first((x - alpha).abs()).unwrap_or(Complex64::new(0.0, 0.0)),
                &breaks,
                ADAPTIVE,
            )?;
            let series = i2_series(alpha, SERIES_TERMS);
            references.push(reference(name, "H0(|x - alpha|)", alpha, r, series)?);
        }
        Ok(Self {
            generator: Generator {
                method: "global adaptive Gauss-Kronrod 7/15, split at the singularity, Neumaier summation".into(),
                abs_tol: ADAPTIVE.abs_tol,
                max_intervals: ADAPTIVE.max_intervals,
                cross_check: "term-by-term integrated ascending series".into(),
                series_terms: SERIES_TERMS,
                cross_check_tol: CROSS_CHECK_TOL,
            },
            references,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

fn reference(
    name: &str,
    integrand: &str,
    alpha: f64,
    r: logcheb::gauss::AdaptiveResult<Complex64>,
    series: Complex64,
) -> Result<Reference> {
    if !r.converged {
        bail!(
            "adaptive reference for {name} did not converge (estimate {:e})",
            r.error_estimate
        );
    }
    let gap = (r.value - series).norm();
    if gap > CROSS_CHECK_TOL {
        bail!(
            "{name}: adaptive {} and series {} differ by {gap:e}",
            r.value,
            series
        );
    }
    Ok(Reference {
        name: name.into(),
        integrand: integrand.into(),
        alpha,
        re: r.value.re,
        im: r.value.im,
        adaptive_error_estimate: r.error_estimate,
        series_discrepancy: gap,
    })
}

/// `∫_{-1}^{1} e^x log(x+1) dx = e⁻¹ Σ 2^{k+1}/(k!(k+1)) (log 2 − 1/(k+1))`;
/// the `sin` part integrates to zero.
pub fn i1_series(terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut coef = 2.0; // 2^{k+1}/k!
    for k in 0..terms {
        let k1 = (k + 1) as f64;
        sum += coef / k1 * (LN_2 - 1.0 / k1);
        coef *= 2.0 / k1;
    }
    sum / std::f64::consts::E
}

/// `∫_0^z H₀⁽¹⁾(t) dt` from the ascending series of `J₀` and `Y₀`.
pub fn hankel_integral_series(z: f64, terms: usize) -> Complex64 {
    // J(z) = ∫_0^z J₀ = Σ c_k z^{2k+1},  c_k = (−1)^k / (4^k (k!)² (2k+1))
    // ∫_0^z Y₀ = (2/π) [ (log(z/2) + γ) J(z) − Σ c_k z^{2k+1}/(2k+1)
    //                    + Σ_{k≥1} (−1)^{k+1} H_k z^{2k+1} / (4^k (k!)² (2k+1)) ]
    let mut j = 0.0;
    let mut j_over_t = 0.0;
    let mut harmonic_part = 0.0;
    let mut base = z; // z^{2k+1} / (4^k (k!)²), signed
    let mut h = 0.0;
    for k in 0..terms {
        let odd = (2 * k + 1) as f64;
        j += base / odd;
        j_over_t += base / (odd * odd);
        if k >= 1 {
            h += 1.0 / k as f64;
            harmonic_part -= h * base / odd;
        }
        let next = (k + 1) as f64;
        base *= -z * z / (4.0 * next * next);
    }
    let y = FRAC_2_PI * (((z / 2.0).ln() + EULER_GAMMA) * j - j_over_t + harmonic_part);
    Complex64::new(j, y)
}

/// `I₂(α) = ∫_0^{1+α} H₀ + ∫_0^{1−α} H₀`.
pub fn i2_series(alpha: f64, terms: usize) -> Complex64 {
    let part = |z: f64| {
        if z > 0.0 {
            hankel_integral_series(z, terms)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    part(1.0 + alpha) + part(1.0 - alpha)
}
