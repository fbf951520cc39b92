//! Chebyshev moments `ξ₁,ₖ = ∫T_k` and `ξ₂,ₖ = ∫T_k(x) log|x−α| dx` on `[-1, 1]`.
//!
//! `ξ₂` is assembled from `η_k = ∫U_k(x) log|x−α| dx`, which obeys
//!
//! ```text
//! η_k = (2αk/(k+1)) η_{k−1} − ((k−1)/(k+1)) η_{k−2} + γ_k
//! γ_k = 2/(k+1) · { L₋ + L₊ + 2/(k²−1)   k even
//!                 { L₋ − L₊               k odd
//! ```
//!
//! with `L₋ = (1−α)log(1−α)`, `L₊ = (1+α)log(1+α)`, `η₀ = L₋ + L₊ − 2`, and
//! `t log t → 0` at the endpoints `α = ±1`.

use crate::error::{Error, Result};
use crate::gauss::{adaptive_integrate, AdaptiveOptions};

/// `∫_{-1}^{1} T_k(x) dx`.
pub fn xi1(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        let k = k as f64;
        2.0 / (1.0 - k * k)
    }
}

pub fn xi1_table(n: usize) -> Vec<f64> {
    (0..n).map(xi1).collect()
}

fn t_log_t(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.ln()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// `η_0, …, η_{n−1}`.
pub fn eta_table(alpha: f64, n: usize) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::InvalidSize("moment table needs n >= 1".into()));
    }
    let lm = t_log_t(1.0 - alpha);
    let lp = t_log_t(1.0 + alpha);
    let mut eta = Vec::with_capacity(n);
    eta.push(lm + lp - 2.0);
    for k in 1..n {
        let kf = k as f64;
        let gamma = if k % 2 == 0 {
            2.0 / (kf + 1.0) * (lm + lp + 2.0 / (kf * kf - 1.0))
        } else {
            2.0 / (kf + 1.0) * (lm - lp)
        };
        let prev = eta[k - 1];
        let prev2 = if k >= 2 { eta[k - 2] } else { 0.0 };
        eta.push(2.0 * alpha * kf / (kf + 1.0) * prev - (kf - 1.0) / (kf + 1.0) * prev2 + gamma);
    }
    Ok(eta)
}

fn xi2_from_eta(eta: &[f64]) -> Vec<f64> {
    (0..eta.len())
        .map(|k| match k {
            0 => eta[0],
            1 => eta[1] / 2.0,
            _ => (eta[k] - eta[k - 2]) / 2.0,
        })
        .collect()
}

/// `ξ₂,₀, …, ξ₂,ₙ₋₁` from the η recurrence.
pub fn xi2_table(alpha: f64, n: usize) -> Result<Vec<f64>> {
    Ok(xi2_from_eta(&eta_table(alpha, n)?))
}

/// `ξ₂,ₖ` by adaptive quadrature split at `α`; the independent reference.
pub fn xi2_quadrature(alpha: f64, k: usize) -> Result<f64> {
    check_alpha(alpha)?;
    let mut breaks = vec![-1.0];
    if alpha > -1.0 && alpha < 1.0 {
        breaks.push(alpha);
    }
    breaks.push(1.0);
    let kf = k as f64;
    let r = adaptive_integrate(
        |x: f64| (kf * x.clamp(-1.0, 1.0).acos()).cos() * (x - alpha).abs().ln(),
        &breaks,
        AdaptiveOptions {
            abs_tol: 1e-13,
            rel_tol: 0.0,
            max_intervals: 20_000,
        },
    )?;
    Ok(r.value)
}

/// Per-α moment cache for `k < n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub alpha: f64,
    pub xi1: Vec<f64>,
    pub xi2: Vec<f64>,
    pub eta: Vec<f64>,
}

impl MomentTable {
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        let eta = eta_table(alpha, n)?;
        Ok(Self {
            alpha,
            xi1: xi1_table(n),
            xi2: xi2_from_eta(&eta),
            eta,
        })
    }

    /// Like [`MomentTable::new`], then checks every `ξ₂,ₖ` against adaptive
    /// quadrature and replaces entries off by more than `max(1e-11, 1e-13·k)`.
    ///
    /// Returns the table and the indices that were replaced.
    pub fn verified(alpha: f64, n: usize) -> Result<(Self, Vec<usize>)> {
        let mut table = Self::new(alpha, n)?;
        let mut replaced = Vec::new();
        for k in 0..n {
            let reference = xi2_quadrature(alpha, k)?;
            let tol = oracle_tolerance(k);
            if (table.xi2[k] - reference).abs() > tol {
                log::warn!(
                    "xi2[{k}] recurrence value {} differs from quadrature {reference} (alpha = {alpha}); using quadrature",
                    table.xi2[k]
                );
                table.xi2[k] = reference;
                replaced.push(k);
            }
        }
        Ok((table, replaced))
    }

    pub fn len(&self) -> usize {
        self.xi1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi1.is_empty()
    }
}

/// Agreement tolerance between the recurrence and quadrature for index `k`.
pub fn oracle_tolerance(k: usize) -> f64 {
    1e-11f64.max(1e-13 * k as f64)
}
