//! `fit` and `quad` on a single corpus function.

use anyhow::Result;
use logcheb::{integrate_interpolant, CorpusFunction, CorpusId, Scalar, SingularInterpolant};
use serde::Serialize;
use serde_json::Value;

use crate::experiments::fit_samples;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub id: CorpusId,
    pub alpha: f64,
    pub n1: usize,
    pub n2: usize,
    /// Split at an interior `α` and map each half so the singularity is at `-1`.
    pub split: bool,
}

impl Job {
    fn splits(&self) -> bool {
        self.split && self.alpha > -1.0 && self.alpha < 1.0
    }

    /// `(scale, sign)` per half: the right half is `t ↦ α + h(t+1)`, the left
    /// half `t ↦ α − h(t+1)`.
    fn halves(&self) -> [(&'static str, f64, f64); 2] {
        [
            ("right", (1.0 - self.alpha) / 2.0, 1.0),
            ("left", (1.0 + self.alpha) / 2.0, -1.0),
        ]
    }

    fn fits<T: Scalar>(
        &self,
        f: impl Fn(f64) -> T,
    ) -> Result<Vec<(&'static str, f64, SingularInterpolant<T>)>> {
        if !self.splits() {
            return Ok(vec![(
                "direct",
                1.0,
                fit_samples(&f, self.alpha, self.n1, self.n2)?,
            )]);
        }
        let alpha = self.alpha;
        self.halves()
            .into_iter()
            .map(|(name, h, sign)| {
                let interp =
                    fit_samples(|t| f(alpha + sign * h * (t + 1.0)), -1.0, self.n1, self.n2)?;
                Ok((name, h, interp))
            })
            .collect()
    }
}

#[derive(Serialize)]
struct QuadOutput {
    function: &'static str,
    alpha: f64,
    n1: usize,
    n2: usize,
    split: bool,
    value: [f64; 2],
    function_evals: usize,
    elapsed: f64,
    parts: Vec<QuadPart>,
}

#[derive(Serialize)]
struct QuadPart {
    part: &'static str,
    value: [f64; 2],
}

fn dispatch<R>(
    job: &Job,
    real: impl FnOnce(&dyn Fn(f64) -> f64) -> Result<R>,
    complex: impl FnOnce(&dyn Fn(f64) -> logcheb::Complex64) -> Result<R>,
) -> Result<R> {
    let f = CorpusFunction::new(job.id, job.alpha);
    if job.id.is_complex() {
        complex(&|x| f.value(x))
    } else {
        real(&|x| f.value(x).re)
    }
}

fn fit_json<T: Scalar>(job: &Job, f: &dyn Fn(f64) -> T) -> Result<Value> {
    let fits = job.fits(f)?;
    if fits.len() == 1 {
        return Ok(serde_json::to_value(&fits[0].2)?);
    }
    let mut out = serde_json::Map::new();
    out.insert("function".into(), job.id.name().into());
    out.insert("alpha".into(), job.alpha.into());
    out.insert("split".into(), true.into());
    for (name, h, interp) in fits {
        let mut part = serde_json::to_value(&interp)?;
        part["scale"] = h.into();
        out.insert(name.into(), part);
    }
    Ok(Value::Object(out))
}

fn quad_json<T: Scalar>(job: &Job, f: &dyn Fn(f64) -> T) -> Result<Value> {
    let start = std::time::Instant::now();
    let fits = job.fits(f)?;
    let mut parts = Vec::new();
    let mut total = T::zero();
    for (name, h, interp) in &fits {
        let v = integrate_interpolant(interp)? * *h;
        total += v;
        parts.push(QuadPart {
            part: name,
            value: [v.re(), v.im()],
        });
    }
    let out = QuadOutput {
        function: job.id.name(),
        alpha: job.alpha,
        n1: job.n1,
        n2: job.n2,
        split: fits.len() > 1,
        value: [total.re(), total.im()],
        function_evals: fits.len() * (job.n1 + job.n2),
        elapsed: start.elapsed().as_secs_f64(),
        parts,
    };
    Ok(serde_json::to_value(out)?)
}

/// The fitted interpolant (or both halves) as JSON.
pub fn fit(job: &Job) -> Result<Value> {
    dispatch(job, |f| fit_json(job, f), |f| fit_json(job, f))
}

/// The quadrature value and its parts as JSON.
pub fn quad(job: &Job) -> Result<Value> {
    dispatch(job, |f| quad_json(job, f), |f| quad_json(job, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(id: CorpusId, alpha: f64, n1: usize, n2: usize, split: bool) -> Job {
        Job {
            id,
            alpha,
            n1,
            n2,
            split,
        }
    }

    #[test]
    fn quad_const_is_two() {
        let v = quad(&job(CorpusId::Const, -1.0, 2, 1, false)).unwrap();
        assert!((v["value"][0].as_f64().unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn fit_shape() {
        let v = fit(&job(CorpusId::K1, -1.0, 29, 3, false)).unwrap();
        assert_eq!(v["a"].as_array().unwrap().len(), 29);
        assert_eq!(v["b"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn split_fit_has_both_halves() {
        let v = fit(&job(CorpusId::K1, 0.25, 6, 2, true)).unwrap();
        assert_eq!(v["right"]["b"].as_array().unwrap().len(), 2);
        assert_eq!(v["left"]["alpha"].as_f64().unwrap(), -1.0);
        assert!((v["right"]["scale"].as_f64().unwrap() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn split_quad_sums_parts() {
        let v = quad(&job(CorpusId::Log, 0.25, 4, 1, true)).unwrap();
        let a = 0.25f64;
        let exact = (1.0 - a) * (1.0 - a).ln() + (1.0 + a) * (1.0 + a).ln() - 2.0;
        assert!((v["value"][0].as_f64().unwrap() - exact).abs() < 1e-14);
        assert_eq!(v["parts"].as_array().unwrap().len(), 2);
    }
}
