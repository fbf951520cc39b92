//! Fast interpolation and quadrature for functions with a logarithmic
//! singularity, `K(x) = g₁(x) + g₂(x) log|x−α|` on `[-1, 1]`.
//!
//! The interpolant augments a Chebyshev series with `T_k(x)·log|x−α|` terms
//! ([`loginterp`]). Its coefficients come from a small reduced system solved
//! matrix-free by GMRES ([`krylov`]) on top of DCT-II/III products
//! ([`transforms`]). Integrating the interpolant against closed-form and
//! recurrence moments ([`moments`]) gives the quadrature in [`quadrature`].

// Tabulated constants keep their full tabulated digits; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
pub mod error;
pub mod functions;
pub mod gauss;
pub mod krylov;
pub mod loginterp;
pub mod moments;
pub mod quadrature;
pub mod scalar;
pub mod transforms;

pub use num_complex::Complex64;

pub use chebyshev::{cheb_points, clenshaw_t, u_poly_eval, ChebyshevGrid};
pub use error::{Error, Result};
pub use functions::{hallen_k3, hankel0_first, k1, s_smooth, CorpusFunction, CorpusId};
pub use krylov::{dense_solve, gmres, DenseMatrix, FnMap, GmresOptions, LinearMap, SolveStats};
pub use loginterp::{
    check_invertibility, fit, fit_dense, fit_fn, lebesgue_l1, reduced_matvec, FitOptions,
    FitOutcome, Invertibility, ReducedSystem, SingularInterpolant,
};
pub use moments::{eta_table, xi1, xi2_table, MomentTable};
pub use quadrature::{
    fejer1, graded_baseline, graded_fejer, integrate_interpolant, integrate_singular, l1_error,
    max_error, split_integrate, GradedMesh, QuadratureResult, SplitResult,
};
pub use scalar::Scalar;
pub use transforms::{dct2, dct3, DctPlan};
