//! Optimal relative backward error of one-step methods on the Dahlquist
//! test problem `y' = lambda y`.
//!
//! A one-step method maps `y_n` to `y_{n+1} = R(mu) y_n` with `mu = lambda h`.
//! The smallest constant relative perturbation `delta` for which the step is
//! exact solves `y' = lambda (1 + delta) y`; it is
//! `delta = ln_k R(mu) / mu - 1`, with the branch `k` chosen to minimize
//! `|delta|`.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which the field sampler and the CLI use.
//! The Chebyshev tau construction works over exact rationals (see [`exact`]).

pub mod backward_error;
pub mod exact;
pub mod field;
pub mod methods;
pub mod oracle;
pub mod ratfun;
pub mod scalar;

pub use num_complex::Complex;
pub use scalar::Scalar;

pub type Complex64 = Complex<f64>;
pub type Polynomial64 = ratfun::Polynomial<f64>;
pub type RationalFunction64 = ratfun::RationalFunction<f64>;
pub type ButcherTableau64 = ratfun::ButcherTableau<f64>;
pub type MethodInfo64 = methods::MethodInfo<f64>;
pub type ResidualSample64 = backward_error::ResidualSample<f64>;
pub type SkeletonStep64 = backward_error::SkeletonStep<f64>;
pub type OptimalInterpolant64 = backward_error::OptimalInterpolant<f64>;

pub type Polynomial32 = ratfun::Polynomial<f32>;
pub type RationalFunction32 = ratfun::RationalFunction<f32>;
pub type ResidualSample32 = backward_error::ResidualSample<f32>;
