//! Optimal relative backward error of a one-step method on `y' = lambda y`.
//!
//! A step `y_{n+1} = R(mu) y_n` is reproduced exactly by
//! `z(t) = y_n exp(lambda (1 + delta) t)` for constant
//! `delta = ln_k R(mu) / mu - 1`, and no interpolant can have a smaller
//! sup-norm relative residual. The branch is
//! `k = round(Im(mu - ln R(mu)) / 2 pi)`, which minimizes `|delta|`.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratfun::{RatfunError, RationalFunction};
use crate::scalar::{ln_1p, ln_principal, Scalar};

/// Half-width of the band around `|R e^{-mu}| = 1` reported as the order
/// star boundary.
pub const ORDER_STAR_BAND: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResidualError {
    #[error("unwinding number undefined: mu and R(mu) must both be nonzero")]
    ZeroArgument,
    #[error("mu = 0 has no backward error")]
    ZeroMu,
    #[error("the optimal interpolant would have to pass through zero")]
    SingularTarget,
    #[error("skeleton step starts at y = 0")]
    ZeroStart,
    #[error("lambda = 0")]
    ZeroLambda,
    #[error("invalid skeleton step: {0}")]
    BadStep(String),
    #[error("R(mu) is zero or infinite at mu = {0}")]
    SingularInRange(String),
    #[error("R(0) = {0} is not 1")]
    InconsistentMethod(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Ratfun(#[from] RatfunError),
}

/// Order star region of `mu`: sign of `|R(mu) e^{-mu}| - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderStarRegion {
    APlus,
    AZero,
    AMinus,
}

impl OrderStarRegion {
    /// `1`, `0` or `-1`.
    pub fn code(self) -> i8 {
        match self {
            OrderStarRegion::APlus => 1,
            OrderStarRegion::AZero => 0,
            OrderStarRegion::AMinus => -1,
        }
    }
}

/// Full analysis of one point of the `mu`-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualSample<T: Scalar> {
    pub mu: Complex<T>,
    pub k: i64,
    /// NaN when `singular`.
    pub delta: Complex<T>,
    /// `+inf` when `singular`.
    pub abs_delta: T,
    /// `+inf` at a pole.
    pub r_value: Complex<T>,
    /// `|R(mu)| <= 1`.
    pub classical_inside: bool,
    pub orderstar: OrderStarRegion,
    /// `R(mu)` is zero or `mu` is a pole.
    pub singular: bool,
}

impl<T: Scalar> ResidualSample<T> {
    pub fn abs_r(&self) -> T {
        self.r_value.norm()
    }

    /// `|R(mu) e^{-mu}|`.
    pub fn orderstar_value(&self) -> T {
        self.abs_r() * (-self.mu.re).exp()
    }
}

fn two_pi<T: Scalar>() -> T {
    T::PI() + T::PI()
}

/// Nearest integer, with exact half-integers rounded toward zero.
fn round_half_toward_zero<T: Scalar>(x: T) -> T {
    let t = x.trunc();
    if (x - t).abs() == T::lit(0.5) {
        t
    } else {
        x.round()
    }
}

/// `ln z + 2 pi i k` on top of the principal branch.
pub fn ln_k<T: Scalar>(z: Complex<T>, k: i64) -> Complex<T> {
    let l = ln_principal(z);
    Complex::new(l.re, l.im + two_pi::<T>() * T::from_i64(k).unwrap())
}

/// Branch minimizing `|delta|` given the principal `ln R(mu)`.
pub fn unwinding_from_log<T: Scalar>(mu: Complex<T>, ln_r: Complex<T>) -> i64 {
    let a = (mu.im - ln_r.im) / two_pi::<T>();
    round_half_toward_zero(a).to_i64().expect("unwinding number fits in i64")
}

/// `k = round(Im(mu - ln r_value) / 2 pi)`, principal `ln`, ties toward zero.
pub fn unwinding_k<T: Scalar>(mu: Complex<T>, r_value: Complex<T>) -> Result<i64, ResidualError> {
    if mu.is_zero() || r_value.is_zero() {
        return Err(ResidualError::ZeroArgument);
    }
    Ok(unwinding_from_log(mu, ln_principal(r_value)))
}

/// `(ln R - mu + 2 pi i k) / mu`, which equals `(ln R + 2 pi i k) / mu - 1`.
pub fn delta_on_branch<T: Scalar>(mu: Complex<T>, ln_r: Complex<T>, k: i64) -> Complex<T> {
    let shift = Complex::new(T::zero(), two_pi::<T>() * T::from_i64(k).unwrap());
    (ln_r - mu + shift) / mu
}

/// Order star classification with the `ORDER_STAR_BAND` boundary band.
pub fn classify_order_star<T: Scalar>(mu: Complex<T>, r_value: Complex<T>) -> OrderStarRegion {
    let v = r_value.norm() * (-mu.re).exp();
    let gap = v - T::one();
    if gap.abs() <= T::lit(ORDER_STAR_BAND) {
        OrderStarRegion::AZero
    } else if gap > T::zero() {
        OrderStarRegion::APlus
    } else {
        OrderStarRegion::AMinus
    }
}

/// Principal `ln R(mu)`; near `R = 1` the logarithm is taken of
/// `1 + (R - 1)` with `R - 1` evaluated from `num - den`.
fn ln_r<T: Scalar>(r: &RationalFunction<T>, mu: Complex<T>, r_value: Complex<T>) -> Complex<T> {
    if (r_value - Complex::new(T::one(), T::zero())).norm() < T::lit(0.5) {
        if let Ok(w) = r.eval_minus_one(mu) {
            return ln_1p(w);
        }
    }
    ln_principal(r_value)
}

/// Optimal `delta` at `mu`, with the classical and order star classification.
pub fn optimal_delta<T: Scalar>(mu: Complex<T>, r: &RationalFunction<T>) -> Result<ResidualSample<T>, ResidualError> {
    if mu.is_zero() {
        return Err(ResidualError::ZeroMu);
    }
    let nan = Complex::new(T::nan(), T::nan());
    let r_value = match r.eval(mu) {
        Ok(v) if v.re.is_finite() && v.im.is_finite() => v,
        // pole, or overflow on the way to one
        _ => {
            return Ok(ResidualSample {
                mu,
                k: 0,
                delta: nan,
                abs_delta: T::infinity(),
                r_value: Complex::new(T::infinity(), T::zero()),
                classical_inside: false,
                orderstar: OrderStarRegion::APlus,
                singular: true,
            });
        }
    };
    let classical_inside = r_value.norm() <= T::one();
    let orderstar = classify_order_star(mu, r_value);
    if r_value.norm() < T::zero_threshold() {
        return Ok(ResidualSample {
            mu,
            k: 0,
            delta: nan,
            abs_delta: T::infinity(),
            r_value,
            classical_inside,
            orderstar,
            singular: true,
        });
    }
    let log = ln_r(r, mu, r_value);
    let k = unwinding_from_log(mu, log);
    let delta = delta_on_branch(mu, log, k);
    Ok(ResidualSample {
        mu,
        k,
        delta,
        abs_delta: delta.norm(),
        r_value,
        classical_inside,
        orderstar,
        singular: false,
    })
}

/// One step `(t_i, y_i) -> (t_{i+1}, y_{i+1})` of a skeleton for `y' = lambda y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkeletonStep<T: Scalar> {
    pub t_i: T,
    pub t_ip1: T,
    pub y_i: Complex<T>,
    pub y_ip1: Complex<T>,
    pub lambda: Complex<T>,
}

impl<T: Scalar> SkeletonStep<T> {
    pub fn new(t_i: T, t_ip1: T, y_i: Complex<T>, y_ip1: Complex<T>, lambda: Complex<T>) -> Result<Self, ResidualError> {
        let step = Self { t_i, t_ip1, y_i, y_ip1, lambda };
        step.check()?;
        Ok(step)
    }

    fn check(&self) -> Result<(), ResidualError> {
        if !(self.h() > T::zero()) {
            return Err(ResidualError::BadStep(format!("t_i = {} is not before t_ip1 = {}", self.t_i, self.t_ip1)));
        }
        if self.y_i.is_zero() {
            return Err(ResidualError::ZeroStart);
        }
        Ok(())
    }

    pub fn h(&self) -> T {
        self.t_ip1 - self.t_i
    }

    pub fn mu(&self) -> Complex<T> {
        self.lambda * self.h()
    }
}

/// `z(t) = y_start exp(lambda_eff t)` on `[0, h]`: the exact solution of
/// `y' = lambda_eff y` with `lambda_eff = lambda (1 + delta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalInterpolant<T: Scalar> {
    pub y_start: Complex<T>,
    pub lambda_eff: Complex<T>,
    pub h: T,
}

impl<T: Scalar> OptimalInterpolant<T> {
    /// `t` is measured from the start of the step.
    pub fn eval(&self, t: T) -> Complex<T> {
        self.y_start * (self.lambda_eff * t).exp()
    }

    pub fn endpoint(&self) -> Complex<T> {
        self.eval(self.h)
    }

    /// The constant relative residual `z' / (lambda z) - 1`.
    pub fn relative_residual(&self, lambda: Complex<T>) -> Complex<T> {
        self.lambda_eff / lambda - Complex::new(T::one(), T::zero())
    }
}

/// Optimal interpolant of the step `y_i -> R(lambda h) y_i`.
pub fn optimal_interpolant<T: Scalar>(
    step: &SkeletonStep<T>,
    r: &RationalFunction<T>,
) -> Result<OptimalInterpolant<T>, ResidualError> {
    step.check()?;
    if step.lambda.is_zero() {
        return Err(ResidualError::ZeroLambda);
    }
    let sample = optimal_delta(step.mu(), r)?;
    if sample.singular {
        return Err(ResidualError::SingularTarget);
    }
    let one = Complex::new(T::one(), T::zero());
    Ok(OptimalInterpolant {
        y_start: step.y_i,
        lambda_eff: step.lambda * (one + sample.delta),
        h: step.h(),
    })
}

/// Smallest sup-norm relative residual of any interpolant joining the two
/// skeleton points: `|ln_k(y_{i+1} / y_i) / (lambda h) - 1|`.
/// Infinite when `y_{i+1} = 0`.
pub fn alpha_from_skeleton<T: Scalar>(step: &SkeletonStep<T>) -> Result<T, ResidualError> {
    step.check()?;
    if step.lambda.is_zero() {
        return Err(ResidualError::ZeroLambda);
    }
    if step.y_ip1.is_zero() {
        return Ok(T::infinity());
    }
    let mu = step.mu();
    let ratio = step.y_ip1 / step.y_i;
    let k = unwinding_k(mu, ratio)?;
    Ok(delta_on_branch(mu, ln_principal(ratio), k).norm())
}

/// Least-squares slope of `log |delta(-h)|` against `log h`.
pub fn measure_order<T: Scalar>(r: &RationalFunction<T>, h_values: &[T]) -> Result<T, ResidualError> {
    if h_values.len() < 4 {
        return Err(ResidualError::BadInput(format!("need at least 4 step sizes, got {}", h_values.len())));
    }
    let half = T::lit(0.5);
    if h_values.iter().any(|&h| !(h > T::zero() && h <= half)) {
        return Err(ResidualError::BadInput("step sizes must lie in (0, 0.5]".into()));
    }
    if h_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(ResidualError::BadInput("step sizes must be strictly decreasing".into()));
    }
    let mut xs = Vec::with_capacity(h_values.len());
    let mut ys = Vec::with_capacity(h_values.len());
    for &h in h_values {
        let mu = Complex::new(-h, T::zero());
        let s = optimal_delta(mu, r)?;
        if s.singular {
            return Err(ResidualError::SingularInRange(format!("{mu}")));
        }
        if s.abs_delta.is_zero() {
            return Err(ResidualError::BadInput(format!("delta vanishes at h = {h}")));
        }
        xs.push(h.ln());
        ys.push(s.abs_delta.ln());
    }
    let n = T::from_usize(xs.len()).unwrap();
    let mx = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let my = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
    let (sxy, sxx) = xs.iter().zip(&ys).fold((T::zero(), T::zero()), |(sxy, sxx), (&x, &y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    Ok(sxy / sxx)
}

/// Maclaurin coefficients of `delta(mu) = ln R(mu) / mu - 1` on the branch
/// `k = 0` near the origin.
///
/// `ln R` is expanded through `(ln R)' = R' / R`; coefficient `j` of the
/// result is the coefficient of `mu^{j+1}` in `ln R`, less 1 for `j = 0`.
pub fn delta_series<T: Scalar>(r: &RationalFunction<T>, n_terms: usize) -> Result<Vec<Complex<T>>, ResidualError> {
    let s = r.series(n_terms + 1)?;
    let one = Complex::new(T::one(), T::zero());
    if (s[0] - one).norm() > T::epsilon() * T::lit(1e4) {
        return Err(ResidualError::InconsistentMethod(format!("{}", s[0])));
    }
    let from_usize = |j: usize| T::from_usize(j).unwrap();
    // q = R' / R, with R' coefficients (j + 1) s_{j+1}
    let mut q: Vec<Complex<T>> = Vec::with_capacity(n_terms);
    for j in 0..n_terms {
        let mut acc = s[j + 1] * from_usize(j + 1);
        for i in 1..=j {
            acc = acc - s[i] * q[j - i];
        }
        q.push(acc / s[0]);
    }
    Ok(q
        .iter()
        .enumerate()
        .map(|(j, &qj)| {
            let c = qj / from_usize(j + 1);
            if j == 0 {
                c - one
            } else {
                c
            }
        })
        .collect())
}
