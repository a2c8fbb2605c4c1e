//! Lanczos tau method on `y' = lambda y`, `y(0) = y0`, over one step `[0, h]`.
//!
//! The derivative is expanded as `h z'(t) = sum_{k=0}^n d_k T_k(theta)` with
//! `theta = -1 + 2t/h`. Integrating term by term gives `z` as a Chebyshev
//! series of degree `n + 1`; the constant is fixed by `z(0) = y0`. Requiring
//! the `T_0..T_n` coefficients of `h z' - mu z` to vanish gives `n + 1`
//! linear equations in `d_k` whose entries are polynomials in `mu`. They are
//! solved exactly by Cramer's rule with Bareiss determinants, so every
//! Chebyshev coefficient of `z / y0` is a ratio of rational polynomials over
//! one common denominator.

use num_traits::Zero;

use crate::exact::{bareiss_det, rat, QPoly, Rational};
use crate::ratfun::RationalFunction;
use crate::scalar::Scalar;

use super::MethodError;

pub const MAX_TAU_DEGREE: usize = 20;

/// `z(t) / y0 = sum_j numerators[j] / denominator * T_j(theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauInterpolant {
    pub numerators: Vec<QPoly>,
    pub denominator: QPoly,
}

impl TauInterpolant {
    /// `z(h) / y0` with common factors cancelled, as exact polynomials.
    pub fn endpoint(&self) -> (QPoly, QPoly) {
        // T_j(1) = 1 for every j
        let num = self
            .numerators
            .iter()
            .fold(QPoly::zero(), |acc, p| &acc + p);
        let g = num.gcd(&self.denominator);
        let num = num.div_exact(&g);
        let den = self.denominator.div_exact(&g);
        // normalize so den(0) = 1
        let d0 = den.coeff(0);
        if d0.is_zero() {
            (num, den)
        } else {
            let s = d0.recip();
            (num.scale(&s), den.scale(&s))
        }
    }
}

/// Chebyshev coefficients of an antiderivative of `T_k`, constant ignored
/// except for `k = 1` where `(T_2 + T_0) / 4` is used.
fn antiderivative(k: usize) -> Vec<(usize, Rational)> {
    match k {
        0 => vec![(1, rat(1, 1))],
        1 => vec![(2, rat(1, 4)), (0, rat(1, 4))],
        _ => {
            let k = k as i64;
            vec![
                ((k + 1) as usize, rat(1, 2 * k + 2)),
                ((k - 1) as usize, rat(-1, 2 * k - 2)),
            ]
        }
    }
}

/// Linear map `d -> zhat` where `zhat(theta) = integral_{-1}^{theta} sum d_k T_k`,
/// as a `(n + 2) x (n + 1)` rational matrix.
fn integration_matrix(n: usize) -> Vec<Vec<Rational>> {
    let zero = rat(0, 1);
    let mut l = vec![vec![zero.clone(); n + 1]; n + 2];
    for k in 0..=n {
        let terms = antiderivative(k);
        // value at theta = -1, T_j(-1) = (-1)^j
        let mut at_minus_one = zero.clone();
        for (j, c) in &terms {
            l[*j][k] += c;
            if j % 2 == 0 {
                at_minus_one += c;
            } else {
                at_minus_one -= c;
            }
        }
        l[0][k] -= at_minus_one;
    }
    l
}

/// Exact Chebyshev interpolant of the degree-`n` tau method.
pub fn tau_interpolant(n: usize) -> Result<TauInterpolant, MethodError> {
    if n == 0 || n > MAX_TAU_DEGREE {
        return Err(MethodError::BadParams(format!(
            "tau degree must be in 1..={MAX_TAU_DEGREE}, got {n}"
        )));
    }
    let l = integration_matrix(n);
    let half = rat(1, 2);
    let zero = rat(0, 1);

    // equation j: d_j - mu [delta_{j0} + zhat_j / 2] = 0
    let system: Vec<Vec<QPoly>> = (0..=n)
        .map(|j| {
            (0..=n)
                .map(|k| {
                    let diag = if j == k { rat(1, 1) } else { zero.clone() };
                    QPoly::linear(diag, -(&half * &l[j][k]))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<QPoly> = (0..=n)
        .map(|j| if j == 0 { QPoly::linear(zero.clone(), rat(1, 1)) } else { QPoly::zero() })
        .collect();

    let det = bareiss_det(system.clone());
    if det.is_zero() {
        return Err(MethodError::DegenerateSystem(n));
    }
    let cramer: Vec<QPoly> = (0..=n)
        .map(|k| {
            let mut m = system.clone();
            for (row, b) in m.iter_mut().zip(&rhs) {
                row[k] = b.clone();
            }
            bareiss_det(m)
        })
        .collect();

    // z = T_0 + zhat / 2, over the common denominator det
    let numerators = (0..n + 2)
        .map(|j| {
            let mut acc = if j == 0 { det.clone() } else { QPoly::zero() };
            for (k, dk) in cramer.iter().enumerate() {
                if !l[j][k].is_zero() {
                    acc = &acc + &dk.scale(&(&half * &l[j][k]));
                }
            }
            acc
        })
        .collect();
    Ok(TauInterpolant { numerators, denominator: det })
}

/// Exact `z(h) / y0` of the degree-`n` tau method.
pub fn tau_stability_exact(n: usize) -> Result<(QPoly, QPoly), MethodError> {
    Ok(tau_interpolant(n)?.endpoint())
}

/// `R(mu) = z(h) / y0` for the degree-`n` tau method, rounded once to `T`.
pub fn tau_stability_function<T: Scalar>(n: usize) -> Result<RationalFunction<T>, MethodError> {
    let (num, den) = tau_stability_exact(n)?;
    RationalFunction::new(num.to_polynomial(), den.to_polynomial())
        .map_err(|_| MethodError::DegenerateSystem(n))
}
