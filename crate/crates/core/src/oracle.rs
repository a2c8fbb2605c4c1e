//! Brute-force checks of the two optimality claims: a constant relative
//! residual is the min-max control for a Dahlquist step, and the unwinding
//! formula picks the branch of smallest `|delta|`.
//!
//! Everything here is `f64` and independent of the closed forms it checks,
//! apart from evaluating `R(mu)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::backward_error::{delta_on_branch, optimal_delta, unwinding_k};
use crate::methods::{catalog, resolve};
use crate::scalar::ln_principal;

type C64 = Complex<f64>;

pub const MAX_PIECES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("no control reaches a zero target")]
    NoFeasibleControl,
    #[error("mu = 0")]
    ZeroMu,
    #[error("bad oracle parameters: {0}")]
    BadParams(String),
}

/// `|(ln r + 2 pi i k) / mu - 1|` over `|k| <= k_range`; ties go to the
/// `k` closer to zero.
pub fn scan_k(mu: C64, r_value: C64, k_range: u32) -> i64 {
    let l = r_value.ln();
    let cost = |k: i64| ((l + C64::new(0.0, 2.0 * PI * k as f64)) / mu - 1.0).norm();
    let mut best = 0;
    let mut best_cost = cost(0);
    for m in 1..=k_range as i64 {
        for k in [-m, m] {
            let c = cost(k);
            if c < best_cost {
                best = k;
                best_cost = c;
            }
        }
    }
    best
}

/// Settings for [`min_max_control`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlSearch {
    pub pieces: usize,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Branches `|k| <= k_range` of the endpoint constraint are searched.
    pub k_range: u32,
}

impl Default for ControlSearch {
    fn default() -> Self {
        Self { pieces: 8, iterations: 200, restarts: 20, seed: 0, k_range: 8 }
    }
}

fn max_norm(u: &[C64]) -> f64 {
    u.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Shifts `u` so that its mean is `target`.
fn project(u: &mut [C64], target: C64) {
    let mean = u.iter().sum::<C64>() / u.len() as f64;
    let shift = target - mean;
    for z in u.iter_mut() {
        *z += shift;
    }
}

/// Pairwise descent: the largest piece is averaged with whichever partner
/// lowers their joint maximum the most. Pair averages keep the mean fixed.
fn descend(u: &mut [C64], iterations: usize) -> f64 {
    let n = u.len();
    for _ in 0..iterations {
        let i = (0..n).max_by(|&a, &b| u[a].norm().total_cmp(&u[b].norm())).unwrap();
        let top = u[i].norm();
        let mut best: Option<(usize, f64)> = None;
        for j in (0..n).filter(|&j| j != i) {
            let avg = ((u[i] + u[j]) / 2.0).norm();
            if avg < top && best.is_none_or(|(_, b)| avg < b) {
                best = Some((j, avg));
            }
        }
        let Some((j, _)) = best else { break };
        let avg = (u[i] + u[j]) / 2.0;
        u[i] = avg;
        u[j] = avg;
    }
    max_norm(u)
}

/// Smallest `max_j |u_j|` found over piecewise-constant relative residuals
/// `u_1..u_pieces` on equal subintervals that carry `y` to `target_ratio * y`
/// in one step of size `mu`, i.e. `exp(mu (1 + mean u)) = target_ratio`.
///
/// Each branch of the endpoint condition is searched from the constant start
/// and from `restarts` seeded random starts.
pub fn min_max_control(mu: C64, target_ratio: C64, search: &ControlSearch) -> Result<f64, OracleError> {
    if target_ratio.norm() == 0.0 {
        return Err(OracleError::NoFeasibleControl);
    }
    if mu.norm() == 0.0 {
        return Err(OracleError::ZeroMu);
    }
    if search.pieces == 0 || search.pieces > MAX_PIECES {
        return Err(OracleError::BadParams(format!("pieces = {} not in 1..={MAX_PIECES}", search.pieces)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let l = target_ratio.ln();
    let k_range = search.k_range as i64;
    let mut best = f64::INFINITY;
    for k in -k_range..=k_range {
        let mean = (l + C64::new(0.0, 2.0 * PI * k as f64)) / mu - 1.0;
        let mut u = vec![mean; search.pieces];
        best = best.min(descend(&mut u, search.iterations));
        let scale = 2.0 * mean.norm() + 1.0;
        for _ in 0..search.restarts {
            for z in u.iter_mut() {
                *z = C64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale));
            }
            project(&mut u, mean);
            best = best.min(descend(&mut u, search.iterations));
        }
    }
    Ok(best)
}

/// One failed check.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub method: String,
    pub mu: C64,
    pub r_value: C64,
    pub claimed_k: i64,
    pub scanned_k: i64,
    pub abs_delta: f64,
    pub control: f64,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at mu = {:.17e}{:+.17e}i: R = {:.17e}{:+.17e}i, claimed k = {}, scanned k = {}, |delta| = {:.17e}, min-max control = {:.17e}",
            self.method,
            self.mu.re,
            self.mu.im,
            self.r_value.re,
            self.r_value.im,
            self.claimed_k,
            self.scanned_k,
            self.abs_delta,
            self.control
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub instances: usize,
    /// Draws skipped because `R(mu)` was zero or infinite or `mu` was tiny.
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Tolerance on the min-max control against `|delta|`.
pub const CONTROL_TOL: f64 = 1e-6;

/// [`verify_with`] using the library's unwinding number.
pub fn verify(samples: usize, seed: u64) -> VerifyReport {
    verify_with(samples, seed, &ControlSearch::default(), |mu, r| unwinding_k(mu, r).unwrap_or(0))
}

/// Draws `samples` pairs of a catalog method and `mu` uniform in
/// `[-20, 20]^2`, and checks at each that `claimed_k(mu, R(mu))` equals
/// [`scan_k`] with range 8 and that [`min_max_control`] matches `|delta|` on
/// that branch to [`CONTROL_TOL`].
pub fn verify_with<F>(samples: usize, seed: u64, search: &ControlSearch, claimed_k: F) -> VerifyReport
where
    F: Fn(C64, C64) -> i64,
{
    let methods: Vec<_> = catalog()
        .iter()
        .map(|s| (s.to_string(), resolve::<f64>(s).expect("catalog methods resolve").r))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport { instances: 0, skipped: 0, counterexamples: Vec::new() };
    for i in 0..samples {
        let (name, r) = &methods[rng.random_range(0..methods.len())];
        let mu = C64::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
        if mu.norm() < 1e-3 {
            report.skipped += 1;
            continue;
        }
        let sample = match optimal_delta(mu, r) {
            Ok(s) if !s.singular => s,
            _ => {
                report.skipped += 1;
                continue;
            }
        };
        report.instances += 1;
        let rv = sample.r_value;
        let claimed = claimed_k(mu, rv);
        let scanned = scan_k(mu, rv, 8);
        let abs_delta = delta_on_branch(mu, ln_principal(rv), claimed).norm();
        let search = ControlSearch { seed: seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15), ..*search };
        let control = min_max_control(mu, rv, &search).unwrap_or(f64::NAN);
        if claimed != scanned || !((control - abs_delta).abs() <= CONTROL_TOL) {
            report.counterexamples.push(Counterexample {
                method: name.clone(),
                mu,
                r_value: rv,
                claimed_k: claimed,
                scanned_k: scanned,
                abs_delta,
                control,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_delta(mu: C64, r: C64) -> f64 {
        let k = unwinding_k(mu, r).unwrap();
        delta_on_branch(mu, ln_principal(r), k).norm()
    }

    #[test]
    fn real_log_needs_no_winding() {
        assert_eq!(scan_k(C64::new(0.7, 0.0), C64::new(1.9, 0.0), 8), 0);
    }

    #[test]
    fn euler_left_edge_tie_goes_to_zero() {
        assert_eq!(scan_k(C64::new(-2.0, 0.0), C64::new(-1.0, 0.0), 8), 0);
    }

    #[test]
    fn exact_target_needs_no_control() {
        let mu = C64::new(0.3, -1.2);
        let v = min_max_control(mu, mu.exp(), &ControlSearch::default()).unwrap();
        assert!(v < 1e-12, "{v}");
    }

    #[test]
    fn single_piece_is_closed_form() {
        let mu = C64::new(-1.5, 2.5);
        let r = C64::new(0.2, 0.4);
        let search = ControlSearch { pieces: 1, ..Default::default() };
        let v = min_max_control(mu, r, &search).unwrap();
        assert!((v - exp_delta(mu, r)).abs() < 1e-12);
    }

    #[test]
    fn zero_target_is_infeasible() {
        let e = min_max_control(C64::new(1.0, 0.0), C64::new(0.0, 0.0), &ControlSearch::default());
        assert_eq!(e, Err(OracleError::NoFeasibleControl));
    }

    #[test]
    fn rejects_too_many_pieces() {
        let search = ControlSearch { pieces: MAX_PIECES + 1, ..Default::default() };
        assert!(min_max_control(C64::new(1.0, 0.0), C64::new(2.0, 0.0), &search).is_err());
    }

    #[test]
    fn random_starts_do_not_beat_the_bound() {
        let mu = C64::new(3.0, 7.0);
        let r = C64::new(-0.4, 1.1);
        let v = min_max_control(mu, r, &ControlSearch { seed: 11, ..Default::default() }).unwrap();
        assert!((v - exp_delta(mu, r)).abs() <= CONTROL_TOL);
    }

    #[test]
    fn small_run_passes() {
        let report = verify(20, 3);
        assert!(report.passed(), "{:?}", report.counterexamples.first());
        assert!(report.instances > 0);
    }

    #[test]
    fn tampered_unwinding_is_caught() {
        let report = verify_with(20, 3, &ControlSearch::default(), |mu, r| unwinding_k(mu, r).unwrap() + 1);
        assert!(!report.passed());
    }
}
