//! Builtin Runge-Kutta coefficient sets.

use crate::ratfun::ButcherTableau;
use crate::scalar::Scalar;

/// Fehlberg 4(5) stage matrix, shared by both members of the pair.
const FEHLBERG_A: [[f64; 6]; 6] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 4.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0, 0.0],
    [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0, 0.0],
    [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0, 0.0],
    [-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0, 0.0],
];

const FEHLBERG_B4: [f64; 6] = [25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0, 0.0];

const FEHLBERG_B5: [f64; 6] = [
    16.0 / 135.0,
    0.0,
    6656.0 / 12825.0,
    28561.0 / 56430.0,
    -9.0 / 50.0,
    2.0 / 55.0,
];

fn lit<T: Scalar>(x: &f64) -> T {
    T::lit(*x)
}

fn fehlberg<T: Scalar>(weights: &[f64; 6], stages: usize) -> ButcherTableau<T> {
    let a = FEHLBERG_A[..stages]
        .iter()
        .map(|row| row[..stages].iter().map(lit).collect())
        .collect();
    let b = weights[..stages].iter().map(lit).collect();
    ButcherTableau::new(a, b).expect("Fehlberg coefficients are well formed")
}

/// Fourth-order member of RKF45. Its sixth weight is zero, so the sixth
/// stage is dropped.
pub fn rkf4<T: Scalar>() -> ButcherTableau<T> {
    fehlberg(&FEHLBERG_B4, 5)
}

/// Fifth-order member of RKF45.
pub fn rkf5<T: Scalar>() -> ButcherTableau<T> {
    fehlberg(&FEHLBERG_B5, 6)
}

/// Diagonal value of the two-stage third-order SDIRK method.
///
/// Third order forces `gamma^2 - gamma + 1/6 = 0`, whose roots are
/// `(3 +- sqrt 3) / 6`. The larger root gives the A-stable member.
pub fn sdirk3_gamma<T: Scalar>(large: bool) -> T {
    let three = T::lit(3.0);
    let root = three.sqrt();
    let g = if large { three + root } else { three - root };
    g / T::lit(6.0)
}

/// `A = [[gamma, 0], [1 - 2 gamma, gamma]]`, `b = [1/2, 1/2]`.
pub fn sdirk3<T: Scalar>(large: bool) -> ButcherTableau<T> {
    let g = sdirk3_gamma::<T>(large);
    let half = T::lit(0.5);
    let a = vec![vec![g, T::zero()], vec![T::one() - g - g, g]];
    ButcherTableau::new(a, vec![half, half]).expect("SDIRK coefficients are well formed")
}
