//! Complex-coefficient polynomials and rational functions in `mu`, the
//! Padé approximants of `exp`, and stability functions of Runge-Kutta
//! tableaus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RatfunError {
    #[error("mu = {0} is a pole of the rational function")]
    PoleAtPoint(String),
    #[error("power series requested at a pole (denominator vanishes at 0)")]
    SeriesAtPole,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("malformed Butcher tableau: {0}")]
    BadTableau(String),
}

/// Dense polynomial, lowest power first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T: Scalar> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> Polynomial<T> {
    /// Builds a polynomial, dropping trailing coefficients that are exactly zero.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    /// The identity polynomial `mu`.
    pub fn mu() -> Self {
        Self::new(vec![Complex::zero(), Complex::one()])
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex<T>> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `mu^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> Complex<T> {
        self.coeffs.get(j).copied().unwrap_or_else(Complex::zero)
    }

    /// Drops trailing coefficients with modulus at most `tol`.
    pub fn trimmed(&self, tol: T) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= tol) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `p(-mu)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| if j % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * T::from_usize(j).unwrap())
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

fn fmt_complex<T: Scalar>(c: Complex<T>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im.is_zero() {
        write!(f, "{}", c.re)
    } else {
        write!(f, "({}{:+}i)", c.re, c.im)
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            fmt_complex(c, f)?;
            match j {
                0 => {}
                1 => write!(f, "*mu")?,
                _ => write!(f, "*mu^{j}")?,
            }
        }
        Ok(())
    }
}

/// `num(mu) / den(mu)` with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<T: Scalar> {
    num: Polynomial<T>,
    den: Polynomial<T>,
    // num - den, kept for accurate evaluation of R - 1 near mu = 0
    excess: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    /// Normalizes so that the denominator's leading coefficient is 1.
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self, RatfunError> {
        let lead = den.leading().ok_or(RatfunError::ZeroDenominator)?;
        let inv = lead.inv();
        let (num, mut den) = if lead.is_one() {
            (num, den)
        } else {
            (num.scale(inv), den.scale(inv))
        };
        if let Some(last) = den.coeffs.last_mut() {
            *last = Complex::one();
        }
        let excess = &num - &den;
        Ok(Self { num, den, excess })
    }

    pub fn polynomial(p: Polynomial<T>) -> Self {
        Self::new(p, Polynomial::one()).expect("constant denominator")
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    /// True when the denominator is constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, mu: Complex<T>) -> Result<Complex<T>, RatfunError> {
        let d = self.den.eval(mu);
        if d.norm() < T::zero_threshold() {
            return Err(RatfunError::PoleAtPoint(format!("{mu}")));
        }
        Ok(self.num.eval(mu) / d)
    }

    /// `R(mu) - 1`, evaluated as `(num - den)(mu) / den(mu)` so that the
    /// cancellation near `mu = 0` happens exactly in the coefficients.
    pub fn eval_minus_one(&self, mu: Complex<T>) -> Result<Complex<T>, RatfunError> {
        let d = self.den.eval(mu);
        if d.norm() < T::zero_threshold() {
            return Err(RatfunError::PoleAtPoint(format!("{mu}")));
        }
        Ok(self.excess.eval(mu) / d)
    }

    /// First `n_terms` Maclaurin coefficients, by recursive division.
    pub fn series(&self, n_terms: usize) -> Result<Vec<Complex<T>>, RatfunError> {
        let d0 = self.den.coeff(0);
        if d0.norm() < T::zero_threshold() {
            return Err(RatfunError::SeriesAtPole);
        }
        let mut out: Vec<Complex<T>> = Vec::with_capacity(n_terms);
        for j in 0..n_terms {
            let mut acc = self.num.coeff(j);
            let upper = j.min(self.den.coeffs.len().saturating_sub(1));
            for i in 1..=upper {
                acc = acc - self.den.coeffs[i] * out[j - i];
            }
            out.push(acc / d0);
        }
        Ok(out)
    }

    /// `R(-mu)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect()).expect("reflection keeps the degree")
    }

    /// True when both polynomials have real coefficients.
    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    /// Maximum relative coefficient mismatch of `self.num * other.den` against
    /// `other.num * self.den`; zero when the two functions are identical.
    pub fn cross_mismatch(&self, other: &Self) -> T {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff());
        if scale.is_zero() {
            return T::zero();
        }
        let diff = &lhs - &rhs;
        diff.max_abs_coeff() / scale
    }
}

impl<T: Scalar> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num.scale(self.den.coeff(0).inv()))
        } else {
            // show with den(0) = 1 when possible, the usual textbook form
            let d0 = self.den.coeff(0);
            let s = if d0.norm() > T::zero_threshold() { d0.inv() } else { Complex::one() };
            write!(f, "({}) / ({})", self.num.scale(s), self.den.scale(s))
        }
    }
}

/// The `(m, n)` Padé approximant of `exp(mu)`: numerator degree `m`,
/// denominator degree `n`.
///
/// Uses the closed-form coefficients
/// `p_j = (m+n-j)! m! / ((m+n)! j! (m-j)!)` and `q_j = (-1)^j (m+n-j)! n! / ((m+n)! j! (n-j)!)`,
/// accumulated as running ratios so no factorial is formed.
///
/// # Panics
/// If `m + n > 64`.
pub fn pade_exp<T: Scalar>(m: usize, n: usize) -> RationalFunction<T> {
    assert!(m + n <= 64, "Padé degree m + n = {} exceeds 64", m + n);
    let side = |deg: usize, alternate: bool| {
        let total = m + n;
        let mut c = T::one();
        let mut out = Vec::with_capacity(deg + 1);
        for j in 0..=deg {
            let signed = if alternate && j % 2 == 1 { -c } else { c };
            out.push(Complex::new(signed, T::zero()));
            if j < deg {
                let top = T::from_usize(deg - j).unwrap();
                let bottom = T::from_usize((total - j) * (j + 1)).unwrap();
                c = c * top / bottom;
            }
        }
        Polynomial::new(out)
    };
    RationalFunction::new(side(m, false), side(n, true)).expect("Padé denominator is nonzero")
}

/// Runge-Kutta coefficients: an `s x s` stage matrix and `s` weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ButcherTableau<T: Scalar> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
}

impl<T: Scalar> ButcherTableau<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>) -> Result<Self, RatfunError> {
        let s = b.len();
        if s == 0 {
            return Err(RatfunError::BadTableau("no stages".into()));
        }
        if a.len() != s || a.iter().any(|row| row.len() != s) {
            return Err(RatfunError::BadTableau(format!(
                "stage matrix must be {s}x{s} to match {s} weights"
            )));
        }
        if a.iter().flatten().chain(b.iter()).any(|x| !x.is_finite()) {
            return Err(RatfunError::BadTableau("non-finite coefficient".into()));
        }
        Ok(Self { a, b })
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Vec<T>] {
        &self.a
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// Row sums of the stage matrix.
    pub fn abscissae(&self) -> Vec<T> {
        self.a
            .iter()
            .map(|row| row.iter().fold(T::zero(), |s, &x| s + x))
            .collect()
    }

    /// Strictly lower-triangular stage matrix.
    pub fn is_explicit(&self) -> bool {
        self.a
            .iter()
            .enumerate()
            .all(|(i, row)| row[i..].iter().all(|x| x.is_zero()))
    }

    pub fn cast<U: Scalar>(&self) -> ButcherTableau<U> {
        let c = |x: &T| U::from_f64(x.to_f64().unwrap()).unwrap();
        ButcherTableau {
            a: self.a.iter().map(|row| row.iter().map(c).collect()).collect(),
            b: self.b.iter().map(c).collect(),
        }
    }
}

/// Determinant of a small matrix of polynomials, summed over permutations
/// with a subset DP: `O(2^s * s)` polynomial products.
fn poly_det<T: Scalar>(m: &[Vec<Polynomial<T>>]) -> Polynomial<T> {
    let s = m.len();
    assert!(s <= 20, "determinant of a {s}x{s} polynomial matrix is out of range");
    let full = 1usize << s;
    let mut dp: Vec<Polynomial<T>> = vec![Polynomial::zero(); full];
    dp[0] = Polynomial::one();
    for mask in 0..full {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == s {
            continue;
        }
        for col in 0..s {
            if mask & (1 << col) != 0 || m[row][col].is_zero() {
                continue;
            }
            // inversions added: used columns to the right of `col`
            let above = (mask >> (col + 1)).count_ones();
            let term = &dp[mask] * &m[row][col];
            let term = if above % 2 == 1 { -&term } else { term };
            let next = mask | (1 << col);
            dp[next] = &dp[next] + &term;
        }
    }
    dp[full - 1].clone()
}

/// `R(mu) = det(I - mu A + mu 1 b^T) / det(I - mu A)`.
pub fn stability_function<T: Scalar>(tab: &ButcherTableau<T>) -> RationalFunction<T> {
    let s = tab.stages();
    let entry = |i: usize, j: usize, with_b: bool| {
        let diag = if i == j { Complex::one() } else { Complex::zero() };
        let mut lin = -tab.a[i][j];
        if with_b {
            lin = lin + tab.b[j];
        }
        Polynomial::new(vec![diag, Complex::new(lin, T::zero())])
    };
    let build = |with_b: bool| -> Vec<Vec<Polynomial<T>>> {
        (0..s).map(|i| (0..s).map(|j| entry(i, j, with_b)).collect()).collect()
    };
    let num = poly_det(&build(true));
    let den = poly_det(&build(false));
    RationalFunction::new(num, den).expect("det(I - mu A) is 1 at mu = 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    fn poly(cs: &[f64]) -> Polynomial<f64> {
        Polynomial::from_real(cs)
    }

    #[test]
    fn euler_at_minus_two() {
        let r = RationalFunction::polynomial(poly(&[1.0, 1.0]));
        assert_eq!(r.eval(c(-2.0)).unwrap(), c(-1.0));
    }

    #[test]
    fn consistent_at_zero() {
        let r = RationalFunction::new(poly(&[1.0, 0.5]), poly(&[1.0, -0.5])).unwrap();
        assert_eq!(r.eval(c(0.0)).unwrap(), c(1.0));
    }

    #[test]
    fn backward_euler_pole() {
        let r = RationalFunction::new(poly(&[1.0]), poly(&[1.0, -1.0])).unwrap();
        assert!(matches!(r.eval(c(1.0)), Err(RatfunError::PoleAtPoint(_))));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(poly(&[1.0]), Polynomial::zero()),
            Err(RatfunError::ZeroDenominator)
        );
    }

    #[test]
    fn monic_denominator() {
        let r = RationalFunction::new(poly(&[1.0, 0.5]), poly(&[1.0, -0.5])).unwrap();
        assert_eq!(r.den().leading().unwrap(), c(1.0));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = poly(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::<f64>::from_real(&[0.0]).degree(), None);
        assert_eq!(poly(&[1.0, 1e-15]).trimmed(1e-14).degree(), Some(0));
    }

    #[test]
    fn series_of_midpoint() {
        // long division of (1 + mu/2) by (1 - mu/2): 1, 1, 1/2, 1/4
        let r = RationalFunction::new(poly(&[1.0, 0.5]), poly(&[1.0, -0.5])).unwrap();
        let s = r.series(4).unwrap();
        let want = [1.0, 1.0, 0.5, 0.25];
        for (got, want) in s.iter().zip(want) {
            assert!((got - c(want)).norm() < 1e-15);
        }
    }

    #[test]
    fn series_geometric() {
        let r = RationalFunction::new(poly(&[1.0]), poly(&[1.0, -1.0])).unwrap();
        assert_eq!(r.series(3).unwrap(), vec![c(1.0); 3]);
    }

    #[test]
    fn series_of_squared_quarter_ratio() {
        // (1 + mu/4)^2 / (1 - mu/4)^2 = exp(4 artanh(mu/4)) = 1 + mu + mu^2/2 + 3 mu^3 / 16 + ...
        let num = poly(&[1.0, 0.5, 1.0 / 16.0]);
        let den = poly(&[1.0, -0.5, 1.0 / 16.0]);
        let s = RationalFunction::new(num, den).unwrap().series(4).unwrap();
        let want = [1.0, 1.0, 0.5, 3.0 / 16.0];
        for (got, want) in s.iter().zip(want) {
            assert!((got - c(want)).norm() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn series_at_pole_errors() {
        let r = RationalFunction::new(poly(&[1.0]), poly(&[0.0, 1.0])).unwrap();
        assert_eq!(r.series(3), Err(RatfunError::SeriesAtPole));
    }

    #[test]
    fn pade_one_one_is_midpoint() {
        let r = pade_exp::<f64>(1, 1);
        let want = RationalFunction::new(poly(&[1.0, 0.5]), poly(&[1.0, -0.5])).unwrap();
        assert!(r.cross_mismatch(&want) < 1e-15);
    }

    #[test]
    fn pade_p_zero_is_taylor() {
        let r = pade_exp::<f64>(5, 0);
        assert!(r.is_polynomial());
        let mut fact = 1.0;
        for j in 0..=5 {
            if j > 0 {
                fact *= j as f64;
            }
            assert!((r.num().coeff(j) - c(1.0 / fact)).norm() < 1e-16);
        }
    }

    #[test]
    fn pade_zero_one_is_backward_euler() {
        let r = pade_exp::<f64>(0, 1);
        let want = RationalFunction::new(poly(&[1.0]), poly(&[1.0, -1.0])).unwrap();
        assert!(r.cross_mismatch(&want) < 1e-16);
    }

    #[test]
    #[should_panic]
    fn pade_degree_limit() {
        let _ = pade_exp::<f64>(40, 25);
    }

    #[test]
    fn pade_series_matches_exp() {
        for (m, n) in [(1, 1), (2, 2), (3, 1), (0, 4), (4, 4), (6, 3)] {
            let s = pade_exp::<f64>(m, n).series(m + n + 1).unwrap();
            let mut inv_fact = 1.0;
            for (j, sj) in s.iter().enumerate() {
                if j > 0 {
                    inv_fact /= j as f64;
                }
                assert!(
                    (sj - c(inv_fact)).norm() <= 1e-12 * inv_fact,
                    "({m},{n}) coefficient {j}: {sj} vs {inv_fact}"
                );
            }
        }
    }

    fn tab(a: Vec<Vec<f64>>, b: Vec<f64>) -> ButcherTableau<f64> {
        ButcherTableau::new(a, b).unwrap()
    }

    #[test]
    fn explicit_euler_tableau() {
        let r = stability_function(&tab(vec![vec![0.0]], vec![1.0]));
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &poly(&[1.0, 1.0]));
    }

    #[test]
    fn implicit_euler_tableau() {
        let r = stability_function(&tab(vec![vec![1.0]], vec![1.0]));
        let want = RationalFunction::new(poly(&[1.0]), poly(&[1.0, -1.0])).unwrap();
        assert!(r.cross_mismatch(&want) < 1e-16);
    }

    #[test]
    fn sdirk_two_stage_closed_form() {
        for gamma in [0.25, (3.0 + 3f64.sqrt()) / 6.0, (3.0 - 3f64.sqrt()) / 6.0] {
            let t = tab(vec![vec![gamma, 0.0], vec![1.0 - 2.0 * gamma, gamma]], vec![0.5, 0.5]);
            let r = stability_function(&t);
            let num = poly(&[1.0, 1.0 - 2.0 * gamma, gamma * gamma - 2.0 * gamma + 0.5]);
            let den = poly(&[1.0, -2.0 * gamma, gamma * gamma]);
            let want = RationalFunction::new(num, den).unwrap();
            assert!(r.cross_mismatch(&want) < 1e-15, "gamma = {gamma}");
        }
    }

    #[test]
    fn explicit_tableau_has_unit_denominator() {
        let t = tab(
            vec![vec![0.0, 0.0, 0.0], vec![0.5, 0.0, 0.0], vec![-1.0, 2.0, 0.0]],
            vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
        );
        assert!(t.is_explicit());
        let r = stability_function(&t);
        assert_eq!(r.den(), &Polynomial::one());
        // Kutta's third-order method: 1 + mu + mu^2/2 + mu^3/6
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0];
        for (j, w) in want.iter().enumerate() {
            assert!((r.num().coeff(j) - c(*w)).norm() < 1e-15);
        }
    }

    #[test]
    fn malformed_tableau() {
        assert!(ButcherTableau::new(vec![vec![0.0, 0.0]], vec![1.0, 0.0]).is_err());
        assert!(ButcherTableau::<f64>::new(vec![], vec![]).is_err());
        assert!(ButcherTableau::new(vec![vec![f64::NAN]], vec![1.0]).is_err());
    }

    #[test]
    fn pade_duality() {
        for (m, n) in [(1, 2), (3, 1), (4, 4), (2, 5), (8, 3)] {
            let a = pade_exp::<f64>(m, n);
            let b = pade_exp::<f64>(n, m).reflect();
            // a(mu) * b(mu) == 1  <=>  a.num * b.num == a.den * b.den
            let lhs = a.num() * b.num();
            let rhs = a.den() * b.den();
            let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff());
            assert!((&lhs - &rhs).max_abs_coeff() <= 1e-12 * scale, "({m},{n})");
        }
    }

    #[test]
    fn diagonal_pade_unit_modulus_on_imaginary_axis() {
        for n in 1..=8 {
            let r = pade_exp::<f64>(n, n);
            for i in 0..200 {
                let y = -10.0 + 20.0 * i as f64 / 199.0;
                let v = r.eval(C::new(0.0, y)).unwrap();
                assert!((v.norm() - 1.0).abs() <= 1e-10, "n={n} y={y}");
            }
        }
    }

    #[test]
    fn single_precision_pade() {
        let r = pade_exp::<f32>(2, 2);
        let v = r.eval(Complex::new(0.5f32, 0.0)).unwrap();
        assert!((v.re - 0.5f32.exp()).abs() < 1e-4);
    }
}
