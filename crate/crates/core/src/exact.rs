//! Exact polynomials in `mu` with rational coefficients.
//!
//! Used where elimination must not introduce rounding: the Chebyshev tau
//! system is solved over `Q[mu]` by fraction-free (Bareiss) elimination and
//! only the final stability function is rounded to floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::ratfun::Polynomial;
use crate::scalar::Scalar;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial over `Q`, lowest power first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a + b mu`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Scaled so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder of Euclidean division.
    ///
    /// # Panics
    /// If `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + ddeg] / dlead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * d;
            }
            quot[shift] = c;
        }
        rem.truncate(ddeg);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Division known to be exact.
    ///
    /// # Panics
    /// If the remainder is nonzero.
    pub fn div_exact(&self, divisor: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Rounds every coefficient to the nearest representable scalar.
    pub fn to_polynomial<T: Scalar>(&self) -> Polynomial<T> {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c.to_f64().unwrap_or(f64::NAN);
                    Complex::new(T::from_f64(v).unwrap(), T::zero())
                })
                .collect(),
        )
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: Self) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: Self) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: Self) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}*mu"),
                _ => format!("{c}*mu^{j}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Determinant over `Q[mu]` by Bareiss fraction-free elimination; every
/// division is exact.
pub fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    if n == 0 {
        return QPoly::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut negate = false;
    let mut prev = QPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return QPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = QPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}
