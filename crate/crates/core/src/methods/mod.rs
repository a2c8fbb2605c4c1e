//! Catalog of one-step methods and the method-spec string grammar.
//!
//! ```text
//! theta:<float>        taylor:<int>         pade:<int>,<int>
//! rk:rkf4  rk:rkf5     rk:@<tableau.json>   sdirk3:large | sdirk3:small
//! tau:<int>
//! ```
//!
//! `euler`, `midpoint` and `backward-euler` are aliases for `theta:0`,
//! `theta:0.5` and `theta:1`.

mod tableaus;
mod tau;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratfun::{pade_exp, stability_function, ButcherTableau, RatfunError, RationalFunction};
use crate::scalar::Scalar;

pub use tableaus::{rkf4, rkf5, sdirk3, sdirk3_gamma};
pub use tau::{tau_interpolant, tau_stability_exact, tau_stability_function, TauInterpolant, MAX_TAU_DEGREE};

/// Largest Taylor order and Padé total degree accepted.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MethodError {
    #[error("cannot parse method spec {0:?}")]
    Parse(String),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("bad method parameters: {0}")]
    BadParams(String),
    #[error("tau system of degree {0} is singular")]
    DegenerateSystem(usize),
    #[error("reading tableau {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Tableau(#[from] RatfunError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdirkVariant {
    LargeGamma,
    SmallGamma,
}

/// Where a Runge-Kutta tableau comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum RkSource {
    Rkf4,
    Rkf5,
    File {
        path: String,
        label: Option<String>,
        tableau: ButcherTableau<f64>,
    },
}

/// Declarative description of a method's stability function.
#[derive(Clone, Debug, PartialEq)]
pub enum MethodSpec {
    Theta(f64),
    Taylor(usize),
    Pade(usize, usize),
    Rk(RkSource),
    Sdirk3(SdirkVariant),
    Tau(usize),
}

/// On-disk tableau: `{"a": [[...], ...], "b": [...], "label": "..."}`.
#[derive(Debug, Deserialize, Serialize)]
pub struct TableauFile {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    #[serde(default)]
    pub label: Option<String>,
}

impl MethodSpec {
    /// Parses a spec, resolving `rk:@path` relative to the working directory.
    pub fn parse(s: &str) -> Result<Self, MethodError> {
        s.parse()
    }

    pub fn validate(&self) -> Result<(), MethodError> {
        let bad = |msg: String| Err(MethodError::BadParams(msg));
        match *self {
            MethodSpec::Theta(t) if !(0.0..=1.0).contains(&t) => bad(format!("theta = {t} not in [0, 1]")),
            MethodSpec::Taylor(p) if p == 0 || p > MAX_DEGREE => {
                bad(format!("taylor order {p} not in 1..={MAX_DEGREE}"))
            }
            MethodSpec::Pade(m, n) if m + n == 0 || m + n > MAX_DEGREE => {
                bad(format!("pade degrees ({m},{n}) need 1 <= m + n <= {MAX_DEGREE}"))
            }
            MethodSpec::Tau(n) if n == 0 || n > MAX_TAU_DEGREE => {
                bad(format!("tau degree {n} not in 1..={MAX_TAU_DEGREE}"))
            }
            _ => Ok(()),
        }
    }

    /// Human-readable name.
    pub fn label(&self) -> String {
        match self {
            MethodSpec::Theta(t) if *t == 0.0 => "explicit Euler".into(),
            MethodSpec::Theta(t) if *t == 0.5 => "implicit midpoint".into(),
            MethodSpec::Theta(t) if *t == 1.0 => "implicit Euler".into(),
            MethodSpec::Theta(t) => format!("theta method, theta = {t}"),
            MethodSpec::Taylor(p) => format!("Taylor series, order {p}"),
            MethodSpec::Pade(m, n) => format!("({m},{n}) Padé"),
            MethodSpec::Rk(RkSource::Rkf4) => "RKF45, fourth-order member".into(),
            MethodSpec::Rk(RkSource::Rkf5) => "RKF45, fifth-order member".into(),
            MethodSpec::Rk(RkSource::File { path, label, .. }) => {
                label.clone().unwrap_or_else(|| format!("tableau from {path}"))
            }
            MethodSpec::Sdirk3(SdirkVariant::LargeGamma) => "3rd-order SDIRK, larger gamma".into(),
            MethodSpec::Sdirk3(SdirkVariant::SmallGamma) => "3rd-order SDIRK, smaller gamma".into(),
            MethodSpec::Tau(n) => format!("Lanczos tau, n = {n}"),
        }
    }

    fn from_alias(s: &str) -> Option<Self> {
        match s {
            "euler" => Some(MethodSpec::Theta(0.0)),
            "midpoint" => Some(MethodSpec::Theta(0.5)),
            "backward-euler" => Some(MethodSpec::Theta(1.0)),
            _ => None,
        }
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<usize, MethodError> {
    s.trim().parse().map_err(|_| MethodError::Parse(whole.to_string()))
}

fn load_tableau(path: &str) -> Result<RkSource, MethodError> {
    let io = |reason: String| MethodError::Io { path: path.to_string(), reason };
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| io(e.to_string()))?;
    let file: TableauFile = serde_json::from_str(&text).map_err(|e| io(e.to_string()))?;
    let tableau = ButcherTableau::new(file.a, file.b)?;
    Ok(RkSource::File { path: path.to_string(), label: file.label, tableau })
}

impl FromStr for MethodSpec {
    type Err = MethodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(spec) = Self::from_alias(s) {
            return Ok(spec);
        }
        let (family, params) = s.split_once(':').ok_or_else(|| MethodError::Parse(s.to_string()))?;
        let spec = match family {
            "theta" => {
                let t: f64 = params.trim().parse().map_err(|_| MethodError::Parse(s.to_string()))?;
                MethodSpec::Theta(t)
            }
            "taylor" => MethodSpec::Taylor(parse_uint(params, s)?),
            "pade" => {
                let (m, n) = params.split_once(',').ok_or_else(|| MethodError::Parse(s.to_string()))?;
                MethodSpec::Pade(parse_uint(m, s)?, parse_uint(n, s)?)
            }
            "rk" => match params {
                "rkf4" => MethodSpec::Rk(RkSource::Rkf4),
                "rkf5" => MethodSpec::Rk(RkSource::Rkf5),
                p if p.starts_with('@') => MethodSpec::Rk(load_tableau(&p[1..])?),
                other => return Err(MethodError::UnknownBuiltin(other.to_string())),
            },
            "sdirk3" => match params {
                "large" => MethodSpec::Sdirk3(SdirkVariant::LargeGamma),
                "small" => MethodSpec::Sdirk3(SdirkVariant::SmallGamma),
                other => return Err(MethodError::UnknownBuiltin(other.to_string())),
            },
            "tau" => MethodSpec::Tau(parse_uint(params, s)?),
            _ => return Err(MethodError::UnknownBuiltin(family.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Theta(t) => write!(f, "theta:{t}"),
            MethodSpec::Taylor(p) => write!(f, "taylor:{p}"),
            MethodSpec::Pade(m, n) => write!(f, "pade:{m},{n}"),
            MethodSpec::Rk(RkSource::Rkf4) => write!(f, "rk:rkf4"),
            MethodSpec::Rk(RkSource::Rkf5) => write!(f, "rk:rkf5"),
            MethodSpec::Rk(RkSource::File { path, .. }) => write!(f, "rk:@{path}"),
            MethodSpec::Sdirk3(SdirkVariant::LargeGamma) => write!(f, "sdirk3:large"),
            MethodSpec::Sdirk3(SdirkVariant::SmallGamma) => write!(f, "sdirk3:small"),
            MethodSpec::Tau(n) => write!(f, "tau:{n}"),
        }
    }
}

/// A resolved method: its stability function and classical order.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodInfo<T: Scalar> {
    pub spec: MethodSpec,
    pub r: RationalFunction<T>,
    pub nominal_order: usize,
}

/// Number of leading Maclaurin coefficients of `r` that agree with `1/j!`,
/// minus one: the order of `r` as an approximation to `exp`.
pub fn measured_order<T: Scalar>(r: &RationalFunction<T>, rel_tol: T) -> usize {
    let deg = |p: &crate::ratfun::Polynomial<T>| p.degree().unwrap_or(0);
    let cap = deg(r.num()) + deg(r.den()) + 2;
    let Ok(series) = r.series(cap + 1) else {
        return 0;
    };
    let mut inv_fact = T::one();
    let mut order = 0;
    for (j, c) in series.iter().enumerate() {
        if j > 0 {
            inv_fact = inv_fact / T::from_usize(j).unwrap();
        }
        if (*c - inv_fact).norm() > rel_tol * inv_fact {
            break;
        }
        order = j;
    }
    order
}

fn tolerance<T: Scalar>() -> T {
    T::epsilon().sqrt() * T::lit(1e-2)
}

/// Builds the stability function and nominal order of a method.
pub fn resolve<T: Scalar>(spec: &MethodSpec) -> Result<MethodInfo<T>, MethodError> {
    spec.validate()?;
    let (r, nominal_order) = match spec {
        MethodSpec::Theta(t) => {
            let theta = T::lit(*t);
            let num = crate::ratfun::Polynomial::from_real(&[T::one(), T::one() - theta]);
            let den = crate::ratfun::Polynomial::from_real(&[T::one(), -theta]);
            let order = if *t == 0.5 { 2 } else { 1 };
            (RationalFunction::new(num, den)?, order)
        }
        MethodSpec::Taylor(p) => (pade_exp(*p, 0), *p),
        MethodSpec::Pade(m, n) => (pade_exp(*m, *n), m + n),
        MethodSpec::Rk(RkSource::Rkf4) => (stability_function(&rkf4::<T>()), 4),
        MethodSpec::Rk(RkSource::Rkf5) => (stability_function(&rkf5::<T>()), 5),
        MethodSpec::Rk(RkSource::File { tableau, .. }) => {
            let r = stability_function(&tableau.cast::<T>());
            let order = measured_order(&r, tolerance());
            (r, order)
        }
        MethodSpec::Sdirk3(v) => {
            let r = stability_function(&sdirk3::<T>(*v == SdirkVariant::LargeGamma));
            (r, 3)
        }
        MethodSpec::Tau(n) => {
            let r = tau_stability_function::<T>(*n)?;
            let order = measured_order(&r, tolerance());
            (r, order)
        }
    };
    Ok(MethodInfo { spec: spec.clone(), r, nominal_order })
}

/// Builtin methods listed by the CLI and swept by the verification runs.
pub fn catalog() -> Vec<MethodSpec> {
    let mut specs = vec![
        MethodSpec::Theta(0.0),
        MethodSpec::Theta(0.5),
        MethodSpec::Theta(1.0),
        MethodSpec::Rk(RkSource::Rkf4),
        MethodSpec::Rk(RkSource::Rkf5),
        MethodSpec::Sdirk3(SdirkVariant::LargeGamma),
        MethodSpec::Sdirk3(SdirkVariant::SmallGamma),
        MethodSpec::Tau(1),
    ];
    specs.extend((2..=16).map(MethodSpec::Taylor));
    specs.extend((2..=16).map(|n| MethodSpec::Pade(n, n)));
    specs
}
