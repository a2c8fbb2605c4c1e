//! `optres audit`: per-step optimal backward error of a skeleton.

use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use optres::backward_error::{alpha_from_skeleton, ResidualError, SkeletonStep};

use super::{io_error, parse_list, CliError};

#[derive(Debug, Deserialize)]
struct Row {
    t: f64,
    y_re: f64,
    y_im: f64,
}

fn read_skeleton(path: &Path) -> Result<Vec<(f64, Complex64)>, CliError> {
    let bad = |m: String| CliError::Io(format!("{}: {m}", path.display()));
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| bad(e.to_string()))?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["t", "y_re", "y_im"] {
        return Err(bad("header must be t,y_re,y_im".into()));
    }
    let mut rows = Vec::new();
    for rec in reader.deserialize::<Row>() {
        let r = rec.map_err(|e| bad(e.to_string()))?;
        rows.push((r.t, Complex64::new(r.y_re, r.y_im)));
    }
    if rows.len() < 2 {
        return Err(bad("need at least two points".into()));
    }
    if rows.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(bad("t must be strictly increasing".into()));
    }
    Ok(rows)
}

#[derive(Clone, Copy, PartialEq)]
enum Flag {
    Ok,
    Warn,
    Fail,
    Infinite,
}

impl Flag {
    fn name(self) -> &'static str {
        match self {
            Flag::Ok => "ok",
            Flag::Warn => "warn",
            Flag::Fail => "fail",
            Flag::Infinite => "infinite",
        }
    }
}

pub fn run(path: &Path, lambda: &str, warn_level: f64, as_csv: bool) -> Result<(), CliError> {
    let l = parse_list(lambda, "--lambda")?;
    let lambda = match l.as_slice() {
        [re] => Complex64::new(*re, 0.0),
        [re, im] => Complex64::new(*re, *im),
        _ => return Err(CliError::Usage("--lambda expects re or re,im".into())),
    };
    if lambda.norm() == 0.0 {
        return Err(CliError::Usage("--lambda must be nonzero".into()));
    }
    if !(warn_level >= 0.0) {
        return Err(CliError::Usage("--warn-level must be nonnegative".into()));
    }
    let rows = read_skeleton(path)?;

    let mut out = io::stdout().lock();
    let w = |r: io::Result<()>| r.map_err(io_error);
    if as_csv {
        w(writeln!(out, "step,t_i,t_ip1,alpha,flag"))?;
    } else {
        w(writeln!(out, "{:>5}  {:>12}  {:>12}  {:>23}  flag", "step", "t_i", "t_ip1", "alpha"))?;
    }
    let (mut warned, mut failed, mut infinite) = (0, 0, 0);
    for (i, pair) in rows.windows(2).enumerate() {
        let ((t0, y0), (t1, y1)) = (pair[0], pair[1]);
        let step = SkeletonStep { t_i: t0, t_ip1: t1, y_i: y0, y_ip1: y1, lambda };
        let alpha = match alpha_from_skeleton(&step) {
            Ok(a) => a,
            // a step out of y = 0 cannot be joined by any y' = lambda (1 + delta) y
            Err(ResidualError::ZeroStart) => f64::INFINITY,
            Err(e) => return Err(CliError::Numerical(format!("step {i}: {e}"))),
        };
        let flag = if alpha.is_infinite() {
            Flag::Infinite
        } else if alpha > 1.0 {
            Flag::Fail
        } else if alpha > warn_level {
            Flag::Warn
        } else {
            Flag::Ok
        };
        match flag {
            Flag::Infinite => infinite += 1,
            Flag::Fail => failed += 1,
            Flag::Warn => warned += 1,
            Flag::Ok => {}
        }
        if as_csv {
            w(writeln!(out, "{i},{t0:.16e},{t1:.16e},{alpha:.16e},{}", flag.name()))?;
        } else {
            w(writeln!(out, "{i:>5}  {t0:>12.6}  {t1:>12.6}  {alpha:>23.16e}  {}", flag.name()))?;
        }
    }
    let steps = rows.len() - 1;
    let summary = format!(
        "{steps} steps: {warned} above {warn_level}, {failed} above 1, {infinite} infinite"
    );
    if !as_csv {
        w(writeln!(out, "{summary}"))?;
    }
    if failed + infinite > 0 {
        return Err(CliError::Numerical(summary));
    }
    Ok(())
}
