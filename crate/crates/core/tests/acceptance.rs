//! Acceptance run: one PASS/FAIL line per check, nonzero exit on any FAIL.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use optres::backward_error::{delta_on_branch, delta_series, measure_order, optimal_delta, unwinding_k};
use optres::field::{sample_field, sample_field_with_threads, write_csv, GridSpec};
use optres::methods::{catalog, resolve, tau_stability_function, MethodSpec};
use optres::oracle::{min_max_control, scan_k, ControlSearch};
use optres::ratfun::{pade_exp, Polynomial};
use optres::scalar::ln_principal;
use optres::RationalFunction64;

type Outcome = Result<String, String>;

fn r_of(spec: &str) -> RationalFunction64 {
    resolve::<f64>(&MethodSpec::parse(spec).unwrap()).unwrap().r
}

fn ratio(num: &[f64], den: &[f64]) -> RationalFunction64 {
    RationalFunction64::new(Polynomial::from_real(num), Polynomial::from_real(den)).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn tau_identity() -> Outcome {
    let r = tau_stability_function::<f64>(1).map_err(|e| e.to_string())?;
    let want = ratio(&[1.0, 0.5, 1.0 / 16.0], &[1.0, -0.5, 1.0 / 16.0]);
    let mismatch = r.cross_mismatch(&want);
    check(mismatch <= 1e-12, format!("cross-multiplied mismatch {mismatch:.3e} (tol 1e-12)"))
}

fn tau_series() -> Outcome {
    let s = delta_series(&r_of("tau:1"), 6).map_err(|e| e.to_string())?;
    let e2 = (s[2] - 1.0 / 48.0).norm();
    let e4 = (s[4] - 1.0 / 1280.0).norm();
    check(
        e2 <= 1e-11 && e4 <= 1e-11,
        format!("mu^2 error {e2:.3e}, mu^4 error {e4:.3e} (tol 1e-11)"),
    )
}

fn table_one() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases: Vec<(String, RationalFunction64)> = vec![
        ("euler".into(), ratio(&[1.0, 1.0], &[1.0])),
        ("backward-euler".into(), ratio(&[1.0], &[1.0, -1.0])),
        ("midpoint".into(), ratio(&[1.0, 0.5], &[1.0, -0.5])),
    ];
    for p in 1..=8 {
        let mut c = vec![1.0];
        for k in 1..=p {
            c.push(c[k - 1] / k as f64);
        }
        cases.push((format!("taylor:{p}"), ratio(&c, &[1.0])));
    }
    for (spec, want) in &cases {
        let got = r_of(spec);
        let lhs = got.num() * want.den();
        let rhs = want.num() * got.den();
        let err = (&lhs - &rhs).max_abs_coeff();
        if err > 1e-14 {
            return Err(format!("{spec}: coefficient mismatch {err:.3e}"));
        }
        worst = worst.max(err);
    }
    Ok(format!("{} formulas, worst coefficient mismatch {worst:.3e} (tol 1e-14)", cases.len()))
}

fn order_slopes() -> Outcome {
    let hs = [0.1, 0.05, 0.025, 0.0125];
    let cases = [
        ("theta:0", 1.0),
        ("theta:0.5", 2.0),
        ("sdirk3:small", 3.0),
        ("sdirk3:large", 3.0),
        ("rk:rkf4", 4.0),
        ("rk:rkf5", 5.0),
        ("pade:2,2", 4.0),
        ("tau:1", 2.0),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (spec, p) in cases {
        let slope = measure_order(&r_of(spec), &hs).map_err(|e| format!("{spec}: {e}"))?;
        ok &= (slope - p).abs() <= 0.1;
        parts.push(format!("{spec} {slope:.3}"));
    }
    check(ok, parts.join(", "))
}

struct Sweep {
    samples: usize,
    singular: usize,
    minimality: Option<String>,
    scan: Option<String>,
    reconstruction_worst: f64,
    reconstruction: Option<String>,
}

fn sweep() -> Sweep {
    let mut out = Sweep {
        samples: 0,
        singular: 0,
        minimality: None,
        scan: None,
        reconstruction_worst: 0.0,
        reconstruction: None,
    };
    for (m, spec) in catalog().iter().enumerate() {
        let r = resolve::<f64>(spec).unwrap().r;
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + m as u64);
        let mut drawn = 0;
        while drawn < 10_000 {
            let mu = Complex64::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
            if mu.norm() < 1e-3 {
                continue;
            }
            drawn += 1;
            let s = optimal_delta(mu, &r).unwrap();
            if s.singular {
                out.singular += 1;
                continue;
            }
            out.samples += 1;
            let l = ln_principal(s.r_value);
            for dk in [-2, -1, 1, 2] {
                let other = delta_on_branch(mu, l, s.k + dk).norm();
                if s.abs_delta > other + 1e-12 && out.minimality.is_none() {
                    out.minimality = Some(format!("{spec} at {mu}: k {} beats k {}", s.k + dk, s.k));
                }
            }
            let scanned = scan_k(mu, s.r_value, 8);
            let formula = unwinding_k(mu, s.r_value).unwrap();
            if scanned != formula && out.scan.is_none() {
                out.scan = Some(format!("{spec} at {mu}: scan {scanned}, formula {formula}"));
            }
            let back = (mu * (1.0 + s.delta)).exp();
            let rel = (back - s.r_value).norm() / s.r_value.norm();
            out.reconstruction_worst = out.reconstruction_worst.max(rel);
            if rel > 1e-10 && out.reconstruction.is_none() {
                out.reconstruction = Some(format!("{spec} at {mu}: relative error {rel:.3e}"));
            }
        }
    }
    out
}

fn minimality(s: &Sweep) -> Outcome {
    let summary = format!(
        "{} methods x 10^4 draws, {} non-singular, {} singular",
        catalog().len(),
        s.samples,
        s.singular
    );
    match (&s.minimality, &s.scan) {
        (None, None) => Ok(format!("{summary}; branch minimal and scan agrees everywhere")),
        (Some(m), _) => Err(m.clone()),
        (_, Some(m)) => Err(m.clone()),
    }
}

fn reconstruction(s: &Sweep) -> Outcome {
    match &s.reconstruction {
        None => Ok(format!("worst relative error {:.3e} (tol 1e-10)", s.reconstruction_worst)),
        Some(m) => Err(m.clone()),
    }
}

fn oracle_bound() -> Outcome {
    let methods: Vec<_> = catalog().iter().map(|s| resolve::<f64>(s).unwrap().r).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut done = 0;
    let mut worst = 0.0f64;
    while done < 100 {
        let r = &methods[rng.random_range(0..methods.len())];
        let mu = Complex64::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
        let Ok(s) = optimal_delta(mu, r) else { continue };
        if s.singular {
            continue;
        }
        let search = ControlSearch { pieces: 8, restarts: 20, seed: done, ..Default::default() };
        let v = min_max_control(mu, s.r_value, &search).map_err(|e| e.to_string())?;
        let gap = (v - s.abs_delta).abs();
        worst = worst.max(gap);
        if gap > 1e-6 {
            return Err(format!("at {mu}: control {v:.12e} vs |delta| {:.12e}", s.abs_delta));
        }
        done += 1;
    }
    Ok(format!("100 instances, worst |control - |delta|| {worst:.3e} (tol 1e-6)"))
}

fn classical_area() -> Outcome {
    let g = GridSpec::new(-3.0, 1.0, -2.0, 2.0, 512, 512).unwrap();
    let f = sample_field(&MethodSpec::parse("theta:0").unwrap(), &g).map_err(|e| e.to_string())?;
    let n = f.samples().iter().filter(|s| s.classical_inside).count();
    let area = n as f64 * g.dx() * g.dy();
    let rel = (area - PI).abs() / PI;
    check(rel <= 0.01, format!("area {area:.6}, relative error {rel:.3e} (tol 1e-2)"))
}

fn euler_witness() -> Outcome {
    let s = optimal_delta(Complex64::new(-1.9, 0.0), &r_of("euler")).map_err(|e| e.to_string())?;
    check(
        s.abs_r() < 1.0 && s.abs_delta > 1.0,
        format!("|R| = {:.4}, |delta| = {:.4}", s.abs_r(), s.abs_delta),
    )
}

fn pade_unwinding() -> Outcome {
    let g = GridSpec::new(-30.0, 30.0, -30.0, 30.0, 256, 256).unwrap();
    let f = sample_field(&MethodSpec::parse("pade:16,16").unwrap(), &g).map_err(|e| e.to_string())?;
    let hits: Vec<_> = f
        .samples()
        .iter()
        .filter(|s| s.abs_delta < 0.05 && s.mu.im.abs() > PI && s.k != 0)
        .collect();
    let tallest = hits.iter().map(|s| s.mu.im.abs()).fold(0.0, f64::max);
    check(
        !hits.is_empty(),
        format!("{} nodes with |delta| < 0.05, |Im mu| > pi, k != 0; largest |Im mu| {tallest:.3}", hits.len()),
    )
}

fn pade_boundary() -> Outcome {
    let mut worst = 0.0f64;
    for n in [1, 2, 4, 8] {
        let r = pade_exp::<f64>(n, n);
        for j in 0..200 {
            let y = -10.0 + 20.0 * j as f64 / 199.0;
            let v = r.eval(Complex64::new(0.0, y)).map_err(|e| e.to_string())?;
            worst = worst.max((v.norm() - 1.0).abs());
        }
    }
    check(worst <= 1e-10, format!("max ||R(iy)| - 1| = {worst:.3e} (tol 1e-10)"))
}

fn determinism() -> Outcome {
    let g = GridSpec::new(-6.0, 6.0, -6.0, 6.0, 256, 256).unwrap();
    let spec = MethodSpec::parse("rk:rkf5").unwrap();
    let csv = |threads: usize| {
        let f = sample_field_with_threads(&spec, &g, threads).map_err(|e| e.to_string())?;
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).map_err(|e| e.to_string())?;
        Ok::<_, String>(buf)
    };
    let a = csv(1)?;
    let b = csv(4)?;
    check(a == b, format!("{} bytes, 1 thread vs 4 threads identical: {}", a.len(), a == b))
}

fn report(n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let outcome = f();
    let elapsed = t.elapsed();
    let in_time = elapsed <= limit;
    let (ok, detail) = match outcome {
        Ok(d) => (in_time, d),
        Err(d) => (false, d),
    };
    let time_note = if in_time { String::new() } else { format!(", over the {:?} limit", limit) };
    println!(
        "{} {n:>2} {name}: {detail} [{:.2} s{time_note}]",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let mut all = true;
    all &= report(1, "tau n=1 stability function", s(1), tau_identity);
    all &= report(2, "tau n=1 delta series", s(1), tau_series);
    all &= report(3, "table of stability functions", s(1), table_one);
    all &= report(4, "order slopes", s(5), order_slopes);
    let t = Instant::now();
    let sw = sweep();
    let sweep_time = t.elapsed();
    all &= report(5, "unwinding minimality", s(30), || {
        if sweep_time > s(30) {
            return Err(format!("sweep took {sweep_time:?}"));
        }
        minimality(&sw).map(|d| format!("{d}; sweep {:.2} s", sweep_time.as_secs_f64()))
    });
    all &= report(6, "reconstruction exp(mu (1 + delta)) = R", s(30), || reconstruction(&sw));
    all &= report(7, "min-max control bound", s(60), oracle_bound);
    all &= report(8, "classical region area", s(10), classical_area);
    all &= report(9, "Euler accuracy-vs-stability witness", s(1), euler_witness);
    all &= report(10, "pade:16,16 needs unwinding", s(60), pade_unwinding);
    all &= report(11, "diagonal Pade on the imaginary axis", s(1), pade_boundary);
    all &= report(12, "field CSV determinism", s(30), determinism);
    if all {
        println!("all acceptance checks passed");
        ExitCode::SUCCESS
    } else {
        println!("some acceptance checks FAILED");
        ExitCode::FAILURE
    }
}
