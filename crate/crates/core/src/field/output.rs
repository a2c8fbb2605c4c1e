//! CSV and SVG writers for sampled fields.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{ContourSet, Field, FieldError};

pub const CSV_HEADER: [&str; 10] = [
    "mu_re", "mu_im", "k", "delta_re", "delta_im", "abs_delta", "abs_R", "classical", "orderstar", "singular",
];

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FieldError + '_ {
    move |source| FieldError::Io { path: path.display().to_string(), source }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// One row per node in storage order; reals with 17 significant digits.
/// Singular nodes carry `NaN` for `delta` and `inf` for `abs_delta`.
pub fn write_csv<W: Write>(field: &Field, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for s in field.samples() {
        w.write_record([
            num(s.mu.re),
            num(s.mu.im),
            s.k.to_string(),
            num(s.delta.re),
            num(s.delta.im),
            num(s.abs_delta),
            num(s.abs_r()),
            u8::from(s.classical_inside).to_string(),
            s.orderstar.code().to_string(),
            u8::from(s.singular).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(field: &Field, path: &Path) -> Result<(), FieldError> {
    let file = File::create(path).map_err(io_err(path))?;
    write_csv(field, BufWriter::new(file)).map_err(|e| FieldError::Io {
        path: path.display().to_string(),
        source: e.into(),
    })
}

/// Colour of a `|delta|` band of width 0.05; `None` for white.
fn band_colour(abs_delta: f64) -> Option<String> {
    if !(abs_delta <= 1.0) {
        return None;
    }
    let band = ((abs_delta * 20.0).floor() as usize).min(19);
    let t = band as f64 / 19.0;
    // dark blue through teal to pale yellow
    let stops = [(0x21, 0x2c, 0x84), (0x1f, 0x9e, 0x89), (0xfd, 0xe7, 0x25)];
    let (a, b, u) = if t < 0.5 { (stops[0], stops[1], t * 2.0) } else { (stops[1], stops[2], t * 2.0 - 1.0) };
    let mix = |x: u8, y: u8| (x as f64 + u * (y as f64 - x as f64)).round() as u8;
    Some(format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2)))
}

const CELL_PX: usize = 3;

/// Coloured `|delta|` bands (white above 1), the classical region
/// `|R| <= 1` as a grey overlay, and the given contour sets as strokes.
pub fn write_svg<W: Write>(field: &Field, sets: &[ContourSet], mut out: W) -> std::io::Result<()> {
    let g = field.grid();
    let (w, h) = (g.nx * CELL_PX, g.ny * CELL_PX);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);

    // horizontal runs of equal colour, top row first
    let _ = writeln!(s, r#"<g id="residual" shape-rendering="crispEdges">"#);
    for j in 0..g.ny {
        let y = (g.ny - 1 - j) * CELL_PX;
        let mut i = 0;
        while i < g.nx {
            let colour = band_colour(field.at(i, j).abs_delta);
            let start = i;
            while i < g.nx && band_colour(field.at(i, j).abs_delta) == colour {
                i += 1;
            }
            if let Some(c) = colour {
                let _ = writeln!(
                    s,
                    r#"<rect x="{}" y="{y}" width="{}" height="{CELL_PX}" fill="{c}"/>"#,
                    start * CELL_PX,
                    (i - start) * CELL_PX
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="classical" fill="black" fill-opacity="0.25" shape-rendering="crispEdges">"#);
    for j in 0..g.ny {
        let y = (g.ny - 1 - j) * CELL_PX;
        let mut i = 0;
        while i < g.nx {
            if !field.at(i, j).classical_inside {
                i += 1;
                continue;
            }
            let start = i;
            while i < g.nx && field.at(i, j).classical_inside {
                i += 1;
            }
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{y}" width="{}" height="{CELL_PX}"/>"#,
                start * CELL_PX,
                (i - start) * CELL_PX
            );
        }
    }
    let _ = writeln!(s, "</g>");

    // contours are drawn in mu coordinates
    let sx = w as f64 / (g.re_max - g.re_min);
    let sy = h as f64 / (g.im_max - g.im_min);
    let _ = writeln!(
        s,
        r#"<g id="contours" transform="matrix({sx} 0 0 {} {} {})" fill="none" stroke="black" stroke-width="0.6">"#,
        -sy,
        -g.re_min * sx,
        g.im_max * sy
    );
    for set in sets {
        for (level, lines) in set.levels.iter().zip(&set.polylines) {
            let _ = writeln!(s, r#"<g class="{}" data-level="{level}">"#, set.source.name());
            for line in lines {
                let pts: Vec<String> = line.iter().map(|(x, y)| format!("{x:.6},{y:.6}")).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline vector-effect="non-scaling-stroke" points="{}"/>"#,
                    pts.join(" ")
                );
            }
            let _ = writeln!(s, "</g>");
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    out.write_all(s.as_bytes())?;
    out.flush()
}

pub fn emit_svg(field: &Field, sets: &[ContourSet], path: &Path) -> Result<(), FieldError> {
    let file = File::create(path).map_err(io_err(path))?;
    write_svg(field, sets, BufWriter::new(file)).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{contours, default_levels, sample_field, ContourSource, GridSpec};
    use crate::methods::MethodSpec;

    fn euler(res: usize) -> Field {
        let g = GridSpec::new(-3.0, 1.0, -2.0, 2.0, res, res).unwrap();
        sample_field(&MethodSpec::parse("euler").unwrap(), &g).unwrap()
    }

    #[test]
    fn csv_shape() {
        let mut buf = Vec::new();
        write_csv(&euler(8), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 65);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 10));
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_csv(&euler(16), &mut buf).unwrap();
        let mut r = csv::Reader::from_reader(buf.as_slice());
        for rec in r.records() {
            let rec = rec.unwrap();
            let f = |i: usize| rec[i].parse::<f64>().unwrap();
            if &rec[9] == "1" {
                continue;
            }
            assert!((f(3).hypot(f(4)) - f(5)).abs() <= 1e-12 * f(5).max(1.0));
        }
    }

    #[test]
    fn band_colours() {
        assert_eq!(band_colour(1.5), None);
        assert_eq!(band_colour(f64::INFINITY), None);
        assert_eq!(band_colour(0.0).as_deref(), Some("#212c84"));
        assert_eq!(band_colour(1.0).as_deref(), Some("#fde725"));
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let f = euler(32);
        let c = contours(&f, ContourSource::AbsDelta, &default_levels()).unwrap();
        let mut buf = Vec::new();
        write_svg(&f, &[c], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("<?xml"));
        assert!(text.trim_end().ends_with("</svg>"));
        assert!(text.contains(r#"id="classical""#));
        assert!(text.contains("<polyline"));
        assert_eq!(text.matches("<g").count(), text.matches("</g>").count());
    }
}
