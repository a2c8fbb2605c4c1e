//! Named plotting windows shipped with the crate.

use super::{FieldError, GridSpec};

const FIGURES: &str = include_str!("../../presets/figures.txt");

#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub name: String,
    pub grid: GridSpec,
    /// Method the window was chosen for.
    pub method: Option<String>,
}

fn parse_line(n: usize, line: &str) -> Result<Option<Preset>, FieldError> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(None);
    }
    let bad = |reason: &str| FieldError::BadPreset { line: n, reason: reason.to_string() };
    let (name, rest) = line.split_once('=').ok_or_else(|| bad("expected name = window resolution [method]"))?;
    let mut parts = rest.split_whitespace();
    let window: Vec<f64> = parts
        .next()
        .ok_or_else(|| bad("missing window"))?
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("window must be four numbers"))?;
    let window: [f64; 4] = window.try_into().map_err(|_| bad("window must be four numbers"))?;
    let res: usize = parts
        .next()
        .ok_or_else(|| bad("missing resolution"))?
        .parse()
        .map_err(|_| bad("resolution must be a positive integer"))?;
    let method = parts.next().map(str::to_string);
    if parts.next().is_some() {
        return Err(bad("trailing fields"));
    }
    let grid = GridSpec::square(window, res)?;
    Ok(Some(Preset { name: name.trim().to_string(), grid, method }))
}

/// Parses preset text in the `name = re_min,re_max,im_min,im_max res [method]` format.
pub fn parse_presets(text: &str) -> Result<Vec<Preset>, FieldError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if let Some(p) = parse_line(n + 1, line)? {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn presets() -> Vec<Preset> {
    parse_presets(FIGURES).expect("shipped presets parse")
}

pub fn preset(name: &str) -> Result<Preset, FieldError> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| FieldError::UnknownPreset(name.to_string()))
}
