//! Sampling of [`ResidualSample`]s over rectangular `mu`-grids, contour
//! extraction and serialization.

mod contour;
mod output;
mod presets;

use rayon::prelude::*;
use thiserror::Error;

use crate::backward_error::{optimal_delta, ResidualError, ResidualSample};
use crate::methods::{resolve, MethodError, MethodSpec};
use crate::ratfun::RationalFunction;
use crate::Complex64;

pub use contour::{contours, default_levels, ContourSet, ContourSource, Polyline};
pub use output::{emit_csv, emit_svg, write_csv, write_svg, CSV_HEADER};
pub use presets::{parse_presets, preset, presets, Preset};

/// Smallest accepted node count per axis.
pub const MIN_NODES: usize = 8;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("no contour levels given")]
    EmptyLevels,
    #[error("contour levels must be positive and strictly increasing")]
    BadLevels,
    #[error(transparent)]
    Method(#[from] MethodError),
    #[error(transparent)]
    Residual(#[from] ResidualError),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("malformed preset line {line}: {reason}")]
    BadPreset { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Threads(String),
}

/// Rectangle `[re_min, re_max] x [im_min, im_max]` split into `nx x ny`
/// cells; nodes sit at the cell centres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, nx: usize, ny: usize) -> Result<Self, FieldError> {
        let g = Self { re_min, re_max, im_min, im_max, nx, ny };
        g.validate()?;
        Ok(g)
    }

    /// Square resolution `res x res`.
    pub fn square(window: [f64; 4], res: usize) -> Result<Self, FieldError> {
        Self::new(window[0], window[1], window[2], window[3], res, res)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        let bad = |m: String| Err(FieldError::BadGrid(m));
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !finite {
            return bad("window bounds must be finite".into());
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return bad(format!(
                "empty window [{}, {}] x [{}, {}]",
                self.re_min, self.re_max, self.im_min, self.im_max
            ));
        }
        if self.nx < MIN_NODES || self.ny < MIN_NODES {
            return bad(format!("need at least {MIN_NODES} nodes per axis, got {} x {}", self.nx, self.ny));
        }
        let hits_zero = (0..self.nx).any(|i| self.re(i) == 0.0) && (0..self.ny).any(|j| self.im(j) == 0.0);
        if hits_zero {
            return bad("a node falls exactly on mu = 0".into());
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.re_max - self.re_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.im_max - self.im_min) / self.ny as f64
    }

    /// Real part of node column `i`.
    pub fn re(&self, i: usize) -> f64 {
        self.re_min + (i as f64 + 0.5) * self.dx()
    }

    /// Imaginary part of node row `j`.
    pub fn im(&self, j: usize) -> f64 {
        self.im_min + (j as f64 + 0.5) * self.dy()
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.re(i), self.im(j))
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }
}

/// Samples stored row by row: index `j * nx + i`, `j` along the imaginary axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: GridSpec,
    samples: Vec<ResidualSample<f64>>,
}

impl Field {
    pub fn from_samples(grid: GridSpec, samples: Vec<ResidualSample<f64>>) -> Result<Self, FieldError> {
        grid.validate()?;
        if samples.len() != grid.len() {
            return Err(FieldError::BadGrid(format!(
                "{} samples for a {} x {} grid",
                samples.len(),
                grid.nx,
                grid.ny
            )));
        }
        Ok(Self { grid, samples })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn samples(&self) -> &[ResidualSample<f64>] {
        &self.samples
    }

    pub fn at(&self, i: usize, j: usize) -> &ResidualSample<f64> {
        &self.samples[j * self.grid.nx + i]
    }

    /// Sample at the node closest to `mu`.
    pub fn nearest(&self, mu: Complex64) -> &ResidualSample<f64> {
        let g = &self.grid;
        let idx = |x: f64, lo: f64, d: f64, n: usize| (((x - lo) / d - 0.5).round().max(0.0) as usize).min(n - 1);
        self.at(idx(mu.re, g.re_min, g.dx(), g.nx), idx(mu.im, g.im_min, g.dy(), g.ny))
    }
}

/// Samples `r` at every node on the current rayon pool.
pub fn sample_rational(r: &RationalFunction<f64>, grid: &GridSpec) -> Result<Field, FieldError> {
    grid.validate()?;
    let rows: Result<Vec<Vec<_>>, ResidualError> = (0..grid.ny)
        .into_par_iter()
        .map(|j| (0..grid.nx).map(|i| optimal_delta(grid.node(i, j), r)).collect())
        .collect();
    let samples = rows?.into_iter().flatten().collect();
    Field::from_samples(*grid, samples)
}

/// Resolves `spec` and samples its stability function over `grid`.
pub fn sample_field(spec: &MethodSpec, grid: &GridSpec) -> Result<Field, FieldError> {
    let info = resolve::<f64>(spec)?;
    sample_rational(&info.r, grid)
}

/// [`sample_field`] on a dedicated pool of `threads` workers.
pub fn sample_field_with_threads(spec: &MethodSpec, grid: &GridSpec, threads: usize) -> Result<Field, FieldError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| FieldError::Threads(e.to_string()))?;
    pool.install(|| sample_field(spec, grid))
}
