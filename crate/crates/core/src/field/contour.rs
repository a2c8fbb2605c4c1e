//! Marching squares over the node lattice of a [`Field`].
//!
//! A node is inside a level when its value is strictly below it. Crossings
//! are placed by linear interpolation along cell edges, except on edges
//! touching a non-finite value, where the edge midpoint is used. Saddle
//! cells are resolved by the mean of their four corners.

use std::collections::BTreeMap;

use crate::backward_error::ResidualSample;

use super::{Field, FieldError, GridSpec};

/// Which per-node quantity is contoured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContourSource {
    AbsDelta,
    AbsR,
    /// `|R(mu) e^{-mu}|`; the level 1 contour is the order star boundary.
    OrderStar,
}

impl ContourSource {
    pub fn name(self) -> &'static str {
        match self {
            ContourSource::AbsDelta => "abs_delta",
            ContourSource::AbsR => "abs_R",
            ContourSource::OrderStar => "orderstar",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "abs_delta" => Some(ContourSource::AbsDelta),
            "abs_R" | "abs_r" => Some(ContourSource::AbsR),
            "orderstar" => Some(ContourSource::OrderStar),
            _ => None,
        }
    }

    /// Value at a sample; `None` when it is infinite or undefined.
    pub fn value(self, s: &ResidualSample<f64>) -> Option<f64> {
        let v = match self {
            ContourSource::AbsDelta if s.singular => return None,
            ContourSource::AbsDelta => s.abs_delta,
            ContourSource::AbsR => s.abs_r(),
            ContourSource::OrderStar => s.orderstar_value(),
        };
        v.is_finite().then_some(v)
    }
}

/// Points `(re, im)`; closed polylines repeat the first point at the end.
pub type Polyline = Vec<(f64, f64)>;

#[derive(Clone, Debug, PartialEq)]
pub struct ContourSet {
    pub grid: GridSpec,
    pub source: ContourSource,
    pub levels: Vec<f64>,
    /// `polylines[l]` belongs to `levels[l]`.
    pub polylines: Vec<Vec<Polyline>>,
}

/// `0.05, 0.10, ..., 1.00`.
pub fn default_levels() -> Vec<f64> {
    (1..=20).map(|j| j as f64 / 20.0).collect()
}

fn is_closed(p: &Polyline) -> bool {
    p.len() > 2 && p.first() == p.last()
}

impl ContourSet {
    pub fn closed(&self, level: usize) -> impl Iterator<Item = &Polyline> {
        self.polylines[level].iter().filter(|p| is_closed(p))
    }
}

/// Contours of `source` over `field` at each of `levels`.
pub fn contours(field: &Field, source: ContourSource, levels: &[f64]) -> Result<ContourSet, FieldError> {
    if levels.is_empty() {
        return Err(FieldError::EmptyLevels);
    }
    let increasing = levels.windows(2).all(|w| w[0] < w[1]);
    if !increasing || !(levels[0] > 0.0) || !levels.iter().all(|l| l.is_finite()) {
        return Err(FieldError::BadLevels);
    }
    let values: Vec<Option<f64>> = field.samples().iter().map(|s| source.value(s)).collect();
    let grid = *field.grid();
    let polylines = levels.iter().map(|&l| trace_level(&grid, &values, l)).collect();
    Ok(ContourSet { grid, source, levels: levels.to_vec(), polylines })
}

struct Lattice<'a> {
    grid: &'a GridSpec,
    values: &'a [Option<f64>],
    level: f64,
}

impl Lattice<'_> {
    fn value(&self, i: usize, j: usize) -> Option<f64> {
        self.values[j * self.grid.nx + i]
    }

    fn inside(&self, i: usize, j: usize) -> bool {
        self.value(i, j).is_some_and(|v| v < self.level)
    }

    /// Edges are numbered `2 (j nx + i)` for the one from node `(i, j)` to
    /// `(i + 1, j)` and `2 (j nx + i) + 1` for the one to `(i, j + 1)`.
    fn horizontal(&self, i: usize, j: usize) -> usize {
        2 * (j * self.grid.nx + i)
    }

    fn vertical(&self, i: usize, j: usize) -> usize {
        2 * (j * self.grid.nx + i) + 1
    }

    fn crossing(&self, edge: usize) -> (f64, f64) {
        let node = edge / 2;
        let (i, j) = (node % self.grid.nx, node / self.grid.nx);
        let (i2, j2) = if edge.is_multiple_of(2) { (i + 1, j) } else { (i, j + 1) };
        let t = match (self.value(i, j), self.value(i2, j2)) {
            (Some(a), Some(b)) if a != b => ((self.level - a) / (b - a)).clamp(0.0, 1.0),
            _ => 0.5,
        };
        let a = self.grid.node(i, j);
        let b = self.grid.node(i2, j2);
        (a.re + t * (b.re - a.re), a.im + t * (b.im - a.im))
    }

    /// Segments of cell `(i, j)` as pairs of edge ids.
    fn cell_segments(&self, i: usize, j: usize, out: &mut Vec<[usize; 2]>) {
        let c = [
            self.inside(i, j),
            self.inside(i + 1, j),
            self.inside(i + 1, j + 1),
            self.inside(i, j + 1),
        ];
        // bottom, right, top, left
        let e = [
            self.horizontal(i, j),
            self.vertical(i + 1, j),
            self.horizontal(i, j + 1),
            self.vertical(i, j),
        ];
        let crossed: Vec<usize> = (0..4).filter(|&k| c[k] != c[(k + 1) % 4]).map(|k| e[k]).collect();
        match crossed.len() {
            0 => {}
            2 => out.push([crossed[0], crossed[1]]),
            _ => {
                let corners = [self.value(i, j), self.value(i + 1, j), self.value(i + 1, j + 1), self.value(i, j + 1)];
                let centre_inside = corners
                    .iter()
                    .try_fold(0.0, |acc, v| v.map(|v| acc + v))
                    .is_some_and(|s| s / 4.0 < self.level);
                // cut off the corners whose side the centre is not on
                for k in 0..4 {
                    if c[k] != centre_inside {
                        out.push([e[(k + 3) % 4], e[k]]);
                    }
                }
            }
        }
    }
}

fn trace_level(grid: &GridSpec, values: &[Option<f64>], level: f64) -> Vec<Polyline> {
    let lat = Lattice { grid, values, level };
    let mut segments = Vec::new();
    for j in 0..grid.ny - 1 {
        for i in 0..grid.nx - 1 {
            lat.cell_segments(i, j, &mut segments);
        }
    }
    let mut at_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (s, seg) in segments.iter().enumerate() {
        for &e in seg {
            at_edge.entry(e).or_default().push(s);
        }
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let walk = |start_edge: usize, start_seg: usize, used: &mut Vec<bool>| {
        let mut line = vec![lat.crossing(start_edge)];
        let (mut edge, mut seg) = (start_edge, start_seg);
        loop {
            used[seg] = true;
            let [a, b] = segments[seg];
            edge = if a == edge { b } else { a };
            line.push(lat.crossing(edge));
            match at_edge[&edge].iter().find(|&&s| !used[s]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        line
    };
    // open polylines start at boundary edges, which belong to one segment
    for (&edge, segs) in &at_edge {
        if segs.len() == 1 && !used[segs[0]] {
            lines.push(walk(edge, segs[0], &mut used));
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            lines.push(walk(segments[s][0], s, &mut used));
        }
    }
    lines
}
