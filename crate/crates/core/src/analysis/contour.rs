//! Marching squares over a Q grid.
//!
//! The grid is padded with a ring of `-inf` samples placed at the boundary
//! coordinates, so every level set closes and every vertex stays inside the
//! window. Saddle cells are resolved with the mean of the four corners.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::coherent::ComplexAmplitude;
use crate::error::{domain, Result};
use crate::qpd::QGrid;

/// Closed polyline; the first vertex is repeated at the end.
pub type Polyline = Vec<ComplexAmplitude>;

#[derive(Debug, Clone, PartialEq)]
pub struct ContourSet {
    /// Levels as fractions of the grid maximum.
    pub fractions: Vec<f64>,
    /// `polylines[k]` holds the level set at `fractions[k] * max`.
    pub polylines: Vec<Vec<Polyline>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    /// Between padded nodes `(i, j)` and `(i + 1, j)`.
    Horizontal(usize, usize),
    /// Between padded nodes `(i, j)` and `(i, j + 1)`.
    Vertical(usize, usize),
}

struct Padded<'a> {
    grid: &'a QGrid,
    width: usize,
    height: usize,
}

impl Padded<'_> {
    fn value(&self, i: usize, j: usize) -> f64 {
        let w = self.grid.window();
        if i == 0 || j == 0 || i > w.nx || j > w.ny {
            f64::NEG_INFINITY
        } else {
            self.grid.get(i - 1, j - 1)
        }
    }

    fn point(&self, i: usize, j: usize) -> Complex64 {
        let w = self.grid.window();
        let ci = i.saturating_sub(1).min(w.nx - 1);
        let cj = j.saturating_sub(1).min(w.ny - 1);
        w.point(ci, cj)
    }

    fn crossing(&self, edge: Edge, level: f64) -> Complex64 {
        let ((ia, ja), (ib, jb)) = match edge {
            Edge::Horizontal(i, j) => ((i, j), (i + 1, j)),
            Edge::Vertical(i, j) => ((i, j), (i, j + 1)),
        };
        let (va, vb) = (self.value(ia, ja), self.value(ib, jb));
        let (pa, pb) = (self.point(ia, ja), self.point(ib, jb));
        if va.is_infinite() {
            pb
        } else if vb.is_infinite() {
            pa
        } else {
            pa + (pb - pa) * ((level - va) / (vb - va))
        }
    }
}

/// Segments of one cell as pairs of crossed edges.
fn cell_segments(p: &Padded<'_>, i: usize, j: usize, level: f64, out: &mut Vec<(Edge, Edge)>) {
    let bl = p.value(i, j);
    let br = p.value(i + 1, j);
    let tr = p.value(i + 1, j + 1);
    let tl = p.value(i, j + 1);
    let case = (bl >= level) as u8 | ((br >= level) as u8) << 1 | ((tr >= level) as u8) << 2 | ((tl >= level) as u8) << 3;

    let bottom = Edge::Horizontal(i, j);
    let top = Edge::Horizontal(i, j + 1);
    let left = Edge::Vertical(i, j);
    let right = Edge::Vertical(i + 1, j);

    let center_above = || (bl + br + tr + tl) / 4.0 >= level;
    match case {
        0 | 15 => {}
        1 | 14 => out.push((left, bottom)),
        2 | 13 => out.push((bottom, right)),
        3 | 12 => out.push((left, right)),
        4 | 11 => out.push((right, top)),
        6 | 9 => out.push((bottom, top)),
        7 | 8 => out.push((left, top)),
        5 => {
            if center_above() {
                out.push((bottom, right));
                out.push((left, top));
            } else {
                out.push((left, bottom));
                out.push((right, top));
            }
        }
        10 => {
            if center_above() {
                out.push((left, bottom));
                out.push((right, top));
            } else {
                out.push((bottom, right));
                out.push((left, top));
            }
        }
        _ => unreachable!(),
    }
}

fn trace_level(p: &Padded<'_>, level: f64) -> Vec<Polyline> {
    let mut segments = Vec::new();
    for j in 0..p.height - 1 {
        for i in 0..p.width - 1 {
            cell_segments(p, i, j, level, &mut segments);
        }
    }
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        by_edge.entry(*a).or_default().push(k);
        by_edge.entry(*b).or_default().push(k);
    }

    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (first, mut current) = segments[start];
        let mut edges = vec![first, current];
        let mut seg = start;
        while current != first {
            let next = by_edge[&current].iter().copied().find(|&k| k != seg && !used[k]);
            let Some(next) = next else { break };
            used[next] = true;
            let (a, b) = segments[next];
            current = if a == current { b } else { a };
            edges.push(current);
            seg = next;
        }
        let mut line: Vec<Complex64> = Vec::with_capacity(edges.len());
        for e in edges {
            let z = p.crossing(e, level);
            if line.last() != Some(&z) {
                line.push(z);
            }
        }
        if line.len() < 3 {
            continue;
        }
        if line.first() != line.last() {
            line.push(line[0]);
        }
        lines.push(line.into_iter().map(|z| ComplexAmplitude::try_from_complex(z).expect("finite vertex")).collect());
    }
    lines
}

/// Level sets at `fraction * max` for each requested fraction.
///
/// A grid with no variation yields no polylines at any level.
pub fn contours(grid: &QGrid, fractions: &[f64]) -> Result<ContourSet> {
    if let Some(f) = fractions.iter().find(|f| !(**f > 0.0 && **f < 1.0)) {
        return domain(format!("contour fractions must lie in (0, 1), got {f}"));
    }
    let max = grid.max();
    let flat = max.is_nan() || max <= 0.0 || grid.min() >= max;
    let w = grid.window();
    let padded = Padded {
        grid,
        width: w.nx + 2,
        height: w.ny + 2,
    };
    let polylines = fractions
        .iter()
        .map(|f| if flat { Vec::new() } else { trace_level(&padded, f * max) })
        .collect();
    Ok(ContourSet {
        fractions: fractions.to_vec(),
        polylines,
    })
}
