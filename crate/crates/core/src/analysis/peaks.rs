use std::collections::VecDeque;

use num_complex::Complex64;

use crate::coherent::ComplexAmplitude;
use crate::error::{domain, Result};
use crate::qpd::QGrid;

pub const DEFAULT_REL_HEIGHT: f64 = 0.5;

/// Connected regions of the superlevel set `{Q >= rel_height * max Q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    pub rel_height: f64,
    pub count: usize,
    /// Value-weighted centroid per region, in scan order of first cell.
    pub centers: Vec<ComplexAmplitude>,
    /// Largest sample per region.
    pub heights: Vec<f64>,
    /// Cell count per region.
    pub areas: Vec<usize>,
}

/// Label 4-connected superlevel regions and report their centroids.
pub fn count_peaks(grid: &QGrid, rel_height: f64) -> Result<PeakReport> {
    if !(rel_height > 0.0 && rel_height < 1.0) {
        return domain(format!("relative height must lie in (0, 1), got {rel_height}"));
    }
    let w = grid.window();
    let (nx, ny) = (w.nx, w.ny);
    let max = grid.max();
    let mut report = PeakReport {
        rel_height,
        count: 0,
        centers: Vec::new(),
        heights: Vec::new(),
        areas: Vec::new(),
    };
    if max <= 0.0 {
        return Ok(report);
    }
    let threshold = rel_height * max;
    let values = grid.values();
    let mut visited = vec![false; values.len()];
    let mut queue = VecDeque::new();

    for start in 0..values.len() {
        if visited[start] || values[start] < threshold {
            continue;
        }
        visited[start] = true;
        queue.push_back(start);
        let mut weight = 0.0;
        let mut moment = Complex64::new(0.0, 0.0);
        let mut peak = 0.0f64;
        let mut area = 0;
        while let Some(idx) = queue.pop_front() {
            let (i, j) = (idx % nx, idx / nx);
            let v = values[idx];
            weight += v;
            moment += w.point(i, j) * v;
            peak = peak.max(v);
            area += 1;
            let mut visit = |n: usize| {
                if !visited[n] && values[n] >= threshold {
                    visited[n] = true;
                    queue.push_back(n);
                }
            };
            if i > 0 {
                visit(idx - 1);
            }
            if i + 1 < nx {
                visit(idx + 1);
            }
            if j > 0 {
                visit(idx - nx);
            }
            if j + 1 < ny {
                visit(idx + nx);
            }
        }
        report.centers.push(ComplexAmplitude::try_from_complex(moment / weight)?);
        report.heights.push(peak);
        report.areas.push(area);
    }
    report.count = report.centers.len();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpd::GridWindow;

    fn grid(nx: usize, ny: usize, values: Vec<f64>) -> QGrid {
        let w = GridWindow::new(0.0, (nx - 1) as f64, 0.0, (ny - 1) as f64, nx, ny).unwrap();
        QGrid::from_values(w, values).unwrap()
    }

    #[test]
    fn diagonal_neighbours_stay_separate() {
        #[rustfmt::skip]
        let g = grid(3, 3, vec![
            1.0, 0.0, 0.0,
            0.0, 1.0, 0.0,
            0.0, 0.0, 0.0,
        ]);
        let r = count_peaks(&g, 0.5).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.centers[0].as_complex(), Complex64::new(0.0, 0.0));
        assert_eq!(r.centers[1].as_complex(), Complex64::new(1.0, 1.0));
    }

    #[test]
    fn weighted_centroid() {
        #[rustfmt::skip]
        let g = grid(4, 2, vec![
            0.0, 0.6, 0.9, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ]);
        let r = count_peaks(&g, 0.5).unwrap();
        assert_eq!(r.count, 1);
        assert!((r.centers[0].re() - (0.6 + 1.8) / 1.5).abs() < 1e-15);
        assert_eq!(r.areas, vec![2]);
        assert_eq!(r.heights, vec![0.9]);
    }

    #[test]
    fn all_zero_grid_has_no_peaks() {
        let r = count_peaks(&grid(3, 3, vec![0.0; 9]), 0.5).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.centers.is_empty());
    }

    #[test]
    fn rejects_bad_height() {
        let g = grid(2, 2, vec![0.1; 4]);
        for h in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(count_peaks(&g, h).is_err());
        }
    }
}
