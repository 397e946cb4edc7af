//! Husimi Q function `Q(alpha) = |<alpha|psi>|^2`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::catsolver::CoherentSuperposition;
use crate::coherent::{coherent_overlap, ComplexAmplitude, FockVector};
use crate::error::{KerrError, Result};
use crate::evolution::KerrParams;

/// Default sample count per axis.
pub const DEFAULT_RESOLUTION: usize = 201;
/// Margin added to `|alpha0|` for the default window half-width.
pub const DEFAULT_MARGIN: f64 = 4.0;

/// Rectangular sampling window in the `alpha` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridWindow {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !finite || re_min >= re_max || im_min >= im_max {
            return Err(KerrError::InvalidWindow(format!(
                "bounds [{re_min}, {re_max}] x [{im_min}, {im_max}] must be finite and increasing"
            )));
        }
        if nx < 2 || ny < 2 {
            return Err(KerrError::InvalidWindow(format!(
                "need at least 2 samples per axis, got {nx} x {ny}"
            )));
        }
        Ok(Self { re_min, re_max, im_min, im_max, nx, ny })
    }

    /// Square window of half-width `half_width` centred at the origin.
    pub fn centered(half_width: f64, nx: usize, ny: usize) -> Result<Self> {
        Self::new(-half_width, half_width, -half_width, half_width, nx, ny)
    }

    /// Half-width `|alpha0| + 4`, 201 x 201 samples.
    pub fn default_for(alpha0: ComplexAmplitude) -> Self {
        Self::centered(alpha0.norm() + DEFAULT_MARGIN, DEFAULT_RESOLUTION, DEFAULT_RESOLUTION)
            .expect("default window is valid")
    }

    pub fn dx(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.im_max - self.im_min) / (self.ny - 1) as f64
    }

    /// Column coordinate; the last column lands exactly on `re_max`.
    pub fn re_at(&self, i: usize) -> f64 {
        if i + 1 == self.nx {
            self.re_max
        } else {
            self.re_min + i as f64 * self.dx()
        }
    }

    /// Row coordinate; the last row lands exactly on `im_max`.
    pub fn im_at(&self, j: usize) -> f64 {
        if j + 1 == self.ny {
            self.im_max
        } else {
            self.im_min + j as f64 * self.dy()
        }
    }

    /// Sample point at column `i`, row `j`.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.re_at(i), self.im_at(j))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }
}

/// Q samples on a [`GridWindow`], row-major with `im` varying by row.
#[derive(Debug, Clone, PartialEq)]
pub struct QGrid {
    window: GridWindow,
    values: Vec<f64>,
}

impl QGrid {
    /// `values` must hold `ny * nx` finite entries in `[0, 1]`.
    pub fn from_values(window: GridWindow, values: Vec<f64>) -> Result<Self> {
        if values.len() != window.nx * window.ny {
            return Err(KerrError::InvalidWindow(format!(
                "expected {} values, got {}",
                window.nx * window.ny,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0 && **v <= 1.0)) {
            return Err(KerrError::Domain(format!("Q value {v} outside [0, 1]")));
        }
        Ok(Self { window, values })
    }

    pub fn window(&self) -> &GridWindow {
        &self.window
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.window.nx + i]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Column and row of the largest sample.
    pub fn argmax(&self) -> (usize, usize) {
        let idx = self
            .values
            .iter()
            .enumerate()
            .fold(0, |best, (k, v)| if *v > self.values[best] { k } else { best });
        (idx % self.window.nx, idx / self.window.nx)
    }
}

/// `<alpha|psi>` accumulated over the stored photon numbers.
fn projection(state: &FockVector, alpha: Complex64) -> Complex64 {
    let ac = alpha.conj();
    let coh = (-0.5 * alpha.norm_sqr()).exp();
    let mut power = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, a) in state.amplitudes().iter().enumerate() {
        if n > 0 {
            // conj(alpha)^n / sqrt(n!) by recurrence
            power = power * ac / (n as f64).sqrt();
        }
        acc += power * a;
    }
    acc * coh
}

/// `|<alpha|psi>|^2` for a number-basis state.
///
/// Only the stored photon numbers contribute. The probe `|alpha>` weights
/// photon numbers around `|alpha| |alpha0|`, so far from the origin the
/// truncation of `state` shows up before its `tail_bound` would suggest.
pub fn q_value(state: &FockVector, alpha: ComplexAmplitude) -> f64 {
    projection(state, alpha.as_complex()).norm_sqr()
}

/// Sample `q_value` over `window`, rows evaluated in parallel.
///
/// Values are clipped to `1.0` to absorb rounding above the exact bound.
pub fn q_grid(state: &FockVector, window: GridWindow) -> QGrid {
    let values: Vec<f64> = (0..window.ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            (0..window.nx).map(move |i| projection(state, window.point(i, j)).norm_sqr().min(1.0))
        })
        .collect();
    QGrid { window, values }
}

/// Q of the coherent state `|alpha0>` evolved with `params`, summed straight
/// from the generating series `sum_n (conj(alpha) alpha0)^n / n! exp(i theta(n))`
/// with its own convergence-driven cutoff instead of a fixed Fock truncation.
pub fn q_series(alpha0: ComplexAmplitude, params: KerrParams, alpha: ComplexAmplitude) -> f64 {
    let z = alpha.as_complex().conj() * alpha0.as_complex();
    let r = z.norm();
    let unit = if r > 0.0 { z / r } else { Complex64::new(1.0, 0.0) };
    // Poisson(r) weights times the phase of z^n keep every term bounded.
    let mut weight = (-r).exp();
    let mut dir = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut n: u64 = 0;
    loop {
        let theta = crate::evolution::phase(params.ordering, n, params.tau)
            .rem_euclid(2.0 * std::f64::consts::PI);
        acc += dir * weight * Complex64::cis(theta);
        n += 1;
        if n as f64 > r && weight < 1e-20 {
            break;
        }
        weight *= r / n as f64;
        dir *= unit;
    }
    let gap = alpha.norm() - alpha0.norm();
    (-gap * gap).exp() * acc.norm_sqr()
}

/// Gaussian and interference parts of Q for an analytic superposition.
///
/// `q_gauss = sum_k |c_k|^2 exp(-|alpha - alpha_k|^2)` and
/// `q_int = sum_{k>l} 2 Re[conj(c_k) c_l <alpha|alpha_l> <alpha_k|alpha>]`.
pub fn q_split(s: &CoherentSuperposition, alpha: ComplexAmplitude) -> (f64, f64) {
    let centers = s.centers();
    let proj: Vec<Complex64> = centers
        .iter()
        .zip(&s.components)
        .map(|(ak, c)| c.coefficient * coherent_overlap(alpha, *ak))
        .collect();
    let q_gauss = s
        .components
        .iter()
        .zip(&centers)
        .map(|(c, ak)| c.coefficient.norm_sqr() * (-(alpha.as_complex() - ak.as_complex()).norm_sqr()).exp())
        .sum();
    let mut q_int = 0.0;
    for k in 0..proj.len() {
        for l in 0..k {
            q_int += 2.0 * (proj[k].conj() * proj[l]).re;
        }
    }
    (q_gauss, q_int)
}

/// Riemann sum `sum Q dx dy / pi`; close to 1 when the window holds the mass.
pub fn normalize_check(grid: &QGrid) -> f64 {
    let w = grid.window();
    grid.values.iter().sum::<f64>() * w.dx() * w.dy() / std::f64::consts::PI
}
