//! Structure extraction from Q grids and checks on superpositions.

mod contour;
mod peaks;

pub use contour::{contours, ContourSet, Polyline};
pub use peaks::{count_peaks, PeakReport, DEFAULT_REL_HEIGHT};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catsolver::CoherentSuperposition;
use crate::coherent::{coherent_state, ComplexAmplitude, DEFAULT_EPSILON};
use crate::error::{domain, Result};
use crate::evolution::{evolve, KerrOrdering, KerrParams};
use crate::qpd::{q_value, DEFAULT_MARGIN};

/// Fixed seed for the sampled rotation check.
pub const ROTATION_SEED: u64 = 0x5eed_0f2b;

/// Estimated number of well separated Gaussians on the circle of radius
/// `|alpha0|`: circumference over the diameter of the 0.1-height section,
/// `floor(2π|alpha0| / (2 sqrt(ln 10)))`.
pub fn n_max_estimate(alpha0_mag: f64) -> Result<u64> {
    if !(alpha0_mag >= 0.0 && alpha0_mag.is_finite()) {
        return domain(format!("|alpha0| must be finite and >= 0, got {alpha0_mag}"));
    }
    let diameter = 2.0 * 10f64.ln().sqrt();
    Ok((2.0 * std::f64::consts::PI * alpha0_mag / diameter).floor() as u64)
}

/// Smallest `|alpha_k - alpha_l|^2` over component pairs; `+inf` when there is
/// only one component.
pub fn separation_metric(s: &CoherentSuperposition) -> f64 {
    let centers = s.centers();
    let mut best = f64::INFINITY;
    for k in 0..centers.len() {
        for l in 0..k {
            best = best.min((centers[k].as_complex() - centers[l].as_complex()).norm_sqr());
        }
    }
    best
}

/// Max of `|Q_normal(alpha; tau) - Q_squared(alpha e^{i tau/2}; tau)|` over
/// `samples` points drawn uniformly from the default window.
pub fn rotation_check(alpha0: ComplexAmplitude, tau: f64, samples: usize) -> Result<f64> {
    rotation_check_seeded(alpha0, tau, samples, ROTATION_SEED)
}

pub fn rotation_check_seeded(alpha0: ComplexAmplitude, tau: f64, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return domain("rotation check needs at least one sample");
    }
    let initial = coherent_state(alpha0, DEFAULT_EPSILON)?;
    let normal = evolve(&initial, KerrParams::new(KerrOrdering::NormalOrdered, tau)?);
    let squared = evolve(&initial, KerrParams::new(KerrOrdering::Squared, tau)?);
    let half = alpha0.norm() + DEFAULT_MARGIN;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let alpha = ComplexAmplitude::new(rng.random_range(-half..half), rng.random_range(-half..half))?;
        let d = q_value(&normal, alpha) - q_value(&squared, alpha.rotated(0.5 * tau));
        worst = worst.max(d.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catsolver::build_superposition;
    use crate::coherent::coherent_amplitudes;
    use crate::fraction::reduce_fraction;
    use crate::qpd::{q_grid, GridWindow};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn n_max_values() {
        assert_eq!(n_max_estimate(2.0).unwrap(), 4);
        assert_eq!(n_max_estimate(4.0).unwrap(), 8);
        assert_eq!(n_max_estimate(0.0).unwrap(), 0);
        assert!(n_max_estimate(-1.0).is_err());
        let mut prev = 0;
        for k in 0..=400 {
            let v = n_max_estimate(k as f64 * 0.025).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn separation_examples() {
        let two = ComplexAmplitude::real(2.0);
        let cat2 = build_superposition(two, reduce_fraction(1, 4).unwrap(), KerrOrdering::Squared).unwrap();
        assert_abs_diff_eq!(separation_metric(&cat2), 16.0, epsilon = 1e-12);
        let cat4 = build_superposition(two, reduce_fraction(1, 8).unwrap(), KerrOrdering::Squared).unwrap();
        assert_abs_diff_eq!(separation_metric(&cat4), 8.0, epsilon = 1e-12);
        let degenerate =
            build_superposition(ComplexAmplitude::ZERO, reduce_fraction(1, 8).unwrap(), KerrOrdering::Squared)
                .unwrap();
        assert_eq!(separation_metric(&degenerate), 0.0);
        let single = build_superposition(two, reduce_fraction(1, 2).unwrap(), KerrOrdering::Squared).unwrap();
        assert!(separation_metric(&single).is_infinite());
    }

    #[test]
    fn rotation_examples() {
        let two = ComplexAmplitude::real(2.0);
        assert_eq!(rotation_check(two, 0.0, 50).unwrap(), 0.0);
        assert!(rotation_check(two, PI, 1000).unwrap() < 1e-10);
        assert!(rotation_check(two, PI, 0).is_err());
    }

    #[test]
    fn normal_half_squared_period_recovers_initial_peak() {
        let alpha0 = ComplexAmplitude::real(2.0);
        let s = coherent_state(alpha0, 1e-12).unwrap();
        let w = GridWindow::default_for(alpha0);
        let tau = 2.0 * PI;
        for (ordering, expect_re) in [(KerrOrdering::NormalOrdered, 2.0), (KerrOrdering::Squared, -2.0)] {
            let g = q_grid(&evolve(&s, KerrParams::new(ordering, tau).unwrap()), w);
            let r = count_peaks(&g, 0.5).unwrap();
            assert_eq!(r.count, 1);
            assert_abs_diff_eq!(r.centers[0].re(), expect_re, epsilon = w.dx());
            assert_abs_diff_eq!(r.centers[0].im(), 0.0, epsilon = 1e-9);
        }
        // sanity: the two states are the antipodal coherent states
        let flipped = coherent_amplitudes(ComplexAmplitude::real(-2.0), s.n_max());
        let sq = evolve(&s, KerrParams::new(KerrOrdering::Squared, tau).unwrap());
        assert!(crate::catsolver::fidelity(&sq, &flipped) > 1.0 - 1e-10);
    }
}
