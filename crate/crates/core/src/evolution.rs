//! Kerr phase factors and diagonal evolution in the number basis.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::coherent::FockVector;
use crate::error::{domain, KerrError, Result};
use crate::fraction::PeriodFraction;

/// Operator ordering of the Kerr interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KerrOrdering {
    /// `n(n - 1)` interaction, period 2π.
    NormalOrdered,
    /// `n^2` interaction, period 4π.
    Squared,
}

impl KerrOrdering {
    pub const ALL: [KerrOrdering; 2] = [KerrOrdering::NormalOrdered, KerrOrdering::Squared];

    pub fn period(self) -> f64 {
        period(self)
    }

    pub fn name(self) -> &'static str {
        match self {
            KerrOrdering::NormalOrdered => "normal",
            KerrOrdering::Squared => "squared",
        }
    }

    /// Integer multiplier `k(n)` with `phase = tau * k(n) / 2`.
    fn quadratic(self, n: u64) -> u64 {
        match self {
            KerrOrdering::NormalOrdered => n * n.saturating_sub(1),
            KerrOrdering::Squared => n * n,
        }
    }
}

impl fmt::Display for KerrOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KerrOrdering {
    type Err = KerrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "normal-ordered" | "n" => Ok(KerrOrdering::NormalOrdered),
            "squared" | "s" => Ok(KerrOrdering::Squared),
            other => domain(format!("unknown ordering {other:?} (expected normal|squared)")),
        }
    }
}

/// Evolution period: 2π for normal ordering, 4π for the squared form.
pub fn period(ordering: KerrOrdering) -> f64 {
    match ordering {
        KerrOrdering::NormalOrdered => 2.0 * PI,
        KerrOrdering::Squared => 4.0 * PI,
    }
}

/// Kerr phase `theta(n)` in radians, unreduced.
pub fn phase(ordering: KerrOrdering, n: u64, tau: f64) -> f64 {
    0.5 * tau * ordering.quadratic(n) as f64
}

/// Ordering plus dimensionless interaction length `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrParams {
    pub ordering: KerrOrdering,
    pub tau: f64,
}

impl KerrParams {
    pub fn new(ordering: KerrOrdering, tau: f64) -> Result<Self> {
        if !tau.is_finite() {
            return domain(format!("tau must be finite, got {tau}"));
        }
        Ok(Self { ordering, tau })
    }

    /// `tau = fraction * period(ordering)`.
    pub fn at_fraction(ordering: KerrOrdering, fraction: PeriodFraction) -> Self {
        Self {
            ordering,
            tau: fraction.value() * period(ordering),
        }
    }

    /// `tau` reduced into `[0, period)`.
    pub fn canonical_tau(&self) -> f64 {
        self.tau.rem_euclid(period(self.ordering))
    }
}

/// Multiply each amplitude by `exp(i theta(n))`.
pub fn evolve(state: &FockVector, params: KerrParams) -> FockVector {
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let k = params.ordering.quadratic(n as u64) as f64;
            // half-integer multiples of tau: reduce before the exponential
            let theta = (0.5 * params.tau * k).rem_euclid(2.0 * PI);
            a * Complex64::cis(theta)
        })
        .collect();
    FockVector::from_parts(amplitudes, state.tail_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{coherent_amplitudes, coherent_state, ComplexAmplitude};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn max_diff(a: &FockVector, b: &FockVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn phase_examples() {
        for tau in [0.3, 1.0, 17.0] {
            assert_eq!(phase(KerrOrdering::NormalOrdered, 1, tau), 0.0);
        }
        assert_abs_diff_eq!(phase(KerrOrdering::Squared, 2, PI), 2.0 * PI, epsilon = 1e-15);
        let p = phase(KerrOrdering::NormalOrdered, 3, 2.0 * PI);
        assert_abs_diff_eq!(p, 6.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(Complex64::cis(p).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn periods() {
        assert_eq!(period(KerrOrdering::NormalOrdered), 2.0 * PI);
        assert_eq!(period(KerrOrdering::Squared), 4.0 * PI);
        assert_eq!(
            period(KerrOrdering::NormalOrdered),
            period(KerrOrdering::Squared) / 2.0
        );
    }

    #[test]
    fn zero_tau_is_identity() {
        let s = coherent_state(ComplexAmplitude::new(1.5, 0.4).unwrap(), 1e-12).unwrap();
        for ordering in KerrOrdering::ALL {
            let e = evolve(&s, KerrParams::new(ordering, 0.0).unwrap());
            assert_eq!(e, s);
        }
    }

    #[test]
    fn squared_half_period_flips_sign() {
        let alpha = ComplexAmplitude::real(2.0);
        let s = coherent_state(alpha, 1e-12).unwrap();
        let e = evolve(&s, KerrParams::new(KerrOrdering::Squared, 2.0 * PI).unwrap());
        let target = coherent_amplitudes(ComplexAmplitude::real(-2.0), s.n_max());
        assert!(max_diff(&e, &target) < 1e-14);
    }

    #[test]
    fn normal_full_period_is_identity() {
        let s = coherent_state(ComplexAmplitude::real(2.0), 1e-12).unwrap();
        let e = evolve(&s, KerrParams::new(KerrOrdering::NormalOrdered, 2.0 * PI).unwrap());
        assert!(max_diff(&e, &s) < 1e-14);
    }

    #[test]
    fn non_finite_tau_rejected() {
        assert!(KerrParams::new(KerrOrdering::Squared, f64::NAN).is_err());
        let p = KerrParams::new(KerrOrdering::Squared, -PI).unwrap();
        assert_abs_diff_eq!(p.canonical_tau(), 3.0 * PI, epsilon = 1e-15);
    }

    #[test]
    fn ordering_parses() {
        assert_eq!("normal".parse::<KerrOrdering>().unwrap(), KerrOrdering::NormalOrdered);
        assert_eq!("Squared".parse::<KerrOrdering>().unwrap(), KerrOrdering::Squared);
        assert!("weyl".parse::<KerrOrdering>().is_err());
    }

    fn ordering() -> impl Strategy<Value = KerrOrdering> {
        prop_oneof![Just(KerrOrdering::NormalOrdered), Just(KerrOrdering::Squared)]
    }

    fn state() -> impl Strategy<Value = FockVector> {
        (-3.0..3.0f64, -3.0..3.0f64)
            .prop_map(|(re, im)| coherent_state(ComplexAmplitude::new(re, im).unwrap(), 1e-12).unwrap())
    }

    proptest! {
        #[test]
        fn preserves_magnitudes(s in state(), o in ordering(), tau in -20.0..20.0f64) {
            let e = evolve(&s, KerrParams::new(o, tau).unwrap());
            for (a, b) in s.amplitudes().iter().zip(e.amplitudes()) {
                prop_assert!((a.norm() - b.norm()).abs() <= 1e-15 * a.norm().max(1e-300));
            }
            prop_assert_eq!(e.tail_bound(), s.tail_bound());
        }

        #[test]
        fn periodic(s in state(), o in ordering(), tau in -10.0..10.0f64) {
            let a = evolve(&s, KerrParams::new(o, tau).unwrap());
            let b = evolve(&s, KerrParams::new(o, tau + period(o)).unwrap());
            prop_assert!(max_diff(&a, &b) < 1e-12);
        }

        #[test]
        fn composes(s in state(), o in ordering(), t1 in -6.0..6.0f64, t2 in -6.0..6.0f64) {
            let two_step = evolve(&evolve(&s, KerrParams::new(o, t1).unwrap()), KerrParams::new(o, t2).unwrap());
            let one_step = evolve(&s, KerrParams::new(o, t1 + t2).unwrap());
            prop_assert!(max_diff(&two_step, &one_step) < 1e-12);
        }

        #[test]
        fn normal_is_rotated_squared(re in -3.0..3.0f64, im in -3.0..3.0f64, tau in -8.0..8.0f64) {
            let alpha = ComplexAmplitude::new(re, im).unwrap();
            let s = coherent_state(alpha, 1e-12).unwrap();
            let normal = evolve(&s, KerrParams::new(KerrOrdering::NormalOrdered, tau).unwrap());
            let rotated = coherent_amplitudes(alpha.rotated(-0.5 * tau), s.n_max());
            let squared = evolve(&rotated, KerrParams::new(KerrOrdering::Squared, tau).unwrap());
            prop_assert!(max_diff(&normal, &squared) < 1e-12);
        }
    }
}
