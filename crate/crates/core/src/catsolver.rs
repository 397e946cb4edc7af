//! Decomposition of the evolved state at rational fractions of the period
//! into finite superpositions of coherent states on the circle `|alpha| = |alpha0|`.
//!
//! For the squared ordering at `tau = (m/N) * 4π` the Kerr phase is
//! `exp(2πi m n^2 / N)`, which is `N`-periodic in `n`. Writing the state as
//! `sum_j c_j |exp(2πi j/N) alpha0>` turns the coefficient system into a
//! discrete Fourier pair, so `c_j` is a normalised quadratic Gauss sum. For
//! even `N` half of the lattice coefficients vanish identically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coherent::{coherent_amplitudes, coherent_overlap, poisson_tail, ComplexAmplitude, FockVector};
use crate::error::{KerrError, Result};
use crate::evolution::{period, KerrOrdering};
use crate::fraction::PeriodFraction;

/// Maximum residual accepted for the full `N`-equation coefficient system.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Which lattice points carry non-zero coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    /// `N` odd: all `N` lattice points.
    Odd,
    /// `N` even, `N/2` odd: odd lattice indices.
    EvenHalfOdd,
    /// `N` even, `N/2` even: even lattice indices.
    EvenHalfEven,
}

impl ParityClass {
    pub fn of(denominator: u64) -> Self {
        if denominator % 2 == 1 {
            ParityClass::Odd
        } else if (denominator / 2) % 2 == 1 {
            ParityClass::EvenHalfOdd
        } else {
            ParityClass::EvenHalfEven
        }
    }

    /// Lattice indices `j` in `1..=N` whose coefficient survives.
    fn survivors(self, denominator: u64) -> Vec<u64> {
        match self {
            ParityClass::Odd => (1..=denominator).collect(),
            ParityClass::EvenHalfOdd => (1..=denominator / 2).map(|k| 2 * k - 1).collect(),
            ParityClass::EvenHalfEven => (1..=denominator / 2).map(|k| 2 * k).collect(),
        }
    }
}

/// Component count and phases for the squared ordering at `fraction * 4π`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentPlan {
    pub count: usize,
    pub parity_class: ParityClass,
    /// Phases `2πj/N` in `(0, 2π]`, ascending.
    pub phases: Vec<f64>,
    /// Lattice indices `j` matching `phases`.
    pub lattice: Vec<u64>,
}

/// `N` for odd reduced denominators, `N/2` for even ones.
pub fn component_count(fraction: PeriodFraction) -> usize {
    let n = fraction.denominator();
    if n % 2 == 1 {
        n as usize
    } else {
        (n / 2) as usize
    }
}

pub fn component_phases(fraction: PeriodFraction) -> ComponentPlan {
    let n = fraction.denominator();
    let parity_class = ParityClass::of(n);
    let lattice = parity_class.survivors(n);
    let phases = lattice.iter().map(|&j| 2.0 * PI * j as f64 / n as f64).collect();
    ComponentPlan {
        count: lattice.len(),
        parity_class,
        phases,
        lattice,
    }
}

/// `exp(2πi r / N)` for an integer residue `r`.
fn root_of_unity(r: u64, n: u64) -> Complex64 {
    Complex64::cis(2.0 * PI * (r % n) as f64 / n as f64)
}

/// Squared-ordering Kerr phase factor `exp(2πi m n^2 / N)` at photon number `k`.
fn kerr_factor(fraction: PeriodFraction, k: u64) -> Complex64 {
    let n = fraction.denominator();
    let m = fraction.numerator() % n;
    let k = k % n;
    root_of_unity((m * ((k * k) % n)) % n, n)
}

/// Coefficients on the full `N`-point lattice, `j = 1..=N`.
///
/// `c_j = (1/N) sum_{n=0}^{N-1} exp(2πi (m n^2 - n j) / N)`. The non-surviving
/// entries are zero up to rounding.
pub fn lattice_coefficients(fraction: PeriodFraction) -> Vec<Complex64> {
    let n = fraction.denominator();
    let m = fraction.numerator() % n;
    (1..=n)
        .map(|j| {
            let sum: Complex64 = (0..n)
                .map(|k| {
                    let quad = (m * ((k * k) % n)) % n;
                    let lin = (k * (j % n)) % n;
                    root_of_unity((quad + n - lin) % n, n)
                })
                .sum();
            sum / n as f64
        })
        .collect()
}

/// Maximum over `n = 0..N-1` of `|sum_k c_k exp(i n phi_k) - exp(i theta(n))|`.
pub fn system_residual(fraction: PeriodFraction, plan: &ComponentPlan, coefficients: &[Complex64]) -> f64 {
    let n = fraction.denominator();
    (0..n)
        .map(|k| {
            let lhs: Complex64 = plan
                .lattice
                .iter()
                .zip(coefficients)
                .map(|(&j, c)| c * root_of_unity((k * j) % n, n))
                .sum();
            (lhs - kerr_factor(fraction, k)).norm()
        })
        .fold(0.0, f64::max)
}

/// Surviving coefficients, ordered like [`component_phases`].
pub fn solve_coefficients(fraction: PeriodFraction) -> Result<Vec<Complex64>> {
    let plan = component_phases(fraction);
    let full = lattice_coefficients(fraction);
    let coefficients: Vec<Complex64> = plan.lattice.iter().map(|&j| full[(j - 1) as usize]).collect();
    let residual = system_residual(fraction, &plan, &coefficients);
    if residual.is_nan() || residual > RESIDUAL_TOLERANCE {
        return Err(KerrError::InternalConsistency {
            fraction: fraction.to_string(),
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok(coefficients)
}

/// One term `c_k |exp(i phi_k) alpha0>` of a superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub coefficient: Complex64,
    pub phase: f64,
}

/// The evolved state written as `sum_k c_k |exp(i phi_k) alpha0>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSuperposition {
    pub alpha0: ComplexAmplitude,
    pub ordering: KerrOrdering,
    pub tau: f64,
    /// The period fraction the decomposition was built for.
    pub fraction: PeriodFraction,
    pub components: Vec<Component>,
}

impl CoherentSuperposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Centre `alpha_k = exp(i phi_k) alpha0` of component `k`.
    pub fn component_alpha(&self, k: usize) -> ComplexAmplitude {
        self.alpha0.rotated(self.components[k].phase)
    }

    pub fn centers(&self) -> Vec<ComplexAmplitude> {
        (0..self.len()).map(|k| self.component_alpha(k)).collect()
    }

    /// `sum_{k,l} conj(c_k) c_l <alpha_k|alpha_l>`.
    pub fn norm_sqr(&self) -> f64 {
        let centers = self.centers();
        let mut total = Complex64::new(0.0, 0.0);
        for (ck, ak) in self.components.iter().zip(&centers) {
            for (cl, al) in self.components.iter().zip(&centers) {
                total += ck.coefficient.conj() * cl.coefficient * coherent_overlap(*ak, *al);
            }
        }
        total.re
    }

    /// Components sorted by phase reduced into `(0, 2π]`.
    pub fn sorted_by_phase(&self) -> Vec<Component> {
        let mut out: Vec<Component> = self
            .components
            .iter()
            .map(|c| Component {
                coefficient: c.coefficient,
                phase: wrap_phase(c.phase),
            })
            .collect();
        out.sort_by(|a, b| a.phase.total_cmp(&b.phase));
        out
    }
}

/// Reduce into `(0, 2π]`, snapping values within rounding of `0` to `2π`.
pub fn wrap_phase(phi: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let r = phi.rem_euclid(two_pi);
    if r < 1e-12 || two_pi - r < 1e-12 {
        two_pi
    } else {
        r
    }
}

/// Analytic superposition equal to the state evolved for `fraction` of the
/// ordering's period.
///
/// The normal-ordered case reuses the squared solution at the same `tau`
/// (fraction `m/2N` of the squared period) with every phase shifted by
/// `-tau/2`.
pub fn build_superposition(
    alpha0: ComplexAmplitude,
    fraction: PeriodFraction,
    ordering: KerrOrdering,
) -> Result<CoherentSuperposition> {
    let tau = fraction.value() * period(ordering);
    let (squared_fraction, shift) = match ordering {
        KerrOrdering::Squared => (fraction, 0.0),
        KerrOrdering::NormalOrdered => (
            PeriodFraction::new(fraction.numerator(), 2 * fraction.denominator())?,
            -0.5 * tau,
        ),
    };
    let plan = component_phases(squared_fraction);
    let coefficients = solve_coefficients(squared_fraction)?;
    let components = plan
        .phases
        .iter()
        .zip(coefficients)
        .map(|(&phase, coefficient)| Component {
            coefficient,
            phase: phase + shift,
        })
        .collect();
    Ok(CoherentSuperposition {
        alpha0,
        ordering,
        tau,
        fraction,
        components,
    })
}

/// Expand the superposition in the number basis up to `n_max`.
pub fn superposition_to_fock(s: &CoherentSuperposition, n_max: usize) -> FockVector {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for (k, component) in s.components.iter().enumerate() {
        let coherent = coherent_amplitudes(s.component_alpha(k), n_max);
        for (acc, a) in amplitudes.iter_mut().zip(coherent.amplitudes()) {
            *acc += component.coefficient * a;
        }
    }
    FockVector::from_parts(amplitudes, poisson_tail(s.alpha0.norm_sqr(), n_max))
}

/// `|<a|b>|^2`, zero-padding the shorter vector.
pub fn fidelity(a: &FockVector, b: &FockVector) -> f64 {
    a.inner(b).norm_sqr()
}
