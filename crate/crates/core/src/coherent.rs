//! Coherent states in the photon-number basis.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Default truncation tolerance on the discarded Poisson tail.
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// A point of the complex field-amplitude plane.
///
/// Both components are finite; constructors reject NaN and infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexAmplitude(Complex64);

impl ComplexAmplitude {
    pub const ZERO: Self = Self(Complex64::new(0.0, 0.0));

    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::try_from_complex(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        assert!(re.is_finite(), "non-finite amplitude {re}");
        Self(Complex64::new(re, 0.0))
    }

    pub fn try_from_complex(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(Self(z))
        } else {
            domain(format!("amplitude must be finite, got {z}"))
        }
    }

    pub fn from_polar(r: f64, phi: f64) -> Result<Self> {
        Self::try_from_complex(Complex64::from_polar(r, phi))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn as_complex(&self) -> Complex64 {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn arg(&self) -> f64 {
        self.0.arg()
    }

    /// Rotate by `phi` radians about the origin.
    pub fn rotated(&self, phi: f64) -> Self {
        Self(self.0 * Complex64::cis(phi))
    }
}

impl From<ComplexAmplitude> for Complex64 {
    fn from(a: ComplexAmplitude) -> Self {
        a.0
    }
}

impl fmt::Display for ComplexAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

/// State vector over photon numbers `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<Complex64>,
    tail_bound: f64,
}

impl FockVector {
    /// Wrap raw amplitudes. `tail_bound` bounds the probability discarded by
    /// truncating the source state.
    pub fn new(amplitudes: Vec<Complex64>, tail_bound: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return domain("a Fock vector needs at least the n = 0 amplitude");
        }
        if !(tail_bound >= 0.0 && tail_bound.is_finite()) {
            return domain(format!("tail bound must be finite and >= 0, got {tail_bound}"));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return domain("Fock amplitudes must be finite");
        }
        Ok(Self { amplitudes, tail_bound })
    }

    pub(crate) fn from_parts(amplitudes: Vec<Complex64>, tail_bound: f64) -> Self {
        debug_assert!(!amplitudes.is_empty());
        Self { amplitudes, tail_bound }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Photon-number distribution `|amplitude_n|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`, zero-padding the shorter vector.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Number-basis expansion of the coherent state `|alpha0>` up to `n_max`.
///
/// Uses the recurrence `a_{n+1} = a_n * alpha0 / sqrt(n + 1)` so no factorial
/// is ever formed. The starting value `exp(-|alpha0|^2 / 2)` underflows for
/// `|alpha0|^2` beyond ~1400, far outside the intended range.
pub fn coherent_amplitudes(alpha0: ComplexAmplitude, n_max: usize) -> FockVector {
    let alpha = alpha0.as_complex();
    let mut amplitudes = Vec::with_capacity(n_max + 1);
    let mut a = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    amplitudes.push(a);
    for n in 0..n_max {
        a = a * alpha / ((n + 1) as f64).sqrt();
        amplitudes.push(a);
    }
    FockVector::from_parts(amplitudes, poisson_tail(alpha.norm_sqr(), n_max))
}

/// `<beta|alpha>` for two coherent states.
pub fn coherent_overlap(beta: ComplexAmplitude, alpha: ComplexAmplitude) -> Complex64 {
    let (a, b) = (alpha.as_complex(), beta.as_complex());
    (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + b.conj() * a).exp()
}

/// Probability mass of Poisson(`mean`) strictly above `n_max`, summed term by
/// term from `n_max + 1` upward.
pub fn poisson_tail(mean: f64, n_max: usize) -> f64 {
    if mean <= 0.0 {
        return 0.0;
    }
    let ln_mean = mean.ln();
    // ln p_n by recurrence up to n_max + 1
    let mut ln_p = -mean;
    for n in 1..=n_max + 1 {
        ln_p += ln_mean - (n as f64).ln();
    }
    let mut sum = 0.0;
    let mut n = n_max + 1;
    loop {
        let term = ln_p.exp();
        sum += term;
        if n as f64 > mean && (term <= sum * 1e-18 || term == 0.0) {
            break;
        }
        n += 1;
        ln_p += ln_mean - (n as f64).ln();
    }
    sum
}

/// Smallest `n_max` whose discarded Poisson(`|alpha0|^2`) tail is below `epsilon`.
pub fn choose_truncation(alpha0: ComplexAmplitude, epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return domain(format!("truncation epsilon must lie in (0, 1), got {epsilon}"));
    }
    let mean = alpha0.norm_sqr();
    let mut n_max = 0;
    while poisson_tail(mean, n_max) >= epsilon {
        n_max += 1;
    }
    Ok(n_max)
}

/// Coherent amplitudes truncated at the `epsilon` tail.
pub fn coherent_state(alpha0: ComplexAmplitude, epsilon: f64) -> Result<FockVector> {
    Ok(coherent_amplitudes(alpha0, choose_truncation(alpha0, epsilon)?))
}
