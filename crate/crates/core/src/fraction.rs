use std::fmt;
use std::str::FromStr;

use crate::error::{domain, KerrError, Result};

/// A reduced rational fraction `m/N` of the evolution period.
///
/// `0/N` reduces to `0/1` and `N/N` to `1/1`; both describe the identity
/// evolution and carry a denominator of one. Numerators at or beyond the
/// denominator are accepted and describe evolution past one full period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodFraction {
    m: u64,
    n: u64,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduce `m/n` to lowest terms.
pub fn reduce_fraction(m: i64, n: i64) -> Result<PeriodFraction> {
    if n <= 0 {
        return domain(format!("denominator must be positive, got {n}"));
    }
    if m < 0 {
        return domain(format!("numerator must be non-negative, got {m}"));
    }
    Ok(PeriodFraction::reduced(m as u64, n as u64))
}

impl PeriodFraction {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return domain("denominator must be positive, got 0");
        }
        Ok(Self::reduced(m, n))
    }

    fn reduced(m: u64, n: u64) -> Self {
        if m == 0 {
            return Self { m: 0, n: 1 };
        }
        let g = gcd(m, n);
        Self { m: m / g, n: n / g }
    }

    pub fn numerator(&self) -> u64 {
        self.m
    }

    pub fn denominator(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    /// True for whole multiples of the period (including zero).
    pub fn is_identity(&self) -> bool {
        self.n == 1
    }

    /// The mirrored fraction `(N - m)/N`, taken modulo one period.
    pub fn mirrored(&self) -> Self {
        let m = self.m % self.n;
        Self::reduced((self.n - m) % self.n, self.n)
    }
}

impl fmt::Display for PeriodFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl FromStr for PeriodFraction {
    type Err = KerrError;

    fn from_str(s: &str) -> Result<Self> {
        let (m, n) = s
            .split_once('/')
            .ok_or_else(|| KerrError::Domain(format!("expected M/N, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| KerrError::Domain(format!("bad integer {t:?} in fraction: {e}")))
        };
        reduce_fraction(parse(m)?, parse(n)?)
    }
}
