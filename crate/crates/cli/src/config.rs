use std::f64::consts::PI;
use std::path::PathBuf;

use kerrcat_core::qpd::DEFAULT_RESOLUTION;
use kerrcat_core::{ComplexAmplitude, GridWindow, KerrOrdering, KerrParams, PeriodFraction};

use crate::args::CommonArgs;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Tau(f64),
    Fraction(PeriodFraction),
}

/// Validated settings shared by every verb.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alpha0: ComplexAmplitude,
    pub ordering: KerrOrdering,
    pub time: TimeSpec,
    pub epsilon: f64,
    pub window: Option<f64>,
    pub resolution: Option<(usize, usize)>,
    pub out: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_alpha(s: &str) -> Result<ComplexAmplitude> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| usage(format!("bad number {t:?} in --alpha0")));
    let (re, im) = match parts.as_slice() {
        [re] => (num(re)?, 0.0),
        [re, im] => (num(re)?, num(im)?),
        _ => return Err(usage(format!("--alpha0 expects RE,IM, got {s:?}"))),
    };
    ComplexAmplitude::new(re, im).map_err(|e| usage(e.to_string()))
}

pub fn parse_resolution(s: &str) -> Result<(usize, usize)> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad sample count {t:?} in --res")))
    };
    let (nx, ny) = match s.split_once(',') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if nx < 2 || ny < 2 {
        return Err(usage(format!("--res needs at least 2 samples per axis, got {nx},{ny}")));
    }
    Ok((nx, ny))
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self> {
        let alpha0 = parse_alpha(&args.alpha0)?;
        let ordering: KerrOrdering = args.ordering.parse().map_err(|e: kerrcat_core::KerrError| usage(e.to_string()))?;
        let time = match (&args.frac, args.tau) {
            (Some(_), Some(_)) => return Err(usage("--frac and --tau are mutually exclusive")),
            (Some(f), None) => TimeSpec::Fraction(f.parse().map_err(|e: kerrcat_core::KerrError| usage(e.to_string()))?),
            (None, Some(t)) if t.is_finite() => TimeSpec::Tau(t),
            (None, Some(t)) => return Err(usage(format!("--tau must be finite, got {t}"))),
            (None, None) => TimeSpec::Tau(0.0),
        };
        if !(args.eps > 0.0 && args.eps < 1.0) {
            return Err(usage(format!("--eps must lie in (0, 1), got {}", args.eps)));
        }
        if let Some(w) = args.window {
            if !(w > 0.0 && w.is_finite()) {
                return Err(usage(format!("--window must be positive, got {w}")));
            }
        }
        let resolution = args.res.as_deref().map(parse_resolution).transpose()?;
        Ok(Self {
            alpha0,
            ordering,
            time,
            epsilon: args.eps,
            window: args.window,
            resolution,
            out: args.out.clone(),
        })
    }

    pub fn tau(&self) -> f64 {
        match self.time {
            TimeSpec::Tau(t) => t,
            TimeSpec::Fraction(f) => f.value() * self.ordering.period(),
        }
    }

    pub fn params(&self) -> KerrParams {
        KerrParams {
            ordering: self.ordering,
            tau: self.tau(),
        }
    }

    pub fn fraction(&self) -> Option<PeriodFraction> {
        match self.time {
            TimeSpec::Fraction(f) => Some(f),
            TimeSpec::Tau(_) => None,
        }
    }

    pub fn grid_window(&self) -> Result<GridWindow> {
        let half = self.window.unwrap_or(self.alpha0.norm() + kerrcat_core::qpd::DEFAULT_MARGIN);
        let (nx, ny) = self.resolution.unwrap_or((DEFAULT_RESOLUTION, DEFAULT_RESOLUTION));
        Ok(GridWindow::centered(half, nx, ny)?)
    }

    pub fn tau_over_pi(&self) -> f64 {
        self.tau() / PI
    }
}
