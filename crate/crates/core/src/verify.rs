//! Self-check suite: golden superpositions, oracle agreement, Q-function laws
//! and peak structure. Each check yields one [`CheckOutcome`].

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{count_peaks, n_max_estimate, rotation_check, separation_metric};
use crate::catsolver::{
    build_superposition, component_count, component_phases, fidelity, lattice_coefficients, solve_coefficients,
    superposition_to_fock, CoherentSuperposition,
};
use crate::coherent::{coherent_amplitudes, coherent_state, ComplexAmplitude};
use crate::error::Result;
use crate::evolution::{evolve, period, KerrOrdering, KerrParams};
use crate::fraction::{gcd, PeriodFraction};
use crate::qpd::{normalize_check, q_grid, q_series, q_split, q_value, GridWindow};

/// Separation above which peak counts must match component counts exactly.
pub const SEPARATION_GATE: f64 = 8.0;
/// Rounding allowance when comparing a computed separation to the gate.
pub const SEPARATION_SLACK: f64 = 1e-9;

/// One expected component: phase in `(0, 2π]` and coefficient.
#[derive(Debug, Clone, Copy)]
pub struct GoldenComponent {
    pub phase: f64,
    pub coefficient: Complex64,
}

/// Closed-form superpositions for the squared ordering, sorted by phase.
pub fn golden_superpositions() -> Vec<(PeriodFraction, Vec<GoldenComponent>)> {
    let c = |phase: f64, mag: f64, arg: f64| GoldenComponent {
        phase,
        coefficient: Complex64::from_polar(mag, arg),
    };
    let r2 = 0.5f64.sqrt();
    let r3 = 1.0 / 3f64.sqrt();
    let f = |m, n| PeriodFraction::new(m, n).expect("valid fraction");
    let quarter = vec![c(PI, r2, -PI / 4.0), c(2.0 * PI, r2, PI / 4.0)];
    let third = vec![
        c(2.0 * PI / 3.0, r3, -PI / 6.0),
        c(4.0 * PI / 3.0, r3, -PI / 6.0),
        c(2.0 * PI, r3, PI / 2.0),
    ];
    let conj = |v: &[GoldenComponent]| {
        v.iter()
            .map(|g| GoldenComponent {
                phase: g.phase,
                coefficient: g.coefficient.conj(),
            })
            .collect::<Vec<_>>()
    };
    vec![
        (f(1, 2), vec![c(PI, 1.0, 0.0)]),
        (f(1, 4), quarter.clone()),
        (f(3, 4), conj(&quarter)),
        (f(1, 3), third.clone()),
        (f(2, 3), conj(&third)),
        (
            f(1, 6),
            vec![c(PI / 3.0, r3, PI / 6.0), c(PI, r3, -PI / 2.0), c(5.0 * PI / 3.0, r3, PI / 6.0)],
        ),
        (
            f(1, 8),
            vec![
                c(PI / 2.0, 0.5, 0.0),
                c(PI, 0.5, PI / 4.0 + PI),
                c(1.5 * PI, 0.5, 0.0),
                c(2.0 * PI, 0.5, PI / 4.0),
            ],
        ),
        (
            f(3, 8),
            vec![
                c(PI / 2.0, 0.5, 0.0),
                c(PI, 0.5, -PI / 4.0),
                c(1.5 * PI, 0.5, 0.0),
                c(2.0 * PI, 0.5, -PI / 4.0 + PI),
            ],
        ),
    ]
}

/// Reduced fractions `m/N` with `1 <= m < N` and `2 <= N <= limit`.
pub fn reduced_fractions(limit: u64) -> Vec<PeriodFraction> {
    let mut out = Vec::new();
    for n in 2..=limit {
        for m in 1..n {
            if gcd(m, n) == 1 {
                out.push(PeriodFraction::new(m, n).expect("n >= 2"));
            }
        }
    }
    out
}

/// Squared-ordering fractions checked for peak counts at `|alpha0| = 2`.
pub fn squared_sequence() -> Vec<PeriodFraction> {
    [(1, 8), (1, 6), (1, 4), (1, 3), (3, 8), (1, 2)]
        .iter()
        .map(|&(m, n)| PeriodFraction::new(m, n).expect("valid"))
        .collect()
}

/// Normal-ordered fractions checked for peak counts at `|alpha0| = 4`.
pub fn normal_sequence() -> Vec<PeriodFraction> {
    [(1, 8), (1, 6), (1, 5), (1, 3)]
        .iter()
        .map(|&(m, n)| PeriodFraction::new(m, n).expect("valid"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Reported without gating the overall result.
    pub informational: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.informational) {
            (_, true) => "info",
            (true, false) => "pass",
            (false, false) => "FAIL",
        };
        write!(f, "{},{},{}", self.name, status, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub alpha0: ComplexAmplitude,
    pub epsilon: f64,
    /// Skip every grid-based check.
    pub quick: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            alpha0: ComplexAmplitude::real(2.0),
            epsilon: crate::coherent::DEFAULT_EPSILON,
            quick: false,
        }
    }
}

fn outcome(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed,
        informational: false,
        detail: detail.into(),
    }
}

/// True when every gating check passed.
pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed || o.informational)
}

pub fn run(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    out.extend(golden_checks(opts.alpha0)?);
    out.push(component_rule_check());
    out.push(magnitude_check()?);
    out.push(conjugation_check()?);
    out.push(n_max_check()?);
    out.push(oracle_check(opts.alpha0, opts.epsilon)?);
    out.push(split_check(opts.alpha0)?);
    out.push(rotation_law_check(opts.alpha0)?);
    out.push(periodicity_check(opts.alpha0, opts.epsilon)?);
    if !opts.quick {
        out.extend(peak_checks(opts.alpha0, opts.epsilon)?);
    }
    Ok(out)
}

pub fn golden_checks(alpha0: ComplexAmplitude) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (fraction, expected) in golden_superpositions() {
        let s = build_superposition(alpha0, fraction, KerrOrdering::Squared)?;
        let got = s.sorted_by_phase();
        let mut worst = 0.0f64;
        let shape_ok = got.len() == expected.len();
        if shape_ok {
            for (g, e) in got.iter().zip(&expected) {
                worst = worst.max((g.phase - e.phase).abs());
                worst = worst.max((g.coefficient - e.coefficient).norm());
            }
        }
        let passed = shape_ok && worst <= 1e-12;
        out.push(outcome(
            format!("golden_{}_{}", fraction.numerator(), fraction.denominator()),
            passed,
            format!("components={} max_dev={worst:.2e}", got.len()),
        ));
    }
    Ok(out)
}

pub fn component_rule_check() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut worst_vanishing = 0.0f64;
    for f in reduced_fractions(16) {
        let n = f.denominator();
        let expected = if n % 2 == 1 { n } else { n / 2 } as usize;
        let plan = component_phases(f);
        if component_count(f) != expected || plan.count != expected {
            failures.push(f.to_string());
        }
        for (j, c) in (1..=n).zip(lattice_coefficients(f)) {
            if !plan.lattice.contains(&j) {
                worst_vanishing = worst_vanishing.max(c.norm());
            }
        }
    }
    let passed = failures.is_empty() && worst_vanishing < 1e-12;
    outcome(
        "component_count_rule",
        passed,
        format!("bad_counts={} max_vanishing={worst_vanishing:.2e}", failures.len()),
    )
}

pub fn magnitude_check() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for f in reduced_fractions(16) {
        let c = solve_coefficients(f)?;
        let target = 1.0 / (c.len() as f64).sqrt();
        for x in c {
            worst = worst.max((x.norm() - target).abs());
        }
    }
    Ok(outcome("magnitude_law", worst < 1e-10, format!("max_dev={worst:.2e}")))
}

pub fn conjugation_check() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for f in reduced_fractions(16) {
        let a = solve_coefficients(f)?;
        let b = solve_coefficients(f.mirrored())?;
        for (x, y) in a.iter().zip(&b) {
            worst = worst.max((x.conj() - y).norm());
        }
    }
    Ok(outcome("conjugation_law", worst < 1e-12, format!("max_dev={worst:.2e}")))
}

pub fn n_max_check() -> Result<CheckOutcome> {
    let (a, b) = (n_max_estimate(2.0)?, n_max_estimate(4.0)?);
    Ok(outcome("n_max_estimate", a == 4 && b == 8, format!("n_max(2)={a} n_max(4)={b}")))
}

pub fn oracle_check(alpha0: ComplexAmplitude, epsilon: f64) -> Result<CheckOutcome> {
    let mut amplitudes = vec![1.0, 2.0, 4.0];
    if !amplitudes.contains(&alpha0.norm()) || alpha0.im() != 0.0 {
        amplitudes.push(f64::NAN);
    }
    let mut worst = 0.0f64;
    let mut cases = 0;
    for a in amplitudes {
        let alpha = if a.is_nan() { alpha0 } else { ComplexAmplitude::real(a) };
        let initial = coherent_state(alpha, epsilon)?;
        for ordering in KerrOrdering::ALL {
            for f in reduced_fractions(12) {
                let s = build_superposition(alpha, f, ordering)?;
                let direct = evolve(&initial, KerrParams::new(ordering, s.tau)?);
                let analytic = superposition_to_fock(&s, initial.n_max());
                worst = worst.max(1.0 - fidelity(&analytic, &direct));
                cases += 1;
            }
        }
    }
    Ok(outcome("oracle_equivalence", worst <= 1e-9, format!("cases={cases} max_infidelity={worst:.2e}")))
}

fn random_point(rng: &mut ChaCha8Rng, half: f64) -> Result<ComplexAmplitude> {
    ComplexAmplitude::new(rng.random_range(-half..half), rng.random_range(-half..half))
}

pub fn split_check(alpha0: ComplexAmplitude) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let half = alpha0.norm() + 4.0;
    let mut worst = 0.0f64;
    for (fraction, _) in golden_superpositions() {
        let s = build_superposition(alpha0, fraction, KerrOrdering::Squared)?;
        let params = KerrParams::new(KerrOrdering::Squared, s.tau)?;
        for _ in 0..1000 {
            let a = random_point(&mut rng, half)?;
            let (g, i) = q_split(&s, a);
            worst = worst.max((g + i - q_series(alpha0, params, a)).abs());
        }
    }
    Ok(outcome("split_consistency", worst < 1e-10, format!("max_dev={worst:.2e}")))
}

pub fn rotation_law_check(alpha0: ComplexAmplitude) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for tau in [PI / 2.0, PI, 4.0 * PI / 3.0] {
        worst = worst.max(rotation_check(alpha0, tau, 1000)?);
    }
    let initial = coherent_state(alpha0, 1e-12)?;
    let normal = evolve(&initial, KerrParams::new(KerrOrdering::NormalOrdered, 2.0 * PI)?);
    let squared = evolve(&initial, KerrParams::new(KerrOrdering::Squared, 2.0 * PI)?);
    let flipped = coherent_amplitudes(alpha0.rotated(PI), initial.n_max());
    let f_normal = fidelity(&normal, &initial);
    let f_squared = fidelity(&squared, &flipped);
    let passed = worst < 1e-10 && f_normal >= 1.0 - 1e-10 && f_squared >= 1.0 - 1e-10;
    Ok(outcome(
        "ordering_rotation",
        passed,
        format!("max_dev={worst:.2e} fid_normal={f_normal:.12} fid_squared={f_squared:.12}"),
    ))
}

pub fn periodicity_check(alpha0: ComplexAmplitude, epsilon: f64) -> Result<CheckOutcome> {
    let initial = coherent_state(alpha0, epsilon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let half = alpha0.norm() + 4.0;
    let mut worst = 0.0f64;
    for ordering in KerrOrdering::ALL {
        let tau: f64 = rng.random_range(0.0..period(ordering));
        let a = evolve(&initial, KerrParams::new(ordering, tau)?);
        let b = evolve(&initial, KerrParams::new(ordering, tau + period(ordering))?);
        for _ in 0..100 {
            let x = random_point(&mut rng, half)?;
            worst = worst.max((q_value(&a, x) - q_value(&b, x)).abs());
        }
    }
    Ok(outcome("q_periodicity", worst < 1e-10, format!("max_dev={worst:.2e}")))
}

/// Peak count versus component count for one evolved state on the default grid.
pub fn peak_case(
    alpha0: ComplexAmplitude,
    ordering: KerrOrdering,
    fraction: PeriodFraction,
    epsilon: f64,
) -> Result<(CoherentSuperposition, usize, f64, f64)> {
    let s = build_superposition(alpha0, fraction, ordering)?;
    let initial = coherent_state(alpha0, epsilon)?;
    let evolved = evolve(&initial, KerrParams::new(ordering, s.tau)?);
    let grid = q_grid(&evolved, GridWindow::default_for(alpha0));
    let report = count_peaks(&grid, 0.5)?;
    Ok((s, report.count, normalize_check(&grid), grid.max()))
}

pub fn peak_checks(alpha0: ComplexAmplitude, epsilon: f64) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let cases = squared_sequence()
        .into_iter()
        .map(|f| (KerrOrdering::Squared, f))
        .chain(normal_sequence().into_iter().map(|f| (KerrOrdering::NormalOrdered, f)));
    for (ordering, fraction) in cases {
        let (s, count, norm, max) = peak_case(alpha0, ordering, fraction, epsilon)?;
        let separation = separation_metric(&s);
        let gated = separation >= SEPARATION_GATE - SEPARATION_SLACK;
        let laws_ok = (norm - 1.0).abs() < 1e-3 && max <= 1.0;
        let name = format!("peaks_{}_{}_{}", ordering, fraction.numerator(), fraction.denominator());
        let detail = format!(
            "peaks={count} components={} separation={separation:.3} norm={norm:.6}",
            s.len()
        );
        out.push(CheckOutcome {
            name,
            passed: count == s.len() && laws_ok,
            informational: !gated,
            detail,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_table_is_normalised() {
        for (f, comps) in golden_superpositions() {
            let target = 1.0 / (comps.len() as f64).sqrt();
            for c in comps {
                assert!((c.coefficient.norm() - target).abs() < 1e-15, "{f}");
            }
        }
    }

    #[test]
    fn quick_run_passes() {
        let opts = VerifyOptions {
            quick: true,
            ..VerifyOptions::default()
        };
        let outcomes = run(&opts).unwrap();
        for o in &outcomes {
            assert!(o.passed, "{o}");
        }
        assert!(outcomes.iter().all(|o| !o.name.starts_with("peaks_")));
    }

    #[test]
    fn fraction_enumeration() {
        assert_eq!(reduced_fractions(4).len(), 1 + 2 + 2);
        assert_eq!(
            reduced_fractions(4).iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            ["1/2", "1/3", "2/3", "1/4", "3/4"]
        );
    }
}
