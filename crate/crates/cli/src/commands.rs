use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use kerrcat_core::analysis::{contours, count_peaks, separation_metric};
use kerrcat_core::verify::{self, VerifyOptions};
use kerrcat_core::{
    build_superposition, choose_truncation, coherent_amplitudes, evolve, fidelity, normalize_check, q_grid,
    superposition_to_fock, FockVector, QGrid,
};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::formats;

/// Write `contents` to `path`, or to standard output when `path` is `None`.
fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|e| CliError::io(p.display().to_string(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn evolved_state(config: &RunConfig) -> Result<FockVector> {
    let n_max = choose_truncation(config.alpha0, config.epsilon)?;
    Ok(evolve(&coherent_amplitudes(config.alpha0, n_max), config.params()))
}

fn time_fields(config: &RunConfig) -> Vec<(&'static str, String)> {
    let mut v = vec![
        ("alpha0_re", formats::num(config.alpha0.re())),
        ("alpha0_im", formats::num(config.alpha0.im())),
        ("ordering", config.ordering.to_string()),
        ("tau", formats::num(config.tau())),
        ("tau_over_pi", formats::num(config.tau_over_pi())),
    ];
    if let Some(f) = config.fraction() {
        v.push(("fraction", f.to_string()));
    }
    v
}

pub fn cmd_evolve(config: &RunConfig) -> Result<()> {
    let state = evolved_state(config)?;
    emit(config.out.as_deref(), &formats::fock_csv(&state))
}

pub fn cmd_decompose(config: &RunConfig) -> Result<()> {
    let fraction = config
        .fraction()
        .ok_or_else(|| CliError::Usage("decomposition requires rational fraction of period".into()))?;
    let s = build_superposition(config.alpha0, fraction, config.ordering)?;
    let direct = evolved_state(config)?;
    let analytic = superposition_to_fock(&s, direct.n_max());
    let separation = separation_metric(&s);
    let mut summary = time_fields(config);
    summary.push(("components", s.len().to_string()));
    summary.push((
        "separation",
        if separation.is_finite() { formats::num(separation) } else { "not_applicable".into() },
    ));
    summary.push(("fidelity", formats::num(fidelity(&analytic, &direct))));
    let summary = formats::key_values(&summary);
    emit(config.out.as_deref(), &formats::components_csv(&s))?;
    if let Some(out) = &config.out {
        emit(Some(&sidecar(out, ".summary")), &summary)?;
    }
    eprint!("{summary}");
    Ok(())
}

fn grid_for(config: &RunConfig) -> Result<(QGrid, usize)> {
    let state = evolved_state(config)?;
    Ok((q_grid(&state, config.grid_window()?), state.n_max()))
}

pub fn cmd_qpd(config: &RunConfig, pgm: Option<&Path>) -> Result<()> {
    let (grid, n_max) = grid_for(config)?;
    let w = grid.window();
    let mut meta = time_fields(config);
    meta.extend([
        ("eps", formats::num(config.epsilon)),
        ("n_max", n_max.to_string()),
        ("re_min", formats::num(w.re_min)),
        ("re_max", formats::num(w.re_max)),
        ("im_min", formats::num(w.im_min)),
        ("im_max", formats::num(w.im_max)),
        ("nx", w.nx.to_string()),
        ("ny", w.ny.to_string()),
        ("q_max", formats::num(grid.max())),
        ("normalization", formats::num(normalize_check(&grid))),
    ]);
    let mut meta = formats::key_values(&meta);
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    meta.push_str(&format!("# volatile\ngenerated_unix_secs={stamp}\n"));

    emit(config.out.as_deref(), &formats::grid_csv(&grid))?;
    if let Some(p) = pgm {
        emit(Some(p), &formats::pgm(&grid))?;
    }
    match &config.out {
        Some(out) => emit(Some(&sidecar(out, ".meta")), &meta)?,
        None => eprint!("{meta}"),
    }
    Ok(())
}

/// Per-level output path: `<out>_<level>.csv`.
pub fn contour_path(prefix: &Path, level: f64) -> PathBuf {
    sidecar(prefix, &format!("_{level}.csv"))
}

pub fn cmd_contours(config: &RunConfig, levels: &[f64]) -> Result<()> {
    let prefix = config
        .out
        .as_deref()
        .ok_or_else(|| CliError::Usage("contours writes one file per level; --out PREFIX is required".into()))?;
    if let Some(l) = levels.iter().find(|l| !(**l > 0.0 && **l < 1.0)) {
        return Err(CliError::Usage(format!("contour levels must lie in (0, 1), got {l}")));
    }
    let (grid, _) = grid_for(config)?;
    let set = contours(&grid, levels)?;
    for (k, level) in levels.iter().enumerate() {
        let path = contour_path(prefix, *level);
        emit(Some(&path), &formats::contour_csv(&set, k))?;
        eprintln!("level={level} polylines={} file={}", set.polylines[k].len(), path.display());
    }
    Ok(())
}

pub fn cmd_peaks(config: &RunConfig, rel_height: f64) -> Result<()> {
    if !(rel_height > 0.0 && rel_height < 1.0) {
        return Err(CliError::Usage(format!("--rel-height must lie in (0, 1), got {rel_height}")));
    }
    let (grid, _) = grid_for(config)?;
    let report = count_peaks(&grid, rel_height)?;
    emit(config.out.as_deref(), &formats::peaks_csv(&report))?;
    eprintln!("count={} rel_height={rel_height}", report.count);
    Ok(())
}

pub fn cmd_verify(config: &RunConfig, quick: bool) -> Result<()> {
    let opts = VerifyOptions {
        alpha0: config.alpha0,
        epsilon: config.epsilon,
        quick,
    };
    let outcomes = verify::run(&opts)?;
    let mut table = String::from("check,status,detail\n");
    for o in &outcomes {
        table.push_str(&format!("{o}\n"));
    }
    emit(config.out.as_deref(), &table)?;
    let failed = outcomes.iter().filter(|o| !o.passed && !o.informational).count();
    if failed > 0 {
        return Err(CliError::VerificationFailed(failed));
    }
    Ok(())
}
