//! CSV, PGM and sidecar encodings. Floats carry 17 significant digits so
//! every value parses back to the same bits.

use std::fmt::Write as _;

use kerrcat_core::analysis::{ContourSet, PeakReport};
use kerrcat_core::{CoherentSuperposition, FockVector, GridWindow, QGrid};

use crate::error::{CliError, Result};

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// `n,re,im,prob`
pub fn fock_csv(state: &FockVector) -> String {
    let mut s = String::from("n,re,im,prob\n");
    for (n, a) in state.amplitudes().iter().enumerate() {
        let _ = writeln!(s, "{n},{},{},{}", num(a.re), num(a.im), num(a.norm_sqr()));
    }
    s
}

/// `k,phi_k_rad,c_re,c_im,c_abs,c_arg`, `k` counted from 1.
pub fn components_csv(s: &CoherentSuperposition) -> String {
    let mut out = String::from("k,phi_k_rad,c_re,c_im,c_abs,c_arg\n");
    for (k, c) in s.components.iter().enumerate() {
        let z = c.coefficient;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            k + 1,
            num(c.phase),
            num(z.re),
            num(z.im),
            num(z.norm()),
            num(z.arg())
        );
    }
    out
}

/// `re,im,q`, one row per sample, row-major with `im` varying slowest.
pub fn grid_csv(grid: &QGrid) -> String {
    let w = grid.window();
    let mut s = String::with_capacity(w.nx * w.ny * 72 + 8);
    s.push_str("re,im,q\n");
    for j in 0..w.ny {
        for i in 0..w.nx {
            let _ = writeln!(s, "{},{},{}", num(w.re_at(i)), num(w.im_at(j)), num(grid.get(i, j)));
        }
    }
    s
}

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("line {line}: bad number {field:?}")))
}

/// Inverse of [`grid_csv`].
pub fn parse_grid_csv(text: &str) -> Result<QGrid> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "re,im,q" => {}
        _ => return Err(CliError::Parse("missing `re,im,q` header".into())),
    }
    let mut res = Vec::new();
    let mut ims = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Parse(format!("line {}: expected 3 fields", idx + 1)));
        }
        res.push(parse_f64(fields[0], idx + 1)?);
        ims.push(parse_f64(fields[1], idx + 1)?);
        values.push(parse_f64(fields[2], idx + 1)?);
    }
    let first_im = *ims.first().ok_or_else(|| CliError::Parse("empty grid".into()))?;
    let nx = ims.iter().take_while(|v| **v == first_im).count();
    if nx < 2 || values.len() % nx != 0 {
        return Err(CliError::Parse(format!("{} samples do not form rows of {nx}", values.len())));
    }
    let ny = values.len() / nx;
    let window = GridWindow::new(res[0], res[nx - 1], first_im, ims[values.len() - 1], nx, ny)?;
    Ok(QGrid::from_values(window, values)?)
}

/// ASCII 16-bit PGM scaled by `65535 q / q_max`, top row = largest `im`.
pub fn pgm(grid: &QGrid) -> String {
    let w = grid.window();
    let max = grid.max();
    let mut s = format!("P2\n{} {}\n65535\n", w.nx, w.ny);
    for j in (0..w.ny).rev() {
        let row: Vec<String> = (0..w.nx)
            .map(|i| {
                let v = if max > 0.0 { grid.get(i, j) / max } else { 0.0 };
                ((v * 65535.0).round() as u32).min(65535).to_string()
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// `polyline_id,vertex_index,re,im` for one level.
pub fn contour_csv(set: &ContourSet, level: usize) -> String {
    let mut s = String::from("polyline_id,vertex_index,re,im\n");
    for (pid, line) in set.polylines[level].iter().enumerate() {
        for (vid, v) in line.iter().enumerate() {
            let _ = writeln!(s, "{pid},{vid},{},{}", num(v.re()), num(v.im()));
        }
    }
    s
}

/// `peak_id,re,im,height,area`
pub fn peaks_csv(report: &PeakReport) -> String {
    let mut s = String::from("peak_id,re,im,height,area\n");
    for (k, c) in report.centers.iter().enumerate() {
        let _ = writeln!(
            s,
            "{k},{},{},{},{}",
            num(c.re()),
            num(c.im()),
            num(report.heights[k]),
            report.areas[k]
        );
    }
    s
}

/// Flat `key=value` lines.
pub fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use kerrcat_core::{coherent_state, q_grid, ComplexAmplitude};

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -0.0, 1.0 / 3.0, 1e-300, 0.1 + 0.2, std::f64::consts::PI] {
            assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn grid_round_trip_is_bit_exact() {
        let s = coherent_state(ComplexAmplitude::new(0.7, -1.1).unwrap(), 1e-12).unwrap();
        let w = GridWindow::new(-3.0, 2.5, -4.0, 1.0, 17, 9).unwrap();
        let g = q_grid(&s, w);
        let back = parse_grid_csv(&grid_csv(&g)).unwrap();
        assert_eq!(back.values().len(), g.values().len());
        for (a, b) in back.values().iter().zip(g.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.window().nx, 17);
        assert_eq!(back.window().ny, 9);
    }

    #[test]
    fn malformed_grid_rejected() {
        assert!(parse_grid_csv("x,y,z\n").is_err());
        assert!(parse_grid_csv("re,im,q\n").is_err());
        assert!(parse_grid_csv("re,im,q\n0,0,0.5\n1,0\n").is_err());
        assert!(parse_grid_csv("re,im,q\n0,0,2.0\n1,0,0.1\n0,1,0.1\n1,1,0.1\n").is_err());
    }

    #[test]
    fn pgm_header_and_scaling() {
        let w = GridWindow::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let g = QGrid::from_values(w, vec![0.0, 0.25, 0.5, 0.125]).unwrap();
        assert_eq!(pgm(&g), "P2\n2 2\n65535\n65535 16384\n0 32768\n");
    }
}
