//! Canned parameter studies emitted as CSV curve files.
//!
//! Four studies, one per figure id:
//!
//! * **2** - relative slip `1 - w(t, h)` over `t in (0, 1]` for
//!   `(alpha, beta)` in `{(1, 4), (10, 0.5), (10, 0)}`: the monotone,
//!   overshooting and Navier responses side by side.
//! * **3** - the same quantity over `t in (0, 5]` at `alpha = 30` for
//!   `beta in {5, 30, 150}` plus the shared stationary asymptote.
//! * **4** - periodic wall shear at `alpha = 1` for
//!   `beta in {0.1, 4.2, 100}` against the Dirichlet reference.
//! * **5** - periodic wall shear at `beta = 1` for
//!   `alpha in {0.1, 4.2, 100}` against the Dirichlet reference.
//!
//! All curves use `h = pi` and 10 modes with 200 samples.

use crate::params::SlipParams;
use crate::periodic::{dirichlet_wall_shear, PeriodicScenario};
use crate::report::{CsvDoc, RunRecord};
use crate::shear::{boundary_slip_limit, stationary};
use crate::spectral::Basis;
use std::f64::consts::PI;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("unknown figure id {0}; known ids are 2, 3, 4, 5")]
    UnknownId(u8),
    #[error(transparent)]
    Spectral(#[from] crate::spectral::SpectralError),
    #[error(transparent)]
    Periodic(#[from] crate::periodic::PeriodicError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

const MODES: usize = 10;
const SAMPLES: usize = 200;

/// Emit the CSV files of one figure into `out_dir`.
pub fn reproduce_figure<P: AsRef<Path>>(id: u8, out_dir: P) -> Result<Vec<RunRecord>, FigureError> {
    let out_dir = out_dir.as_ref();
    match id {
        2 => slip_curves(out_dir, 2, 1.0, &[(1.0, 4.0), (10.0, 0.5), (10.0, 0.0)], false),
        3 => slip_curves(out_dir, 3, 5.0, &[(30.0, 5.0), (30.0, 30.0), (30.0, 150.0)], true),
        4 => wall_shear_curves(out_dir, 4, &[(1.0, 0.1), (1.0, 4.2), (1.0, 100.0)]),
        5 => wall_shear_curves(out_dir, 5, &[(0.1, 1.0), (4.2, 1.0), (100.0, 1.0)]),
        other => Err(FigureError::UnknownId(other)),
    }
}

fn slug(x: f64) -> String {
    format!("{x}").replace('.', "p")
}

/// Relative slip `1 - w(t, h)` in the `delta -> 0` limit, one file per
/// `(alpha, beta)`; figure 3 adds the stationary asymptote as its own file.
fn slip_curves(
    out_dir: &Path,
    id: u8,
    t_end: f64,
    cases: &[(f64, f64)],
    with_stationary: bool,
) -> Result<Vec<RunRecord>, FigureError> {
    let mut records = Vec::new();
    for &(alpha, beta) in cases {
        let params = SlipParams::new(alpha, beta, PI).expect("figure parameters are valid");
        let basis = Basis::new(params, MODES)?;
        let w_stat = stationary(&params, PI);
        let mut doc = CsvDoc::new(vec!["t", "slip", "stationary_gap"]);
        doc.meta("scenario", format!("figure{id}"))
            .meta_float("alpha", alpha)
            .meta_float("beta", beta)
            .meta_float("h", PI)
            .meta("modes", MODES.to_string())
            .meta_float("t_end", t_end)
            .meta("samples", SAMPLES.to_string())
            .meta("delta", "analytic-limit")
            .meta_float("stationary_w_h", w_stat)
            .meta("tool_version", env!("CARGO_PKG_VERSION"));
        for k in 1..=SAMPLES {
            let t = k as f64 * t_end / SAMPLES as f64;
            let w = boundary_slip_limit(&basis, t);
            doc.row(&[t, 1.0 - w, w - w_stat]);
        }
        let name = format!("fig{}_alpha{}_beta{}.csv", id, slug(alpha), slug(beta));
        records.push(doc.write(&format!("figure{id}"), out_dir.join(name))?);
    }
    if with_stationary {
        let (alpha, _) = cases[0];
        let params = SlipParams::new(alpha, 0.0, PI).expect("valid");
        let w_stat = stationary(&params, PI);
        let mut doc = CsvDoc::new(vec!["t", "slip"]);
        doc.meta("scenario", format!("figure{id}-stationary"))
            .meta_float("alpha", alpha)
            .meta_float("h", PI)
            .meta_float("stationary_w_h", w_stat)
            .meta("tool_version", env!("CARGO_PKG_VERSION"));
        let t_end_f = t_end;
        for k in 1..=SAMPLES {
            let t = k as f64 * t_end_f / SAMPLES as f64;
            doc.row(&[t, 1.0 - w_stat]);
        }
        records.push(doc.write(
            &format!("figure{id}-stationary"),
            out_dir.join(format!("fig{id}_stationary.csv")),
        )?);
    }
    Ok(records)
}

/// Periodic wall shear over one period, one file per `(alpha, beta)`, plus
/// the parameter-independent Dirichlet reference curve.
fn wall_shear_curves(
    out_dir: &Path,
    id: u8,
    cases: &[(f64, f64)],
) -> Result<Vec<RunRecord>, FigureError> {
    let period = 2.0 * PI;
    let mut records = Vec::new();
    for &(alpha, beta) in cases {
        let params = SlipParams::new(alpha, beta, PI).expect("figure parameters are valid");
        let basis = Basis::new(params, MODES)?;
        let scenario = PeriodicScenario::new(basis, period)?;
        let mut doc = CsvDoc::new(vec!["t", "wall_shear", "dirichlet_wall_shear"]);
        doc.meta("scenario", format!("figure{id}"))
            .meta_float("alpha", alpha)
            .meta_float("beta", beta)
            .meta_float("h", PI)
            .meta_float("period", period)
            .meta("modes", MODES.to_string())
            .meta("samples", SAMPLES.to_string())
            .meta("tool_version", env!("CARGO_PKG_VERSION"));
        for k in 0..=SAMPLES {
            let t = k as f64 * period / SAMPLES as f64;
            doc.row(&[
                t,
                scenario.wall_shear(t),
                dirichlet_wall_shear(PI, period, MODES, t),
            ]);
        }
        let name = format!("fig{}_alpha{}_beta{}.csv", id, slug(alpha), slug(beta));
        records.push(doc.write(&format!("figure{id}"), out_dir.join(name))?);
    }
    // the reference curve does not depend on alpha or beta
    let mut doc = CsvDoc::new(vec!["t", "wall_shear"]);
    doc.meta("scenario", format!("figure{id}-dirichlet"))
        .meta_float("h", PI)
        .meta_float("period", period)
        .meta("modes", MODES.to_string())
        .meta("tool_version", env!("CARGO_PKG_VERSION"));
    for k in 0..=SAMPLES {
        let t = k as f64 * period / SAMPLES as f64;
        doc.row(&[t, dirichlet_wall_shear(PI, period, MODES, t)]);
    }
    records.push(doc.write(
        &format!("figure{id}-dirichlet"),
        out_dir.join(format!("fig{id}_dirichlet.csv")),
    )?);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure2_emits_three_curves() {
        let dir = tempfile::tempdir().unwrap();
        let records = reproduce_figure(2, dir.path()).unwrap();
        assert_eq!(records.len(), 3);
        for r in &records {
            assert!(r.verify().unwrap());
            assert_eq!(r.rows, SAMPLES);
        }
    }

    #[test]
    fn figure3_metadata_carries_the_asymptote() {
        let dir = tempfile::tempdir().unwrap();
        let records = reproduce_figure(3, dir.path()).unwrap();
        assert_eq!(records.len(), 4); // three betas + stationary line
        let expected = 30.0 * PI / (30.0 * PI + 1.0);
        for r in &records {
            let meta = r
                .params
                .iter()
                .find(|(k, _)| k == "stationary_w_h")
                .expect("stationary value recorded");
            let value: f64 = meta.1.parse().unwrap();
            assert!((value - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn figure4_dirichlet_curve_is_separate() {
        let dir = tempfile::tempdir().unwrap();
        let records = reproduce_figure(4, dir.path()).unwrap();
        assert_eq!(records.len(), 4);
        assert!(records
            .iter()
            .any(|r| r.path.file_name().unwrap() == "fig4_dirichlet.csv"));
    }

    #[test]
    fn unknown_id_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            reproduce_figure(7, dir.path()),
            Err(FigureError::UnknownId(7))
        ));
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let a = reproduce_figure(2, dir_a.path()).unwrap();
        let b = reproduce_figure(2, dir_b.path()).unwrap();
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.sha256, rb.sha256);
        }
    }
}
