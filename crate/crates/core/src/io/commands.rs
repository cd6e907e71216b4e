//! Command orchestration: compute, stamp with the scenario hash, write.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::critical_length::{
    brightest_on_ray, degenerate_ring_radius, lc_curve, width_report, LcCurve, WidthReport,
};
use crate::error::{Error, Result};
use crate::phasematch::TransverseWavevector;
use crate::spectra::{
    as_with_detector, cas_with_detectors, project, to_position_domain, Domain, GridSpec,
    Projection, SpectrumGrid,
};

use super::config::{IdlerPlacement, ScenarioConfig};
use super::emit::{emit_grid, profile_to_csv, GridFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    As,
    Cas,
    LcCurve,
    Widths,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::As => "as",
            Command::Cas => "cas",
            Command::LcCurve => "lc-curve",
            Command::Widths => "widths",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Pgm,
    Both,
}

impl OutputFormat {
    fn grids(self) -> &'static [GridFormat] {
        match self {
            OutputFormat::Csv => &[GridFormat::Csv],
            OutputFormat::Pgm => &[GridFormat::Pgm],
            OutputFormat::Both => &[GridFormat::Csv, GridFormat::Pgm],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub artifacts: Vec<PathBuf>,
    /// One-line result for standard output.
    pub summary: String,
}

/// Internal wavevectors per metre of Fourier-plane displacement at the
/// degenerate frequency.
fn position_scale(cfg: &ScenarioConfig) -> Result<f64> {
    cfg.optics
        .wavevector_per_position(cfg.context.degenerate_frequency(), &cfg.context)
}

fn finish(cfg: &ScenarioConfig, grid: SpectrumGrid) -> Result<SpectrumGrid> {
    let mut grid = match cfg.document.grid_domain {
        Domain::Wavevector => grid,
        Domain::Position => to_position_domain(
            &grid,
            &cfg.optics,
            &cfg.context,
            cfg.document.position_frequency_samples,
        )?,
    };
    grid.meta.scenario_hash = Some(cfg.hash());
    Ok(grid)
}

/// AS grid centered on the pump axis. Fails if the grid misses the
/// degenerate ring.
pub fn compute_as(cfg: &ScenarioConfig) -> Result<SpectrumGrid> {
    let d = &cfg.document;
    let s = position_scale(cfg)?;
    let half_width = d.as_grid_half_width_mm / 1e3 * s;
    let ring = degenerate_ring_radius(&cfg.context, std::f64::consts::FRAC_PI_2)?;
    if ring >= half_width {
        return Err(Error::config(
            "as_grid_half_width_mm",
            format!(
                "grid does not cover the annulus at {:.3} mm",
                ring / s * 1e3
            ),
        ));
    }
    let spec = GridSpec::centered(
        TransverseWavevector::ZERO,
        d.as_grid_step_um / 1e6 * s,
        half_width,
        Domain::Wavevector,
    )?;
    let grid = as_with_detector(&spec, &cfg.as_detector, &cfg.optics, &cfg.context, &cfg.inner)?;
    finish(cfg, grid)
}

/// Idler wavevector the CAS is conditioned on.
pub fn cas_idler(cfg: &ScenarioConfig) -> Result<TransverseWavevector> {
    match cfg.idler {
        IdlerPlacement::Azimuth(a) => brightest_on_ray(&cfg.context, &cfg.inner, a),
        IdlerPlacement::Position { x, y } => cfg.position_to_wavevector(x, y),
    }
}

/// CAS grid centered on `-k_i0`, and `k_i0` itself.
pub fn compute_cas(cfg: &ScenarioConfig) -> Result<(SpectrumGrid, TransverseWavevector)> {
    let d = &cfg.document;
    let s = position_scale(cfg)?;
    let k_i0 = cas_idler(cfg)?;
    let spec = GridSpec::centered(
        -k_i0,
        d.cas_grid_step_um / 1e6 * s,
        d.cas_grid_half_width_mm / 1e3 * s,
        Domain::Wavevector,
    )?;
    let grid = cas_with_detectors(
        &spec,
        k_i0,
        &cfg.signal_detector,
        &cfg.idler_detector,
        &cfg.optics,
        &cfg.context,
        d.idler_kernel_nodes,
    )?;
    Ok((finish(cfg, grid)?, k_i0))
}

pub fn compute_lc_curve(cfg: &ScenarioConfig) -> Result<LcCurve> {
    lc_curve(&cfg.waist_range, &cfg.context, &cfg.inner)
}

pub fn compute_widths(cfg: &ScenarioConfig) -> Result<WidthReport> {
    width_report(&cfg.context, &cfg.inner)
}

fn write_grid_set(
    cfg: &ScenarioConfig,
    grid: &SpectrumGrid,
    stem: &str,
    dir: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for &f in format.grids() {
        let ext = match f {
            GridFormat::Csv => "csv",
            GridFormat::Pgm => "pgm",
        };
        let path = dir.join(format!("{stem}.{ext}"));
        emit_grid(grid, f, &path, cfg.document.quantization_levels)?;
        written.push(path);
    }
    for (suffix, projection, axis) in [
        ("rows", Projection::Rows, "y"),
        ("columns", Projection::Columns, "x"),
    ] {
        let path = dir.join(format!("{stem}_{suffix}.csv"));
        let profile = project(grid, projection);
        fs::write(
            &path,
            profile_to_csv(&profile, &grid.meta, axis, grid.spec().domain),
        )?;
        written.push(path);
    }
    Ok(written)
}

pub fn lc_curve_to_csv(curve: &LcCurve, hash: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# quantity=critical_length");
    let _ = writeln!(out, "# scenario_hash={hash}");
    let _ = writeln!(
        out,
        "# fit slope={:e} intercept={:e} r_squared={:.6}",
        curve.fit.slope, curve.fit.intercept, curve.fit.r_squared
    );
    let _ = writeln!(out, "waist_m,critical_length_m");
    for (w, l) in &curve.points {
        let _ = writeln!(out, "{w:.8e},{l:.8e}");
    }
    out
}

#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    scenario_hash: String,
    #[serde(flatten)]
    body: &'a T,
}

/// Runs `command` and writes its artifacts into `out_dir` (created if needed).
pub fn run_command(
    command: Command,
    cfg: &ScenarioConfig,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<RunOutput> {
    fs::create_dir_all(out_dir)?;
    match command {
        Command::As => {
            let grid = compute_as(cfg)?;
            let (ix, iy) = grid.argmax();
            Ok(RunOutput {
                artifacts: write_grid_set(cfg, &grid, "as", out_dir, format)?,
                summary: format!(
                    "as: {}x{} cells, peak at ({:e}, {:e}) {}",
                    grid.nx(),
                    grid.ny(),
                    grid.spec().x.coord(ix),
                    grid.spec().y.coord(iy),
                    grid.spec().domain.units()
                ),
            })
        }
        Command::Cas => {
            let (grid, k_i0) = compute_cas(cfg)?;
            Ok(RunOutput {
                artifacts: write_grid_set(cfg, &grid, "cas", out_dir, format)?,
                summary: format!(
                    "cas: {}x{} cells, idler k = ({:e}, {:e}) rad/m",
                    grid.nx(),
                    grid.ny(),
                    k_i0.x,
                    k_i0.y
                ),
            })
        }
        Command::LcCurve => {
            let curve = compute_lc_curve(cfg)?;
            let path = out_dir.join("lc_curve.csv");
            fs::write(&path, lc_curve_to_csv(&curve, &cfg.hash()))?;
            Ok(RunOutput {
                artifacts: vec![path],
                summary: format!(
                    "lc-curve: {} points, slope {:.4}, r_squared {:.5}",
                    curve.points.len(),
                    curve.fit.slope,
                    curve.fit.r_squared
                ),
            })
        }
        Command::Widths => {
            let report = compute_widths(cfg)?;
            let path = out_dir.join("widths.json");
            let doc = Stamped {
                scenario_hash: cfg.hash(),
                body: &report,
            };
            let mut text = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::Numerical(format!("cannot serialize width report: {e}")))?;
            text.push('\n');
            fs::write(&path, text)?;
            Ok(RunOutput {
                artifacts: vec![path],
                summary: report.regime.as_str().to_string(),
            })
        }
    }
}
