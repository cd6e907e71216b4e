//! CAS and AS grids.
//!
//! Cells are evaluated as an order-independent parallel map: each cell runs
//! its own fixed-order quadrature, so results are bit-identical for any
//! number of worker threads.

mod detectors;
mod fourier;
mod grid;

pub use detectors::{as_with_detector, cas_with_detectors, convolve_gaussian, DetectorSpec};
pub use fourier::{to_position_domain, FourierOptics};
pub use grid::{project, Axis, Domain, GridMeta, GridSpec, Profile, Projection, SpectrumGrid};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{crossings_at_fraction, linspace, simpson_weights};
use crate::phasematch::{pump_angular_intensity, PhasematchContext, TransverseWavevector};

/// Edge-to-peak integrand ratio above which the inner AS window is flagged.
pub const WINDOW_EDGE_TOLERANCE: f64 = 1e-3;

/// Inner quadrature over the idler wavevector used for the AS.
///
/// The window is centered at `k_i = -k_s` with half-width
/// `half_width_factor * sqrt(2) / min(W_x, W_y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InnerIntegration {
    pub nodes: usize,
    pub half_width_factor: f64,
}

impl Default for InnerIntegration {
    fn default() -> Self {
        InnerIntegration {
            nodes: 41,
            half_width_factor: 4.0,
        }
    }
}

impl InnerIntegration {
    pub fn half_width(&self, ctx: &PhasematchContext) -> f64 {
        let p = ctx.pump();
        self.half_width_factor * std::f64::consts::SQRT_2 / p.waist_x().min(p.waist_y())
    }

    pub fn refined(&self, factor: usize) -> Self {
        InnerIntegration {
            nodes: (self.nodes - 1) * factor + 1,
            ..*self
        }
    }
}

/// One AS sample and the window-coverage diagnostic that goes with it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsSample {
    pub value: f64,
    /// Largest integrand on the window boundary over the largest anywhere.
    pub edge_ratio: f64,
}

pub(crate) fn evaluate_cells<F>(spec: &GridSpec, f: F) -> Vec<f64>
where
    F: Fn(TransverseWavevector) -> f64 + Sync,
{
    (0..spec.len())
        .into_par_iter()
        .map(|i| f(spec.point(i)))
        .collect()
}

fn require_wavevector(spec: &GridSpec) -> Result<()> {
    if spec.domain != Domain::Wavevector {
        return Err(Error::invariant(
            "spectra are evaluated on wavevector-domain grids; map positions first",
        ));
    }
    Ok(())
}

/// Ideal-detector CAS for a fixed idler `k_i0`:
/// `|S(k_s + k_i0)|^2 * L(k_s, k_i0)` at every cell.
pub fn cas_ideal(
    spec: &GridSpec,
    k_i0: TransverseWavevector,
    ctx: &PhasematchContext,
) -> Result<SpectrumGrid> {
    require_wavevector(spec)?;
    let values = evaluate_cells(spec, |k_s| ctx.coincidence_rate(k_s, k_i0));
    SpectrumGrid::new(*spec, values, GridMeta::new("cas"))
}

/// AS at a single signal wavevector: the CAS integrated over the idler
/// wavevector on the inner window.
pub fn as_ideal_point(
    k_s: TransverseWavevector,
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
) -> AsSample {
    let n = inner.nodes.max(1);
    let hw = inner.half_width(ctx);
    let offsets = linspace(-hw, hw, n);
    let h = if n > 1 { 2.0 * hw / (n - 1) as f64 } else { 1.0 };
    let weights = simpson_weights(n, h);
    let signal = ctx.signal_terms(k_s);
    let pump = ctx.pump();

    let mut total = 0.0;
    let mut peak: f64 = 0.0;
    let mut edge: f64 = 0.0;
    for (iy, (&dy, &wy)) in offsets.iter().zip(&weights).enumerate() {
        for (ix, (&dx, &wx)) in offsets.iter().zip(&weights).enumerate() {
            let k_plus = TransverseWavevector::new(dx, dy);
            let s = pump_angular_intensity(k_plus, pump);
            let k_i = k_plus - k_s;
            let integrand = s * ctx.longitudinal_with(&signal, k_s, k_i);
            total += wx * wy * integrand;
            peak = peak.max(integrand);
            if ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1 {
                edge = edge.max(integrand);
            }
        }
    }
    AsSample {
        value: total,
        edge_ratio: if peak > 0.0 { edge / peak } else { 0.0 },
    }
}

/// AS samples at arbitrary points, in parallel.
pub fn as_at_points(
    points: &[TransverseWavevector],
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
) -> Vec<f64> {
    points
        .par_iter()
        .map(|&k| as_ideal_point(k, ctx, inner).value)
        .collect()
}

/// Ideal-detector AS on a wavevector grid. Cells whose inner window does not
/// cover the integrand are reported in the grid diagnostics.
pub fn as_ideal(
    spec: &GridSpec,
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
) -> Result<SpectrumGrid> {
    require_wavevector(spec)?;
    let samples: Vec<AsSample> = (0..spec.len())
        .into_par_iter()
        .map(|i| as_ideal_point(spec.point(i), ctx, inner))
        .collect();
    let flagged = samples
        .iter()
        .filter(|s| s.edge_ratio > WINDOW_EDGE_TOLERANCE)
        .count();
    let mut meta = GridMeta::new("as");
    if flagged > 0 {
        let msg = format!(
            "inner window too small at {flagged} cells (edge integrand > {WINDOW_EDGE_TOLERANCE} of peak)"
        );
        log::warn!("{msg}");
        meta.diagnostics.push(msg);
    }
    SpectrumGrid::new(*spec, samples.iter().map(|s| s.value).collect(), meta)
}

/// Radial 1/e full width of the AS along the ray at `azimuth`, sampled on
/// `samples` points over `radius +- half_span`.
pub fn as_radial_width(
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
    azimuth: f64,
    radius: f64,
    half_span: f64,
    samples: usize,
) -> Result<f64> {
    let radii = linspace(radius - half_span, radius + half_span, samples);
    let points: Vec<_> = radii
        .iter()
        .map(|&r| TransverseWavevector::polar(r, azimuth))
        .collect();
    let values = as_at_points(&points, ctx, inner);
    let (lo, hi) = crossings_at_fraction(&radii, &values, (-1.0f64).exp()).ok_or_else(|| {
        Error::Numerical(format!(
            "AS radial profile at azimuth {azimuth:.3} rad does not fall to 1/e within +-{half_span:e} rad/m"
        ))
    })?;
    Ok(hi - lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::CrystalSpec;
    use crate::phasematch::{FilterSpec, PumpSpec};

    fn ctx(wx: f64, wy: f64, length: f64) -> PhasematchContext {
        PhasematchContext::new(
            CrystalSpec::bbo_default().with_length(length).unwrap(),
            PumpSpec::new(406.8e-9, wx, wy).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            17,
        )
        .unwrap()
    }

    #[test]
    fn cas_factorizes_cell_by_cell() {
        let c = ctx(182e-6, 189e-6, 1e-3);
        let k_i0 = TransverseWavevector::new(-4.83e5, 0.0);
        let spec = GridSpec::centered(-k_i0, 4e3, 2e4, Domain::Wavevector).unwrap();
        let g = cas_ideal(&spec, k_i0, &c).unwrap();
        for i in 0..spec.len() {
            let k_s = spec.point(i);
            let expected = pump_angular_intensity(k_s + k_i0, c.pump()) * c.longitudinal(k_s, k_i0);
            assert_eq!(g.values()[i], expected);
        }
    }

    #[test]
    fn cas_rejects_position_grids() {
        let c = ctx(182e-6, 189e-6, 1e-3);
        let spec = GridSpec::centered(TransverseWavevector::ZERO, 1e-4, 1e-3, Domain::Position).unwrap();
        assert!(cas_ideal(&spec, TransverseWavevector::ZERO, &c).is_err());
    }

    #[test]
    fn as_window_edge_is_small_with_default_window() {
        let c = ctx(182e-6, 189e-6, 1e-3);
        let s = as_ideal_point(TransverseWavevector::new(0.0, 4.83e5), &c, &InnerIntegration::default());
        assert!(s.value > 0.0);
        assert!(s.edge_ratio < WINDOW_EDGE_TOLERANCE, "{}", s.edge_ratio);
    }

    #[test]
    fn narrow_window_is_flagged() {
        let c = ctx(182e-6, 189e-6, 1e-3);
        let inner = InnerIntegration {
            nodes: 11,
            half_width_factor: 0.5,
        };
        let s = as_ideal_point(TransverseWavevector::new(0.0, 4.83e5), &c, &inner);
        assert!(s.edge_ratio > WINDOW_EDGE_TOLERANCE);
        let spec = GridSpec::new(
            Axis::new(0.0, 1e3, 1).unwrap(),
            Axis::new(4.83e5, 1e3, 1).unwrap(),
            Domain::Wavevector,
        );
        let g = as_ideal(&spec, &c, &inner).unwrap();
        assert_eq!(g.meta.diagnostics.len(), 1);
    }

    #[test]
    fn as_is_left_right_symmetric() {
        let c = ctx(38.9e-6, 34.7e-6, 1e-3);
        let inner = InnerIntegration::default();
        for &(x, y) in &[(3.1e5, 3.6e5), (4.7e5, -1.2e5)] {
            let a = as_ideal_point(TransverseWavevector::new(x, y), &c, &inner).value;
            let b = as_ideal_point(TransverseWavevector::new(-x, y), &c, &inner).value;
            assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} vs {b}");
        }
    }
}
