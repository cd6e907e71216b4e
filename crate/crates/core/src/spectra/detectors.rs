//! Finite detector acceptance.
//!
//! The idler acceptance is integrated with a tensor Gauss-Hermite rule over
//! idler offsets; the signal acceptance is a separable Gaussian convolution
//! on a padded grid, cropped back to the requested cells.

use rayon::prelude::*;

use crate::error::Result;
use crate::numerics::gauss_hermite_average;
use crate::phasematch::{PhasematchContext, TransverseWavevector};

use super::fourier::FourierOptics;
use super::grid::{GridSpec, SpectrumGrid};
use super::{as_ideal, cas_ideal, evaluate_cells, require_wavevector, InnerIntegration};

/// Transverse acceptance of a Fourier-plane detector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DetectorSpec {
    /// Ideal point detector.
    Delta,
    /// `exp(-(2 r / w)^2)` with `w` the 1/e full width in Fourier-plane metres.
    Gaussian { full_width: f64 },
}

impl DetectorSpec {
    /// Acceptance 1/e full width in rad/m, mapped at the degenerate frequency.
    pub fn wavevector_width(
        &self,
        optics: &FourierOptics,
        ctx: &PhasematchContext,
    ) -> Result<Option<f64>> {
        match *self {
            DetectorSpec::Delta => Ok(None),
            DetectorSpec::Gaussian { full_width } => {
                if !(full_width.is_finite() && full_width > 0.0) {
                    return Err(crate::Error::invariant(format!(
                        "gaussian detector width > 0, got {full_width}"
                    )));
                }
                let s = optics.wavevector_per_position(ctx.degenerate_frequency(), ctx)?;
                Ok(Some(full_width * s))
            }
        }
    }
}

fn kernel_radius(full_width: f64, step: f64) -> usize {
    (2.0 * full_width / step).ceil().max(1.0) as usize
}

fn kernel_taps(full_width: f64, step: f64) -> Vec<f64> {
    let r = kernel_radius(full_width, step) as isize;
    (-r..=r)
        .map(|j| {
            let d = j as f64 * step;
            (-4.0 * d * d / (full_width * full_width)).exp()
        })
        .collect()
}

fn convolve_line(src: &[f64], taps: &[f64], dst: &mut [f64]) {
    let r = (taps.len() / 2) as isize;
    let n = src.len() as isize;
    for (i, out) in dst.iter_mut().enumerate() {
        let i = i as isize;
        let mut acc = 0.0;
        let mut mass = 0.0;
        for (t, &w) in taps.iter().enumerate() {
            let j = i + t as isize - r;
            if (0..n).contains(&j) {
                acc += w * src[j as usize];
                mass += w;
            }
        }
        *out = acc / mass;
    }
}

/// Separable convolution with a unit-mass Gaussian of 1/e full width
/// `full_width` (grid units). Taps falling off the grid are dropped and the
/// rest renormalized, so a flat field stays flat.
pub fn convolve_gaussian(grid: &SpectrumGrid, full_width: f64) -> SpectrumGrid {
    let (nx, ny) = (grid.nx(), grid.ny());
    let tx = kernel_taps(full_width, grid.spec().x.step);
    let ty = kernel_taps(full_width, grid.spec().y.step);

    let mut rows = vec![0.0; nx * ny];
    rows.par_chunks_mut(nx)
        .enumerate()
        .for_each(|(iy, out)| convolve_line(grid.row(iy), &tx, out));

    let cols: Vec<Vec<f64>> = (0..nx)
        .into_par_iter()
        .map(|ix| {
            let src: Vec<f64> = (0..ny).map(|iy| rows[iy * nx + ix]).collect();
            let mut dst = vec![0.0; ny];
            convolve_line(&src, &ty, &mut dst);
            dst
        })
        .collect();

    let mut values = vec![0.0; nx * ny];
    for (ix, col) in cols.iter().enumerate() {
        for (iy, v) in col.iter().enumerate() {
            values[iy * nx + ix] = *v;
        }
    }
    grid.with_values(*grid.spec(), values)
}

fn padding(spec: &GridSpec, width: f64) -> (usize, usize) {
    (
        kernel_radius(width, spec.x.step),
        kernel_radius(width, spec.y.step),
    )
}

/// CAS with finite signal and idler acceptance around the idler center
/// `k_i0`. `idler_nodes` is the Gauss-Hermite order per axis for the idler
/// acceptance.
pub fn cas_with_detectors(
    spec: &GridSpec,
    k_i0: TransverseWavevector,
    signal: &DetectorSpec,
    idler: &DetectorSpec,
    optics: &FourierOptics,
    ctx: &PhasematchContext,
    idler_nodes: usize,
) -> Result<SpectrumGrid> {
    require_wavevector(spec)?;
    let signal_width = signal.wavevector_width(optics, ctx)?;
    let idler_width = idler.wavevector_width(optics, ctx)?;
    if signal_width.is_none() && idler_width.is_none() {
        return cas_ideal(spec, k_i0, ctx);
    }

    let idler_offsets: Vec<(TransverseWavevector, f64)> = match idler_width {
        None => vec![(TransverseWavevector::ZERO, 1.0)],
        Some(w) => {
            let rule = gauss_hermite_average(idler_nodes);
            let mut out = Vec::with_capacity(rule.len() * rule.len());
            for &(ty, wy) in &rule {
                for &(tx, wx) in &rule {
                    out.push((TransverseWavevector::new(tx, ty) * (0.5 * w), wx * wy));
                }
            }
            out
        }
    };

    let (px, py) = signal_width.map_or((0, 0), |w| padding(spec, w));
    let padded = spec.padded(px, py);
    let values = evaluate_cells(&padded, |k_s| {
        idler_offsets
            .iter()
            .map(|&(d, w)| w * ctx.coincidence_rate(k_s, k_i0 + d))
            .sum()
    });
    let mut grid = SpectrumGrid::new(padded, values, super::GridMeta::new("cas"))?;
    if let Some(w) = signal_width {
        grid = convolve_gaussian(&grid, w);
    }
    Ok(grid.crop(px, py, spec.x.len, spec.y.len))
}

/// AS seen through a single detector of finite acceptance.
pub fn as_with_detector(
    spec: &GridSpec,
    detector: &DetectorSpec,
    optics: &FourierOptics,
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
) -> Result<SpectrumGrid> {
    require_wavevector(spec)?;
    let Some(w) = detector.wavevector_width(optics, ctx)? else {
        return as_ideal(spec, ctx, inner);
    };
    let (px, py) = padding(spec, w);
    let padded = as_ideal(&spec.padded(px, py), ctx, inner)?;
    Ok(convolve_gaussian(&padded, w).crop(px, py, spec.x.len, spec.y.len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::grid::{Axis, Domain, GridMeta};

    #[test]
    fn flat_field_stays_flat() {
        let spec = GridSpec::new(
            Axis::new(0.0, 1.0, 9).unwrap(),
            Axis::new(0.0, 1.0, 7).unwrap(),
            Domain::Wavevector,
        );
        let g = SpectrumGrid::new(spec, vec![2.5; 63], GridMeta::default()).unwrap();
        let c = convolve_gaussian(&g, 3.0);
        for v in c.values() {
            assert!((v - 2.5).abs() < 1e-14);
        }
    }

    #[test]
    fn convolution_preserves_mass_away_from_edges() {
        let spec = GridSpec::new(
            Axis::new(0.0, 1.0, 41).unwrap(),
            Axis::new(0.0, 1.0, 41).unwrap(),
            Domain::Wavevector,
        );
        let mut v = vec![0.0; 41 * 41];
        v[20 * 41 + 20] = 1.0;
        let g = SpectrumGrid::new(spec, v, GridMeta::default()).unwrap();
        let c = convolve_gaussian(&g, 4.0);
        assert!((c.total() - 1.0).abs() < 1e-12);
        assert_eq!(c.argmax(), (20, 20));
    }
}
