//! Mapping between internal transverse wavevectors and Fourier-plane
//! positions behind an f-f lens system.

use crate::dispersion::{Polarization, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::numerics::{linspace, trapezoid_average_weights};
use crate::phasematch::PhasematchContext;

use super::grid::{Domain, SpectrumGrid};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierOptics {
    focal_length: f64,
    exit_refraction: bool,
}

impl FourierOptics {
    /// `focal_length` in m. With `exit_refraction` the signal leaves through
    /// a face normal to the pump axis, `sin(theta_ext) = n_o sin(theta_int)`;
    /// without it internal angles are used directly.
    pub fn new(focal_length: f64, exit_refraction: bool) -> Result<Self> {
        if !(focal_length.is_finite() && focal_length > 0.0) {
            return Err(Error::invariant(format!("focal length f > 0, got {focal_length}")));
        }
        Ok(FourierOptics {
            focal_length,
            exit_refraction,
        })
    }

    pub fn focal_length(&self) -> f64 {
        self.focal_length
    }

    pub fn exit_refraction(&self) -> bool {
        self.exit_refraction
    }

    /// Transverse wavevector per metre of Fourier-plane displacement at
    /// `omega`: `omega / (c f)`, times `n_o` when refraction is off.
    pub fn wavevector_per_position(&self, omega: f64, ctx: &PhasematchContext) -> Result<f64> {
        let vacuum = omega / (SPEED_OF_LIGHT * self.focal_length);
        if self.exit_refraction {
            Ok(vacuum)
        } else {
            Ok(vacuum * ctx.crystal().index(omega, Polarization::Ordinary)?)
        }
    }

    /// Propagation angle outside the crystal for an internal transverse
    /// wavevector magnitude `k_perp` at `omega`.
    pub fn external_angle(&self, k_perp: f64, omega: f64, ctx: &PhasematchContext) -> Result<f64> {
        let k = ctx.crystal().wavenumber(omega, Polarization::Ordinary)?;
        let sin_int = k_perp / k;
        if sin_int.abs() >= 1.0 {
            return Err(Error::Evanescent { k_perp, k });
        }
        if !self.exit_refraction {
            return Ok(sin_int.asin());
        }
        let n = ctx.crystal().index(omega, Polarization::Ordinary)?;
        let sin_ext = n * sin_int;
        if sin_ext.abs() >= 1.0 {
            return Err(Error::Numerical(format!(
                "total internal reflection at the exit face for k_perp = {k_perp:e} rad/m"
            )));
        }
        Ok(sin_ext.asin())
    }

    /// Fourier-plane radius `f tan(theta_ext)`.
    pub fn fourier_radius(&self, k_perp: f64, omega: f64, ctx: &PhasematchContext) -> Result<f64> {
        Ok(self.focal_length * self.external_angle(k_perp, omega, ctx)?.tan())
    }
}

/// Re-expresses a wavevector-domain grid on Fourier-plane position axes.
///
/// Output axes are the input axes scaled by `c f / omega_deg`. Each value is
/// the trapezoid average, over `n_freq_samples` frequencies spanning the
/// signal window, of the input interpolated at `k = s(omega) rho`. With one
/// sample this is a pure relabelling of the axes.
pub fn to_position_domain(
    grid: &SpectrumGrid,
    optics: &FourierOptics,
    ctx: &PhasematchContext,
    n_freq_samples: usize,
) -> Result<SpectrumGrid> {
    if grid.spec().domain != Domain::Wavevector {
        return Err(Error::invariant("to_position_domain expects a wavevector-domain grid"));
    }
    if n_freq_samples == 0 {
        return Err(Error::invariant("n_freq_samples >= 1"));
    }
    let w_deg = ctx.degenerate_frequency();
    let s_deg = optics.wavevector_per_position(w_deg, ctx)?;
    let out_spec = grid.spec().scaled(1.0 / s_deg, Domain::Position);

    if n_freq_samples == 1 {
        return Ok(grid.with_values(out_spec, grid.values().to_vec()));
    }

    let (lo, hi) = ctx.signal_window().unwrap_or((w_deg, w_deg));
    let scales: Vec<f64> = linspace(lo, hi, n_freq_samples)
        .into_iter()
        .map(|w| optics.wavevector_per_position(w, ctx))
        .collect::<Result<_>>()?;
    let weights = trapezoid_average_weights(n_freq_samples);

    let values = super::evaluate_cells(&out_spec, |rho| {
        scales
            .iter()
            .zip(&weights)
            .map(|(s, w)| w * grid.interpolate(s * rho.x, s * rho.y))
            .sum()
    });
    Ok(grid.with_values(out_spec, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::CrystalSpec;
    use crate::phasematch::{FilterSpec, PumpSpec};
    use crate::spectra::grid::{Axis, GridMeta, GridSpec};

    fn ctx() -> PhasematchContext {
        PhasematchContext::new(
            CrystalSpec::bbo_default(),
            PumpSpec::new(406.8e-9, 182e-6, 189e-6).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            9,
        )
        .unwrap()
    }

    #[test]
    fn single_sample_is_pure_rescaling() {
        let c = ctx();
        let optics = FourierOptics::new(0.1, true).unwrap();
        let spec = GridSpec::new(
            Axis::new(-2e4, 1e4, 5).unwrap(),
            Axis::new(-1e4, 1e4, 3).unwrap(),
            Domain::Wavevector,
        );
        let values: Vec<f64> = (0..15).map(|i| i as f64).collect();
        let g = SpectrumGrid::new(spec, values.clone(), GridMeta::new("as")).unwrap();
        let p = to_position_domain(&g, &optics, &c, 1).unwrap();
        assert_eq!(p.values(), &values[..]);
        let scale = SPEED_OF_LIGHT * 0.1 / c.degenerate_frequency();
        assert!((p.spec().x.step - 1e4 * scale).abs() < 1e-18);
        assert_eq!(p.spec().domain, Domain::Position);
    }

    #[test]
    fn focal_length_must_be_positive() {
        assert!(FourierOptics::new(0.0, true).is_err());
    }

    #[test]
    fn refraction_off_uses_internal_angle() {
        let c = ctx();
        let on = FourierOptics::new(0.1, true).unwrap();
        let off = FourierOptics::new(0.1, false).unwrap();
        let w = c.degenerate_frequency();
        let q = 4.8e5;
        assert!(on.external_angle(q, w, &c).unwrap() > off.external_angle(q, w, &c).unwrap());
        let n = c.crystal().index(w, Polarization::Ordinary).unwrap();
        let ratio = off.wavevector_per_position(w, &c).unwrap() / on.wavevector_per_position(w, &c).unwrap();
        assert!((ratio - n).abs() < 1e-12);
    }
}
