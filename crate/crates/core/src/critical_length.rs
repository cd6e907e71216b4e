//! Pump-limited versus crystal-limited CAS.
//!
//! Both widths are 1/e full widths along `k_y` at a fixed idler on top of the
//! annulus: `dk_S` of the pump angular spectrum and `dk_L` of the
//! longitudinal function. The critical length `L_c` is where they coincide;
//! below it the CAS is a displaced copy of the pump angular spectrum.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{bisect, crossings_at_fraction, golden_section_max, linspace, LinearFit};
use crate::phasematch::{PhasematchContext, PumpSpec, TransverseWavevector};
use crate::spectra::{as_ideal_point, InnerIntegration};

/// Bracket for the critical-length search, m.
pub const LENGTH_BRACKET: (f64, f64) = (0.05e-3, 20e-3);
/// Absolute tolerance of the critical-length bisection, m. Far below 0.01 mm
/// so that `L_c` responds smoothly to quadrature settings.
pub const LENGTH_TOLERANCE: f64 = 1e-7;
/// Samples across the `dk_L` slice.
pub const WIDTH_SAMPLES: usize = 401;
/// `|1 - L / L_c|` below which a configuration counts as on the boundary.
pub const BOUNDARY_BAND: f64 = 0.15;

/// `x` with `sinc^2(x) = 1/e`.
const SINC_SQ_ONE_OVER_E: f64 = 1.644_4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `L < L_c`: the pump fixes the CAS.
    Short,
    /// `L > L_c`: the crystal clips the CAS.
    Long,
    Boundary,
}

impl Regime {
    /// Classify from `L / L_c`, or from `dk_S / dk_L` (which tracks it) when
    /// no critical length is available.
    pub fn classify(ratio: f64) -> Regime {
        if (1.0 - ratio).abs() < BOUNDARY_BAND {
            Regime::Boundary
        } else if ratio < 1.0 {
            Regime::Short
        } else {
            Regime::Long
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Short => "short",
            Regime::Long => "long",
            Regime::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthReport {
    /// rad/m
    pub delta_k_s: f64,
    /// rad/m
    pub delta_k_l: f64,
    pub reference_idler: TransverseWavevector,
    /// m; `None` when the crossing lies outside the search bracket.
    pub critical_length: Option<f64>,
    pub crystal_length: f64,
    pub regime: Regime,
}

/// Radius of the degenerate `dk = 0` ring for a symmetric pair along the
/// ray at `azimuth`.
pub fn degenerate_ring_radius(ctx: &PhasematchContext, azimuth: f64) -> Result<f64> {
    let w = ctx.degenerate_frequency();
    let k = ctx
        .crystal()
        .wavenumber(w, crate::dispersion::Polarization::Ordinary)?;
    bisect(
        |q| {
            let ks = TransverseWavevector::polar(q, azimuth);
            ctx.delta_k(w, ks, w, -ks)
        },
        0.0,
        0.5 * k,
        1e-3,
    )
    .map_err(|_| Error::invariant("no non-collinear phasematching ring at the degenerate frequency"))
}

/// Point of maximum single counts on the ray at `azimuth`: a coarse scan
/// around the degenerate ring followed by golden-section refinement to 1 rad/m.
pub fn brightest_on_ray(
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
    azimuth: f64,
) -> Result<TransverseWavevector> {
    let r0 = degenerate_ring_radius(ctx, azimuth)?;
    let radii = linspace(0.5 * r0, 1.5 * r0, 61);
    let at = |r: f64| as_ideal_point(TransverseWavevector::polar(r, azimuth), ctx, inner).value;
    let scan: Vec<f64> = radii.par_iter().map(|&r| at(r)).collect();
    let (imax, _) = scan
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty scan");
    if imax == 0 || imax == radii.len() - 1 {
        return Err(Error::invariant(
            "single-count maximum not bracketed: non-phasematched geometry",
        ));
    }
    let (r, _) = golden_section_max(at, radii[imax - 1], radii[imax + 1], 1.0)
        .map_err(|_| Error::invariant("single-count maximum not bracketed"))?;
    Ok(TransverseWavevector::polar(r, azimuth))
}

/// Idler `(0, q0)` at the top of the annulus maximizing single counts.
pub fn reference_idler(
    ctx: &PhasematchContext,
    inner: &InnerIntegration,
) -> Result<TransverseWavevector> {
    let k = brightest_on_ray(ctx, inner, FRAC_PI_2)?;
    Ok(TransverseWavevector::new(0.0, k.y))
}

/// `2 sqrt(2) / W_y`.
pub fn width_delta_k_s(pump: &PumpSpec) -> f64 {
    2.0 * SQRT_2 / pump.waist_y()
}

/// Linearized estimate of the `dk_L` slice width from the slope of the
/// degenerate mismatch along `k_sy`.
fn coarse_width_l(ctx: &PhasematchContext, k_i0: TransverseWavevector) -> Result<f64> {
    let center = -k_i0;
    let h = 1e-4 * k_i0.norm().max(1.0);
    let up = ctx.delta_k_degenerate(center + TransverseWavevector::new(0.0, h), k_i0)?;
    let down = ctx.delta_k_degenerate(center - TransverseWavevector::new(0.0, h), k_i0)?;
    let slope = ((up - down) / (2.0 * h)).abs().max(1e-6);
    Ok(4.0 * SINC_SQ_ONE_OVER_E / (ctx.crystal().length() * slope))
}

/// 1/e full width of `L(k_s, k_i0)` along `k_sy` through its maximum, for a
/// crystal of length `length`.
pub fn width_delta_k_l(
    length: f64,
    ctx: &PhasematchContext,
    k_i0: TransverseWavevector,
) -> Result<f64> {
    width_delta_k_l_sampled(length, ctx, k_i0, WIDTH_SAMPLES)
}

/// [`width_delta_k_l`] with an explicit slice sample count.
pub fn width_delta_k_l_sampled(
    length: f64,
    ctx: &PhasematchContext,
    k_i0: TransverseWavevector,
    samples: usize,
) -> Result<f64> {
    let ctx = ctx.with_length(length)?;
    let estimate = coarse_width_l(&ctx, k_i0)?;
    let center = -k_i0;
    let mut span = 6.0 * estimate;
    for _ in 0..=3 {
        let ys = linspace(center.y - span, center.y + span, samples);
        let values: Vec<f64> = ys
            .iter()
            .map(|&y| ctx.longitudinal(TransverseWavevector::new(center.x, y), k_i0))
            .collect();
        if let Some((lo, hi)) = crossings_at_fraction(&ys, &values, (-1.0f64).exp()) {
            return Ok(hi - lo);
        }
        span *= 2.0;
    }
    Err(Error::Numerical(format!(
        "longitudinal profile does not fall to 1/e within +-{span:e} rad/m"
    )))
}

/// Crystal length at which `dk_L = dk_S` for the given pump, using the
/// template's crystal, filters and quadrature.
pub fn critical_length(
    pump: &PumpSpec,
    template: &PhasematchContext,
    inner: &InnerIntegration,
) -> Result<f64> {
    let ctx = template.with_pump(*pump)?;
    let k_i0 = reference_idler(&ctx, inner)?;
    critical_length_at(pump, &ctx, k_i0)
}

/// [`critical_length`] for a known reference idler.
pub fn critical_length_at(
    pump: &PumpSpec,
    ctx: &PhasematchContext,
    k_i0: TransverseWavevector,
) -> Result<f64> {
    let target = width_delta_k_s(pump);
    let g = |length: f64| Ok(width_delta_k_l(length, ctx, k_i0)? - target);
    let (lo, hi) = LENGTH_BRACKET;
    if g(hi)? > 0.0 {
        return Err(Error::OutOfModel(format!(
            "L_c exceeds the bracket top {} mm (pump close to the plane-wave limit)",
            hi * 1e3
        )));
    }
    if g(lo)? < 0.0 {
        return Err(Error::OutOfModel(format!(
            "L_c below the bracket bottom {} mm",
            lo * 1e3
        )));
    }
    bisect(g, lo, hi, LENGTH_TOLERANCE)
}

/// Range of circular pump waists, m.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WaistRange {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl WaistRange {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.min > 0.0 && self.max >= self.min && self.step > 0.0) {
            return Err(Error::invariant(format!(
                "waist range needs 0 < min <= max and step > 0, got {self:?}"
            )));
        }
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|i| self.min + self.step * i as f64).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LcCurve {
    /// `(W, L_c)` in m, with `W_x = W_y = W`.
    pub points: Vec<(f64, f64)>,
    pub fit: LinearFit,
}

/// `L_c(W)` over a range of circular waists plus a least-squares line.
pub fn lc_curve(
    range: &WaistRange,
    template: &PhasematchContext,
    inner: &InnerIntegration,
) -> Result<LcCurve> {
    let waists = range.values()?;
    let lengths: Vec<f64> = waists
        .par_iter()
        .map(|&w| {
            let pump = template.pump().with_waists(w, w)?;
            critical_length(&pump, template, inner)
        })
        .collect::<Result<_>>()?;
    let fit = LinearFit::fit(&waists, &lengths)
        .ok_or_else(|| Error::Numerical("lc curve needs at least two distinct waists".into()))?;
    Ok(LcCurve {
        points: waists.into_iter().zip(lengths).collect(),
        fit,
    })
}

/// Widths, critical length and regime for the context's own crystal length.
pub fn width_report(ctx: &PhasematchContext, inner: &InnerIntegration) -> Result<WidthReport> {
    let k_i0 = reference_idler(ctx, inner)?;
    let delta_k_s = width_delta_k_s(ctx.pump());
    let delta_k_l = width_delta_k_l(ctx.crystal().length(), ctx, k_i0)?;
    let critical_length = match critical_length_at(ctx.pump(), ctx, k_i0) {
        Ok(l) => Some(l),
        Err(Error::OutOfModel(msg)) => {
            log::warn!("{msg}");
            None
        }
        Err(e) => return Err(e),
    };
    Ok(WidthReport {
        delta_k_s,
        delta_k_l,
        reference_idler: k_i0,
        critical_length,
        crystal_length: ctx.crystal().length(),
        regime: Regime::classify(
            critical_length.map_or(delta_k_s / delta_k_l, |lc| ctx.crystal().length() / lc),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::CrystalSpec;
    use crate::phasematch::FilterSpec;
    use approx::assert_relative_eq;

    fn ctx(w: f64) -> PhasematchContext {
        PhasematchContext::new(
            CrystalSpec::bbo_default(),
            PumpSpec::new(406.8e-9, w, w).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            33,
        )
        .unwrap()
    }

    #[test]
    fn sinc_sq_constant_is_one_over_e_point() {
        let x = SINC_SQ_ONE_OVER_E;
        assert!(((x.sin() / x).powi(2) - (-1.0f64).exp()).abs() < 1e-4);
    }

    #[test]
    fn delta_k_s_examples() {
        let p = PumpSpec::new(406.8e-9, 1e-4, 189e-6).unwrap();
        assert_relative_eq!(width_delta_k_s(&p), 14_965.0, max_relative = 1e-4);
        let p = PumpSpec::new(406.8e-9, 1e-4, 34.7e-6).unwrap();
        assert_relative_eq!(width_delta_k_s(&p), 81_512.0, max_relative = 1e-4);
    }

    #[test]
    fn delta_k_s_matches_sampled_profile() {
        let p = PumpSpec::new(406.8e-9, 189e-6, 189e-6).unwrap();
        let ys = linspace(-5e4, 5e4, 4001);
        let vals: Vec<f64> = ys
            .iter()
            .map(|&y| crate::phasematch::pump_angular_intensity(TransverseWavevector::new(0.0, y), &p))
            .collect();
        let sampled = crate::numerics::full_width_at_fraction(&ys, &vals, (-1.0f64).exp()).unwrap();
        assert_relative_eq!(sampled, width_delta_k_s(&p), max_relative = 1e-3);
    }

    #[test]
    fn regime_classification_band() {
        assert_eq!(Regime::classify(0.5), Regime::Short);
        assert_eq!(Regime::classify(2.0), Regime::Long);
        assert_eq!(Regime::classify(0.95), Regime::Boundary);
        assert_eq!(Regime::classify(1.0 / 1.1), Regime::Boundary);
    }

    #[test]
    fn delta_k_l_shrinks_with_length() {
        let c = ctx(189e-6);
        let k = TransverseWavevector::new(0.0, degenerate_ring_radius(&c, FRAC_PI_2).unwrap());
        let w05 = width_delta_k_l(0.5e-3, &c, k).unwrap();
        let w1 = width_delta_k_l(1e-3, &c, k).unwrap();
        let w2 = width_delta_k_l(2e-3, &c, k).unwrap();
        assert!(w2 < w1 && w1 < w05);
        let r = 2.0 * w2 / w1;
        assert!((0.8..=1.2).contains(&r), "{r}");
    }

    #[test]
    fn delta_k_l_is_independent_of_pump_waist() {
        let a = ctx(189e-6);
        let b = ctx(34.7e-6);
        let k = TransverseWavevector::new(0.0, degenerate_ring_radius(&a, FRAC_PI_2).unwrap());
        assert_eq!(
            width_delta_k_l(1e-3, &a, k).unwrap(),
            width_delta_k_l(1e-3, &b, k).unwrap()
        );
    }

    #[test]
    fn plane_wave_limit_is_out_of_model() {
        let c = ctx(189e-6);
        let k = TransverseWavevector::new(0.0, degenerate_ring_radius(&c, FRAC_PI_2).unwrap());
        let pump = PumpSpec::new(406.8e-9, 5e-3, 5e-3).unwrap();
        let err = critical_length_at(&pump, &c, k).unwrap_err();
        assert!(matches!(err, Error::OutOfModel(_)), "{err}");
    }

    #[test]
    fn waist_range_counts_inclusive() {
        let r = WaistRange {
            min: 30e-6,
            max: 200e-6,
            step: 10e-6,
        };
        assert_eq!(r.values().unwrap().len(), 18);
    }
}
