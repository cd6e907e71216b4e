//! Scenario documents: flat JSON, one key per parameter, units in key names.
//!
//! Required keys: `crystal_length_mm`, `pump_waist_x_um`, `pump_waist_y_um`.
//! Every other key has the default listed on [`ScenarioDocument`]. Unknown
//! keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::critical_length::WaistRange;
use crate::dispersion::{CrystalSpec, SellmeierSet, SellmeierTerms, WalkoffSign, BBO_DEFAULT_ID};
use crate::error::{Error, Result};
use crate::phasematch::{FilterSpec, PhasematchContext, PumpSpec, TransverseWavevector};
use crate::spectra::{DetectorSpec, Domain, FourierOptics, InnerIntegration};

/// Overrides the directory searched for named presets.
pub const PRESET_DIR_ENV: &str = "SPDC_ANGULAR_PRESET_DIR";

const PRESETS: [(&str, &str); 4] = [
    ("measurement-1", include_str!("../../presets/measurement-1.json")),
    ("measurement-2", include_str!("../../presets/measurement-2.json")),
    ("measurement-3", include_str!("../../presets/measurement-3.json")),
    ("measurement-4", include_str!("../../presets/measurement-4.json")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

/// The document as written. Field order fixes the canonical form that the
/// scenario hash is taken over.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,

    pub crystal_length_mm: f64,
    /// Default 29.3.
    #[serde(default = "d::cut_angle_deg")]
    pub cut_angle_deg: f64,
    /// +1 or -1. Default +1.
    #[serde(default = "d::walkoff_sign")]
    pub walkoff_sign: WalkoffSign,
    /// Default "bbo-default". Any other id needs both coefficient arrays.
    #[serde(default = "d::sellmeier_id")]
    pub sellmeier_id: String,
    /// `[a, b, c, d]` for `n^2 = a + b/(l^2 - c) - d l^2`, l in um.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sellmeier_ordinary: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sellmeier_extraordinary: Option<[f64; 4]>,
    /// `[min, max]` validity window. Required with custom coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sellmeier_range_um: Option<[f64; 2]>,

    /// Default 406.8.
    #[serde(default = "d::pump_wavelength_nm")]
    pub pump_wavelength_nm: f64,
    pub pump_waist_x_um: f64,
    pub pump_waist_y_um: f64,

    /// Default 810 nm center, 10 nm full bandwidth for both filters.
    #[serde(default = "d::filter_center_nm")]
    pub signal_filter_center_nm: f64,
    #[serde(default = "d::filter_bandwidth_nm")]
    pub signal_filter_bandwidth_nm: f64,
    #[serde(default = "d::filter_center_nm")]
    pub idler_filter_center_nm: f64,
    #[serde(default = "d::filter_bandwidth_nm")]
    pub idler_filter_bandwidth_nm: f64,

    /// Default 100.
    #[serde(default = "d::lens_focal_length_mm")]
    pub lens_focal_length_mm: f64,
    /// Default true.
    #[serde(default = "d::yes")]
    pub exit_face_refraction: bool,

    /// Gaussian 1/e full widths in the Fourier plane; 0 is a point detector.
    /// CAS detectors default to 200, the AS detector to 0.
    #[serde(default = "d::detector_width_um")]
    pub signal_detector_width_um: f64,
    #[serde(default = "d::detector_width_um")]
    pub idler_detector_width_um: f64,
    #[serde(default)]
    pub as_detector_width_um: f64,

    /// Ray on which the CAS idler sits at the brightest point, measured from
    /// +x towards +y. Default 180 (left of the annulus).
    #[serde(default = "d::idler_azimuth_deg")]
    pub idler_azimuth_deg: f64,
    /// Explicit Fourier-plane idler position; overrides the azimuth when both
    /// coordinates are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idler_x_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idler_y_mm: Option<f64>,

    /// Axis labelling of emitted grids: "position" (default) or "wavevector".
    /// Grid steps and extents are always Fourier-plane lengths.
    #[serde(default = "d::grid_domain")]
    pub grid_domain: Domain,
    /// Default 200.
    #[serde(default = "d::as_grid_step_um")]
    pub as_grid_step_um: f64,
    /// Default 8.
    #[serde(default = "d::as_grid_half_width_mm")]
    pub as_grid_half_width_mm: f64,
    /// Default 50.
    #[serde(default = "d::cas_grid_step_um")]
    pub cas_grid_step_um: f64,
    /// Default 1.
    #[serde(default = "d::cas_grid_half_width_mm")]
    pub cas_grid_half_width_mm: f64,

    /// Simpson nodes across the idler frequency window. Default 33.
    #[serde(default = "d::frequency_nodes")]
    pub frequency_nodes: usize,
    /// Simpson nodes per axis of the AS idler integral. Default 41.
    #[serde(default = "d::inner_nodes")]
    pub inner_nodes: usize,
    /// AS idler window half-width in units of `sqrt(2) / min(W)`. Default 4.
    #[serde(default = "d::inner_half_width_factor")]
    pub inner_half_width_factor: f64,
    /// Frequencies averaged when relabelling to Fourier-plane positions.
    /// Default 9.
    #[serde(default = "d::position_frequency_samples")]
    pub position_frequency_samples: usize,
    /// Gauss-Hermite order per axis for the idler detector. Default 7.
    #[serde(default = "d::idler_kernel_nodes")]
    pub idler_kernel_nodes: usize,

    /// `lc-curve` waist range. Default 30 to 200 um in 10 um steps.
    #[serde(default = "d::lc_waist_min_um")]
    pub lc_waist_min_um: f64,
    #[serde(default = "d::lc_waist_max_um")]
    pub lc_waist_max_um: f64,
    #[serde(default = "d::lc_waist_step_um")]
    pub lc_waist_step_um: f64,

    /// Gray levels for quantized PGM renders; absent renders full 8-bit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantization_levels: Option<u32>,
}

mod d {
    use super::*;

    pub fn cut_angle_deg() -> f64 {
        29.3
    }
    pub fn walkoff_sign() -> WalkoffSign {
        WalkoffSign::Positive
    }
    pub fn sellmeier_id() -> String {
        BBO_DEFAULT_ID.to_string()
    }
    pub fn pump_wavelength_nm() -> f64 {
        406.8
    }
    pub fn filter_center_nm() -> f64 {
        810.0
    }
    pub fn filter_bandwidth_nm() -> f64 {
        10.0
    }
    pub fn lens_focal_length_mm() -> f64 {
        100.0
    }
    pub fn yes() -> bool {
        true
    }
    pub fn detector_width_um() -> f64 {
        200.0
    }
    pub fn idler_azimuth_deg() -> f64 {
        180.0
    }
    pub fn grid_domain() -> Domain {
        Domain::Position
    }
    pub fn as_grid_step_um() -> f64 {
        200.0
    }
    pub fn as_grid_half_width_mm() -> f64 {
        8.0
    }
    pub fn cas_grid_step_um() -> f64 {
        50.0
    }
    pub fn cas_grid_half_width_mm() -> f64 {
        1.0
    }
    pub fn frequency_nodes() -> usize {
        33
    }
    pub fn inner_nodes() -> usize {
        41
    }
    pub fn inner_half_width_factor() -> f64 {
        4.0
    }
    pub fn position_frequency_samples() -> usize {
        9
    }
    pub fn idler_kernel_nodes() -> usize {
        7
    }
    pub fn lc_waist_min_um() -> f64 {
        30.0
    }
    pub fn lc_waist_max_um() -> f64 {
        200.0
    }
    pub fn lc_waist_step_um() -> f64 {
        10.0
    }
}

/// How the CAS idler is placed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IdlerPlacement {
    /// Brightest point on the ray at this azimuth, rad.
    Azimuth(f64),
    /// Fixed Fourier-plane position, m.
    Position { x: f64, y: f64 },
}

/// Validated scenario.
#[derive(Clone, Debug)]
pub struct ScenarioConfig {
    pub document: ScenarioDocument,
    pub context: PhasematchContext,
    pub optics: FourierOptics,
    pub signal_detector: DetectorSpec,
    pub idler_detector: DetectorSpec,
    pub as_detector: DetectorSpec,
    pub idler: IdlerPlacement,
    pub inner: InnerIntegration,
    pub waist_range: WaistRange,
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::config(key, format!("must be > 0, got {v}")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::config(key, format!("must be >= 0, got {v}")))
    }
}

fn at_least(key: &str, v: usize, min: usize) -> Result<usize> {
    if v >= min {
        Ok(v)
    } else {
        Err(Error::config(key, format!("must be >= {min}, got {v}")))
    }
}

fn detector(key: &str, width_um: f64) -> Result<DetectorSpec> {
    Ok(if non_negative(key, width_um)? == 0.0 {
        DetectorSpec::Delta
    } else {
        DetectorSpec::Gaussian {
            full_width: width_um / 1e6,
        }
    })
}

/// Attaches the offending key to component invariant failures.
fn at_key<T>(key: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Invariant(m) => Error::config(key, m),
        other => other,
    })
}

impl ScenarioDocument {
    pub fn sellmeier(&self) -> Result<SellmeierSet> {
        match (self.sellmeier_ordinary, self.sellmeier_extraordinary) {
            (None, None) => SellmeierSet::by_id(&self.sellmeier_id).ok_or_else(|| {
                Error::config(
                    "sellmeier_id",
                    format!(
                        "unknown set `{}`; give sellmeier_ordinary and sellmeier_extraordinary",
                        self.sellmeier_id
                    ),
                )
            }),
            (Some(o), Some(e)) => {
                let [min, max] = self.sellmeier_range_um.ok_or_else(|| {
                    Error::config("sellmeier_range_um", "required with custom coefficients")
                })?;
                at_key(
                    "sellmeier_ordinary",
                    SellmeierSet::new(
                        self.sellmeier_id.clone(),
                        SellmeierTerms::from(o),
                        SellmeierTerms::from(e),
                        min,
                        max,
                    ),
                )
            }
            (None, Some(_)) => Err(Error::config("sellmeier_ordinary", "missing")),
            (Some(_), None) => Err(Error::config("sellmeier_extraordinary", "missing")),
        }
    }

    /// Validates every component and assembles the scenario.
    pub fn build(&self) -> Result<ScenarioConfig> {
        let crystal = at_key(
            "crystal_length_mm",
            CrystalSpec::new(
                self.crystal_length_mm / 1e3,
                self.cut_angle_deg.to_radians(),
                self.sellmeier()?,
                self.walkoff_sign,
            ),
        )
        .map_err(|e| match e {
            Error::Config { message, .. } if message.contains("cut angle") => {
                Error::config("cut_angle_deg", message)
            }
            other => other,
        })?;
        let pump = PumpSpec::new(
            self.pump_wavelength_nm / 1e9,
            self.pump_waist_x_um / 1e6,
            self.pump_waist_y_um / 1e6,
        )
        .map_err(|e| match e {
            Error::Invariant(m) if m.starts_with("W_x") => Error::config("pump_waist_x_um", m),
            Error::Invariant(m) if m.starts_with("W_y") => Error::config("pump_waist_y_um", m),
            Error::Invariant(m) => Error::config("pump_wavelength_nm", m),
            other => other,
        })?;
        let signal_filter = at_key(
            "signal_filter_bandwidth_nm",
            FilterSpec::new(
                self.signal_filter_center_nm / 1e9,
                self.signal_filter_bandwidth_nm / 1e9,
            ),
        )?;
        let idler_filter = at_key(
            "idler_filter_bandwidth_nm",
            FilterSpec::new(
                self.idler_filter_center_nm / 1e9,
                self.idler_filter_bandwidth_nm / 1e9,
            ),
        )?;
        let frequency_nodes = at_least("frequency_nodes", self.frequency_nodes, 1)?;
        let context = at_key(
            "frequency_nodes",
            PhasematchContext::new(crystal, pump, signal_filter, idler_filter, frequency_nodes),
        )?;
        if !context.has_passband() {
            return Err(Error::config(
                "idler_filter_center_nm",
                "signal and idler passbands admit no energy-conserving pair",
            ));
        }
        let optics = at_key(
            "lens_focal_length_mm",
            FourierOptics::new(self.lens_focal_length_mm / 1e3, self.exit_face_refraction),
        )?;

        positive("as_grid_step_um", self.as_grid_step_um)?;
        positive("as_grid_half_width_mm", self.as_grid_half_width_mm)?;
        positive("cas_grid_step_um", self.cas_grid_step_um)?;
        positive("cas_grid_half_width_mm", self.cas_grid_half_width_mm)?;
        at_least("position_frequency_samples", self.position_frequency_samples, 1)?;
        at_least("idler_kernel_nodes", self.idler_kernel_nodes, 1)?;
        if let Some(q) = self.quantization_levels {
            at_least("quantization_levels", q as usize, 2)?;
        }

        let idler = match (self.idler_x_mm, self.idler_y_mm) {
            (Some(x), Some(y)) if x.is_finite() && y.is_finite() => IdlerPlacement::Position {
                x: x / 1e3,
                y: y / 1e3,
            },
            (None, None) => {
                if !self.idler_azimuth_deg.is_finite() {
                    return Err(Error::config("idler_azimuth_deg", "must be finite"));
                }
                IdlerPlacement::Azimuth(self.idler_azimuth_deg.to_radians())
            }
            (None, Some(_)) => return Err(Error::config("idler_x_mm", "missing")),
            _ => return Err(Error::config("idler_y_mm", "missing or not finite")),
        };

        let inner = InnerIntegration {
            nodes: at_least("inner_nodes", self.inner_nodes, 3)?,
            half_width_factor: positive("inner_half_width_factor", self.inner_half_width_factor)?,
        };
        let waist_range = WaistRange {
            min: positive("lc_waist_min_um", self.lc_waist_min_um)? / 1e6,
            max: positive("lc_waist_max_um", self.lc_waist_max_um)? / 1e6,
            step: positive("lc_waist_step_um", self.lc_waist_step_um)? / 1e6,
        };
        at_key("lc_waist_max_um", waist_range.values())?;

        Ok(ScenarioConfig {
            signal_detector: detector("signal_detector_width_um", self.signal_detector_width_um)?,
            idler_detector: detector("idler_detector_width_um", self.idler_detector_width_um)?,
            as_detector: detector("as_detector_width_um", self.as_detector_width_um)?,
            document: self.clone(),
            context,
            optics,
            idler,
            inner,
            waist_range,
        })
    }

    /// Compact JSON with all defaults filled in.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    /// First 16 hex digits of the SHA-256 of [`Self::canonical_json`].
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        hex::encode(&digest[..8])
    }
}

impl ScenarioConfig {
    pub fn hash(&self) -> String {
        self.document.hash()
    }

    /// Fourier-plane position to internal transverse wavevector at the
    /// degenerate frequency.
    pub fn position_to_wavevector(&self, x: f64, y: f64) -> Result<TransverseWavevector> {
        let s = self
            .optics
            .wavevector_per_position(self.context.degenerate_frequency(), &self.context)?;
        Ok(TransverseWavevector::new(x * s, y * s))
    }
}

/// Key named in a serde_json message (the first backtick-quoted word).
fn key_in(message: &str) -> Option<&str> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(&message[start..start + len])
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let doc: ScenarioDocument = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let key = key_in(&message).unwrap_or("<document>").to_string();
        Error::Config { key, message }
    })?;
    doc.build()
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::config("<document>", format!("cannot read {}: {e}", path.display()))
    })?;
    parse_scenario(&text)
}

/// Preset by name, from `$SPDC_ANGULAR_PRESET_DIR/<name>.json` when that
/// variable is set, else the compiled-in copy.
pub fn load_preset(name: &str) -> Result<ScenarioConfig> {
    if let Some(dir) = std::env::var_os(PRESET_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.is_file() {
            return load_scenario(&path);
        }
        return Err(Error::config(
            "<preset>",
            format!("`{name}` not found in {}", path.parent().unwrap_or(&path).display()),
        ));
    }
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_scenario(text))
        .unwrap_or_else(|| {
            let known: Vec<_> = preset_names().collect();
            Err(Error::config(
                "<preset>",
                format!("unknown preset `{name}`; known: {}", known.join(", ")),
            ))
        })
}

/// A path if it names an existing file, otherwise a preset name.
pub fn resolve_config(arg: &str) -> Result<ScenarioConfig> {
    let path = Path::new(arg);
    if path.is_file() {
        load_scenario(path)
    } else {
        load_preset(arg)
    }
}
