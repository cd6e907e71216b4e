//! Refractive indices and derived wave quantities for a negative uniaxial
//! crystal.
//!
//! Wavelengths passed to the Sellmeier evaluators are vacuum wavelengths in
//! micrometres; everything else is SI (m, rad/s, rad/m).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Relative step for central-difference frequency derivatives.
pub const DERIVATIVE_REL_STEP: f64 = 1e-6;

/// Identifier of the compiled-in BBO set.
pub const BBO_DEFAULT_ID: &str = "bbo-default";

pub fn angular_frequency(wavelength_m: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / wavelength_m
}

pub fn vacuum_wavelength(omega: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / omega
}

/// One principal index in the form `n^2 = a + b / (lambda^2 - c) - d * lambda^2`
/// with lambda in um (`b`, `c` in um^2, `d` in um^-2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SellmeierTerms {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SellmeierTerms {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        SellmeierTerms { a, b, c, d }
    }

    /// Dispersionless terms, `n = index` at every wavelength.
    pub const fn constant(index: f64) -> Self {
        SellmeierTerms::new(index * index, 0.0, 0.0, 0.0)
    }

    pub fn index_squared(&self, lambda_um: f64) -> f64 {
        let l2 = lambda_um * lambda_um;
        let pole = if self.b == 0.0 { 0.0 } else { self.b / (l2 - self.c) };
        self.a + pole - self.d * l2
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl From<[f64; 4]> for SellmeierTerms {
    fn from(v: [f64; 4]) -> Self {
        SellmeierTerms::new(v[0], v[1], v[2], v[3])
    }
}

/// Ordinary and principal extraordinary Sellmeier terms with their validity
/// window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SellmeierSet {
    pub id: String,
    pub ordinary: SellmeierTerms,
    pub extraordinary: SellmeierTerms,
    pub min_um: f64,
    pub max_um: f64,
}

impl SellmeierSet {
    /// Checks the set on a 50-point grid: both indices above one and
    /// `n_o > n_e` everywhere (negative uniaxial).
    pub fn new(
        id: impl Into<String>,
        ordinary: SellmeierTerms,
        extraordinary: SellmeierTerms,
        min_um: f64,
        max_um: f64,
    ) -> Result<Self> {
        let set = SellmeierSet {
            id: id.into(),
            ordinary,
            extraordinary,
            min_um,
            max_um,
        };
        if !(min_um.is_finite() && max_um.is_finite() && 0.0 < min_um && min_um < max_um) {
            return Err(Error::invariant(format!(
                "Sellmeier range must satisfy 0 < min < max, got [{min_um}, {max_um}] um"
            )));
        }
        for i in 0..50 {
            let lambda = min_um + (max_um - min_um) * i as f64 / 49.0;
            let no2 = ordinary.index_squared(lambda);
            let ne2 = extraordinary.index_squared(lambda);
            if !(no2 > 1.0 && ne2 > 1.0) {
                return Err(Error::invariant(format!(
                    "Sellmeier set `{}`: n^2 > 1 fails at {lambda} um",
                    set.id
                )));
            }
            if no2 <= ne2 {
                return Err(Error::invariant(format!(
                    "Sellmeier set `{}`: n_o > n_e fails at {lambda} um (crystal must be negative uniaxial)",
                    set.id
                )));
            }
        }
        Ok(set)
    }

    /// Standard BBO coefficients, valid 0.22-1.06 um.
    pub fn bbo_default() -> Self {
        SellmeierSet {
            id: BBO_DEFAULT_ID.to_string(),
            ordinary: SellmeierTerms::new(2.7359, 0.01878, 0.01822, 0.01354),
            extraordinary: SellmeierTerms::new(2.3753, 0.01224, 0.01667, 0.01516),
            min_um: 0.22,
            max_um: 1.06,
        }
    }

    pub fn by_id(id: &str) -> Option<Self> {
        (id == BBO_DEFAULT_ID).then(Self::bbo_default)
    }

    pub fn check_range(&self, lambda_um: f64) -> Result<()> {
        if lambda_um.is_finite() && self.min_um <= lambda_um && lambda_um <= self.max_um {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                wavelength_um: lambda_um,
                min_um: self.min_um,
                max_um: self.max_um,
            })
        }
    }

    pub fn n_ordinary(&self, lambda_um: f64) -> Result<f64> {
        self.check_range(lambda_um)?;
        Ok(self.ordinary.index_squared(lambda_um).sqrt())
    }

    /// Principal extraordinary index (propagation normal to the optic axis).
    pub fn n_extraordinary_principal(&self, lambda_um: f64) -> Result<f64> {
        self.check_range(lambda_um)?;
        Ok(self.extraordinary.index_squared(lambda_um).sqrt())
    }

    /// Extraordinary index for a wavevector at `theta` from the optic axis:
    /// `1/n(theta)^2 = cos^2/n_o^2 + sin^2/n_e^2`.
    pub fn n_extraordinary(&self, lambda_um: f64, theta: f64) -> Result<f64> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::invariant(format!(
                "propagation angle must lie in [0, pi/2], got {theta}"
            )));
        }
        let no = self.n_ordinary(lambda_um)?;
        let ne = self.n_extraordinary_principal(lambda_um)?;
        let (s, c) = theta.sin_cos();
        Ok(1.0 / (c * c / (no * no) + s * s / (ne * ne)).sqrt())
    }
}

/// Orientation of the pump walkoff within the z-y plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum WalkoffSign {
    Positive,
    Negative,
}

impl WalkoffSign {
    pub fn factor(self) -> f64 {
        match self {
            WalkoffSign::Positive => 1.0,
            WalkoffSign::Negative => -1.0,
        }
    }
}

impl TryFrom<i8> for WalkoffSign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(WalkoffSign::Positive),
            -1 => Ok(WalkoffSign::Negative),
            other => Err(format!("walkoff_sign must be +1 or -1, got {other}")),
        }
    }
}

impl From<WalkoffSign> for i8 {
    fn from(s: WalkoffSign) -> i8 {
        match s {
            WalkoffSign::Positive => 1,
            WalkoffSign::Negative => -1,
        }
    }
}

/// Which index a wave sees. Type-I e -> oo: the pump is extraordinary at the
/// cut angle, signal and idler are ordinary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarization {
    Ordinary,
    ExtraordinaryAtCut,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrystalSpec {
    length: f64,
    cut_angle: f64,
    sellmeier: SellmeierSet,
    walkoff_sign: WalkoffSign,
}

impl CrystalSpec {
    /// `length` in m, `cut_angle` in rad (pump axis to optic axis).
    pub fn new(
        length: f64,
        cut_angle: f64,
        sellmeier: SellmeierSet,
        walkoff_sign: WalkoffSign,
    ) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invariant(format!("crystal length L > 0, got {length}")));
        }
        if !(cut_angle > 0.0 && cut_angle < FRAC_PI_2) {
            return Err(Error::invariant(format!(
                "cut angle 0 < theta_c < pi/2, got {cut_angle}"
            )));
        }
        Ok(CrystalSpec {
            length,
            cut_angle,
            sellmeier,
            walkoff_sign,
        })
    }

    /// 1 mm BBO cut at 29.3 degrees.
    pub fn bbo_default() -> Self {
        CrystalSpec {
            length: 1e-3,
            cut_angle: 29.3f64.to_radians(),
            sellmeier: SellmeierSet::bbo_default(),
            walkoff_sign: WalkoffSign::Positive,
        }
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cut_angle(&self) -> f64 {
        self.cut_angle
    }

    pub fn sellmeier(&self) -> &SellmeierSet {
        &self.sellmeier
    }

    pub fn walkoff_sign(&self) -> WalkoffSign {
        self.walkoff_sign
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        CrystalSpec::new(length, self.cut_angle, self.sellmeier.clone(), self.walkoff_sign)
    }

    pub fn with_cut_angle(&self, cut_angle: f64) -> Result<Self> {
        CrystalSpec::new(self.length, cut_angle, self.sellmeier.clone(), self.walkoff_sign)
    }

    pub fn index(&self, omega: f64, polarization: Polarization) -> Result<f64> {
        let lambda_um = vacuum_wavelength(omega) * 1e6;
        match polarization {
            Polarization::Ordinary => self.sellmeier.n_ordinary(lambda_um),
            Polarization::ExtraordinaryAtCut => {
                self.sellmeier.n_extraordinary(lambda_um, self.cut_angle)
            }
        }
    }

    /// `k = n(omega) * omega / c`.
    pub fn wavenumber(&self, omega: f64, polarization: Polarization) -> Result<f64> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invariant(format!("angular frequency must be > 0, got {omega}")));
        }
        Ok(self.index(omega, polarization)? * omega / SPEED_OF_LIGHT)
    }

    /// `dk/domega` by central difference with relative step 1e-6.
    pub fn group_derivative(&self, omega: f64, polarization: Polarization) -> Result<f64> {
        let h = DERIVATIVE_REL_STEP * omega;
        let up = self.wavenumber(omega + h, polarization)?;
        let down = self.wavenumber(omega - h, polarization)?;
        Ok((up - down) / (2.0 * h))
    }

    /// Magnitude of the pump Poynting-vector walkoff angle at the cut angle.
    pub fn walkoff_angle(&self, pump_wavelength_um: f64) -> Result<f64> {
        let no = self.sellmeier.n_ordinary(pump_wavelength_um)?;
        let ne = self.sellmeier.n_extraordinary_principal(pump_wavelength_um)?;
        let n = self.sellmeier.n_extraordinary(pump_wavelength_um, self.cut_angle)?;
        let tan_rho =
            -(n * n / 2.0) * (2.0 * self.cut_angle).sin() * (1.0 / (ne * ne) - 1.0 / (no * no));
        Ok(tan_rho.atan().abs())
    }
}
