//! Phase mismatch, the pump angular spectrum and the longitudinal
//! phasematching function.
//!
//! For a CW pump the ideal-detector coincidence rate factors as
//! `|S(k_s + k_i)|^2 * L(k_s, k_i)`. [`pump_angular_intensity`] is the first
//! factor; [`PhasematchContext::longitudinal`] is the second, integrated over
//! the idler frequency with energy conservation `omega_s = omega_p - omega_i`
//! enforced exactly.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::dispersion::{
    angular_frequency, vacuum_wavelength, CrystalSpec, Polarization, SPEED_OF_LIGHT,
};
use crate::error::{Error, Result};
use crate::numerics::{linspace, simpson_weights};

/// Transverse wavevector `(k_x, k_y)` in rad/m.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TransverseWavevector {
    pub x: f64,
    pub y: f64,
}

impl TransverseWavevector {
    pub const ZERO: TransverseWavevector = TransverseWavevector { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        TransverseWavevector { x, y }
    }

    pub fn polar(radius: f64, azimuth: f64) -> Self {
        let (s, c) = azimuth.sin_cos();
        TransverseWavevector::new(radius * c, radius * s)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

impl Add for TransverseWavevector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        TransverseWavevector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for TransverseWavevector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        TransverseWavevector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for TransverseWavevector {
    type Output = Self;
    fn neg(self) -> Self {
        TransverseWavevector::new(-self.x, -self.y)
    }
}

impl Mul<f64> for TransverseWavevector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        TransverseWavevector::new(self.x * s, self.y * s)
    }
}

/// CW Gaussian pump. Waists are field-amplitude radii in m.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpSpec {
    wavelength: f64,
    waist_x: f64,
    waist_y: f64,
}

impl PumpSpec {
    pub fn new(wavelength: f64, waist_x: f64, waist_y: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::invariant(format!("pump wavelength > 0, got {wavelength}")));
        }
        if !(waist_x.is_finite() && waist_x > 0.0) {
            return Err(Error::invariant(format!("W_x > 0, got {waist_x}")));
        }
        if !(waist_y.is_finite() && waist_y > 0.0) {
            return Err(Error::invariant(format!("W_y > 0, got {waist_y}")));
        }
        Ok(PumpSpec {
            wavelength,
            waist_x,
            waist_y,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn waist_x(&self) -> f64 {
        self.waist_x
    }

    pub fn waist_y(&self) -> f64 {
        self.waist_y
    }

    pub fn angular_frequency(&self) -> f64 {
        angular_frequency(self.wavelength)
    }

    pub fn with_waists(&self, waist_x: f64, waist_y: f64) -> Result<Self> {
        PumpSpec::new(self.wavelength, waist_x, waist_y)
    }
}

/// `exp(-(W_x^2 k_x^2 + W_y^2 k_y^2) / 2)`, the pump angular spectrum at the
/// transverse sum `k_plus = k_s + k_i`.
pub fn pump_angular_intensity(k_plus: TransverseWavevector, pump: &PumpSpec) -> f64 {
    let ax = pump.waist_x * k_plus.x;
    let ay = pump.waist_y * k_plus.y;
    (-0.5 * (ax * ax + ay * ay)).exp()
}

/// Top-hat (in wavelength) bandpass filter. Center and full bandwidth in m.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterSpec {
    center: f64,
    bandwidth: f64,
}

impl FilterSpec {
    pub fn new(center: f64, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::invariant(format!("filter bandwidth > 0, got {bandwidth}")));
        }
        if !(center.is_finite() && center - 0.5 * bandwidth > 0.0) {
            return Err(Error::invariant(format!(
                "filter passband must lie at positive wavelength, got center {center}"
            )));
        }
        Ok(FilterSpec { center, bandwidth })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Passband edges in wavelength, `(short, long)`.
    pub fn wavelength_band(&self) -> (f64, f64) {
        (self.center - 0.5 * self.bandwidth, self.center + 0.5 * self.bandwidth)
    }

    /// Passband as an angular-frequency interval `(low, high)`.
    pub fn frequency_band(&self) -> (f64, f64) {
        let (short, long) = self.wavelength_band();
        (angular_frequency(long), angular_frequency(short))
    }
}

/// `sqrt(k^2 - |k_perp|^2)`, or `None` for a non-propagating component.
pub fn longitudinal_component(k: f64, k_perp: TransverseWavevector) -> Option<f64> {
    let kz2 = k * k - k_perp.norm_sqr();
    (kz2 > 0.0).then(|| kz2.sqrt())
}

/// Longitudinal wavevector of an ordinary wave at `omega`. `Ok(None)` flags an
/// evanescent component.
pub fn kz_longitudinal(
    omega: f64,
    k_perp: TransverseWavevector,
    crystal: &CrystalSpec,
) -> Result<Option<f64>> {
    let k = crystal.wavenumber(omega, Polarization::Ordinary)?;
    Ok(longitudinal_component(k, k_perp))
}

/// `sinc^2(L * delta_k / 2)` with the removable singularity filled in.
pub fn sinc_sq(delta_k: f64, length: f64) -> f64 {
    let x = 0.5 * length * delta_k;
    if x.abs() < 1e-8 {
        return 1.0 - x * x / 3.0;
    }
    let s = x.sin() / x;
    s * s
}

/// Quantities at one idler-frequency quadrature node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyNode {
    pub omega_idler: f64,
    pub omega_signal: f64,
    pub k_signal: f64,
    pub k_idler: f64,
    pub group_signal: f64,
    pub group_idler: f64,
    /// Simpson weight times both filter transmissions.
    pub weight: f64,
}

/// Per-node signal quantities for a fixed `k_s`: `(k_sz, A_s)` or `None`
/// where the signal is evanescent.
pub(crate) type SignalTerms = Vec<Option<(f64, f64)>>;

/// Everything the longitudinal function needs, with the frequency quadrature
/// precomputed.
#[derive(Clone, Debug)]
pub struct PhasematchContext {
    crystal: CrystalSpec,
    pump: PumpSpec,
    signal_filter: FilterSpec,
    idler_filter: FilterSpec,
    frequency_nodes: usize,
    k_pump: f64,
    tan_walkoff: f64,
    idler_window: Option<(f64, f64)>,
    nodes: Vec<FrequencyNode>,
}

impl PhasematchContext {
    pub fn new(
        crystal: CrystalSpec,
        pump: PumpSpec,
        signal_filter: FilterSpec,
        idler_filter: FilterSpec,
        frequency_nodes: usize,
    ) -> Result<Self> {
        if frequency_nodes == 0 {
            return Err(Error::invariant("frequency quadrature needs N_omega >= 1"));
        }
        let omega_p = pump.angular_frequency();
        let k_pump = crystal.wavenumber(omega_p, Polarization::ExtraordinaryAtCut)?;
        let rho = crystal.walkoff_angle(pump.wavelength() * 1e6)?;
        let tan_walkoff = crystal.walkoff_sign().factor() * rho.tan();

        let (i_lo, i_hi) = idler_filter.frequency_band();
        let (s_lo, s_hi) = signal_filter.frequency_band();
        let lo = i_lo.max(omega_p - s_hi);
        let hi = i_hi.min(omega_p - s_lo);
        let idler_window = (hi > lo).then_some((lo, hi));

        let mut nodes = Vec::new();
        if let Some((lo, hi)) = idler_window {
            let h = if frequency_nodes > 1 {
                (hi - lo) / (frequency_nodes - 1) as f64
            } else {
                0.0
            };
            let weights = simpson_weights(frequency_nodes, h);
            for (omega_idler, weight) in linspace(lo, hi, frequency_nodes).into_iter().zip(weights)
            {
                let omega_signal = omega_p - omega_idler;
                nodes.push(FrequencyNode {
                    omega_idler,
                    omega_signal,
                    k_signal: crystal.wavenumber(omega_signal, Polarization::Ordinary)?,
                    k_idler: crystal.wavenumber(omega_idler, Polarization::Ordinary)?,
                    group_signal: crystal.group_derivative(omega_signal, Polarization::Ordinary)?,
                    group_idler: crystal.group_derivative(omega_idler, Polarization::Ordinary)?,
                    weight,
                });
            }
        }

        Ok(PhasematchContext {
            crystal,
            pump,
            signal_filter,
            idler_filter,
            frequency_nodes,
            k_pump,
            tan_walkoff,
            idler_window,
            nodes,
        })
    }

    pub fn crystal(&self) -> &CrystalSpec {
        &self.crystal
    }

    pub fn pump(&self) -> &PumpSpec {
        &self.pump
    }

    pub fn signal_filter(&self) -> &FilterSpec {
        &self.signal_filter
    }

    pub fn idler_filter(&self) -> &FilterSpec {
        &self.idler_filter
    }

    pub fn frequency_nodes(&self) -> usize {
        self.frequency_nodes
    }

    pub fn nodes(&self) -> &[FrequencyNode] {
        &self.nodes
    }

    pub fn k_pump(&self) -> f64 {
        self.k_pump
    }

    /// Signed `tan(rho_0)` entering the mismatch.
    pub fn tan_walkoff(&self) -> f64 {
        self.tan_walkoff
    }

    pub fn pump_frequency(&self) -> f64 {
        self.pump.angular_frequency()
    }

    pub fn degenerate_frequency(&self) -> f64 {
        0.5 * self.pump_frequency()
    }

    /// False when the filters admit no energy-conserving pair; the
    /// longitudinal function is then identically zero.
    pub fn has_passband(&self) -> bool {
        self.idler_window.is_some()
    }

    /// Idler angular-frequency window of the integral.
    pub fn idler_window(&self) -> Option<(f64, f64)> {
        self.idler_window
    }

    /// Signal angular-frequency window, the idler window reflected through omega_p.
    pub fn signal_window(&self) -> Option<(f64, f64)> {
        let wp = self.pump_frequency();
        self.idler_window.map(|(lo, hi)| (wp - hi, wp - lo))
    }

    /// Copy with the walkoff term removed from the mismatch.
    pub fn without_walkoff(&self) -> Self {
        PhasematchContext {
            tan_walkoff: 0.0,
            ..self.clone()
        }
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        Ok(PhasematchContext {
            crystal: self.crystal.with_length(length)?,
            ..self.clone()
        })
    }

    /// Waist changes leave the frequency tables untouched.
    pub fn with_pump(&self, pump: PumpSpec) -> Result<Self> {
        if pump.wavelength() == self.pump.wavelength() {
            Ok(PhasematchContext {
                pump,
                ..self.clone()
            })
        } else {
            self.rebuild(self.crystal.clone(), pump, self.frequency_nodes)
        }
    }

    pub fn with_frequency_nodes(&self, n: usize) -> Result<Self> {
        self.rebuild(self.crystal.clone(), self.pump, n)
    }

    pub fn with_crystal(&self, crystal: CrystalSpec) -> Result<Self> {
        self.rebuild(crystal, self.pump, self.frequency_nodes)
    }

    fn rebuild(&self, crystal: CrystalSpec, pump: PumpSpec, n: usize) -> Result<Self> {
        let walkoff_disabled = self.tan_walkoff == 0.0;
        let ctx = PhasematchContext::new(crystal, pump, self.signal_filter, self.idler_filter, n)?;
        Ok(if walkoff_disabled { ctx.without_walkoff() } else { ctx })
    }

    fn mismatch(&self, k_sz: f64, k_iz: f64, k_plus: TransverseWavevector) -> f64 {
        self.k_pump - k_plus.norm_sqr() / (2.0 * self.k_pump) - k_sz - k_iz - k_plus.y * self.tan_walkoff
    }

    /// Phase mismatch for an arbitrary frequency pair. The caller enforces
    /// `omega_s + omega_i = omega_p`.
    pub fn delta_k(
        &self,
        omega_s: f64,
        k_s: TransverseWavevector,
        omega_i: f64,
        k_i: TransverseWavevector,
    ) -> Result<f64> {
        let ks = self.crystal.wavenumber(omega_s, Polarization::Ordinary)?;
        let ki = self.crystal.wavenumber(omega_i, Polarization::Ordinary)?;
        let k_sz = longitudinal_component(ks, k_s).ok_or(Error::Evanescent {
            k_perp: k_s.norm(),
            k: ks,
        })?;
        let k_iz = longitudinal_component(ki, k_i).ok_or(Error::Evanescent {
            k_perp: k_i.norm(),
            k: ki,
        })?;
        Ok(self.mismatch(k_sz, k_iz, k_s + k_i))
    }

    /// Phase mismatch at the degenerate frequency `omega_p / 2`.
    pub fn delta_k_degenerate(
        &self,
        k_s: TransverseWavevector,
        k_i: TransverseWavevector,
    ) -> Result<f64> {
        let w = self.degenerate_frequency();
        self.delta_k(w, k_s, w, k_i)
    }

    pub(crate) fn signal_terms(&self, k_s: TransverseWavevector) -> SignalTerms {
        let q2 = k_s.norm_sqr();
        self.nodes
            .iter()
            .map(|n| {
                let kz2 = n.k_signal * n.k_signal - q2;
                (kz2 > 0.0).then(|| {
                    let kz = kz2.sqrt();
                    (kz, n.group_signal * n.k_signal / kz)
                })
            })
            .collect()
    }

    pub(crate) fn longitudinal_with(
        &self,
        signal: &SignalTerms,
        k_s: TransverseWavevector,
        k_i: TransverseWavevector,
    ) -> f64 {
        let k_plus = k_s + k_i;
        let q2 = k_i.norm_sqr();
        let length = self.crystal.length();
        let mut acc = 0.0;
        for (node, s) in self.nodes.iter().zip(signal) {
            let Some((k_sz, a_s)) = *s else { continue };
            let kz2 = node.k_idler * node.k_idler - q2;
            if kz2 <= 0.0 {
                continue;
            }
            let k_iz = kz2.sqrt();
            let a_i = node.group_idler * node.k_idler / k_iz;
            let dk = self.mismatch(k_sz, k_iz, k_plus);
            acc += node.weight * a_s * a_i * sinc_sq(dk, length);
        }
        acc
    }

    /// Longitudinal function `L(k_s, k_i)`: Simpson quadrature over the idler
    /// frequency of `A_s A_i sinc^2(L dk / 2)` with `A = k' k / k_z`.
    /// Evanescent nodes contribute zero.
    pub fn longitudinal(&self, k_s: TransverseWavevector, k_i: TransverseWavevector) -> f64 {
        let terms = self.signal_terms(k_s);
        self.longitudinal_with(&terms, k_s, k_i)
    }

    /// Ideal-detector coincidence rate `|S(k_s + k_i)|^2 L(k_s, k_i)`.
    pub fn coincidence_rate(&self, k_s: TransverseWavevector, k_i: TransverseWavevector) -> f64 {
        pump_angular_intensity(k_s + k_i, &self.pump) * self.longitudinal(k_s, k_i)
    }

    /// Vacuum wavenumber at the degenerate frequency.
    pub fn degenerate_vacuum_wavenumber(&self) -> f64 {
        self.degenerate_frequency() / SPEED_OF_LIGHT
    }

    /// Vacuum wavelength at the degenerate frequency, m.
    pub fn degenerate_wavelength(&self) -> f64 {
        vacuum_wavelength(self.degenerate_frequency())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bisect;
    use approx::assert_relative_eq;

    fn ctx() -> PhasematchContext {
        PhasematchContext::new(
            CrystalSpec::bbo_default(),
            PumpSpec::new(406.8e-9, 182e-6, 189e-6).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            FilterSpec::new(810e-9, 10e-9).unwrap(),
            33,
        )
        .unwrap()
    }

    #[test]
    fn pump_intensity_examples() {
        let p = PumpSpec::new(406.8e-9, 189e-6, 189e-6).unwrap();
        assert_eq!(pump_angular_intensity(TransverseWavevector::ZERO, &p), 1.0);
        let k = TransverseWavevector::new(2f64.sqrt() / p.waist_x(), 0.0);
        assert_relative_eq!(pump_angular_intensity(k, &p), (-1.0f64).exp(), epsilon = 1e-15);
        let v = pump_angular_intensity(TransverseWavevector::new(1e4, 0.0), &p);
        assert_relative_eq!(v, (-1.786_05f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(v, 0.167_63, epsilon = 1e-5);
    }

    #[test]
    fn pump_invariant_messages() {
        let err = PumpSpec::new(406.8e-9, -5e-6, 10e-6).unwrap_err();
        assert!(err.to_string().contains("W_x > 0"));
        let err = PumpSpec::new(406.8e-9, 5e-6, 0.0).unwrap_err();
        assert!(err.to_string().contains("W_y > 0"));
    }

    #[test]
    fn kz_examples() {
        let c = CrystalSpec::bbo_default();
        let w = angular_frequency(813.6e-9);
        let k = c.wavenumber(w, Polarization::Ordinary).unwrap();
        assert_eq!(kz_longitudinal(w, TransverseWavevector::ZERO, &c).unwrap(), Some(k));
        assert_eq!(
            kz_longitudinal(w, TransverseWavevector::new(k, 0.0), &c).unwrap(),
            None
        );
        let kz = kz_longitudinal(w, TransverseWavevector::new(0.0, 0.038 * k), &c)
            .unwrap()
            .unwrap();
        assert_relative_eq!(kz / k, (1.0f64 - 0.038 * 0.038).sqrt(), epsilon = 1e-14);
        assert_relative_eq!(kz / k, 0.999_278, epsilon = 1e-6);
    }

    #[test]
    fn sinc_sq_examples() {
        let l = 1e-3;
        assert_eq!(sinc_sq(0.0, l), 1.0);
        assert!(sinc_sq(2.0 * std::f64::consts::PI / l, l) < 1e-30);
        // Half-power point of sinc^2 by bisection, independent of the constant.
        let half = bisect(|x: f64| Ok((x.sin() / x).powi(2) - 0.5), 1.0, 2.0, 1e-12).unwrap();
        assert_relative_eq!(half, 1.391_56, epsilon = 1e-5);
        assert_relative_eq!(sinc_sq(2.0 * half / l, l), 0.5, epsilon = 1e-10);
    }

    #[test]
    fn degenerate_ring_has_zero_mismatch() {
        let c = ctx();
        let w = c.degenerate_frequency();
        let q0 = bisect(
            |q| {
                c.delta_k(
                    w,
                    TransverseWavevector::new(0.0, q),
                    w,
                    TransverseWavevector::new(0.0, -q),
                )
            },
            0.0,
            2e6,
            1e-6,
        )
        .unwrap();
        let ks = c
            .crystal()
            .wavenumber(w, Polarization::Ordinary)
            .unwrap();
        let internal = (q0 / ks).asin().to_degrees();
        assert!((internal - 2.2).abs() < 0.05, "internal angle {internal}");
        let dk = c
            .delta_k_degenerate(
                TransverseWavevector::new(0.0, q0),
                TransverseWavevector::new(0.0, -q0),
            )
            .unwrap();
        assert!(dk.abs() < 1e-3);
    }

    #[test]
    fn x_mirror_is_exact() {
        let c = ctx();
        let ks = TransverseWavevector::new(1.3e5, 4.2e5);
        let ki = TransverseWavevector::new(-1.1e5, -4.5e5);
        let mirror = |k: TransverseWavevector| TransverseWavevector::new(-k.x, k.y);
        let w = c.degenerate_frequency();
        assert_eq!(
            c.delta_k(w, ks, w, ki).unwrap(),
            c.delta_k(w, mirror(ks), w, mirror(ki)).unwrap()
        );
        assert_eq!(c.longitudinal(ks, ki), c.longitudinal(mirror(ks), mirror(ki)));
    }

    #[test]
    fn zero_walkoff_restores_y_symmetry() {
        let c = ctx().without_walkoff();
        let w = c.degenerate_frequency();
        let ks = TransverseWavevector::new(0.0, 4.9e5);
        let ki = TransverseWavevector::new(0.0, -4.7e5);
        let flip = |k: TransverseWavevector| TransverseWavevector::new(k.x, -k.y);
        assert_eq!(
            c.delta_k(w, ks, w, ki).unwrap(),
            c.delta_k(w, flip(ks), w, flip(ki)).unwrap()
        );
        // With walkoff the two differ.
        let cw = ctx();
        assert_ne!(
            cw.delta_k(w, ks, w, ki).unwrap(),
            cw.delta_k(w, flip(ks), w, flip(ki)).unwrap()
        );
    }

    #[test]
    fn evanescent_delta_k_is_flagged() {
        let c = ctx();
        let w = c.degenerate_frequency();
        let err = c
            .delta_k(w, TransverseWavevector::new(2e7, 0.0), w, TransverseWavevector::ZERO)
            .unwrap_err();
        assert!(matches!(err, Error::Evanescent { .. }));
        // Inside the integral the same point is a zero contribution.
        assert_eq!(
            c.longitudinal(TransverseWavevector::new(2e7, 0.0), TransverseWavevector::ZERO),
            0.0
        );
    }

    #[test]
    fn single_node_reduces_to_integrand() {
        let c = ctx().with_frequency_nodes(1).unwrap();
        let w = c.degenerate_frequency();
        assert_relative_eq!(c.nodes()[0].omega_idler, w, max_relative = 1e-14);
        let ks = TransverseWavevector::new(0.0, -4.8e5);
        let ki = TransverseWavevector::new(0.0, 4.75e5);
        let crystal = c.crystal();
        let a = |k: TransverseWavevector| {
            let kk = crystal.wavenumber(w, Polarization::Ordinary).unwrap();
            let g = crystal.group_derivative(w, Polarization::Ordinary).unwrap();
            g * kk / longitudinal_component(kk, k).unwrap()
        };
        let dk = c.delta_k(w, ks, w, ki).unwrap();
        let expected = a(ks) * a(ki) * sinc_sq(dk, crystal.length());
        assert_relative_eq!(c.longitudinal(ks, ki), expected, max_relative = 1e-9);
    }

    #[test]
    fn ring_point_beats_off_ring_point() {
        let c = ctx();
        let w = c.degenerate_frequency();
        let q0 = bisect(
            |q| {
                c.delta_k(
                    w,
                    TransverseWavevector::new(0.0, q),
                    w,
                    TransverseWavevector::new(0.0, -q),
                )
            },
            0.0,
            2e6,
            1e-6,
        )
        .unwrap();
        let on = c.longitudinal(
            TransverseWavevector::new(0.0, q0),
            TransverseWavevector::new(0.0, -q0),
        );
        let off = c.longitudinal(
            TransverseWavevector::new(0.0, 1.5 * q0),
            TransverseWavevector::new(0.0, -1.5 * q0),
        );
        assert!(on > off);
    }

    #[test]
    fn disjoint_filters_give_empty_passband() {
        let c = PhasematchContext::new(
            CrystalSpec::bbo_default(),
            PumpSpec::new(406.8e-9, 182e-6, 189e-6).unwrap(),
            FilterSpec::new(700e-9, 10e-9).unwrap(),
            FilterSpec::new(700e-9, 10e-9).unwrap(),
            33,
        )
        .unwrap();
        assert!(!c.has_passband());
        assert_eq!(
            c.longitudinal(
                TransverseWavevector::new(0.0, 4.8e5),
                TransverseWavevector::new(0.0, -4.8e5)
            ),
            0.0
        );
    }

    #[test]
    fn passband_window_is_symmetric_about_degenerate() {
        let c = ctx();
        let (lo, hi) = c.idler_window().unwrap();
        assert_relative_eq!(0.5 * (lo + hi), c.degenerate_frequency(), max_relative = 1e-12);
    }
}
