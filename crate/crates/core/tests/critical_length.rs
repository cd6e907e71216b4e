use std::f64::consts::FRAC_PI_2;

use spdc_angular::critical_length::{
    critical_length, degenerate_ring_radius, lc_curve, reference_idler, width_delta_k_l,
    width_delta_k_l_sampled, width_report, Regime, WaistRange,
};
use spdc_angular::dispersion::{CrystalSpec, Polarization};
use spdc_angular::io::load_preset;
use spdc_angular::phasematch::{FilterSpec, PhasematchContext, PumpSpec, TransverseWavevector};
use spdc_angular::spectra::InnerIntegration;
use spdc_angular::Error;

fn ctx(wx: f64, wy: f64) -> PhasematchContext {
    PhasematchContext::new(
        CrystalSpec::bbo_default(),
        PumpSpec::new(406.8e-9, wx, wy).unwrap(),
        FilterSpec::new(810e-9, 10e-9).unwrap(),
        FilterSpec::new(810e-9, 10e-9).unwrap(),
        33,
    )
    .unwrap()
}

fn default_range() -> WaistRange {
    WaistRange {
        min: 30e-6,
        max: 200e-6,
        step: 10e-6,
    }
}

#[test]
fn reference_idler_sits_near_internal_ring_angle() {
    let c = ctx(182e-6, 189e-6);
    let k = reference_idler(&c, &InnerIntegration::default()).unwrap();
    assert_eq!(k.x, 0.0);
    let kk = c.crystal().wavenumber(c.degenerate_frequency(), Polarization::Ordinary).unwrap();
    let theta = (k.y / kk).asin().to_degrees();
    assert!((theta - 2.17).abs() < 0.05, "{theta}");
}

#[test]
fn zero_walkoff_reference_idler_is_ring_root() {
    let c = ctx(182e-6, 189e-6).without_walkoff();
    let k = reference_idler(&c, &InnerIntegration::default()).unwrap();
    let root = degenerate_ring_radius(&c, FRAC_PI_2).unwrap();
    let width = width_delta_k_l(c.crystal().length(), &c, k).unwrap();
    assert!((k.y - root).abs() < width / 10.0, "{} vs {root} (width {width})", k.y);
}

#[test]
fn larger_cut_angle_opens_the_ring() {
    let c = ctx(182e-6, 189e-6);
    let inner = InnerIntegration::default();
    let wider = c
        .with_crystal(c.crystal().with_cut_angle(29.8f64.to_radians()).unwrap())
        .unwrap();
    let q = reference_idler(&c, &inner).unwrap().y;
    let q_wider = reference_idler(&wider, &inner).unwrap().y;
    assert!(q_wider > q, "{q_wider} !> {q}");
}

#[test]
fn interpolated_width_survives_tenfold_refinement() {
    let c = ctx(182e-6, 189e-6);
    let k = TransverseWavevector::new(0.0, degenerate_ring_radius(&c, FRAC_PI_2).unwrap());
    for length in [0.5e-3, 1e-3, 4e-3] {
        let coarse = width_delta_k_l(length, &c, k).unwrap();
        let fine = width_delta_k_l_sampled(length, &c, k, 4001).unwrap();
        assert!(((coarse - fine) / fine).abs() < 1e-2, "L = {length}: {coarse} vs {fine}");
    }
}

#[test]
fn plane_wave_pump_exceeds_bracket() {
    let c = ctx(182e-6, 189e-6);
    let pump = PumpSpec::new(406.8e-9, 5e-3, 5e-3).unwrap();
    let err = critical_length(&pump, &c, &InnerIntegration::default()).unwrap_err();
    assert!(matches!(err, Error::OutOfModel(_)), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn critical_length_grows_with_waist_and_fits_a_line() {
    let c = ctx(182e-6, 189e-6);
    let inner = InnerIntegration::default();
    let curve = lc_curve(&default_range(), &c, &inner).unwrap();
    assert_eq!(curve.points.len(), 18);
    for pair in curve.points.windows(2) {
        assert!(pair[1].1 > pair[0].1, "{pair:?}");
    }
    assert!(curve.fit.r_squared >= 0.99);

    // measured waists fall on the fitted line
    for (wx, wy) in [(182.0, 189.0), (67.5, 64.8), (56.4, 47.9), (38.9, 34.7)] {
        let pump = PumpSpec::new(406.8e-9, wx * 1e-6, wy * 1e-6).unwrap();
        let lc = critical_length(&pump, &c, &inner).unwrap();
        let line = curve.fit.eval(wy * 1e-6);
        assert!(((lc - line) / lc).abs() < 0.15, "W_y = {wy}: {lc} vs line {line}");
    }

    let coarse = lc_curve(
        &WaistRange {
            step: 20e-6,
            ..default_range()
        },
        &c,
        &inner,
    )
    .unwrap();
    let rel = (coarse.fit.slope - curve.fit.slope).abs() / curve.fit.slope;
    assert!(rel < 0.01, "slope {} vs {}", coarse.fit.slope, curve.fit.slope);
}

#[test]
fn preset_regimes() {
    let expected = [Regime::Short, Regime::Short, Regime::Boundary, Regime::Long];
    for (i, want) in expected.into_iter().enumerate() {
        let cfg = load_preset(&format!("measurement-{}", i + 1)).unwrap();
        let r = width_report(&cfg.context, &cfg.inner).unwrap();
        assert_eq!(r.regime, want, "measurement-{}: {r:?}", i + 1);
        assert!(r.delta_k_s > 0.0 && r.delta_k_l > 0.0);
        let lc = r.critical_length.unwrap();
        match r.regime {
            Regime::Short => assert!(r.crystal_length < lc && r.delta_k_s < r.delta_k_l),
            Regime::Long => assert!(r.crystal_length > lc && r.delta_k_s > r.delta_k_l),
            Regime::Boundary => assert!((1.0 - r.crystal_length / lc).abs() < 0.15),
        }
    }
}
