//! Small numerical building blocks shared by the physics modules: fixed-node
//! quadrature weights, bracketing root and extremum searches, profile widths
//! and a least-squares line.

use std::num::NonZeroUsize;

use gauss_quad::hermite::GaussHermite;

use crate::error::{Error, Result};

/// Composite Simpson weights for `n` uniformly spaced nodes with spacing `h`.
///
/// Odd `n` uses the 1-4-2-...-4-1 pattern. Even `n >= 4` closes the last
/// three intervals with the 3/8 rule; `n == 2` is the trapezoid rule. A single
/// node gets weight 1 so the sum reduces to the integrand itself.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![1.0],
        2 => vec![0.5 * h, 0.5 * h],
        _ => {
            let mut w = vec![0.0; n];
            let simpson_nodes = if n % 2 == 1 { n } else { n - 3 };
            if simpson_nodes >= 3 {
                for (i, wi) in w.iter_mut().enumerate().take(simpson_nodes) {
                    *wi = if i == 0 || i == simpson_nodes - 1 {
                        h / 3.0
                    } else if i % 2 == 1 {
                        4.0 * h / 3.0
                    } else {
                        2.0 * h / 3.0
                    };
                }
            }
            if n.is_multiple_of(2) {
                let s = n - 4;
                for (j, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
                    w[s + j] += 3.0 * h / 8.0 * c;
                }
            }
            w
        }
    }
}

/// Trapezoid weights normalized to unit sum (averaging weights).
pub fn trapezoid_average_weights(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => {
            let interior = 1.0 / (n - 1) as f64;
            let mut w = vec![interior; n];
            w[0] = 0.5 * interior;
            w[n - 1] = 0.5 * interior;
            w
        }
    }
}

/// `n` equally spaced points from `lo` to `hi` inclusive (midpoint for `n == 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| lo + h * i as f64).collect()
        }
    }
}

/// Gauss-Hermite offsets and weights for averaging against `exp(-t^2)`.
///
/// Weights are divided by sqrt(pi) so they sum to one.
pub fn gauss_hermite_average(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n.max(1)).expect("n >= 1");
    let rule = GaussHermite::new(n);
    let total: f64 = rule.weights().sum();
    rule.iter().map(|(t, w)| (*t, w / total)).collect()
}

/// Bisection for a root of `f` on `[lo, hi]` to absolute tolerance `tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::OutOfModel(format!(
            "no sign change on [{lo:e}, {hi:e}] (f = {f_lo:e}, {f_hi:e})"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmax, max)`. Fails if the best point sits on the bracket edge,
/// which means the maximum is not inside the bracket.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    let edge = 2.0 * tol;
    if x - lo < edge || hi - x < edge {
        return Err(Error::Numerical(format!(
            "maximum not bracketed in [{lo:e}, {hi:e}]"
        )));
    }
    Ok((x, fx))
}

/// Full width of a sampled single-peaked profile at `fraction` of its peak.
///
/// The crossings on either side of the maximum are located by linear
/// interpolation between samples. `None` if the profile does not fall below
/// the level on both sides within the samples.
pub fn full_width_at_fraction(coords: &[f64], values: &[f64], fraction: f64) -> Option<f64> {
    let (lo, hi) = crossings_at_fraction(coords, values, fraction)?;
    Some(hi - lo)
}

/// Left and right crossing coordinates of `fraction * max` around the peak.
pub fn crossings_at_fraction(coords: &[f64], values: &[f64], fraction: f64) -> Option<(f64, f64)> {
    assert_eq!(coords.len(), values.len());
    let (imax, &vmax) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if vmax <= 0.0 {
        return None;
    }
    let level = fraction * vmax;
    let interp = |i: usize, j: usize| {
        let (x0, x1, y0, y1) = (coords[i], coords[j], values[i], values[j]);
        x0 + (level - y0) * (x1 - x0) / (y1 - y0)
    };
    let left = (0..imax)
        .rev()
        .find(|&i| values[i] < level)
        .map(|i| interp(i, i + 1))?;
    let right = (imax + 1..values.len())
        .find(|&i| values[i] < level)
        .map(|i| interp(i - 1, i))?;
    Some((left, right))
}

/// Ordinary least-squares line through `(x, y)` samples.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl LinearFit {
    pub fn fit(x: &[f64], y: &[f64]) -> Option<Self> {
        let n = x.len();
        if n < 2 || n != y.len() {
            return None;
        }
        let nf = n as f64;
        let mx = x.iter().sum::<f64>() / nf;
        let my = y.iter().sum::<f64>() / nf;
        let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        if sxx == 0.0 {
            return None;
        }
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
        let ss_res: f64 = x
            .iter()
            .zip(y)
            .map(|(a, b)| (b - (slope * a + intercept)).powi(2))
            .sum();
        let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
        Some(LinearFit {
            slope,
            intercept,
            r_squared,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}
