//! Angular spectrum (AS) and conditional angular spectrum (CAS) of photon
//! pairs from type-I non-collinear spontaneous parametric downconversion.
//!
//! The coincidence rate for ideal detectors factors into a transverse term
//! fixed by the pump angular spectrum and a longitudinal term fixed by the
//! crystal (length, dispersion, Poynting-vector walkoff):
//!
//! ```text
//! R_c(k_s, k_i) = |S(k_s + k_i)|^2 * L(k_s, k_i)
//! ```
//!
//! Modules, bottom up:
//!
//! - [`dispersion`]: Sellmeier indices, wavenumbers, group derivatives, walkoff.
//! - [`phasematch`]: phase mismatch, pump angular intensity, longitudinal function.
//! - [`spectra`]: CAS/AS grids, detector convolution, Fourier-plane mapping.
//! - [`critical_length`]: 1/e widths and the critical crystal length.
//! - [`io`]: scenario documents, presets, grid emitters and the command driver.

pub mod critical_length;
pub mod dispersion;
pub mod error;
pub mod io;
pub mod numerics;
pub mod phasematch;
pub mod spectra;

pub use error::{Error, Result};
