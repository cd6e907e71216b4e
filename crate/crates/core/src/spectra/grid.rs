use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phasematch::TransverseWavevector;

/// Physical meaning of grid coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// Transverse wavevector, rad/m.
    Wavevector,
    /// Fourier-plane position, m.
    Position,
}

impl Domain {
    pub fn units(self) -> &'static str {
        match self {
            Domain::Wavevector => "rad/m",
            Domain::Position => "m",
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Domain::Wavevector => "wavevector",
            Domain::Position => "position",
        }
    }
}

/// Uniform axis: `len` samples starting at `min` with spacing `step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub step: f64,
    pub len: usize,
}

impl Axis {
    pub fn new(min: f64, step: f64, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::DegenerateAxis("axis has no samples".into()));
        }
        if !(min.is_finite() && step.is_finite() && step > 0.0) {
            return Err(Error::DegenerateAxis(format!(
                "axis needs finite min and step > 0, got min {min}, step {step}"
            )));
        }
        Ok(Axis { min, step, len })
    }

    /// Odd-length axis with a sample exactly at `center`, covering at least
    /// `center +- half_width`.
    pub fn centered(center: f64, step: f64, half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width >= 0.0) {
            return Err(Error::DegenerateAxis(format!("half width {half_width}")));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::DegenerateAxis(format!("step {step}")));
        }
        let n = (half_width / step - 1e-9).ceil().max(0.0) as usize;
        Axis::new(center - n as f64 * step, step, 2 * n + 1)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + self.step * i as f64
    }

    pub fn max(&self) -> f64 {
        self.coord(self.len - 1)
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.coord(i)).collect()
    }

    pub fn scaled(&self, factor: f64) -> Axis {
        Axis {
            min: self.min * factor,
            step: self.step * factor,
            len: self.len,
        }
    }

    pub fn padded(&self, cells: usize) -> Axis {
        Axis {
            min: self.min - self.step * cells as f64,
            step: self.step,
            len: self.len + 2 * cells,
        }
    }

    /// Fractional sample index of `x`, snapped to an integer within 1e-9.
    pub(crate) fn fractional_index(&self, x: f64) -> f64 {
        let f = (x - self.min) / self.step;
        let r = f.round();
        if (f - r).abs() < 1e-9 {
            r
        } else {
            f
        }
    }
}

/// Two axes and a domain tag. Rows run along `y`, columns along `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x: Axis,
    pub y: Axis,
    pub domain: Domain,
}

impl GridSpec {
    pub fn new(x: Axis, y: Axis, domain: Domain) -> Self {
        GridSpec { x, y, domain }
    }

    /// Square grid centered on `center` with equal steps.
    pub fn centered(
        center: TransverseWavevector,
        step: f64,
        half_width: f64,
        domain: Domain,
    ) -> Result<Self> {
        Ok(GridSpec {
            x: Axis::centered(center.x, step, half_width)?,
            y: Axis::centered(center.y, step, half_width)?,
            domain,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len * self.y.len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates of the cell at flat row-major index `i`.
    pub fn point(&self, i: usize) -> TransverseWavevector {
        let ix = i % self.x.len;
        let iy = i / self.x.len;
        TransverseWavevector::new(self.x.coord(ix), self.y.coord(iy))
    }

    pub fn padded(&self, px: usize, py: usize) -> GridSpec {
        GridSpec {
            x: self.x.padded(px),
            y: self.y.padded(py),
            domain: self.domain,
        }
    }

    pub fn scaled(&self, factor: f64, domain: Domain) -> GridSpec {
        GridSpec {
            x: self.x.scaled(factor),
            y: self.y.scaled(factor),
            domain,
        }
    }
}

/// Provenance carried with a grid into every emitted artifact.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    /// `as` or `cas`.
    pub quantity: String,
    pub photon: String,
    pub scenario_hash: Option<String>,
    pub diagnostics: Vec<String>,
}

impl GridMeta {
    pub fn new(quantity: &str) -> Self {
        GridMeta {
            quantity: quantity.to_string(),
            photon: "signal".to_string(),
            scenario_hash: None,
            diagnostics: Vec::new(),
        }
    }
}

/// Row-major non-negative intensities in arbitrary units.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumGrid {
    spec: GridSpec,
    values: Vec<f64>,
    pub meta: GridMeta,
}

impl SpectrumGrid {
    pub fn new(spec: GridSpec, values: Vec<f64>, meta: GridMeta) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::invariant(format!(
                "grid has {} values for {}x{} cells",
                values.len(),
                spec.x.len,
                spec.y.len
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::invariant(format!("grid values must be finite and >= 0, found {v}")));
        }
        Ok(SpectrumGrid { spec, values, meta })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nx(&self) -> usize {
        self.spec.x.len
    }

    pub fn ny(&self) -> usize {
        self.spec.y.len
    }

    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.spec.x.len + ix]
    }

    pub fn row(&self, iy: usize) -> &[f64] {
        let nx = self.spec.x.len;
        &self.values[iy * nx..(iy + 1) * nx]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `(ix, iy)` of the largest value (first one on ties).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        (best % self.spec.x.len, best / self.spec.x.len)
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Scaled so the maximum is one (unchanged if all zero).
    pub fn normalized(&self) -> SpectrumGrid {
        let m = self.max();
        let mut out = self.clone();
        if m > 0.0 {
            out.values.iter_mut().for_each(|v| *v /= m);
        }
        out
    }

    /// Sub-grid starting at `(x0, y0)` with the given shape.
    pub fn crop(&self, x0: usize, y0: usize, nx: usize, ny: usize) -> SpectrumGrid {
        let spec = GridSpec {
            x: Axis {
                min: self.spec.x.coord(x0),
                step: self.spec.x.step,
                len: nx,
            },
            y: Axis {
                min: self.spec.y.coord(y0),
                step: self.spec.y.step,
                len: ny,
            },
            domain: self.spec.domain,
        };
        let mut values = Vec::with_capacity(nx * ny);
        for iy in y0..y0 + ny {
            values.extend_from_slice(&self.row(iy)[x0..x0 + nx]);
        }
        SpectrumGrid {
            spec,
            values,
            meta: self.meta.clone(),
        }
    }

    /// Bilinear interpolation at `(x, y)`; zero outside the grid.
    pub fn interpolate(&self, x: f64, y: f64) -> f64 {
        let fx = self.spec.x.fractional_index(x);
        let fy = self.spec.y.fractional_index(y);
        let (nx, ny) = (self.nx() as f64, self.ny() as f64);
        if !(fx >= 0.0 && fy >= 0.0 && fx <= nx - 1.0 && fy <= ny - 1.0) {
            return 0.0;
        }
        let ix = (fx.floor() as usize).min(self.nx() - 1);
        let iy = (fy.floor() as usize).min(self.ny() - 1);
        let tx = fx - ix as f64;
        let ty = fy - iy as f64;
        let at = |i: usize, j: usize| self.get(i.min(self.nx() - 1), j.min(self.ny() - 1));
        if tx == 0.0 && ty == 0.0 {
            return at(ix, iy);
        }
        (1.0 - tx) * (1.0 - ty) * at(ix, iy)
            + tx * (1.0 - ty) * at(ix + 1, iy)
            + (1.0 - tx) * ty * at(ix, iy + 1)
            + tx * ty * at(ix + 1, iy + 1)
    }

    pub(crate) fn with_values(&self, spec: GridSpec, values: Vec<f64>) -> SpectrumGrid {
        SpectrumGrid {
            spec,
            values,
            meta: self.meta.clone(),
        }
    }
}

/// Which way to sum a grid into a 1-D profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Add up each row: profile over `y` (vertical projection).
    Rows,
    /// Add up each column: profile over `x` (horizontal projection).
    Columns,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub coords: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn project(grid: &SpectrumGrid, projection: Projection) -> Profile {
    match projection {
        Projection::Rows => Profile {
            coords: grid.spec().y.coords(),
            values: (0..grid.ny()).map(|iy| grid.row(iy).iter().sum()).collect(),
        },
        Projection::Columns => Profile {
            coords: grid.spec().x.coords(),
            values: (0..grid.nx())
                .map(|ix| (0..grid.ny()).map(|iy| grid.get(ix, iy)).sum())
                .collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(nx: usize, ny: usize, values: Vec<f64>) -> SpectrumGrid {
        let spec = GridSpec::new(
            Axis::new(0.0, 1.0, nx).unwrap(),
            Axis::new(10.0, 2.0, ny).unwrap(),
            Domain::Wavevector,
        );
        SpectrumGrid::new(spec, values, GridMeta::new("as")).unwrap()
    }

    #[test]
    fn degenerate_axes_rejected() {
        assert!(matches!(Axis::new(0.0, 1.0, 0), Err(Error::DegenerateAxis(_))));
        assert!(matches!(Axis::new(0.0, 0.0, 3), Err(Error::DegenerateAxis(_))));
        assert!(matches!(Axis::new(f64::NAN, 1.0, 3), Err(Error::DegenerateAxis(_))));
    }

    #[test]
    fn centered_axis_contains_center() {
        let a = Axis::centered(5.0, 0.2, 1.0).unwrap();
        assert_eq!(a.len, 11);
        assert!((a.coord(5) - 5.0).abs() < 1e-12);
        assert!(a.min <= 4.0 + 1e-12 && a.max() >= 6.0 - 1e-12);
    }

    #[test]
    fn negative_values_rejected() {
        let spec = GridSpec::new(
            Axis::new(0.0, 1.0, 2).unwrap(),
            Axis::new(0.0, 1.0, 1).unwrap(),
            Domain::Position,
        );
        assert!(SpectrumGrid::new(spec, vec![1.0, -1.0], GridMeta::default()).is_err());
        assert!(SpectrumGrid::new(spec, vec![1.0], GridMeta::default()).is_err());
    }

    #[test]
    fn single_cell_projects_to_impulse() {
        let mut v = vec![0.0; 12];
        v[2 * 4 + 1] = 3.0; // ix = 1, iy = 2
        let g = grid(4, 3, v);
        let rows = project(&g, Projection::Rows);
        assert_eq!(rows.values, vec![0.0, 0.0, 3.0]);
        assert_eq!(rows.coords[2], 14.0);
        let cols = project(&g, Projection::Columns);
        assert_eq!(cols.values, vec![0.0, 3.0, 0.0, 0.0]);
        assert_eq!(cols.coords[1], 1.0);
    }

    #[test]
    fn interpolation_hits_nodes_exactly_and_vanishes_outside() {
        let g = grid(2, 2, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(g.interpolate(1.0, 12.0), 3.0);
        assert_eq!(g.interpolate(0.5, 11.0), 1.5);
        assert_eq!(g.interpolate(-0.5, 11.0), 0.0);
        assert_eq!(g.argmax(), (1, 1));
    }

    proptest! {
        #[test]
        fn projections_preserve_mass(vals in proptest::collection::vec(0.0f64..10.0, 20)) {
            let g = grid(5, 4, vals.clone());
            let total: f64 = vals.iter().sum();
            for p in [Projection::Rows, Projection::Columns] {
                let prof = project(&g, p);
                let s: f64 = prof.values.iter().sum();
                prop_assert!((s - total).abs() <= 1e-12 * total.max(1.0));
            }
            prop_assert_eq!(project(&g, Projection::Rows).values.len(), 4);
            prop_assert_eq!(project(&g, Projection::Columns).values.len(), 5);
        }
    }
}
