//! Grid and profile artifacts.
//!
//! CSV grids start with `# key=value` header rows, followed by one line per
//! `y` sample (ascending) of comma-separated values at 9 significant digits.
//! Axis metadata is written in shortest round-trip form. PGM renders are
//! binary 8-bit P5 with `+y` at the top.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::spectra::{Axis, Domain, GridMeta, GridSpec, Profile, SpectrumGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridFormat {
    Csv,
    Pgm,
}

fn check_extent(grid: &SpectrumGrid) -> Result<()> {
    if grid.spec().is_empty() {
        return Err(Error::DegenerateAxis("grid has an empty extent".into()));
    }
    Ok(())
}

fn axis_header(out: &mut String, name: &str, axis: &Axis) {
    let _ = writeln!(out, "# {name}_min={:e}", axis.min);
    let _ = writeln!(out, "# {name}_max={:e}", axis.max());
    let _ = writeln!(out, "# {name}_step={:e}", axis.step);
    let _ = writeln!(out, "# {name}_len={}", axis.len);
}

pub fn grid_to_csv(grid: &SpectrumGrid) -> Result<String> {
    check_extent(grid)?;
    let spec = grid.spec();
    let meta = &grid.meta;
    let mut out = String::new();
    let _ = writeln!(out, "# quantity={}", meta.quantity);
    let _ = writeln!(out, "# photon={}", meta.photon);
    let _ = writeln!(out, "# domain={}", spec.domain.tag());
    let _ = writeln!(out, "# units={}", spec.domain.units());
    axis_header(&mut out, "x", &spec.x);
    axis_header(&mut out, "y", &spec.y);
    if let Some(h) = &meta.scenario_hash {
        let _ = writeln!(out, "# scenario_hash={h}");
    }
    for d in &meta.diagnostics {
        let _ = writeln!(out, "# diagnostic={}", d.replace('\n', " "));
    }
    for iy in 0..grid.ny() {
        let row: Vec<String> = grid.row(iy).iter().map(|v| format!("{v:.8e}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn header_value<'a>(pairs: &'a [(String, String)], key: &str) -> Result<&'a str> {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::config(key, "missing from grid header"))
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::config(key, format!("cannot parse `{v}`")))
}

fn parse_axis(pairs: &[(String, String)], name: &str) -> Result<Axis> {
    let k = |s: &str| format!("{name}_{s}");
    Axis::new(
        parse_num(&k("min"), header_value(pairs, &k("min"))?)?,
        parse_num(&k("step"), header_value(pairs, &k("step"))?)?,
        parse_num(&k("len"), header_value(pairs, &k("len"))?)?,
    )
}

/// Inverse of [`grid_to_csv`].
pub fn grid_from_csv(text: &str) -> Result<SpectrumGrid> {
    let mut pairs = Vec::new();
    let mut values = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if let Some(h) = line.strip_prefix('#') {
            if let Some((k, v)) = h.trim().split_once('=') {
                pairs.push((k.to_string(), v.to_string()));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        for field in line.split(',') {
            values.push(
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::config(format!("line {}", n + 1), format!("bad value `{field}`")))?,
            );
        }
    }
    let domain = match header_value(&pairs, "domain")? {
        "position" => Domain::Position,
        "wavevector" => Domain::Wavevector,
        other => return Err(Error::config("domain", format!("unknown domain `{other}`"))),
    };
    let spec = GridSpec::new(parse_axis(&pairs, "x")?, parse_axis(&pairs, "y")?, domain);
    let meta = GridMeta {
        quantity: header_value(&pairs, "quantity")?.to_string(),
        photon: header_value(&pairs, "photon")?.to_string(),
        scenario_hash: header_value(&pairs, "scenario_hash").ok().map(str::to_string),
        diagnostics: pairs
            .iter()
            .filter(|(k, _)| k == "diagnostic")
            .map(|(_, v)| v.clone())
            .collect(),
    };
    SpectrumGrid::new(spec, values, meta)
}

/// 8-bit gray levels, `+y` first. With `levels`, values are binned into
/// that many equal bands of the maximum and spread evenly over 0..=255.
pub fn grid_to_pgm(grid: &SpectrumGrid, levels: Option<u32>) -> Result<Vec<u8>> {
    check_extent(grid)?;
    if let Some(l) = levels {
        if l < 2 {
            return Err(Error::invariant(format!("quantization needs >= 2 levels, got {l}")));
        }
    }
    let max = grid.max();
    let pixel = |v: f64| -> u8 {
        let f = if max > 0.0 { v / max } else { 0.0 };
        match levels {
            None => (f * 255.0).round().clamp(0.0, 255.0) as u8,
            Some(l) => {
                let level = ((f * l as f64).floor() as u32).min(l - 1);
                (level as f64 * 255.0 / (l - 1) as f64).round() as u8
            }
        }
    };
    let mut out = Vec::with_capacity(grid.spec().len() + 64);
    out.extend_from_slice(b"P5\n");
    if let Some(h) = &grid.meta.scenario_hash {
        out.extend_from_slice(format!("# scenario_hash={h}\n").as_bytes());
    }
    out.extend_from_slice(format!("{} {}\n255\n", grid.nx(), grid.ny()).as_bytes());
    for iy in (0..grid.ny()).rev() {
        out.extend(grid.row(iy).iter().map(|&v| pixel(v)));
    }
    Ok(out)
}

/// Writes `grid` to `path` in the given format.
pub fn emit_grid(
    grid: &SpectrumGrid,
    format: GridFormat,
    path: &Path,
    levels: Option<u32>,
) -> Result<()> {
    match format {
        GridFormat::Csv => fs::write(path, grid_to_csv(grid)?)?,
        GridFormat::Pgm => fs::write(path, grid_to_pgm(grid, levels)?)?,
    }
    Ok(())
}

/// Two-column profile CSV with the grid's provenance header.
pub fn profile_to_csv(profile: &Profile, meta: &GridMeta, axis: &str, domain: Domain) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# quantity={}", meta.quantity);
    let _ = writeln!(out, "# photon={}", meta.photon);
    let _ = writeln!(out, "# projection=sum over {}", if axis == "y" { "x" } else { "y" });
    let _ = writeln!(out, "# domain={}", domain.tag());
    let _ = writeln!(out, "# units={}", domain.units());
    if let Some(h) = &meta.scenario_hash {
        let _ = writeln!(out, "# scenario_hash={h}");
    }
    let _ = writeln!(out, "{axis},value");
    for (c, v) in profile.coords.iter().zip(&profile.values) {
        let _ = writeln!(out, "{c:e},{v:.8e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> SpectrumGrid {
        let spec = GridSpec::new(
            Axis::new(0.0, 1.0, 2).unwrap(),
            Axis::new(0.0, 1.0, 2).unwrap(),
            Domain::Position,
        );
        SpectrumGrid::new(spec, vec![0.0, 1.0, 2.0, 3.0], GridMeta::new("as")).unwrap()
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let csv = grid_to_csv(&two_by_two()).unwrap();
        let data: Vec<_> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data.len(), 2);
        assert_eq!(data[1], "2.00000000e0,3.00000000e0");
    }

    #[test]
    fn pgm_max_pixel_at_largest_cell() {
        let pgm = grid_to_pgm(&two_by_two(), None).unwrap();
        let pixels = &pgm[pgm.len() - 4..];
        // top row is y = 1: cells holding 2 and 3
        assert_eq!(pixels, &[170, 255, 0, 85]);
        assert!(pgm.starts_with(b"P5\n2 2\n255\n"));
    }

    #[test]
    fn six_level_quantization() {
        let spec = GridSpec::new(
            Axis::new(0.0, 1.0, 7).unwrap(),
            Axis::new(0.0, 1.0, 1).unwrap(),
            Domain::Position,
        );
        let g = SpectrumGrid::new(spec, vec![0.0, 0.1, 0.2, 0.5, 0.7, 0.9, 1.0], GridMeta::new("as"))
            .unwrap();
        let pgm = grid_to_pgm(&g, Some(6)).unwrap();
        assert_eq!(&pgm[pgm.len() - 7..], &[0, 0, 51, 153, 204, 255, 255]);
    }

    #[test]
    fn csv_round_trip() {
        let mut g = two_by_two();
        g.meta.scenario_hash = Some("0123456789abcdef".into());
        g.meta.diagnostics.push("note".into());
        let back = grid_from_csv(&grid_to_csv(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
