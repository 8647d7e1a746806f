//! File output: binary PPM for 2D rasters, a plain voxel format and an OBJ
//! octahedron for 3D, and CSV for reports.
//!
//! Every writer is a pure `*_bytes` / `*_string` function plus a thin wrapper
//! that puts the result on disk, so outputs can be compared in memory.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fmt9;
use crate::raster::{Raster2D, Raster3D, Window3D};
use crate::realroots::RootReport;
use crate::sets::OctahedronSpec;

const VOX_MAGIC: &str = "TRIVOX1";

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Gray level of one cell: black inside, otherwise proportional to the
/// escape index, rounded down.
pub fn gray_level(escape_index: u32, max_iter: u32) -> u8 {
    if escape_index == 0 {
        return 0;
    }
    let max = u64::from(max_iter.max(1));
    let idx = u64::from(escape_index).min(max);
    (255 * idx / max) as u8
}

/// Binary PPM with the top image row at the window's largest `y`.
pub fn ppm_bytes(r: &Raster2D) -> Vec<u8> {
    let w = r.window();
    let header = format!("P6\n{} {}\n255\n", w.nx, w.ny);
    let mut out = Vec::with_capacity(header.len() + 3 * w.len());
    out.extend_from_slice(header.as_bytes());
    for row in r.cells().chunks(w.nx).rev() {
        for &cell in row {
            let g = gray_level(cell, r.max_iter());
            out.extend_from_slice(&[g, g, g]);
        }
    }
    out
}

pub fn write_ppm(r: &Raster2D, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &ppm_bytes(r))
}

/// Occupancy grid read back from a voxel file.
#[derive(Clone, Debug, PartialEq)]
pub struct VoxGrid {
    pub window: Window3D,
    pub inside: Vec<bool>,
}

pub fn vox_bytes(r: &Raster3D) -> Vec<u8> {
    let w = r.window();
    let header = format!(
        "{VOX_MAGIC} {} {} {} {} {} {} {} {} {}\n",
        w.nx, w.ny, w.nz, w.x.0, w.x.1, w.y.0, w.y.1, w.z.0, w.z.1
    );
    let mut out = Vec::with_capacity(header.len() + w.len());
    out.extend_from_slice(header.as_bytes());
    out.extend(r.cells().iter().map(|&c| u8::from(c == 0)));
    out
}

pub fn write_vox(r: &Raster3D, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &vox_bytes(r))
}

pub fn parse_vox(bytes: &[u8]) -> Result<VoxGrid> {
    let bad = |msg: &str| Error::MalformedVox(msg.to_string());
    let nl = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| bad("missing header line"))?;
    let header = std::str::from_utf8(&bytes[..nl]).map_err(|_| bad("header is not ASCII"))?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 10 || fields[0] != VOX_MAGIC {
        return Err(bad("expected `TRIVOX1 nx ny nz xlo xhi ylo yhi zlo zhi`"));
    }
    let mut n = [0usize; 3];
    for (slot, f) in n.iter_mut().zip(&fields[1..4]) {
        *slot = f.parse().map_err(|_| bad("bad resolution"))?;
    }
    let mut lim = [0f64; 6];
    for (slot, f) in lim.iter_mut().zip(&fields[4..]) {
        *slot = f.parse().map_err(|_| bad("bad axis bound"))?;
    }
    let window = Window3D::new(
        (lim[0], lim[1]),
        (lim[2], lim[3]),
        (lim[4], lim[5]),
        n[0],
        n[1],
        n[2],
    )?;
    let payload = &bytes[nl + 1..];
    if payload.len() != window.len() {
        return Err(bad(&format!(
            "header announces {} voxels, payload has {}",
            window.len(),
            payload.len()
        )));
    }
    let inside = payload
        .iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(bad("voxel byte must be 0 or 1")),
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(VoxGrid { window, inside })
}

pub fn read_vox(path: impl AsRef<Path>) -> Result<VoxGrid> {
    parse_vox(&read_file(path.as_ref())?)
}

pub fn octahedron_obj_string(spec: &OctahedronSpec) -> String {
    let mut s = String::new();
    for v in spec.vertices() {
        s.push_str(&format!("v {} {} {}\n", fmt9(v[0]), fmt9(v[1]), fmt9(v[2])));
    }
    for f in spec.faces() {
        s.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    s
}

pub fn write_octahedron_obj(spec: &OctahedronSpec, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), octahedron_obj_string(spec).as_bytes())
}

/// Comma-separated table with a header row and `\n` line endings.
pub fn csv_string<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<&str> = row.iter().map(AsRef::as_ref).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn write_text(text: &str, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), text.as_bytes())
}

pub fn roots_csv(report: &RootReport) -> String {
    let rows: Vec<Vec<String>> = report
        .roots
        .iter()
        .map(|r| {
            vec![
                fmt9(r.value),
                r.multiplicity.to_string(),
                fmt9(r.bracket.0),
                fmt9(r.bracket.1),
            ]
        })
        .collect();
    csv_string(&["value", "multiplicity", "bracket_lo", "bracket_hi"], &rows)
}
