//! Tile-parallel escape-time scans of 2D windows and 3D volumes, and the
//! discrete Hausdorff distance between the inside sets of two rasters.
//!
//! Cells are sampled at their centers. Cell `(i, j)` of a 2D raster is stored
//! at `j * nx + i` with `j = 0` at `y_lo`; 3D voxels are stored with `x`
//! fastest, then `y`, then `z`. An escape index of `0` marks a cell whose
//! orbit stayed bounded for `max_iter` steps.

use rayon::prelude::*;

use crate::algebra::{SliceSpec, Tricomplex, Unit};
use crate::dynamics::orbit;
use crate::error::{Error, Result};
use crate::realroots::PolyParams;

fn check_axis(name: &str, lo: f64, hi: f64, n: usize) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidWindow(format!(
            "{name} range must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidWindow(format!("{name} resolution must be positive")));
    }
    Ok(())
}

#[inline]
fn center(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    lo + (i as f64 + 0.5) * (hi - lo) / n as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window2D {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl Window2D {
    pub fn new(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        check_axis("x", x.0, x.1, nx)?;
        check_axis("y", y.0, y.1, ny)?;
        Ok(Window2D { x, y, nx, ny })
    }

    /// Square grid of `res × res` cells over `[lo, hi]²`.
    pub fn square(lo: f64, hi: f64, res: usize) -> Result<Self> {
        Window2D::new((lo, hi), (lo, hi), res, res)
    }

    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        (
            center(self.x.0, self.x.1, self.nx, i),
            center(self.y.0, self.y.1, self.ny, j),
        )
    }

    pub fn cell_size(&self) -> (f64, f64) {
        (
            (self.x.1 - self.x.0) / self.nx as f64,
            (self.y.1 - self.y.0) / self.ny as f64,
        )
    }

    pub fn cell_diagonal(&self) -> f64 {
        let (dx, dy) = self.cell_size();
        dx.hypot(dy)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window3D {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub z: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl Window3D {
    pub fn new(
        x: (f64, f64),
        y: (f64, f64),
        z: (f64, f64),
        nx: usize,
        ny: usize,
        nz: usize,
    ) -> Result<Self> {
        check_axis("x", x.0, x.1, nx)?;
        check_axis("y", y.0, y.1, ny)?;
        check_axis("z", z.0, z.1, nz)?;
        Ok(Window3D { x, y, z, nx, ny, nz })
    }

    pub fn cube(lo: f64, hi: f64, res: usize) -> Result<Self> {
        Window3D::new((lo, hi), (lo, hi), (lo, hi), res, res, res)
    }

    pub fn cell_center(&self, i: usize, j: usize, k: usize) -> (f64, f64, f64) {
        (
            center(self.x.0, self.x.1, self.nx, i),
            center(self.y.0, self.y.1, self.ny, j),
            center(self.z.0, self.z.1, self.nz, k),
        )
    }

    pub fn cell_size(&self) -> (f64, f64, f64) {
        (
            (self.x.1 - self.x.0) / self.nx as f64,
            (self.y.1 - self.y.0) / self.ny as f64,
            (self.z.1 - self.z.0) / self.nz as f64,
        )
    }

    pub fn cell_diagonal(&self) -> f64 {
        let (dx, dy, dz) = self.cell_size();
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The parameter plane scanned by [`scan2d`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    /// `x + y·i1`: the complex Multibrot.
    MultibrotComplex,
    /// `x + y·j1`: the Hyperbrot.
    Hyperbrot,
}

impl Plane {
    fn unit(self) -> Unit {
        match self {
            Plane::MultibrotComplex => Unit::I1,
            Plane::Hyperbrot => Unit::J1,
        }
    }
}

/// How a raster's cells were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RasterKind {
    Plane(Plane),
    Slice(SliceSpec),
    /// Built from a membership predicate; escaped cells hold `1`.
    Analytic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Raster2D {
    window: Window2D,
    cells: Vec<u32>,
    power: u32,
    max_iter: u32,
    kind: RasterKind,
}

impl Raster2D {
    pub fn from_cells(
        window: Window2D,
        cells: Vec<u32>,
        power: u32,
        max_iter: u32,
        kind: RasterKind,
    ) -> Result<Self> {
        if cells.len() != window.len() {
            return Err(Error::CellCount {
                expected: window.len(),
                got: cells.len(),
            });
        }
        Ok(Raster2D {
            window,
            cells,
            power,
            max_iter,
            kind,
        })
    }

    /// Rasterizes a closed set given by `inside(x, y)` at cell centers.
    pub fn from_predicate(window: Window2D, inside: impl Fn(f64, f64) -> bool + Sync) -> Self {
        let mut cells = vec![0u32; window.len()];
        cells
            .par_chunks_mut(window.nx)
            .enumerate()
            .for_each(|(j, row)| {
                for (i, cell) in row.iter_mut().enumerate() {
                    let (x, y) = window.cell_center(i, j);
                    *cell = u32::from(!inside(x, y));
                }
            });
        Raster2D {
            window,
            cells,
            power: 0,
            max_iter: 1,
            kind: RasterKind::Analytic,
        }
    }

    pub fn window(&self) -> &Window2D {
        &self.window
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn max_iter(&self) -> u32 {
        self.max_iter
    }

    pub fn kind(&self) -> RasterKind {
        self.kind
    }

    pub fn escape_index(&self, i: usize, j: usize) -> u32 {
        self.cells[j * self.window.nx + i]
    }

    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        self.escape_index(i, j) == 0
    }

    pub fn inside_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 0).count()
    }

    /// Cells whose inside flag differs from `inside(x, y)` at the center.
    pub fn disagreements(&self, inside: impl Fn(f64, f64) -> bool) -> Vec<(usize, usize)> {
        let w = &self.window;
        let mut out = Vec::new();
        for j in 0..w.ny {
            for i in 0..w.nx {
                let (x, y) = w.cell_center(i, j);
                if self.is_inside(i, j) != inside(x, y) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Raster3D {
    window: Window3D,
    cells: Vec<u32>,
    power: u32,
    max_iter: u32,
    kind: RasterKind,
}

impl Raster3D {
    pub fn from_cells(
        window: Window3D,
        cells: Vec<u32>,
        power: u32,
        max_iter: u32,
        kind: RasterKind,
    ) -> Result<Self> {
        if cells.len() != window.len() {
            return Err(Error::CellCount {
                expected: window.len(),
                got: cells.len(),
            });
        }
        Ok(Raster3D {
            window,
            cells,
            power,
            max_iter,
            kind,
        })
    }

    pub fn from_predicate(
        window: Window3D,
        inside: impl Fn(f64, f64, f64) -> bool + Sync,
    ) -> Self {
        let mut cells = vec![0u32; window.len()];
        cells
            .par_chunks_mut(window.nx * window.ny)
            .enumerate()
            .for_each(|(k, slab)| {
                for (idx, cell) in slab.iter_mut().enumerate() {
                    let (x, y, z) = window.cell_center(idx % window.nx, idx / window.nx, k);
                    *cell = u32::from(!inside(x, y, z));
                }
            });
        Raster3D {
            window,
            cells,
            power: 0,
            max_iter: 1,
            kind: RasterKind::Analytic,
        }
    }

    pub fn window(&self) -> &Window3D {
        &self.window
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn max_iter(&self) -> u32 {
        self.max_iter
    }

    pub fn kind(&self) -> RasterKind {
        self.kind
    }

    pub fn escape_index(&self, i: usize, j: usize, k: usize) -> u32 {
        let w = &self.window;
        self.cells[(k * w.ny + j) * w.nx + i]
    }

    pub fn is_inside(&self, i: usize, j: usize, k: usize) -> bool {
        self.escape_index(i, j, k) == 0
    }

    pub fn inside_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 0).count()
    }

    pub fn disagreements(
        &self,
        inside: impl Fn(f64, f64, f64) -> bool,
    ) -> Vec<(usize, usize, usize)> {
        let w = &self.window;
        let mut out = Vec::new();
        for k in 0..w.nz {
            for j in 0..w.ny {
                for i in 0..w.nx {
                    let (x, y, z) = w.cell_center(i, j, k);
                    if self.is_inside(i, j, k) != inside(x, y, z) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    Ok(pool.install(job))
}

/// Escape-time raster of a parameter plane; one row per tile.
pub fn scan2d(plane: Plane, p: u32, window: &Window2D, max_iter: u32) -> Result<Raster2D> {
    let params = PolyParams::new(p)?;
    let unit = plane.unit();
    let mut cells = vec![0u32; window.len()];
    cells
        .par_chunks_mut(window.nx)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, cell) in row.iter_mut().enumerate() {
                let (x, y) = window.cell_center(i, j);
                let c = Tricomplex::planar(x, y, unit);
                *cell = orbit(&c, &params, max_iter).escape_index.unwrap_or(0);
            }
        });
    Raster2D::from_cells(*window, cells, p, max_iter, RasterKind::Plane(plane))
}

/// [`scan2d`] on a dedicated pool of `workers` threads.
pub fn scan2d_with_workers(
    plane: Plane,
    p: u32,
    window: &Window2D,
    max_iter: u32,
    workers: usize,
) -> Result<Raster2D> {
    with_workers(workers, || scan2d(plane, p, window, max_iter))?
}

/// Escape-time voxels of a principal 3D slice; one z-slab per tile.
pub fn scan3d(slice: &SliceSpec, p: u32, window: &Window3D, max_iter: u32) -> Result<Raster3D> {
    let params = PolyParams::new(p)?;
    let mut cells = vec![0u32; window.len()];
    let nx = window.nx;
    cells
        .par_chunks_mut(nx * window.ny)
        .enumerate()
        .for_each(|(k, slab)| {
            for (idx, cell) in slab.iter_mut().enumerate() {
                let (x, y, z) = window.cell_center(idx % nx, idx / nx, k);
                let c = slice.embed(x, y, z);
                *cell = orbit(&c, &params, max_iter).escape_index.unwrap_or(0);
            }
        });
    Raster3D::from_cells(*window, cells, p, max_iter, RasterKind::Slice(*slice))
}

pub fn scan3d_with_workers(
    slice: &SliceSpec,
    p: u32,
    window: &Window3D,
    max_iter: u32,
    workers: usize,
) -> Result<Raster3D> {
    with_workers(workers, || scan3d(slice, p, window, max_iter))?
}

/// A grid of inside/outside cells with known spacing, x fastest.
pub trait Occupancy {
    fn dims(&self) -> Vec<usize>;
    fn spacing(&self) -> Vec<f64>;
    fn inside_mask(&self) -> Vec<bool>;
    fn same_grid(&self, other: &Self) -> bool;
}

impl Occupancy for Raster2D {
    fn dims(&self) -> Vec<usize> {
        vec![self.window.nx, self.window.ny]
    }
    fn spacing(&self) -> Vec<f64> {
        let (dx, dy) = self.window.cell_size();
        vec![dx, dy]
    }
    fn inside_mask(&self) -> Vec<bool> {
        self.cells.iter().map(|&c| c == 0).collect()
    }
    fn same_grid(&self, other: &Self) -> bool {
        self.window == other.window
    }
}

impl Occupancy for Raster3D {
    fn dims(&self) -> Vec<usize> {
        vec![self.window.nx, self.window.ny, self.window.nz]
    }
    fn spacing(&self) -> Vec<f64> {
        let (dx, dy, dz) = self.window.cell_size();
        vec![dx, dy, dz]
    }
    fn inside_mask(&self) -> Vec<bool> {
        self.cells.iter().map(|&c| c == 0).collect()
    }
    fn same_grid(&self, other: &Self) -> bool {
        self.window == other.window
    }
}

/// Squared Euclidean distance transform along one line: lower envelope of
/// parabolas rooted at the finite samples of `f`.
fn edt_line(f: &[f64], step: f64, out: &mut [f64], v: &mut Vec<usize>, z: &mut Vec<f64>) {
    v.clear();
    z.clear();
    for (q, &fq) in f.iter().enumerate() {
        if !fq.is_finite() {
            continue;
        }
        let xq = q as f64 * step;
        while let Some(&p) = v.last() {
            let xp = p as f64 * step;
            let s = ((fq + xq * xq) - (f[p] + xp * xp)) / (2.0 * (xq - xp));
            if s <= *z.last().expect("z tracks v") {
                v.pop();
                z.pop();
            } else {
                v.push(q);
                z.push(s);
                break;
            }
        }
        if v.is_empty() {
            v.push(q);
            z.push(f64::NEG_INFINITY);
        }
    }
    if v.is_empty() {
        out.fill(f64::INFINITY);
        return;
    }
    let mut k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        let xq = q as f64 * step;
        while k + 1 < v.len() && z[k + 1] < xq {
            k += 1;
        }
        let d = xq - v[k] as f64 * step;
        *o = d * d + f[v[k]];
    }
}

/// Squared distance from every cell center to the nearest `true` cell center.
pub fn squared_distance_transform(dims: &[usize], spacing: &[f64], mask: &[bool]) -> Vec<f64> {
    let mut grid: Vec<f64> = mask
        .iter()
        .map(|&m| if m { 0.0 } else { f64::INFINITY })
        .collect();
    let mut stride = 1;
    let total = grid.len();
    let (mut v, mut z) = (Vec::new(), Vec::new());
    for (axis, &n) in dims.iter().enumerate() {
        let mut line = vec![0.0; n];
        let mut out = vec![0.0; n];
        for base in 0..total {
            // Visit each line once, from the cell whose index along `axis` is 0.
            if (base / stride) % n != 0 {
                continue;
            }
            for (q, l) in line.iter_mut().enumerate() {
                *l = grid[base + q * stride];
            }
            edt_line(&line, spacing[axis], &mut out, &mut v, &mut z);
            for (q, &o) in out.iter().enumerate() {
                grid[base + q * stride] = o;
            }
        }
        stride *= n;
    }
    grid
}

/// `max over inside cells a of A of min over inside cells b of B of |a − b|`.
pub fn directed_distance<R: Occupancy>(a: &R, b: &R) -> Result<f64> {
    if !a.same_grid(b) {
        return Err(Error::RasterMismatch);
    }
    let mask_a = a.inside_mask();
    let mask_b = b.inside_mask();
    if !mask_a.iter().any(|&m| m) || !mask_b.iter().any(|&m| m) {
        return Err(Error::EmptyInsideSet);
    }
    let dt = squared_distance_transform(&b.dims(), &b.spacing(), &mask_b);
    let max_sq = mask_a
        .iter()
        .zip(&dt)
        .filter(|(&m, _)| m)
        .map(|(_, &d)| d)
        .fold(0.0, f64::max);
    Ok(max_sq.sqrt())
}

/// Hausdorff distance between the inside sets of two rasters on the same grid.
pub fn hausdorff_discrete<R: Occupancy>(a: &R, b: &R) -> Result<f64> {
    Ok(directed_distance(a, b)?.max(directed_distance(b, a)?))
}
