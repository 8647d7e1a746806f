use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown basis unit `{0}` (expected one of 1, i1, i2, i3, i4, j1, j2, j3)")]
    UnknownUnit(String),
    #[error("slice axes must be three distinct units, got {0}, {1}, {2}")]
    RepeatedSliceUnit(String, String, String),
    #[error("power must be at least {min}, got {got}")]
    PowerTooSmall { min: u32, got: u32 },
    #[error("power must be odd, got {0}")]
    EvenPower(u32),
    #[error("power must be even, got {0}")]
    OddPower(u32),
    #[error("parameter c = {c} is outside the open interval (-m_p, m_p) = (-{m_p}, {m_p})")]
    OutsideThreeRootRegime { c: f64, m_p: f64 },
    #[error("root {root} not inside refined bracket ({lo}, {hi}) for p = {p}, c = {c}")]
    RefinedBracketViolated {
        p: u32,
        c: f64,
        root: f64,
        lo: f64,
        hi: f64,
    },
    #[error("no sign change found while growing bracket for p = {p}, c = {c}")]
    BracketNotFound { p: u32, c: f64 },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("rasters differ in window or resolution")]
    RasterMismatch,
    #[error("raster has no inside cells; Hausdorff distance is undefined")]
    EmptyInsideSet,
    #[error("cell buffer has {got} entries, expected {expected}")]
    CellCount { expected: usize, got: usize },
    #[error("malformed voxel file: {0}")]
    MalformedVox(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to build worker pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
