//! Tricomplex dynamics for the polynomial family `η^p + c`.
//!
//! The crate provides exact tricomplex arithmetic ([`algebra`]), real root
//! classification for `x^p − x + c` ([`realroots`]), escape-time iteration
//! over every number system in the tower ([`dynamics`]), closed-form
//! membership oracles ([`sets`]), tile-parallel rasterization with a discrete
//! Hausdorff distance ([`raster`]), bit-exact file output ([`io`]), and the
//! verification suites behind `tribrot verify` ([`verify`]).

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod raster;
pub mod realroots;
pub mod sets;
pub mod verify;

pub use algebra::{Bicomplex, Hyperbolic, IdempotentPair3, IdempotentQuad, SliceSpec, Tricomplex, Unit};
pub use dynamics::{HyperState, OrbitResult};
pub use error::{Error, Result};
pub use raster::{Plane, Raster2D, Raster3D, RasterKind, Window2D, Window3D};
pub use realroots::{PolyParams, Regime, Root, RootReport};
pub use sets::{ConjectureReport, ConjectureSpec, DiamondSpec, OctahedronSpec};

/// Fixed 9-decimal rendering, ties to even, without a negative zero.
pub fn fmt9(v: f64) -> String {
    let s = format!("{v:.9}");
    if s == "-0.000000000" {
        s[1..].to_string()
    } else {
        s
    }
}
