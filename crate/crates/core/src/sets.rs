//! Closed-form membership for the sets whose shape is known exactly when
//! `p` is odd, plus exploratory probes for even powers.
//!
//! With `m_p = (p − 1)/p^{p/(p−1)}`:
//!
//! * the real slice of the Multibrot is `[−m_p, m_p]`;
//! * the Hyperbrot is the diamond `|x| + |y| ≤ m_p`;
//! * the Perplexbrot (slice `1, j1, j2`) is the octahedron `|x| + |y| + |z| ≤ m_p`;
//! * the Hausdorff distance from the unit diamond/octahedron is `1 − m_p`.
//!
//! Boundary points are members.
//!
//! The free predicates panic when `p` is not an odd integer above 2; use the
//! checked `for_power` constructors to validate first.

use std::fmt;

use crate::algebra::Tricomplex;
use crate::dynamics::{orbit_hyper, orbit_real};
use crate::error::{Error, Result};
use crate::realroots::{m_p_unchecked, PolyParams};

/// `(p − 1)/p^{p/(p−1)}`.
pub fn m_p(p: u32) -> Result<f64> {
    if p < 2 {
        return Err(Error::PowerTooSmall { min: 2, got: p });
    }
    Ok(m_p_unchecked(p))
}

fn odd_m_p(p: u32) -> f64 {
    assert!(p > 2 && p % 2 == 1, "odd power above 2 required, got {p}");
    m_p_unchecked(p)
}

pub fn real_axis_member(c: f64, p: u32) -> bool {
    c.abs() <= odd_m_p(p)
}

pub fn hyperbrot_member(x: f64, y: f64, p: u32) -> bool {
    x.abs() + y.abs() <= odd_m_p(p)
}

pub fn perplexbrot_member(x: f64, y: f64, z: f64, p: u32) -> bool {
    // Grouped as |x| + (|y| + |z|) so it rounds like `slice_union_member`.
    x.abs() + (y.abs() + z.abs()) <= odd_m_p(p)
}

/// Membership through the slice decomposition of the Perplexbrot: the
/// `z`-slice at height `z` is `(H − z·j1) ∩ (H + z·j1)`, i.e. both
/// `x + (y + z)·j1` and `x + (y − z)·j1` lie in the Hyperbrot.
pub fn slice_union_member(x: f64, y: f64, z: f64, p: u32) -> bool {
    hyperbrot_member(x, y + z, p) && hyperbrot_member(x, y - z, p)
}

/// `1 − m_p`, the Hausdorff distance between the unit diamond and the
/// Hyperbrot (and between the unit octahedron and the Perplexbrot).
pub fn hausdorff_limit(p: u32) -> f64 {
    1.0 - odd_m_p(p)
}

/// Whether both idempotent bicomplex components of `c` have norm at most
/// `2^{1/(p−1)}`.
pub fn discus_contains(c: &Tricomplex, p: u32) -> bool {
    assert!(p >= 2, "power must be at least 2");
    let radius = 2f64.powf(1.0 / (p as f64 - 1.0));
    let split = c.split3();
    split.comp1.norm() <= radius && split.comp2.norm() <= radius
}

/// The Hyperbrot of odd order `p` as a diamond.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiamondSpec {
    pub center_x: f64,
    pub half_diag: f64,
}

impl DiamondSpec {
    pub fn for_power(p: u32) -> Result<Self> {
        let params = PolyParams::odd(p)?;
        Ok(DiamondSpec {
            center_x: 0.0,
            half_diag: params.m_p,
        })
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (x - self.center_x).abs() + y.abs() <= self.half_diag
    }

    /// Euclidean distance from `(x, y)` to the boundary line `|x| + |y| = half_diag`
    /// (measured to the nearest edge line, which is exact near the edges and a
    /// lower bound near the vertices).
    pub fn boundary_distance(&self, x: f64, y: f64) -> f64 {
        ((x - self.center_x).abs() + y.abs() - self.half_diag).abs() / std::f64::consts::SQRT_2
    }
}

/// The Perplexbrot of odd order `p` as a regular octahedron.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OctahedronSpec {
    pub half_diag: f64,
    pub edge: f64,
}

impl OctahedronSpec {
    pub fn for_power(p: u32) -> Result<Self> {
        let params = PolyParams::odd(p)?;
        Ok(OctahedronSpec::with_half_diag(params.m_p))
    }

    pub fn with_half_diag(half_diag: f64) -> Self {
        OctahedronSpec {
            half_diag,
            edge: std::f64::consts::SQRT_2 * half_diag,
        }
    }

    pub fn contains(&self, x: f64, y: f64, z: f64) -> bool {
        x.abs() + (y.abs() + z.abs()) <= self.half_diag
    }

    /// Distance from `(x, y, z)` to the face plane of its octant.
    pub fn boundary_distance(&self, x: f64, y: f64, z: f64) -> f64 {
        (x.abs() + y.abs() + z.abs() - self.half_diag).abs() / 3f64.sqrt()
    }

    /// `(±h, 0, 0), (0, ±h, 0), (0, 0, ±h)`.
    pub fn vertices(&self) -> [[f64; 3]; 6] {
        let h = self.half_diag;
        [
            [h, 0.0, 0.0],
            [-h, 0.0, 0.0],
            [0.0, h, 0.0],
            [0.0, -h, 0.0],
            [0.0, 0.0, h],
            [0.0, 0.0, -h],
        ]
    }

    /// Eight triangles as zero-based vertex indices, counter-clockwise seen
    /// from outside.
    pub fn faces(&self) -> [[usize; 3]; 8] {
        let mut out = [[0; 3]; 8];
        let mut k = 0;
        for sz in [0usize, 1] {
            for sy in [0usize, 1] {
                for sx in [0usize, 1] {
                    let (a, b, c) = (sx, 2 + sy, 4 + sz);
                    out[k] = if (sx + sy + sz) % 2 == 0 {
                        [a, b, c]
                    } else {
                        [a, c, b]
                    };
                    k += 1;
                }
            }
        }
        out
    }
}

/// Conjectured shapes for even `p`: the real slice
/// `[−2^{1/(p−1)}, m_p]` and the Hyperbrot square `|x − t_p| + |y| ≤ l_p/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjectureSpec {
    pub p: u32,
    pub t_p: f64,
    pub l_p: f64,
    pub interval_lo: f64,
    pub interval_hi: f64,
}

impl ConjectureSpec {
    pub fn for_power(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::PowerTooSmall { min: 2, got: p });
        }
        if p % 2 == 1 {
            return Err(Error::OddPower(p));
        }
        let pf = p as f64;
        let root = pf.powf(1.0 / (pf - 1.0));
        let two_p_root = (2.0 * pf).powf(1.0 / (pf - 1.0));
        Ok(ConjectureSpec {
            p,
            t_p: ((1.0 - two_p_root) * pf - 1.0) / (2.0 * pf * root),
            l_p: ((two_p_root + 1.0) * pf - 1.0) / (pf * root),
            interval_lo: -(2f64.powf(1.0 / (pf - 1.0))),
            interval_hi: m_p_unchecked(p),
        })
    }
}

/// Output of [`conjecture_probe`]. Exploratory; nothing here is asserted.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub spec: ConjectureSpec,
    pub observed_lo: f64,
    pub observed_hi: f64,
    /// Center of the observed Hyperbrot along its real axis.
    pub observed_t: f64,
    /// Observed diagonal length along the real axis.
    pub observed_l: f64,
    /// Observed half-diagonal in the `j` direction through the center.
    pub observed_vertical_half: f64,
    /// Bisection resolution.
    pub resolution: f64,
}

impl ConjectureReport {
    /// `(quantity, conjectured, observed)` rows.
    pub fn rows(&self) -> Vec<(String, f64, f64)> {
        let s = &self.spec;
        let mut rows = vec![
            ("real_lo".to_string(), s.interval_lo, self.observed_lo),
            ("real_hi".to_string(), s.interval_hi, self.observed_hi),
            ("hyperbrot_t".to_string(), s.t_p, self.observed_t),
            ("hyperbrot_l".to_string(), s.l_p, self.observed_l),
            (
                "hyperbrot_vertical_half_diag".to_string(),
                s.l_p / 2.0,
                self.observed_vertical_half,
            ),
        ];
        if s.p == 2 {
            // The quadratic Hyperbrot's diagonal is quoted as "2 1/4"; read
            // both as a mixed number and as a product.
            rows.push(("quoted_diag_mixed_2_1/4".to_string(), 2.25, self.observed_l));
            rows.push(("quoted_diag_product_2*1/4".to_string(), 0.5, self.observed_l));
        }
        rows
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# exploratory probe (non-normative), p = {}, resolution {:e}",
            self.spec.p, self.resolution
        )?;
        writeln!(f, "quantity,conjectured,observed,discrepancy")?;
        for (name, want, got) in self.rows() {
            writeln!(
                f,
                "{name},{},{},{}",
                crate::fmt9(want),
                crate::fmt9(got),
                crate::fmt9((got - want).abs())
            )?;
        }
        Ok(())
    }
}

/// Bisects between a bounded parameter and an escaping one; returns the
/// midpoint of the final interval.
fn bisect_boundary(
    mut inside: f64,
    mut outside: f64,
    tol: f64,
    bounded: impl Fn(f64) -> bool,
) -> f64 {
    while (outside - inside).abs() > tol {
        let mid = 0.5 * (inside + outside);
        if bounded(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Locates the real slice of the Multibrot and the Hyperbrot diagonals for an
/// even power by scanning `n_samples` points along the real axis and then
/// bisecting on escape behaviour.
pub fn conjecture_probe(p: u32, n_samples: usize, max_iter: u32) -> Result<ConjectureReport> {
    let spec = ConjectureSpec::for_power(p)?;
    let params = PolyParams::new(p)?;
    let resolution = 1e-7;
    let n = n_samples.max(3);
    let span = params.escape_radius + 0.5;
    let sample = |i: usize| -span + 2.0 * span * i as f64 / (n - 1) as f64;
    let bounded_real = |c: f64| !orbit_real(c, &params, max_iter).escaped();

    let inside: Vec<usize> = (0..n).filter(|&i| bounded_real(sample(i))).collect();
    let (first, last) = match (inside.first(), inside.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (n / 2, n / 2),
    };
    let observed_lo = if first == 0 {
        sample(0)
    } else {
        bisect_boundary(sample(first), sample(first - 1), resolution, bounded_real)
    };
    let observed_hi = if last == n - 1 {
        sample(n - 1)
    } else {
        bisect_boundary(sample(last), sample(last + 1), resolution, bounded_real)
    };

    // On the real axis the hyperbolic iteration is the real one, so the
    // Hyperbrot's horizontal diagonal is the same interval.
    let observed_t = 0.5 * (observed_lo + observed_hi);
    let observed_l = observed_hi - observed_lo;
    let bounded_hyper = |y: f64| !orbit_hyper(observed_t, y, &params, max_iter).escaped();
    let observed_vertical_half = if bounded_hyper(0.0) {
        bisect_boundary(0.0, span, resolution, bounded_hyper)
    } else {
        0.0
    };

    Ok(ConjectureReport {
        spec,
        observed_lo,
        observed_hi,
        observed_t,
        observed_l,
        observed_vertical_half,
        resolution,
    })
}
