//! Real roots of `R(x) = x^p − x + c` for odd `p > 2`.
//!
//! `R` has critical points `w1 = −p^{−1/(p−1)}` and `w2 = −w1`, is
//! increasing outside `[w1, w2]` and decreasing inside, and takes the values
//! `m_p + c` at `w1` and `c − m_p` at `w2`. The sign of those two values
//! decides how many real roots exist and where each one sits, so every simple
//! root is isolated by a bracket on a monotone piece and found by bisection.

use std::fmt;

use crate::error::{Error, Result};

/// Tolerance used when comparing `c` against `±m_p`.
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;

/// Per-power constants of the family `z^p + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyParams {
    pub p: u32,
    pub w1: f64,
    pub w2: f64,
    pub m_p: f64,
    pub escape_radius: f64,
}

impl PolyParams {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::PowerTooSmall { min: 2, got: p });
        }
        let pf = p as f64;
        let w2 = pf.powf(-1.0 / (pf - 1.0));
        Ok(PolyParams {
            p,
            w1: -w2,
            w2,
            m_p: m_p_unchecked(p),
            escape_radius: 2f64.powf(1.0 / (pf - 1.0)),
        })
    }

    /// Like [`PolyParams::new`] but also requires `p` odd and `p > 2`.
    pub fn odd(p: u32) -> Result<Self> {
        if p < 3 {
            return Err(Error::PowerTooSmall { min: 3, got: p });
        }
        if p.is_multiple_of(2) {
            return Err(Error::EvenPower(p));
        }
        PolyParams::new(p)
    }

    pub fn escape_radius_sqr(&self) -> f64 {
        self.escape_radius * self.escape_radius
    }
}

/// `(p − 1) / p^{p/(p−1)}` without validating `p`.
pub(crate) fn m_p_unchecked(p: u32) -> f64 {
    let pf = p as f64;
    (pf - 1.0) * pf.powf(-pf / (pf - 1.0))
}

/// `x^p − x + c`.
pub fn eval_r(p: u32, c: f64, x: f64) -> f64 {
    x.powi(p as i32) - x + c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `|c| < m_p`, `c ≠ 0`: three simple roots around the critical points.
    ThreeSimple,
    /// `c = −m_p`: double root at `w1` and a simple root above `w2`.
    DoubleAtW1,
    /// `c = m_p`: double root at `w2` and a simple root below `w1`.
    DoubleAtW2,
    /// `c > m_p`: a single negative root below `w1`.
    OneNegative,
    /// `c < −m_p`: a single positive root above `w2`.
    OnePositive,
    /// `c = 0`: roots `−1, 0, 1`.
    CZero,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::ThreeSimple => "three-simple",
            Regime::DoubleAtW1 => "double-at-w1",
            Regime::DoubleAtW2 => "double-at-w2",
            Regime::OneNegative => "one-negative",
            Regime::OnePositive => "one-positive",
            Regime::CZero => "c-zero",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
    /// Isolating interval; degenerate `(r, r)` for closed-form double roots.
    pub bracket: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub p: u32,
    pub c: f64,
    pub regime: Regime,
    /// Sorted ascending.
    pub roots: Vec<Root>,
}

impl RootReport {
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| eval_r(self.p, self.c, r.value).abs())
            .fold(0.0, f64::max)
    }
}

/// Result of a bisection run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bisection {
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
    pub steps: u32,
}

/// Bisects `f` on `[lo, hi]` where `f(lo)` and `f(hi)` have opposite signs,
/// until the midpoint no longer splits the interval.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Bisection {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    let mut steps = 0;
    if f_lo == 0.0 {
        return Bisection { root: lo, lo, hi: lo, steps };
    }
    if f_hi == 0.0 {
        return Bisection { root: hi, lo: hi, hi, steps };
    }
    let mut best = (lo, f_lo.abs());
    if f_hi.abs() < best.1 {
        best = (hi, f_hi.abs());
    }
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Bisection { root: mid, lo: mid, hi: mid, steps };
        }
        if f_mid.abs() < best.1 {
            best = (mid, f_mid.abs());
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Bisection { root: best.0, lo, hi, steps }
}

fn outer_start(c: f64) -> f64 {
    f64::max(2.0, (2.0 * c).abs())
}

/// Grows `x` geometrically (factor 2) in direction `dir` until `R` takes the
/// sign `want_negative`.
fn grow(p: u32, c: f64, dir: f64, want_negative: bool) -> Result<f64> {
    let mut x = dir * outer_start(c);
    for _ in 0..1100 {
        let r = eval_r(p, c, x);
        if (r < 0.0) == want_negative && r != 0.0 {
            return Ok(x);
        }
        x *= 2.0;
    }
    Err(Error::BracketNotFound { p, c })
}

fn simple_root(p: u32, c: f64, lo: f64, hi: f64) -> Root {
    let b = bisect(|x| eval_r(p, c, x), lo, hi);
    Root {
        value: b.root,
        multiplicity: 1,
        bracket: (lo, hi),
    }
}

fn lower_root(p: u32, c: f64, params: &PolyParams) -> Result<Root> {
    let lo = grow(p, c, -1.0, true)?;
    Ok(simple_root(p, c, lo, params.w1))
}

fn upper_root(p: u32, c: f64, params: &PolyParams) -> Result<Root> {
    let hi = grow(p, c, 1.0, false)?;
    Ok(simple_root(p, c, params.w2, hi))
}

/// Classifies and locates the real roots of `x^p − x + c` for odd `p > 2`.
pub fn classify(p: u32, c: f64) -> Result<RootReport> {
    let params = PolyParams::odd(p)?;
    let m = params.m_p;
    let (regime, roots) = if c == 0.0 {
        let lo = grow(p, c, -1.0, true)?;
        let hi = grow(p, c, 1.0, false)?;
        let exact = |value, bracket| Root {
            value,
            multiplicity: 1,
            bracket,
        };
        (
            Regime::CZero,
            vec![
                exact(-1.0, (lo, params.w1)),
                exact(0.0, (params.w1, params.w2)),
                exact(1.0, (params.w2, hi)),
            ],
        )
    } else if (c - m).abs() <= DOUBLE_ROOT_TOL {
        let double = Root {
            value: params.w2,
            multiplicity: 2,
            bracket: (params.w2, params.w2),
        };
        (Regime::DoubleAtW2, vec![lower_root(p, c, &params)?, double])
    } else if (c + m).abs() <= DOUBLE_ROOT_TOL {
        let double = Root {
            value: params.w1,
            multiplicity: 2,
            bracket: (params.w1, params.w1),
        };
        (Regime::DoubleAtW1, vec![double, upper_root(p, c, &params)?])
    } else if c.abs() < m {
        let middle = simple_root(p, c, params.w1, params.w2);
        (
            Regime::ThreeSimple,
            vec![
                lower_root(p, c, &params)?,
                middle,
                upper_root(p, c, &params)?,
            ],
        )
    } else if c > m {
        (Regime::OneNegative, vec![lower_root(p, c, &params)?])
    } else if c < -m {
        (Regime::OnePositive, vec![upper_root(p, c, &params)?])
    } else {
        // NaN
        return Err(Error::BracketNotFound { p, c });
    };
    Ok(RootReport {
        p,
        c,
        regime,
        roots,
    })
}

/// Tightens the outer brackets using the sign of `c`: for `c < 0` the lowest
/// root lies in `(−1, w1)`, for `c > 0` the highest root lies in `(w2, 1)`.
///
/// A located root outside its tightened bracket is reported as
/// [`Error::RefinedBracketViolated`], which indicates a bug.
pub fn refine_bounds(p: u32, c: f64, report: &RootReport) -> Result<RootReport> {
    let params = PolyParams::odd(p)?;
    if c.abs() >= params.m_p || c.is_nan() {
        return Err(Error::OutsideThreeRootRegime { c, m_p: params.m_p });
    }
    let mut out = report.clone();
    let target = if c < 0.0 {
        out.roots.first_mut().map(|r| (r, (-1.0, params.w1)))
    } else if c > 0.0 {
        out.roots.last_mut().map(|r| (r, (params.w2, 1.0)))
    } else {
        None
    };
    if let Some((root, (lo, hi))) = target {
        if !(root.value > lo && root.value < hi) {
            return Err(Error::RefinedBracketViolated {
                p,
                c,
                root: root.value,
                lo,
                hi,
            });
        }
        root.bracket = (lo, hi);
    }
    Ok(out)
}
