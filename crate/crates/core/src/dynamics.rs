//! Escape-time iteration of `Q(η) = η^p + c` from `η = 0`.
//!
//! An orbit escapes at the first index `m` with `‖Q^m(0)‖ > 2^{1/(p−1)}`.
//! Orbits that stay inside for `max_iter` steps are reported as bounded
//! within `max_iter`, never as certain members.

use num_complex::Complex64;

use crate::algebra::Tricomplex;
use crate::realroots::PolyParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitResult {
    /// First `m ≥ 1` with norm above the escape radius.
    pub escape_index: Option<u32>,
    /// Norm of the last computed iterate.
    pub final_norm: f64,
    pub iterations_run: u32,
}

impl OrbitResult {
    pub fn escaped(&self) -> bool {
        self.escape_index.is_some()
    }

    fn finish(m: u32, norm_sqr: f64, escaped: bool) -> Self {
        OrbitResult {
            escape_index: escaped.then_some(m),
            final_norm: norm_sqr.sqrt(),
            iterations_run: m,
        }
    }
}

#[inline]
fn exceeds(norm_sqr: f64, radius_sqr: f64) -> bool {
    // NaN counts as escaped.
    norm_sqr.is_nan() || norm_sqr > radius_sqr
}

/// Orbit of `0` under `η^p + c`, computed as four independent complex
/// orbits in the idempotent basis.
///
/// Equal components are iterated once. The escape test uses the tricomplex
/// norm `Σ|c_k|²/4`, so the decision matches [`orbit_direct`] up to rounding.
pub fn orbit(c: &Tricomplex, params: &PolyParams, max_iter: u32) -> OrbitResult {
    let quad = c.split4();
    let mut params_uniq = [Complex64::new(0.0, 0.0); 4];
    let mut slot = [0usize; 4];
    let mut n = 0;
    for (k, ck) in quad.c.iter().enumerate() {
        match params_uniq[..n].iter().position(|u| u == ck) {
            Some(j) => slot[k] = j,
            None => {
                params_uniq[n] = *ck;
                slot[k] = n;
                n += 1;
            }
        }
    }
    let p = params.p;
    let r2 = params.escape_radius_sqr();
    let mut z = [Complex64::new(0.0, 0.0); 4];
    let mut norm_sqr = 0.0;
    for m in 1..=max_iter {
        for j in 0..n {
            z[j] = z[j].powu(p) + params_uniq[j];
        }
        let n0 = z[slot[0]].norm_sqr();
        let n1 = z[slot[1]].norm_sqr();
        let n2 = z[slot[2]].norm_sqr();
        let n3 = z[slot[3]].norm_sqr();
        norm_sqr = ((n0 + n1) + (n2 + n3)) * 0.25;
        if exceeds(norm_sqr, r2) {
            return OrbitResult::finish(m, norm_sqr, true);
        }
    }
    OrbitResult::finish(max_iter, norm_sqr, false)
}

/// Orbit of `0` iterated directly in the eight-coefficient representation.
pub fn orbit_direct(c: &Tricomplex, params: &PolyParams, max_iter: u32) -> OrbitResult {
    let r2 = params.escape_radius_sqr();
    let mut eta = Tricomplex::ZERO;
    let mut norm_sqr = 0.0;
    for m in 1..=max_iter {
        eta = eta.pow(params.p) + *c;
        norm_sqr = eta.norm_sqr();
        if exceeds(norm_sqr, r2) {
            return OrbitResult::finish(m, norm_sqr, true);
        }
    }
    OrbitResult::finish(max_iter, norm_sqr, false)
}

/// Orbit of `0` under `z^p + c` in the complex plane.
pub fn orbit_complex(c: Complex64, params: &PolyParams, max_iter: u32) -> OrbitResult {
    let r2 = params.escape_radius_sqr();
    let mut z = Complex64::new(0.0, 0.0);
    let mut norm_sqr = 0.0;
    for m in 1..=max_iter {
        z = z.powu(params.p) + c;
        norm_sqr = z.norm_sqr();
        if exceeds(norm_sqr, r2) {
            return OrbitResult::finish(m, norm_sqr, true);
        }
    }
    OrbitResult::finish(max_iter, norm_sqr, false)
}

/// Orbit of `0` under `x^p + c` on the real line.
pub fn orbit_real(c: f64, params: &PolyParams, max_iter: u32) -> OrbitResult {
    let r2 = params.escape_radius_sqr();
    let mut x = 0.0f64;
    let mut norm_sqr = 0.0;
    for m in 1..=max_iter {
        x = x.powi(params.p as i32) + c;
        norm_sqr = x * x;
        if exceeds(norm_sqr, r2) {
            return OrbitResult::finish(m, norm_sqr, true);
        }
    }
    OrbitResult::finish(max_iter, norm_sqr, false)
}

/// First `n` iterates `Q^1(0), …, Q^n(0)` on the real line.
pub fn real_orbit_points(c: f64, p: u32, n: usize) -> Vec<f64> {
    let mut x = 0.0f64;
    (0..n)
        .map(|_| {
            x = x.powi(p as i32) + c;
            x
        })
        .collect()
}

/// A vector of `R²` under the hyperbolic product `⋄`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HyperState {
    pub x: f64,
    pub y: f64,
}

impl HyperState {
    pub const fn new(x: f64, y: f64) -> Self {
        HyperState { x, y }
    }

    /// `(u, v) ⋄ (x, y) = (ux + vy, vx + uy)`.
    pub fn diamond(self, other: Self) -> Self {
        HyperState::new(
            self.x * other.x + self.y * other.y,
            self.y * other.x + self.x * other.y,
        )
    }

    /// `(u, v) ∗ (x, y) = (ux, vy)`.
    pub fn star(self, other: Self) -> Self {
        HyperState::new(self.x * other.x, self.y * other.y)
    }

    /// `T·(x, y) = (x − y, x + y)`, carrying `⋄` to `∗`.
    pub fn conjugate(self) -> Self {
        HyperState::new(self.x - self.y, self.x + self.y)
    }

    pub fn diamond_pow(self, mut m: u32) -> Self {
        let mut acc = HyperState::new(1.0, 0.0);
        let mut base = self;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.diamond(base);
            }
            m >>= 1;
            if m > 0 {
                base = base.diamond(base);
            }
        }
        acc
    }


    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

impl std::ops::Add for HyperState {
    type Output = HyperState;

    fn add(self, other: Self) -> Self {
        HyperState::new(self.x + other.x, self.y + other.y)
    }
}

/// First `n` iterates of `H(v) = v^{⋄p} + (a, b)` from the origin.
pub fn hyper_orbit_points(a: f64, b: f64, p: u32, n: usize) -> Vec<HyperState> {
    let shift = HyperState::new(a, b);
    let mut v = HyperState::default();
    (0..n)
        .map(|_| {
            v = v.diamond_pow(p) + shift;
            v
        })
        .collect()
}

/// Escape-time orbit of the hyperbolic parameter `a + b·j` iterated with `⋄`.
pub fn orbit_hyper(a: f64, b: f64, params: &PolyParams, max_iter: u32) -> OrbitResult {
    let r2 = params.escape_radius_sqr();
    let shift = HyperState::new(a, b);
    let mut v = HyperState::default();
    let mut norm_sqr = 0.0;
    for m in 1..=max_iter {
        v = v.diamond_pow(params.p) + shift;
        norm_sqr = v.norm_sqr();
        if exceeds(norm_sqr, r2) {
            return OrbitResult::finish(m, norm_sqr, true);
        }
    }
    OrbitResult::finish(max_iter, norm_sqr, false)
}

/// The same orbit after conjugating by `T`: two real orbits with parameters
/// `a − b` and `a + b`. The hyperbolic norm is `(u² + v²)/2`.
pub fn orbit_hyper_conjugate(a: f64, b: f64, params: &PolyParams, max_iter: u32) -> OrbitResult {
    let r2 = params.escape_radius_sqr();
    let (cu, cv) = (a - b, a + b);
    let (mut u, mut v) = (0.0f64, 0.0f64);
    let mut norm_sqr = 0.0;
    let p = params.p as i32;
    for m in 1..=max_iter {
        u = u.powi(p) + cu;
        v = v.powi(p) + cv;
        norm_sqr = (u * u + v * v) * 0.5;
        if exceeds(norm_sqr, r2) {
            return OrbitResult::finish(m, norm_sqr, true);
        }
    }
    OrbitResult::finish(max_iter, norm_sqr, false)
}

/// Rotates `c` by `2πk/(p−1)`; `k` is reduced modulo `p − 1`.
///
/// Quarter, half and three-quarter turns are applied exactly.
pub fn rotate_param(c: Complex64, p: u32, k: i64) -> Complex64 {
    assert!(p >= 2, "power must be at least 2");
    let order = (p - 1) as i64;
    let t = k.rem_euclid(order);
    if t == 0 {
        return c;
    }
    if 2 * t == order {
        return -c;
    }
    if 4 * t == order {
        return Complex64::new(-c.im, c.re);
    }
    if 4 * t == 3 * order {
        return Complex64::new(c.im, -c.re);
    }
    let angle = 2.0 * std::f64::consts::PI * t as f64 / order as f64;
    c * Complex64::from_polar(1.0, angle)
}

/// Checks that the real orbit of `0` under `x^p + c`, `c > 0`, increases.
///
/// Rounded `x^p + c` is non-decreasing in `x`, so the floating-point orbit
/// is non-decreasing and becomes constant once it lands on a rounded fixed
/// point (or overflows to infinity). Returns true iff the first `n` iterates
/// strictly increase up to that point and never decrease afterwards.
pub fn monotone_check(c: f64, p: u32, n: usize) -> bool {
    assert!(c > 0.0, "monotone orbits need c > 0");
    let pts = real_orbit_points(c, p, n);
    let mut stalled = false;
    for w in pts.windows(2) {
        if w[1] > w[0] {
            if stalled {
                return false;
            }
        } else if w[1] == w[0] {
            stalled = true;
        } else {
            return false;
        }
    }
    true
}
