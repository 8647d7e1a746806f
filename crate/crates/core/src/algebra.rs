//! Tricomplex arithmetic and the sub-algebras embedded in it.
//!
//! A tricomplex number is stored as eight real coefficients over the basis
//! `(1, i1, i2, i3, i4, j1, j2, j3)`. The same value can be viewed as a pair
//! of bicomplex numbers `ζ1 + ζ2·i3`, as a pair of bicomplex idempotent
//! components over `γ3 = (1 + j3)/2`, or as four ordinary complex numbers
//! after splitting each bicomplex component again over `γ2 = (1 + j1)/2`.
//! Multiplication is componentwise in both idempotent views.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmt9;

/// One of the eight tricomplex basis units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    I1,
    I2,
    I3,
    I4,
    J1,
    J2,
    J3,
}

impl Unit {
    pub const ALL: [Unit; 8] = [
        Unit::One,
        Unit::I1,
        Unit::I2,
        Unit::I3,
        Unit::I4,
        Unit::J1,
        Unit::J2,
        Unit::J3,
    ];

    /// Coefficient slot of this unit in [`Tricomplex::x`].
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(index: usize) -> Option<Unit> {
        if index < 8 {
            Some(Unit::ALL[index])
        } else {
            None
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Unit::One => "1",
            Unit::I1 => "i1",
            Unit::I2 => "i2",
            Unit::I3 => "i3",
            Unit::I4 => "i4",
            Unit::J1 => "j1",
            Unit::J2 => "j2",
            Unit::J3 => "j3",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Unit::ALL
            .into_iter()
            .find(|u| u.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownUnit(s.to_string()))
    }
}

/// Products of basis units, encoded as `±(index + 1)`.
///
/// Row `a`, column `b` holds the unit `ALL[a] · ALL[b]` with its sign.
pub(crate) const UNIT_PRODUCTS: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 6, 7, -8, -3, -4, 5],
    [3, 6, -1, 8, -7, -2, 5, -4],
    [4, 7, 8, -1, -6, 5, -2, -3],
    [5, -8, -7, -6, -1, 4, 3, 2],
    [6, -3, -2, 5, 4, 1, -8, -7],
    [7, -4, 5, -2, 3, -8, 1, -6],
    [8, 5, -4, -3, 2, -7, -6, 1],
];

/// Signed product of two basis units.
pub fn unit_product(a: Unit, b: Unit) -> (f64, Unit) {
    let code = UNIT_PRODUCTS[a.index()][b.index()];
    let sign = if code < 0 { -1.0 } else { 1.0 };
    (sign, Unit::ALL[code.unsigned_abs() as usize - 1])
}

// Every unit squares to ±1, so the real coefficient gathers the eight
// diagonal products. Each other coefficient gathers four unordered pairs
// {a, b} with a != b; summing x[a]*y[b] + x[b]*y[a] per pair makes the
// product bit-for-bit commutative.
const SQUARE_SIGNS: [f64; 8] = square_signs();
const PAIR_TERMS: [[(usize, usize, f64); 4]; 8] = pair_terms();

const fn square_signs() -> [f64; 8] {
    let mut out = [0.0; 8];
    let mut a = 0;
    while a < 8 {
        out[a] = if UNIT_PRODUCTS[a][a] < 0 { -1.0 } else { 1.0 };
        a += 1;
    }
    out
}

const fn pair_terms() -> [[(usize, usize, f64); 4]; 8] {
    let mut out = [[(0usize, 0usize, 0.0f64); 4]; 8];
    let mut filled = [0usize; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = a + 1;
        while b < 8 {
            let code = UNIT_PRODUCTS[a][b];
            let k = (code.unsigned_abs() - 1) as usize;
            let sign = if code < 0 { -1.0 } else { 1.0 };
            out[k][filled[k]] = (a, b, sign);
            filled[k] += 1;
            b += 1;
        }
        a += 1;
    }
    out
}

/// A tricomplex number `x0 + x1 i1 + x2 i2 + x3 i3 + x4 i4 + x5 j1 + x6 j2 + x7 j3`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tricomplex {
    pub x: [f64; 8],
}

impl Tricomplex {
    pub const ZERO: Tricomplex = Tricomplex { x: [0.0; 8] };
    pub const ONE: Tricomplex = Tricomplex {
        x: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    };

    pub const fn new(x: [f64; 8]) -> Self {
        Tricomplex { x }
    }

    pub fn unit(u: Unit) -> Self {
        let mut x = [0.0; 8];
        x[u.index()] = 1.0;
        Tricomplex { x }
    }

    pub fn real(r: f64) -> Self {
        let mut x = [0.0; 8];
        x[0] = r;
        Tricomplex { x }
    }

    /// `re + im·u` for a single unit `u` (e.g. `C(i1)` or `D(j1)`).
    pub fn planar(re: f64, im: f64, u: Unit) -> Self {
        let mut t = Tricomplex::real(re);
        t.x[u.index()] += im;
        t
    }

    pub fn coefficient(&self, u: Unit) -> f64 {
        self.x[u.index()]
    }

    pub fn scale(self, s: f64) -> Self {
        Tricomplex {
            x: self.x.map(|v| v * s),
        }
    }

    /// `self^m` by binary exponentiation; `pow(0)` is 1.
    pub fn pow(self, mut m: u32) -> Self {
        let mut acc = Tricomplex::ONE;
        let mut base = self;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc * base;
            }
            m >>= 1;
            if m > 0 {
                base = base * base;
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum()
    }

    /// Euclidean norm of the eight coefficients.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// The same norm computed from the idempotent components:
    /// `sqrt(‖ζ1 − ζ2 i2‖² + ‖ζ1 + ζ2 i2‖²) / √2`.
    pub fn norm_idempotent(&self) -> f64 {
        let p = self.split3();
        (p.comp1.norm_sqr() + p.comp2.norm_sqr()).sqrt() / std::f64::consts::SQRT_2
    }

    /// Bicomplex pair `(ζ1, ζ2)` with `self = ζ1 + ζ2·i3`.
    pub fn to_bicomplex_pair(&self) -> (Bicomplex, Bicomplex) {
        let x = &self.x;
        (
            Bicomplex::new(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[5])),
            Bicomplex::new(Complex64::new(x[3], x[6]), Complex64::new(x[7], x[4])),
        )
    }

    pub fn from_bicomplex_pair(zeta1: Bicomplex, zeta2: Bicomplex) -> Self {
        Tricomplex::new([
            zeta1.z1.re,
            zeta1.z1.im,
            zeta1.z2.re,
            zeta2.z1.re,
            zeta2.z2.im,
            zeta1.z2.im,
            zeta2.z1.im,
            zeta2.z2.re,
        ])
    }

    /// Idempotent representation over `γ3 = (1 + j3)/2`, `γ̄3 = (1 − j3)/2`.
    pub fn split3(&self) -> IdempotentPair3 {
        let (zeta1, zeta2) = self.to_bicomplex_pair();
        let rot = zeta2.mul_i2();
        IdempotentPair3 {
            comp1: zeta1 - rot,
            comp2: zeta1 + rot,
        }
    }

    /// Four complex components, ordered `(γ3γ2, γ3γ̄2, γ̄3γ2, γ̄3γ̄2)`.
    pub fn split4(&self) -> IdempotentQuad {
        let p = self.split3();
        let (c1, c2) = p.comp1.split();
        let (c3, c4) = p.comp2.split();
        IdempotentQuad { c: [c1, c2, c3, c4] }
    }
}

impl Add for Tricomplex {
    type Output = Tricomplex;
    fn add(self, rhs: Self) -> Self {
        let mut x = self.x;
        for (a, b) in x.iter_mut().zip(rhs.x) {
            *a += b;
        }
        Tricomplex { x }
    }
}

impl AddAssign for Tricomplex {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Tricomplex {
    type Output = Tricomplex;
    fn sub(self, rhs: Self) -> Self {
        let mut x = self.x;
        for (a, b) in x.iter_mut().zip(rhs.x) {
            *a -= b;
        }
        Tricomplex { x }
    }
}

impl Neg for Tricomplex {
    type Output = Tricomplex;
    fn neg(self) -> Self {
        Tricomplex { x: self.x.map(|v| -v) }
    }
}

impl Mul for Tricomplex {
    type Output = Tricomplex;

    fn mul(self, rhs: Self) -> Self {
        let (x, y) = (&self.x, &rhs.x);
        let mut out = [0.0; 8];
        let mut acc = 0.0;
        for a in 0..8 {
            acc += SQUARE_SIGNS[a] * (x[a] * y[a]);
        }
        out[0] = acc;
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            let mut acc = 0.0;
            for &(a, b, sign) in &PAIR_TERMS[k] {
                acc += sign * (x[a] * y[b] + x[b] * y[a]);
            }
            *slot = acc;
        }
        Tricomplex { x: out }
    }
}

impl fmt::Display for Tricomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt9(self.x[0]))?;
        for u in &Unit::ALL[1..] {
            let v = self.x[u.index()];
            let text = fmt9(v);
            match text.strip_prefix('-') {
                Some(abs) => write!(f, " - {abs} {u}")?,
                None => write!(f, " + {text} {u}")?,
            }
        }
        Ok(())
    }
}

/// A bicomplex number `z1 + z2·i2` with `z1, z2 ∈ C(i1)`.
///
/// Its real coefficients are those of `1, i1, i2, j1`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Bicomplex {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl Bicomplex {
    pub const fn new(z1: Complex64, z2: Complex64) -> Self {
        Bicomplex { z1, z2 }
    }

    pub fn from_coefficients(re: f64, i1: f64, i2: f64, j1: f64) -> Self {
        Bicomplex::new(Complex64::new(re, i1), Complex64::new(i2, j1))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `i2 · self`.
    pub fn mul_i2(self) -> Self {
        Bicomplex::new(-self.z2, self.z1)
    }

    /// Components over `γ2 = (1 + j1)/2` and `γ̄2 = (1 − j1)/2`.
    pub fn split(&self) -> (Complex64, Complex64) {
        let rot = self.z2 * Complex64::i();
        (self.z1 - rot, self.z1 + rot)
    }

    pub fn join(a: Complex64, b: Complex64) -> Self {
        let z1 = (a + b) * 0.5;
        let diff = (a - b) * 0.5;
        // z2 = i·(a − b)/2
        Bicomplex::new(z1, Complex64::new(-diff.im, diff.re))
    }

    /// Embedding into M(3) with the `i3, i4, j2, j3` coefficients zero.
    pub fn to_tricomplex(self) -> Tricomplex {
        Tricomplex::from_bicomplex_pair(self, Bicomplex::default())
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Self) -> Self {
        Bicomplex::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Self) -> Self {
        Bicomplex::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Self) -> Self {
        Bicomplex::new(
            self.z1 * rhs.z1 - self.z2 * rhs.z2,
            self.z1 * rhs.z2 + self.z2 * rhs.z1,
        )
    }
}

/// A hyperbolic (split-complex) number `re + hy·j` with `j² = +1`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Hyperbolic {
    pub re: f64,
    pub hy: f64,
}

impl Hyperbolic {
    pub const fn new(re: f64, hy: f64) -> Self {
        Hyperbolic { re, hy }
    }

    pub fn pow(self, mut m: u32) -> Self {
        let mut acc = Hyperbolic::new(1.0, 0.0);
        let mut base = self;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc * base;
            }
            m >>= 1;
            if m > 0 {
                base = base * base;
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.hy * self.hy
    }

    /// Embedding as `re + hy·u` with `u` one of `j1, j2, j3`.
    pub fn to_tricomplex(self, u: Unit) -> Tricomplex {
        Tricomplex::planar(self.re, self.hy, u)
    }
}

impl Add for Hyperbolic {
    type Output = Hyperbolic;
    fn add(self, rhs: Self) -> Self {
        Hyperbolic::new(self.re + rhs.re, self.hy + rhs.hy)
    }
}

impl Mul for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, rhs: Self) -> Self {
        Hyperbolic::new(
            self.re * rhs.re + self.hy * rhs.hy,
            self.re * rhs.hy + self.hy * rhs.re,
        )
    }
}

/// Coefficients of `γ3` and `γ̄3` in the idempotent representation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct IdempotentPair3 {
    pub comp1: Bicomplex,
    pub comp2: Bicomplex,
}

impl IdempotentPair3 {
    pub fn join(&self) -> Tricomplex {
        let zeta1 = Bicomplex::new(
            (self.comp1.z1 + self.comp2.z1) * 0.5,
            (self.comp1.z2 + self.comp2.z2) * 0.5,
        );
        // ζ2·i2 = (comp2 − comp1)/2, so ζ2 = ((comp2 − comp1).z2, (comp1 − comp2).z1)/2
        let zeta2 = Bicomplex::new(
            (self.comp2.z2 - self.comp1.z2) * 0.5,
            (self.comp1.z1 - self.comp2.z1) * 0.5,
        );
        Tricomplex::from_bicomplex_pair(zeta1, zeta2)
    }

    pub fn mul_componentwise(&self, other: &Self) -> Self {
        IdempotentPair3 {
            comp1: self.comp1 * other.comp1,
            comp2: self.comp2 * other.comp2,
        }
    }
}

/// Four complex components ordered `(γ3γ2, γ3γ̄2, γ̄3γ2, γ̄3γ̄2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct IdempotentQuad {
    pub c: [Complex64; 4],
}

impl IdempotentQuad {
    pub fn join(&self) -> Tricomplex {
        IdempotentPair3 {
            comp1: Bicomplex::join(self.c[0], self.c[1]),
            comp2: Bicomplex::join(self.c[2], self.c[3]),
        }
        .join()
    }

    pub fn mul_componentwise(&self, other: &Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c) {
            *a *= b;
        }
        IdempotentQuad { c }
    }

    /// Tricomplex norm squared, `Σ |c_k|² / 4`.
    pub fn norm_sqr(&self) -> f64 {
        let n = self.c.map(|c| c.norm_sqr());
        ((n[0] + n[1]) + (n[2] + n[3])) * 0.25
    }
}

/// An ordered triple of distinct units spanning a principal 3D slice.
///
/// Coordinates `(x, y, z)` map onto `units[0]`, `units[1]`, `units[2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceSpec {
    units: [Unit; 3],
}

impl SliceSpec {
    /// The slice spanned by `1, j1, j2`, whose bounded set is the Perplexbrot.
    pub const PERPLEX: SliceSpec = SliceSpec {
        units: [Unit::One, Unit::J1, Unit::J2],
    };

    pub fn new(a: Unit, b: Unit, c: Unit) -> Result<Self> {
        if a == b || a == c || b == c {
            return Err(Error::RepeatedSliceUnit(
                a.to_string(),
                b.to_string(),
                c.to_string(),
            ));
        }
        Ok(SliceSpec { units: [a, b, c] })
    }

    pub fn units(&self) -> [Unit; 3] {
        self.units
    }

    /// The 56 unordered unit triples, each in ascending basis order.
    pub fn principal_slices() -> Vec<SliceSpec> {
        let mut out = Vec::with_capacity(56);
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    out.push(SliceSpec {
                        units: [Unit::ALL[a], Unit::ALL[b], Unit::ALL[c]],
                    });
                }
            }
        }
        out
    }

    /// `x·units[0] + y·units[1] + z·units[2]`.
    pub fn embed(&self, x: f64, y: f64, z: f64) -> Tricomplex {
        let mut t = Tricomplex::ZERO;
        t.x[self.units[0].index()] = x;
        t.x[self.units[1].index()] = y;
        t.x[self.units[2].index()] = z;
        t
    }
}

impl FromStr for SliceSpec {
    type Err = Error;

    /// Parses `"1,j1,j2"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::UnknownUnit(s.to_string()));
        }
        SliceSpec::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
    }
}

impl fmt::Display for SliceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.units;
        write!(f, "{a},{b},{c}")
    }
}

pub fn embed_slice(s: &SliceSpec, x: f64, y: f64, z: f64) -> Tricomplex {
    s.embed(x, y, z)
}
