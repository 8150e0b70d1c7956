//! Scalar arithmetic: quaternions, ground scalars, and dual elements.
//!
//! All three ground rings are stored in one four-component layout (a
//! [`Quaternion`]); real and complex values simply keep their unused
//! components at exactly zero, which the ring operations preserve. This gives
//! a single code path for dual arithmetic across rings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Ground ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Real,
    Complex,
    Quaternion,
}

impl Ring {
    /// Number of real components a scalar of this ring carries.
    pub fn component_count(self) -> usize {
        match self {
            Ring::Real => 1,
            Ring::Complex => 2,
            Ring::Quaternion => 4,
        }
    }

    /// One-letter tag used by the text file formats.
    pub fn tag(self) -> &'static str {
        match self {
            Ring::Real => "r",
            Ring::Complex => "c",
            Ring::Quaternion => "q",
        }
    }

    /// Parses `r`/`c`/`q` or the full ring name, case-insensitive.
    pub fn from_tag(s: &str) -> Result<Ring> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "real" => Ok(Ring::Real),
            "c" | "complex" => Ok(Ring::Complex),
            "q" | "quaternion" => Ok(Ring::Quaternion),
            other => Err(Error::InvalidInput(format!("unknown ring tag `{other}`"))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Ring::Real => "real",
            Ring::Complex => "complex",
            Ring::Quaternion => "quaternion",
        };
        write!(f, "{name}")
    }
}

/// A quaternion `w + x*i + y*j + z*k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn complex(w: f64, x: f64) -> Self {
        Quaternion::new(w, x, 0.0, 0.0)
    }

    /// `w - x*i - y*j - z*k`.
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Componentwise inner product; equals `Re(self * other.conj())`.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// Multiplicative inverse `conj(q)/|q|^2`, or `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            None
        } else {
            Some(self.conj().scale(1.0 / n))
        }
    }

    pub fn max_component_abs(self) -> f64 {
        self.w
            .abs()
            .max(self.x.abs())
            .max(self.y.abs())
            .max(self.z.abs())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    // Hamilton product: i^2 = j^2 = k^2 = ijk = -1.
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

/// An element of one ground ring, tagged with the ring it belongs to.
///
/// Arithmetic between scalars of different rings is a programming error and
/// panics; the fallible entry points live on [`DualScalar`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundScalar {
    ring: Ring,
    value: Quaternion,
}

impl GroundScalar {
    pub fn real(a: f64) -> Self {
        GroundScalar {
            ring: Ring::Real,
            value: Quaternion::real(a),
        }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        GroundScalar {
            ring: Ring::Complex,
            value: Quaternion::complex(re, im),
        }
    }

    pub fn quaternion(q: Quaternion) -> Self {
        GroundScalar {
            ring: Ring::Quaternion,
            value: q,
        }
    }

    pub fn zero(ring: Ring) -> Self {
        GroundScalar {
            ring,
            value: Quaternion::ZERO,
        }
    }

    pub fn one(ring: Ring) -> Self {
        GroundScalar {
            ring,
            value: Quaternion::ONE,
        }
    }

    /// Builds a scalar from exactly `ring.component_count()` components.
    pub fn from_components(ring: Ring, parts: &[f64]) -> Result<Self> {
        if parts.len() != ring.component_count() {
            return Err(Error::InvalidInput(format!(
                "{ring} scalar needs {} components, got {}",
                ring.component_count(),
                parts.len()
            )));
        }
        let mut q = Quaternion::ZERO;
        q.w = parts[0];
        if parts.len() > 1 {
            q.x = parts[1];
        }
        if parts.len() > 3 {
            q.y = parts[2];
            q.z = parts[3];
        }
        Ok(GroundScalar { ring, value: q })
    }

    pub(crate) fn from_quat(ring: Ring, value: Quaternion) -> Self {
        debug_assert!(in_ring(ring, value));
        GroundScalar { ring, value }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn as_quaternion(&self) -> Quaternion {
        self.value
    }

    /// The components this ring actually uses.
    pub fn components(&self) -> Vec<f64> {
        let q = self.value;
        match self.ring {
            Ring::Real => vec![q.w],
            Ring::Complex => vec![q.w, q.x],
            Ring::Quaternion => vec![q.w, q.x, q.y, q.z],
        }
    }

    pub fn conj(&self) -> Self {
        GroundScalar {
            ring: self.ring,
            value: self.value.conj(),
        }
    }

    pub fn abs(&self) -> f64 {
        self.value.abs()
    }

    /// Real part (the `w` component).
    pub fn re(&self) -> f64 {
        self.value.w
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        self.value.inverse().map(|value| GroundScalar {
            ring: self.ring,
            value,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        GroundScalar {
            ring: self.ring,
            value: self.value.scale(s),
        }
    }
}

fn in_ring(ring: Ring, q: Quaternion) -> bool {
    match ring {
        Ring::Real => q.x == 0.0 && q.y == 0.0 && q.z == 0.0,
        Ring::Complex => q.y == 0.0 && q.z == 0.0,
        Ring::Quaternion => true,
    }
}

fn assert_same_ring(a: Ring, b: Ring) {
    assert!(a == b, "ring mismatch: {a} vs {b}");
}

impl Add for GroundScalar {
    type Output = GroundScalar;
    fn add(self, rhs: GroundScalar) -> GroundScalar {
        assert_same_ring(self.ring, rhs.ring);
        GroundScalar {
            ring: self.ring,
            value: self.value + rhs.value,
        }
    }
}

impl Sub for GroundScalar {
    type Output = GroundScalar;
    fn sub(self, rhs: GroundScalar) -> GroundScalar {
        assert_same_ring(self.ring, rhs.ring);
        GroundScalar {
            ring: self.ring,
            value: self.value - rhs.value,
        }
    }
}

impl Neg for GroundScalar {
    type Output = GroundScalar;
    fn neg(self) -> GroundScalar {
        GroundScalar {
            ring: self.ring,
            value: -self.value,
        }
    }
}

impl Mul for GroundScalar {
    type Output = GroundScalar;
    fn mul(self, rhs: GroundScalar) -> GroundScalar {
        assert_same_ring(self.ring, rhs.ring);
        GroundScalar {
            ring: self.ring,
            value: self.value * rhs.value,
        }
    }
}

/// A dual number `standard + dual*eps` with real parts, totally ordered
/// lexicographically: bigger standard part wins, the dual part breaks ties.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualNumber {
    pub standard: f64,
    pub dual: f64,
}

impl DualNumber {
    pub const ZERO: DualNumber = DualNumber::new(0.0, 0.0);
    pub const ONE: DualNumber = DualNumber::new(1.0, 0.0);

    pub const fn new(standard: f64, dual: f64) -> Self {
        DualNumber { standard, dual }
    }

    pub fn is_appreciable(&self) -> bool {
        self.standard != 0.0
    }

    /// `a^-1 = a_s^-1 - a_s^-2 a_d eps`; only appreciable numbers invert.
    pub fn inverse(&self) -> Result<DualNumber> {
        if !self.is_appreciable() {
            return Err(Error::InfinitesimalNotInvertible);
        }
        let inv = 1.0 / self.standard;
        Ok(DualNumber::new(inv, -inv * self.dual * inv))
    }

    /// Absolute value under the dual-number order.
    pub fn abs(&self) -> DualNumber {
        if self.standard != 0.0 {
            DualNumber::new(self.standard.abs(), self.dual * self.standard.signum())
        } else {
            DualNumber::new(0.0, self.dual.abs())
        }
    }

    /// Euclidean length of `(standard, dual)`; the metric used when two dual
    /// numbers are compared against a tolerance.
    pub fn two_r(&self) -> f64 {
        self.standard.hypot(self.dual)
    }

    pub fn dist(&self, other: &DualNumber) -> f64 {
        (*self - *other).two_r()
    }

    /// Total order; standard part first, dual part as tie-break.
    pub fn total_cmp(&self, other: &DualNumber) -> Ordering {
        self.standard
            .total_cmp(&other.standard)
            .then_with(|| self.dual.total_cmp(&other.dual))
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, rhs: DualNumber) -> DualNumber {
        DualNumber::new(self.standard + rhs.standard, self.dual + rhs.dual)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, rhs: DualNumber) -> DualNumber {
        DualNumber::new(self.standard - rhs.standard, self.dual - rhs.dual)
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber::new(-self.standard, -self.dual)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, rhs: DualNumber) -> DualNumber {
        DualNumber::new(
            self.standard * rhs.standard,
            self.standard * rhs.dual + self.dual * rhs.standard,
        )
    }
}

impl PartialOrd for DualNumber {
    fn partial_cmp(&self, other: &DualNumber) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual >= 0.0 {
            write!(f, "{}+{}e", self.standard, self.dual)
        } else {
            write!(f, "{}{}e", self.standard, self.dual)
        }
    }
}

/// A dual element `standard + dual*eps` over one ground ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualScalar {
    ring: Ring,
    s: Quaternion,
    d: Quaternion,
}

impl DualScalar {
    pub fn new(standard: GroundScalar, dual: GroundScalar) -> Result<Self> {
        if standard.ring != dual.ring {
            return Err(Error::RingMismatch(standard.ring, dual.ring));
        }
        Ok(DualScalar {
            ring: standard.ring,
            s: standard.value,
            d: dual.value,
        })
    }

    pub fn real(standard: f64, dual: f64) -> Self {
        DualScalar {
            ring: Ring::Real,
            s: Quaternion::real(standard),
            d: Quaternion::real(dual),
        }
    }

    pub fn complex(s_re: f64, s_im: f64, d_re: f64, d_im: f64) -> Self {
        DualScalar {
            ring: Ring::Complex,
            s: Quaternion::complex(s_re, s_im),
            d: Quaternion::complex(d_re, d_im),
        }
    }

    pub fn quaternion(standard: Quaternion, dual: Quaternion) -> Self {
        DualScalar {
            ring: Ring::Quaternion,
            s: standard,
            d: dual,
        }
    }

    pub fn zero(ring: Ring) -> Self {
        DualScalar {
            ring,
            s: Quaternion::ZERO,
            d: Quaternion::ZERO,
        }
    }

    pub fn one(ring: Ring) -> Self {
        DualScalar {
            ring,
            s: Quaternion::ONE,
            d: Quaternion::ZERO,
        }
    }

    pub(crate) fn from_quats(ring: Ring, s: Quaternion, d: Quaternion) -> Self {
        debug_assert!(in_ring(ring, s) && in_ring(ring, d));
        DualScalar { ring, s, d }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn standard(&self) -> GroundScalar {
        GroundScalar {
            ring: self.ring,
            value: self.s,
        }
    }

    pub fn dual_part(&self) -> GroundScalar {
        GroundScalar {
            ring: self.ring,
            value: self.d,
        }
    }

    pub(crate) fn std_quat(&self) -> Quaternion {
        self.s
    }

    pub(crate) fn dual_quat(&self) -> Quaternion {
        self.d
    }

    /// A dual element is appreciable (and invertible) iff its standard part
    /// is nonzero.
    pub fn is_appreciable(&self) -> bool {
        !self.s.is_zero()
    }

    pub fn conj(&self) -> Self {
        DualScalar {
            ring: self.ring,
            s: self.s.conj(),
            d: self.d.conj(),
        }
    }

    /// Product with an explicit ring check; see the `Mul` impl for the
    /// panicking operator form.
    pub fn checked_mul(&self, rhs: &DualScalar) -> Result<DualScalar> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring, rhs.ring));
        }
        Ok(*self * *rhs)
    }

    /// `a^-1 = a_s^-1 - a_s^-1 a_d a_s^-1 eps`.
    pub fn inverse(&self) -> Result<DualScalar> {
        let si = self.s.inverse().ok_or(Error::InfinitesimalNotInvertible)?;
        Ok(DualScalar {
            ring: self.ring,
            s: si,
            d: -(si * self.d * si),
        })
    }

    /// Magnitude as a nonnegative dual number:
    /// `|a_s| + (a_s a_d^* + a_d a_s^*)/(2|a_s|) eps` when appreciable,
    /// `|a_d| eps` otherwise.
    pub fn magnitude(&self) -> DualNumber {
        if self.s.is_zero() {
            DualNumber::new(0.0, self.d.abs())
        } else {
            let n = self.s.abs();
            // a_s a_d^* + a_d a_s^* = 2 Re(a_s a_d^*), always real in these rings.
            DualNumber::new(n, self.s.dot(self.d) / n)
        }
    }

    pub fn scale(&self, t: f64) -> Self {
        DualScalar {
            ring: self.ring,
            s: self.s.scale(t),
            d: self.d.scale(t),
        }
    }

    /// Flat Euclidean size `sqrt(|a_s|^2 + |a_d|^2)`.
    pub fn two_r(&self) -> f64 {
        self.s.abs().hypot(self.d.abs())
    }

    /// Largest componentwise deviation between the two elements.
    pub fn dist(&self, other: &DualScalar) -> f64 {
        assert_same_ring(self.ring, other.ring);
        (self.s - other.s)
            .max_component_abs()
            .max((self.d - other.d).max_component_abs())
    }

    pub fn approx_eq(&self, other: &DualScalar, tol: f64) -> bool {
        self.ring == other.ring && self.dist(other) <= tol
    }

    /// Builds the unit dual quaternion of a rigid motion: rotation `rotation`
    /// followed by translation `translation` expressed in the body frame,
    /// i.e. `q = q_s + (eps/2) q_s p`.
    ///
    /// `rotation` must be unit and `translation` imaginary (zero real part).
    pub fn rigid_motion(rotation: Quaternion, translation: Quaternion) -> Result<DualScalar> {
        let norm = rotation.abs();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitRotation(norm));
        }
        if translation.w.abs() > 1e-12 * (1.0 + translation.abs()) {
            return Err(Error::NonImaginaryTranslation(translation.w));
        }
        Ok(DualScalar {
            ring: Ring::Quaternion,
            s: rotation,
            d: (rotation * translation).scale(0.5),
        })
    }

    /// Formats in the file syntax: standard components, `|`, dual components.
    pub fn to_text(&self) -> String {
        let fmt_parts = |q: Quaternion| -> String {
            match self.ring {
                Ring::Real => format!("{}", q.w),
                Ring::Complex => format!("{} {}", q.w, q.x),
                Ring::Quaternion => format!("{} {} {} {}", q.w, q.x, q.y, q.z),
            }
        };
        format!("{} | {}", fmt_parts(self.s), fmt_parts(self.d))
    }

    /// Parses the file syntax. The dual half (after `|`) may be omitted and
    /// defaults to zero.
    pub fn from_text(ring: Ring, text: &str) -> Result<DualScalar> {
        let mut halves = text.splitn(2, '|');
        let std_part = parse_half(ring, halves.next().unwrap_or(""))?;
        let dual_part = match halves.next() {
            Some(rest) => parse_half(ring, rest)?,
            None => GroundScalar::zero(ring),
        };
        DualScalar::new(std_part, dual_part)
    }
}

fn parse_half(ring: Ring, text: &str) -> Result<GroundScalar> {
    let parts = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad number `{tok}`")))
        })
        .collect::<Result<Vec<f64>>>()?;
    GroundScalar::from_components(ring, &parts)
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: DualScalar) -> DualScalar {
        assert_same_ring(self.ring, rhs.ring);
        DualScalar {
            ring: self.ring,
            s: self.s + rhs.s,
            d: self.d + rhs.d,
        }
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: DualScalar) -> DualScalar {
        assert_same_ring(self.ring, rhs.ring);
        DualScalar {
            ring: self.ring,
            s: self.s - rhs.s,
            d: self.d - rhs.d,
        }
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar {
            ring: self.ring,
            s: -self.s,
            d: -self.d,
        }
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    // ab = a_s b_s + (a_s b_d + a_d b_s) eps, since eps^2 = 0.
    fn mul(self, rhs: DualScalar) -> DualScalar {
        assert_same_ring(self.ring, rhs.ring);
        DualScalar {
            ring: self.ring,
            s: self.s * rhs.s,
            d: self.s * rhs.d + self.d * rhs.s,
        }
    }
}

impl Mul<DualNumber> for DualScalar {
    type Output = DualScalar;
    // Dual numbers are central: x * lambda is well-defined in every ring.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: DualNumber) -> DualScalar {
        DualScalar {
            ring: self.ring,
            s: self.s.scale(rhs.standard),
            d: self.s.scale(rhs.dual) + self.d.scale(rhs.standard),
        }
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
