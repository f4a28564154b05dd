//! The algebra `D_F`: `C` at a real place, Hamilton quaternions at a complex
//! place, with the norm `‖·‖`, the additive character `ψ` and the embeddings
//! `ρ`, `ρ*` of `K ⊗ R` for a quadratic extension `K/F`.
//!
//! Every supported base field has exactly one infinite place, so a
//! [`DNumber`] is a single component tagged with its place type. A component
//! is stored as `a + b·j` with `a, b ∈ C`; at a real place `a` and `b` are
//! real and `j` plays the role of `i ∈ C`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::basefield::FieldDescriptor;
use crate::error::{Error, Result};

/// `a + b·j` with `j·α = ᾱ·j` for `α ∈ C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub a: Complex64,
    pub b: Complex64,
}

impl Quaternion {
    pub const ZERO: Self = Self {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };
    pub const ONE: Self = Self {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };
    pub const I: Self = Self {
        a: Complex64::new(0.0, 1.0),
        b: Complex64::new(0.0, 0.0),
    };
    pub const J: Self = Self {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(1.0, 0.0),
    };
    pub const K: Self = Self {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(0.0, 1.0),
    };

    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    /// From coordinates on `1, i, j, k`.
    pub fn from_coords(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self::new(Complex64::new(w, x), Complex64::new(y, z))
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn abs(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.conj(), -self.b)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return None;
        }
        let c = self.conj();
        Some(Self::new(c.a / n, c.b / n))
    }

    /// `α·q` for `α ∈ C`.
    pub fn left_scale(&self, alpha: Complex64) -> Self {
        Self::new(alpha * self.a, alpha * self.b)
    }

    /// `q·α` for `α ∈ C`.
    pub fn right_scale(&self, alpha: Complex64) -> Self {
        Self::new(self.a * alpha, self.b * alpha.conj())
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bj)(c + dj) = (ac − b d̄) + (ad + b c̄) j
        Self::new(
            self.a * o.a - self.b * o.b.conj(),
            self.a * o.b + self.b * o.a.conj(),
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.coords();
        write!(f, "{w} + {x}i + {y}j + {z}k")
    }
}

/// Type of the unique infinite place of the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Real,
    Complex,
}

impl PlaceKind {
    pub fn of(field: &FieldDescriptor) -> Self {
        if field.is_imaginary_quadratic() {
            PlaceKind::Complex
        } else {
            PlaceKind::Real
        }
    }

    /// `n_v = [F_v : R]`.
    pub fn degree(self) -> usize {
        match self {
            PlaceKind::Real => 1,
            PlaceKind::Complex => 2,
        }
    }
}

/// An element `x + y·j_F` of `D_F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DNumber {
    pub place: PlaceKind,
    pub q: Quaternion,
}

impl DNumber {
    /// `x + y·j_F` with `x, y ∈ F_R`; at a real place the imaginary parts
    /// of `x` and `y` must vanish.
    pub fn from_parts(place: PlaceKind, x: Complex64, y: Complex64) -> Self {
        if place == PlaceKind::Real {
            debug_assert!(x.im == 0.0 && y.im == 0.0, "real place needs real x, y");
        }
        Self { place, q: Quaternion::new(x, y) }
    }

    /// A complex number `x + iy` at a real place.
    pub fn complex(z: Complex64) -> Self {
        Self::from_parts(PlaceKind::Real, z.re.into(), z.im.into())
    }

    pub fn quaternion(q: Quaternion) -> Self {
        Self { place: PlaceKind::Complex, q }
    }

    /// Embeds `α ∈ F_R` (real at a real place).
    pub fn scalar(place: PlaceKind, alpha: Complex64) -> Self {
        Self::from_parts(place, alpha, Complex64::new(0.0, 0.0))
    }

    pub fn zero(place: PlaceKind) -> Self {
        Self { place, q: Quaternion::ZERO }
    }

    pub fn one(place: PlaceKind) -> Self {
        Self { place, q: Quaternion::ONE }
    }

    pub fn j(place: PlaceKind) -> Self {
        Self { place, q: Quaternion::J }
    }

    /// `x`-part in `F_R`.
    pub fn x(&self) -> Complex64 {
        self.q.a
    }

    /// `y`-part in `F_R`.
    pub fn y(&self) -> Complex64 {
        self.q.b
    }

    /// As a complex number `x + iy` (real place only).
    pub fn as_complex(&self) -> Complex64 {
        debug_assert_eq!(self.place, PlaceKind::Real);
        Complex64::new(self.q.a.re, self.q.b.re)
    }

    /// Squared absolute value `|z_v|²` of the component.
    pub fn abs_sqr(&self) -> f64 {
        self.q.norm_sqr()
    }

    pub fn is_zero(&self) -> bool {
        self.q.norm_sqr() == 0.0
    }

    pub fn conj(&self) -> Self {
        Self { place: self.place, q: self.q.conj() }
    }

    pub fn inv(&self) -> Option<Self> {
        self.q.inv().map(|q| Self { place: self.place, q })
    }

    /// `α·z` for `α ∈ F_R`.
    pub fn left_scale(&self, alpha: Complex64) -> Self {
        Self { place: self.place, q: self.q.left_scale(alpha) }
    }

    /// `z·α` for `α ∈ F_R`.
    pub fn right_scale(&self, alpha: Complex64) -> Self {
        Self { place: self.place, q: self.q.right_scale(alpha) }
    }

    /// Real coordinates of the underlying vector space: `(x, y)` at a real
    /// place, `(Re x, Im x, Re y, Im y)` at a complex place.
    pub fn real_coords(&self) -> Vec<f64> {
        match self.place {
            PlaceKind::Real => vec![self.q.a.re, self.q.b.re],
            PlaceKind::Complex => self.q.coords().to_vec(),
        }
    }

    pub fn from_real_coords(place: PlaceKind, c: &[f64]) -> Self {
        match place {
            PlaceKind::Real => Self::from_parts(place, c[0].into(), c[1].into()),
            PlaceKind::Complex => Self::quaternion(Quaternion::from_coords(c[0], c[1], c[2], c[3])),
        }
    }
}

impl Add for DNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { place: self.place, q: self.q + o.q }
    }
}

impl Sub for DNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { place: self.place, q: self.q - o.q }
    }
}

impl Neg for DNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self { place: self.place, q: -self.q }
    }
}

impl Mul for DNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.place, o.place);
        Self { place: self.place, q: self.q * o.q }
    }
}

/// `‖z‖`: `|z_v|` at a real place, `|z_v|²` at a complex place.
pub fn dnorm(z: &DNumber) -> f64 {
    match z.place {
        PlaceKind::Real => z.q.abs(),
        PlaceKind::Complex => z.q.norm_sqr(),
    }
}

/// `Tr_{F/Q}(x)` for `z = x + y j_F`, so that `ψ(z) = exp(2πi·result)`.
pub fn psi_exponent(z: &DNumber) -> f64 {
    match z.place {
        PlaceKind::Real => z.q.a.re,
        PlaceKind::Complex => 2.0 * z.q.a.re,
    }
}

/// `|N_{F/Q}(α)|` for `α ∈ F_R`.
pub fn abs_norm_fr(place: PlaceKind, alpha: Complex64) -> f64 {
    match place {
        PlaceKind::Real => alpha.norm(),
        PlaceKind::Complex => alpha.norm_sqr(),
    }
}

/// `Tr_{F/Q}(α)` for `α ∈ F_R`.
pub fn trace_fr(place: PlaceKind, alpha: Complex64) -> f64 {
    match place {
        PlaceKind::Real => alpha.re,
        PlaceKind::Complex => 2.0 * alpha.re,
    }
}

/// The Gaussian `f(z) = exp(−n_v π |z_v|²)` on `D_F`.
pub fn gaussian(z: &DNumber) -> f64 {
    (-(z.place.degree() as f64) * PI * z.abs_sqr()).exp()
}

/// How the place of `F` splits in a quadratic extension `K/F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitType {
    /// `F_v = R` and `v` has two real places `w, w'` above it.
    RealSplit,
    /// `F_v = R` and one complex place `w` lies above it.
    RealToComplex,
    /// `F_v = C` and two complex places `w, w'` lie above it.
    ComplexSplit,
}

impl SplitType {
    pub fn place(self) -> PlaceKind {
        match self {
            SplitType::RealSplit | SplitType::RealToComplex => PlaceKind::Real,
            SplitType::ComplexSplit => PlaceKind::Complex,
        }
    }
}

/// An element of `K ⊗ R` over the single place of `F`: its values at the
/// chosen place `w` and at `w'` (for [`SplitType::RealToComplex`] only
/// `at_w` is used).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KVector {
    pub split: SplitType,
    pub at_w: Complex64,
    pub at_w_prime: Complex64,
}

impl KVector {
    pub fn new(split: SplitType, at_w: Complex64, at_w_prime: Complex64) -> Self {
        Self { split, at_w, at_w_prime }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.split, self.at_w * o.at_w, self.at_w_prime * o.at_w_prime)
    }

    /// The Gaussian `g(z) = Π_w exp(−n_w π |z_w|²)` on `K ⊗ R`.
    pub fn gaussian(&self) -> f64 {
        let e = match self.split {
            SplitType::RealSplit => PI * (self.at_w.norm_sqr() + self.at_w_prime.norm_sqr()),
            SplitType::RealToComplex => 2.0 * PI * self.at_w.norm_sqr(),
            SplitType::ComplexSplit => 2.0 * PI * (self.at_w.norm_sqr() + self.at_w_prime.norm_sqr()),
        };
        (-e).exp()
    }
}

fn check_split(field: &FieldDescriptor, split: SplitType) -> Result<()> {
    if PlaceKind::of(field) != split.place() {
        return Err(Error::InvalidArgument(format!(
            "split type {split:?} is impossible over {field}"
        )));
    }
    Ok(())
}

/// `ρ(z)_v = z_w + z_{w'} j_v`.
pub fn rho(field: &FieldDescriptor, z: &KVector) -> Result<DNumber> {
    check_split(field, z.split)?;
    Ok(match z.split {
        SplitType::RealSplit => DNumber::from_parts(PlaceKind::Real, z.at_w.re.into(), z.at_w_prime.re.into()),
        SplitType::RealToComplex => DNumber::complex(Complex64::new(1.0, 1.0) * z.at_w),
        SplitType::ComplexSplit => DNumber::quaternion(Quaternion::new(z.at_w, z.at_w_prime)),
    })
}

/// `ρ*(z)_v = z_w − j_v z_{w'}`.
pub fn rho_star(field: &FieldDescriptor, z: &KVector) -> Result<DNumber> {
    check_split(field, z.split)?;
    Ok(match z.split {
        SplitType::RealSplit => DNumber::from_parts(PlaceKind::Real, z.at_w.re.into(), (-z.at_w_prime.re).into()),
        SplitType::RealToComplex => DNumber::complex(Complex64::new(1.0, -1.0) * z.at_w),
        SplitType::ComplexSplit => DNumber::quaternion(Quaternion::new(z.at_w, -z.at_w_prime.conj())),
    })
}

/// Ratio of the Haar measure of `ρ(B)` to that of `B` for any box `B`,
/// computed from the determinant of `ρ` as a real-linear map.
pub fn rho_measure_ratio(field: &FieldDescriptor, split: SplitType) -> Result<f64> {
    // real coordinates of K ⊗ R and Haar factor relative to Lebesgue
    let (k_dim, k_factor) = match split {
        SplitType::RealSplit => (2, 1.0),
        SplitType::RealToComplex => (2, 2.0),
        SplitType::ComplexSplit => (4, 4.0),
    };
    let d_factor = match split.place() {
        PlaceKind::Real => 1.0,
        PlaceKind::Complex => 4.0,
    };
    let from_coords = |c: &[f64]| match split {
        SplitType::RealSplit => KVector::new(split, c[0].into(), c[1].into()),
        SplitType::RealToComplex => KVector::new(split, Complex64::new(c[0], c[1]), Complex64::new(c[0], -c[1])),
        SplitType::ComplexSplit => {
            KVector::new(split, Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
        }
    };
    let mut m = nalgebra::DMatrix::<f64>::zeros(k_dim, k_dim);
    for i in 0..k_dim {
        let mut e = vec![0.0; k_dim];
        e[i] = 1.0;
        let image = rho(field, &from_coords(&e))?.real_coords();
        for (r, v) in image.iter().enumerate() {
            m[(r, i)] = *v;
        }
    }
    Ok(m.determinant().abs() * d_factor / k_factor)
}
