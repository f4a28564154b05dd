//! Exact arithmetic in `Q` and quadratic fields: elements, fractional ideals,
//! units, the different and the fixed complex embedding.
//!
//! Elements of `Q(√d)` are written `a + b·ω` with `ω = (1 + √d)/2` when
//! `d ≡ 1 (mod 4)` and `ω = √d` otherwise. The first embedding sends `√d` to
//! the positive root for `d > 0` and to `+i√|d|` for `d < 0`.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use regex::Regex;

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

/// Discriminants of the imaginary quadratic base fields (all of class number
/// one and norm-Euclidean).
pub const SUPPORTED_IMAGINARY_BASES: [i64; 5] = [-1, -2, -3, -7, -11];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Quadratic(i64),
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `(Tr ω, N ω)` for the integral generator of `Q(√d)`.
fn omega_trace_norm(d: i64) -> (i128, i128) {
    if d.rem_euclid(4) == 1 {
        (1, (1 - d as i128) / 4)
    } else {
        (0, -(d as i128))
    }
}

fn sqrt_embedding(d: i64) -> Complex64 {
    if d > 0 {
        Complex64::new((d as f64).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d as f64).sqrt())
    }
}

/// An element `a + b·ω` of `Q` (`d == 0`, `b == 0`) or of `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub a: Rat,
    pub b: Rat,
    d: i64,
}

impl QuadElement {
    pub fn new(d: i64, a: Rat, b: Rat) -> Self {
        if d == 0 {
            assert!(b.is_zero(), "rational element with nonzero ω-coordinate");
        }
        Self { a, b, d }
    }

    pub fn from_ints(d: i64, a: i128, b: i128) -> Self {
        Self::new(d, Rat::from_integer(a), Rat::from_integer(b))
    }

    pub fn rational(d: i64, q: Rat) -> Self {
        Self::new(d, q, Rat::zero())
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn tn(&self) -> (Rat, Rat) {
        if self.d == 0 {
            (Rat::zero(), Rat::zero())
        } else {
            let (t, n) = omega_trace_norm(self.d);
            (Rat::from_integer(t), Rat::from_integer(n))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        Self::new(self.d, self.a + o.a, self.b + o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        Self::new(self.d, self.a - o.a, self.b - o.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.d, -self.a, -self.b)
    }

    pub fn scale(&self, q: Rat) -> Self {
        Self::new(self.d, self.a * q, self.b * q)
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        let (t, n) = self.tn();
        // ω² = Tω − N
        let a = self.a * o.a - n * self.b * o.b;
        let b = self.a * o.b + self.b * o.a + t * self.b * o.b;
        Self::new(self.d, a, b)
    }

    /// Galois conjugate `x ↦ x'`.
    pub fn conj(&self) -> Self {
        let (t, _) = self.tn();
        Self::new(self.d, self.a + self.b * t, -self.b)
    }

    pub fn norm(&self) -> Rat {
        let (t, n) = self.tn();
        self.a * self.a + self.a * self.b * t + self.b * self.b * n
    }

    pub fn trace(&self) -> Rat {
        let (t, _) = self.tn();
        Rat::from_integer(2) * self.a + self.b * t
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        Ok(self.conj().scale(n.recip()))
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Value under the first embedding.
    pub fn embed(&self) -> Complex64 {
        let a = rat_to_f64(self.a);
        if self.d == 0 {
            return Complex64::new(a, 0.0);
        }
        let b = rat_to_f64(self.b);
        a + b * omega_value(self.d)
    }

    /// Value under the conjugate embedding.
    pub fn embed_conj(&self) -> Complex64 {
        self.conj().embed()
    }

    /// Writes the element as `p + q√d`.
    pub fn sqrt_coords(&self) -> (Rat, Rat) {
        if self.d == 0 {
            return (self.a, Rat::zero());
        }
        if self.d.rem_euclid(4) == 1 {
            let half = Rat::new(1, 2);
            (self.a + self.b * half, self.b * half)
        } else {
            (self.a, self.b)
        }
    }

    /// Exact sign of the first embedding in a real field (or of a rational).
    pub fn sign_real(&self) -> i32 {
        assert!(self.d >= 0, "sign is only defined for real embeddings");
        let (p, q) = self.sqrt_coords();
        let sp = p.signum();
        let sq = q.signum();
        if sq.is_zero() {
            return sign_of(&sp);
        }
        if sp.is_zero() || sp == sq {
            return sign_of(&sq);
        }
        // opposite signs: compare p² with q²·d
        let lhs = p * p;
        let rhs = q * q * Rat::from_integer(self.d as i128);
        if lhs > rhs {
            sign_of(&sp)
        } else {
            sign_of(&sq)
        }
    }
}

fn sign_of(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// First-embedding value of the integral generator `ω` of `Q(√d)`.
pub fn omega_value(d: i64) -> Complex64 {
    let s = sqrt_embedding(d);
    if d.rem_euclid(4) == 1 {
        (1.0 + s) * 0.5
    } else {
        s
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 || self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}ω", self.a, self.b)
        }
    }
}

/// A supported field `Q` or `Q(√d)` with its cached invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldDescriptor {
    kind: FieldKind,
    discriminant: i64,
    r1: usize,
    r2: usize,
    w: usize,
    regulator: f64,
    fundamental_unit: Option<QuadElement>,
    different_generator: QuadElement,
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind) -> Result<Self> {
        match kind {
            FieldKind::Rational => Ok(Self {
                kind,
                discriminant: 1,
                r1: 1,
                r2: 0,
                w: 2,
                regulator: 1.0,
                fundamental_unit: None,
                different_generator: QuadElement::from_ints(0, 1, 0),
            }),
            FieldKind::Quadratic(d) => {
                if d == 0 || d == 1 || !is_squarefree(d) {
                    return Err(Error::InvalidField(format!(
                        "d = {d} must be a squarefree integer different from 0 and 1"
                    )));
                }
                let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
                let different_generator = if d.rem_euclid(4) == 1 {
                    QuadElement::from_ints(d, -1, 2)
                } else {
                    QuadElement::from_ints(d, 0, 2)
                };
                if d > 0 {
                    let eps = fundamental_unit_cf(d)?;
                    let regulator = eps.embed().re.ln();
                    Ok(Self {
                        kind,
                        discriminant,
                        r1: 2,
                        r2: 0,
                        w: 2,
                        regulator,
                        fundamental_unit: Some(eps),
                        different_generator,
                    })
                } else {
                    let w = match d {
                        -1 => 4,
                        -3 => 6,
                        _ => 2,
                    };
                    Ok(Self {
                        kind,
                        discriminant,
                        r1: 0,
                        r2: 1,
                        w,
                        regulator: 1.0,
                        fundamental_unit: None,
                        different_generator,
                    })
                }
            }
        }
    }

    pub fn rational() -> Self {
        Self::new(FieldKind::Rational).expect("Q is always valid")
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        Self::new(FieldKind::Quadratic(d))
    }

    /// Builds a field for use as the base field `F` of lattices and
    /// Eisenstein series.
    pub fn base_field(kind: FieldKind) -> Result<Self> {
        let f = Self::new(kind)?;
        f.require_base()?;
        Ok(f)
    }

    pub fn require_base(&self) -> Result<()> {
        if self.is_supported_base() {
            Ok(())
        } else {
            Err(Error::UnsupportedBaseField(self.to_string()))
        }
    }

    pub fn is_supported_base(&self) -> bool {
        match self.kind {
            FieldKind::Rational => true,
            FieldKind::Quadratic(d) => SUPPORTED_IMAGINARY_BASES.contains(&d),
        }
    }

    /// Parses `Q`, `Q(i)`, `Q(sqrtN)`, `Q(sqrt-N)`, `Q(sqrt{N})` or `Q(sqrt(N))`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" {
            return Ok(Self::rational());
        }
        if s == "Q(i)" {
            return Self::quadratic(-1);
        }
        let re = Regex::new(r"^Q\(sqrt(?:\{(-?\d+)\}|\((-?\d+)\)|(-?\d+))\)$").expect("static regex");
        let caps = re.captures(&s).ok_or_else(|| Error::Parse {
            field: "field".into(),
            message: format!("expected Q or Q(sqrtN), got {spec:?}"),
        })?;
        let num = caps
            .get(1)
            .or_else(|| caps.get(2))
            .or_else(|| caps.get(3))
            .map(|m| m.as_str())
            .unwrap_or_default();
        let d: i64 = num.parse().map_err(|_| Error::Parse {
            field: "field".into(),
            message: format!("bad integer {num:?}"),
        })?;
        Self::quadratic(d)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// `d` of `Q(√d)`, or 0 for `Q`.
    pub fn d(&self) -> i64 {
        match self.kind {
            FieldKind::Rational => 0,
            FieldKind::Quadratic(d) => d,
        }
    }

    /// Signed fundamental discriminant (1 for `Q`).
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// `d_F = |disc|`.
    pub fn abs_discriminant(&self) -> f64 {
        self.discriminant.unsigned_abs() as f64
    }

    pub fn degree(&self) -> usize {
        self.r1 + 2 * self.r2
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    pub fn roots_of_unity_count(&self) -> usize {
        self.w
    }

    pub fn regulator(&self) -> f64 {
        self.regulator
    }

    pub fn fundamental_unit(&self) -> Option<&QuadElement> {
        self.fundamental_unit.as_ref()
    }

    pub fn different_generator(&self) -> &QuadElement {
        &self.different_generator
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    pub fn is_real_quadratic(&self) -> bool {
        matches!(self.kind, FieldKind::Quadratic(d) if d > 0)
    }

    pub fn is_imaginary_quadratic(&self) -> bool {
        matches!(self.kind, FieldKind::Quadratic(d) if d < 0)
    }

    /// `n_v` of the unique infinite place of a supported base field.
    pub fn place_degree(&self) -> usize {
        if self.is_imaginary_quadratic() {
            2
        } else {
            1
        }
    }

    pub fn element(&self, a: Rat, b: Rat) -> QuadElement {
        QuadElement::new(self.d(), a, b)
    }

    pub fn int(&self, a: i128, b: i128) -> QuadElement {
        QuadElement::from_ints(self.d(), a, b)
    }

    pub fn one(&self) -> QuadElement {
        self.int(1, 0)
    }

    /// Z-basis `{1, ω}` (or `{1}` for `Q`) of `O_F`.
    pub fn integral_basis(&self) -> Vec<QuadElement> {
        if self.is_rational() {
            vec![self.one()]
        } else {
            vec![self.one(), self.int(0, 1)]
        }
    }

    /// The regulator-and-roots-of-unity constant `2^{r1} (2π)^{r2} R / w`.
    pub fn c_constant(&self) -> f64 {
        2f64.powi(self.r1 as i32) * (2.0 * std::f64::consts::PI).powi(self.r2 as i32) * self.regulator
            / self.w as f64
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Quadratic(d) => write!(f, "Q(sqrt{d})"),
        }
    }
}

/// `⌊(p + √d)/q⌋` computed exactly, `d > 0` not a square.
fn floor_quadratic(p: i128, q: i128, d: i128) -> i128 {
    // √d > v  <=>  v < 0 or v² < d
    let sqrt_gt = |v: i128| v < 0 || v * v < d;
    let approx = ((p as f64 + (d as f64).sqrt()) / q as f64).floor() as i128;
    let mut m = approx;
    // (p + √d)/q >= m  <=>  q > 0: √d >= mq − p ; q < 0: √d <= mq − p
    let ge = |m: i128| {
        let v = m * q - p;
        if q > 0 {
            sqrt_gt(v)
        } else {
            !sqrt_gt(v)
        }
    };
    while !ge(m) {
        m -= 1;
    }
    while ge(m + 1) {
        m += 1;
    }
    m
}

/// Fundamental unit of `Q(√d)`, `d > 0`, from the continued fraction of `ω`.
/// Normalised to be `> 1` in the first embedding.
fn fundamental_unit_cf(d: i64) -> Result<QuadElement> {
    let dd = d as i128;
    let (mut p, mut q) = if d.rem_euclid(4) == 1 { (1i128, 2i128) } else { (0, 1) };
    let (mut h1, mut h2) = (1i128, 0i128);
    let (mut k1, mut k2) = (0i128, 1i128);
    for _ in 0..10_000 {
        let a = floor_quadratic(p, q, dd);
        let h = a * h1 + h2;
        let k = a * k1 + k2;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        let alpha = QuadElement::from_ints(d, h, -k);
        let n = alpha.norm();
        if n.abs().is_one() {
            let mut eps = alpha.conj();
            if eps.sign_real() < 0 {
                eps = eps.neg();
            }
            return Ok(eps);
        }
        let p_next = a * q - p;
        let q_next = (dd - p_next * p_next) / q;
        p = p_next;
        q = q_next;
    }
    Err(Error::NoConvergence {
        what: "fundamental unit continued fraction",
        iterations: 10_000,
    })
}

/// Roots of unity of an imaginary quadratic field by exhaustive search of
/// `N(a + bω) = 1` over a box that contains every solution.
pub fn roots_of_unity(field: &FieldDescriptor) -> Vec<QuadElement> {
    if !field.is_imaginary_quadratic() {
        return vec![field.int(1, 0), field.int(-1, 0)];
    }
    let mut out = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            let u = field.int(a, b);
            if u.norm().is_one() {
                out.push(u);
            }
        }
    }
    out
}

/// A fractional ideal of `Q` or of a quadratic field.
#[derive(Clone, Debug)]
pub enum FracIdeal {
    /// `q·Z` with `q > 0`.
    Rational(Rat),
    Quadratic(QuadIdeal),
}

/// `scale · (aZ + (b + cω)Z)` in Hermite normal form, `gcd(a, b, c) = 1`.
#[derive(Clone, Debug)]
pub struct QuadIdeal {
    d: i64,
    scale: Rat,
    a: i128,
    b: i128,
    c: i128,
    generator: Option<QuadElement>,
}

impl PartialEq for FracIdeal {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FracIdeal::Rational(p), FracIdeal::Rational(q)) => p == q,
            (FracIdeal::Quadratic(x), FracIdeal::Quadratic(y)) => {
                x.d == y.d && x.scale == y.scale && x.a == y.a && x.b == y.b && x.c == y.c
            }
            _ => false,
        }
    }
}

impl QuadIdeal {
    pub fn hnf(&self) -> (Rat, i128, i128, i128) {
        (self.scale, self.a, self.b, self.c)
    }

    pub fn d(&self) -> i64 {
        self.d
    }
}

fn lcm_denominators(xs: &[QuadElement]) -> i128 {
    xs.iter()
        .fold(1i128, |l, x| l.lcm(x.a.denom()).lcm(x.b.denom()))
}

/// Hermite normal form of the Z-module spanned by `gens` in `Q(√d)`.
fn hnf_of_module(d: i64, gens: &[QuadElement]) -> Result<(Rat, i128, i128, i128)> {
    let l = lcm_denominators(gens);
    let lr = Rat::from_integer(l);
    let mut rows: Vec<(i128, i128)> = gens
        .iter()
        .map(|g| ((g.a * lr).to_integer(), (g.b * lr).to_integer()))
        .collect();
    let mut pivot: Option<(i128, i128)> = None;
    let mut zero_rows = Vec::new();
    for r in rows.drain(..) {
        if r.1 == 0 {
            zero_rows.push(r.0);
            continue;
        }
        match pivot {
            None => pivot = Some(r),
            Some(p) => {
                let e = p.1.extended_gcd(&r.1);
                let g = e.gcd;
                let np = (e.x * p.0 + e.y * r.0, e.x * p.1 + e.y * r.1);
                let other = (r.1 / g) * p.0 - (p.1 / g) * r.0;
                zero_rows.push(other);
                pivot = Some(np);
            }
        }
    }
    let (mut pb, mut pc) = pivot.ok_or_else(|| Error::InvalidIdeal(format!("module in Q(sqrt{d}) has rank < 2")))?;
    let a = zero_rows.iter().fold(0i128, |acc, x| acc.gcd(x));
    if a == 0 {
        return Err(Error::InvalidIdeal(format!("module in Q(sqrt{d}) has rank < 2")));
    }
    if pc < 0 {
        pb = -pb;
        pc = -pc;
    }
    let b = pb.mod_floor(&a);
    let g = a.gcd(&b).gcd(&pc);
    Ok((Rat::new(g, l), a / g, b / g, pc / g))
}

impl FracIdeal {
    pub fn rational(q: Rat) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidIdeal("zero ideal".into()));
        }
        Ok(FracIdeal::Rational(q.abs()))
    }

    pub fn unit(field: &FieldDescriptor) -> Self {
        Self::principal(field, &field.one()).expect("unit ideal")
    }

    /// The principal ideal `g·O_F`.
    pub fn principal(field: &FieldDescriptor, g: &QuadElement) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidIdeal("zero generator".into()));
        }
        if field.is_rational() {
            return Self::rational(g.a);
        }
        let gens: Vec<_> = field.integral_basis().iter().map(|e| g.mul(e)).collect();
        let (scale, a, b, c) = hnf_of_module(field.d(), &gens)?;
        Ok(FracIdeal::Quadratic(QuadIdeal {
            d: field.d(),
            scale,
            a,
            b,
            c,
            generator: Some(g.clone()),
        }))
    }

    /// `scale·(aZ + (b + cω)Z)`, validated to be closed under `O_K`.
    pub fn from_hnf(field: &FieldDescriptor, scale: Rat, a: i128, b: i128, c: i128) -> Result<Self> {
        if field.is_rational() {
            return Err(Error::InvalidIdeal("HNF form needs a quadratic field".into()));
        }
        if a <= 0 || c <= 0 || scale.is_zero() {
            return Err(Error::InvalidIdeal(format!("HNF needs a > 0, c > 0, got a={a}, c={c}")));
        }
        let d = field.d();
        let gens = [
            QuadElement::from_ints(d, a, 0).scale(scale),
            QuadElement::from_ints(d, b, c).scale(scale),
        ];
        let module = hnf_of_module(d, &gens)?;
        let ideal = FracIdeal::Quadratic(QuadIdeal {
            d,
            scale: module.0,
            a: module.1,
            b: module.2,
            c: module.3,
            generator: None,
        });
        // O_K-closure: ω times each basis element stays in the module
        let omega = field.int(0, 1);
        for e in ideal.z_basis() {
            if !ideal.contains(&omega.mul(&e)) {
                return Err(Error::InvalidIdeal(format!(
                    "[{a}, {b} + {c}ω] is not closed under multiplication by ω"
                )));
            }
        }
        Ok(ideal)
    }

    /// The ideal generated over `O_F` by the given elements.
    pub fn generated_by(field: &FieldDescriptor, gens: &[QuadElement]) -> Result<Self> {
        if field.is_rational() {
            let g = gens
                .iter()
                .filter(|x| !x.is_zero())
                .fold(None::<Rat>, |acc, x| {
                    let q = x.a.abs();
                    Some(match acc {
                        None => q,
                        Some(p) => Rat::new(
                            (p.numer() * q.denom()).gcd(&(q.numer() * p.denom())),
                            p.denom() * q.denom(),
                        ),
                    })
                })
                .ok_or_else(|| Error::InvalidIdeal("no nonzero generators".into()))?;
            return Self::rational(g);
        }
        let basis = field.integral_basis();
        let all: Vec<_> = gens
            .iter()
            .flat_map(|g| basis.iter().map(move |e| g.mul(e)))
            .collect();
        let (scale, a, b, c) = hnf_of_module(field.d(), &all)?;
        let generator = if gens.len() == 1 { Some(gens[0].clone()) } else { None };
        Ok(FracIdeal::Quadratic(QuadIdeal { d: field.d(), scale, a, b, c, generator }))
    }

    fn d(&self) -> i64 {
        match self {
            FracIdeal::Rational(_) => 0,
            FracIdeal::Quadratic(q) => q.d,
        }
    }

    /// Absolute norm.
    pub fn norm(&self) -> Rat {
        match self {
            FracIdeal::Rational(q) => *q,
            FracIdeal::Quadratic(q) => q.scale * q.scale * Rat::from_integer(q.a * q.c),
        }
    }

    pub fn norm_f64(&self) -> f64 {
        rat_to_f64(self.norm())
    }

    pub fn generator(&self) -> Option<QuadElement> {
        match self {
            FracIdeal::Rational(q) => Some(QuadElement::rational(0, *q)),
            FracIdeal::Quadratic(q) => q.generator.clone(),
        }
    }

    /// Z-basis (one element over `Q`, two over a quadratic field).
    pub fn z_basis(&self) -> Vec<QuadElement> {
        match self {
            FracIdeal::Rational(q) => vec![QuadElement::rational(0, *q)],
            FracIdeal::Quadratic(q) => vec![
                QuadElement::from_ints(q.d, q.a, 0).scale(q.scale),
                QuadElement::from_ints(q.d, q.b, q.c).scale(q.scale),
            ],
        }
    }

    pub fn contains(&self, x: &QuadElement) -> bool {
        match self {
            FracIdeal::Rational(q) => x.b.is_zero() && (x.a / q).is_integer(),
            FracIdeal::Quadratic(q) => {
                let xs = x.a / q.scale;
                let ys = x.b / q.scale;
                if !ys.is_integer() || ys.to_integer() % q.c != 0 {
                    return false;
                }
                let k = ys.to_integer() / q.c;
                let r = xs - Rat::from_integer(k * q.b);
                r.is_integer() && r.to_integer() % q.a == 0
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FracIdeal::Rational(p), FracIdeal::Rational(q)) => Self::rational(p * q),
            (FracIdeal::Quadratic(x), FracIdeal::Quadratic(y)) => {
                debug_assert_eq!(x.d, y.d);
                let gens: Vec<_> = self
                    .z_basis()
                    .iter()
                    .flat_map(|e| other.z_basis().into_iter().map(move |f| e.mul(&f)))
                    .collect();
                let (scale, a, b, c) = hnf_of_module(x.d, &gens)?;
                let generator = match (&x.generator, &y.generator) {
                    (Some(g), Some(h)) => Some(g.mul(h)),
                    _ => None,
                };
                Ok(FracIdeal::Quadratic(QuadIdeal { d: x.d, scale, a, b, c, generator }))
            }
            _ => Err(Error::InvalidIdeal("ideals from different fields".into())),
        }
    }

    pub fn scale_by(&self, c: &QuadElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidIdeal("scaling by zero".into()));
        }
        match self {
            FracIdeal::Rational(q) => Self::rational(q * c.a),
            FracIdeal::Quadratic(x) => {
                let gens: Vec<_> = self.z_basis().iter().map(|e| e.mul(c)).collect();
                let (scale, a, b, cc) = hnf_of_module(x.d, &gens)?;
                Ok(FracIdeal::Quadratic(QuadIdeal {
                    d: x.d,
                    scale,
                    a,
                    b,
                    c: cc,
                    generator: x.generator.as_ref().map(|g| g.mul(c)),
                }))
            }
        }
    }

    /// Galois-conjugate ideal.
    pub fn conj(&self) -> Self {
        match self {
            FracIdeal::Rational(q) => FracIdeal::Rational(*q),
            FracIdeal::Quadratic(x) => {
                let gens: Vec<_> = self.z_basis().iter().map(|e| e.conj()).collect();
                let (scale, a, b, c) = hnf_of_module(x.d, &gens).expect("conjugate of a lattice");
                FracIdeal::Quadratic(QuadIdeal {
                    d: x.d,
                    scale,
                    a,
                    b,
                    c,
                    generator: x.generator.as_ref().map(|g| g.conj()),
                })
            }
        }
    }

    /// `a^{-1} = a' / N(a)`.
    pub fn inverse(&self) -> Self {
        match self {
            FracIdeal::Rational(q) => FracIdeal::Rational(q.recip()),
            FracIdeal::Quadratic(x) => {
                let n = self.norm().recip();
                let gens: Vec<_> = self.z_basis().iter().map(|e| e.conj().scale(n)).collect();
                let (scale, a, b, c) = hnf_of_module(x.d, &gens).expect("inverse of a lattice");
                FracIdeal::Quadratic(QuadIdeal {
                    d: x.d,
                    scale,
                    a,
                    b,
                    c,
                    generator: x.generator.as_ref().map(|g| g.inv().expect("nonzero generator")),
                })
            }
        }
    }

    /// Trace dual `{x : Tr(x·a) ⊂ Z}`, computed from the trace form on a Z-basis.
    pub fn trace_dual(&self) -> Self {
        match self {
            FracIdeal::Rational(q) => FracIdeal::Rational(q.recip()),
            FracIdeal::Quadratic(x) => {
                let e = self.z_basis();
                let t = |i: usize, j: usize| e[i].mul(&e[j]).trace();
                let (t00, t01, t10, t11) = (t(0, 0), t(0, 1), t(1, 0), t(1, 1));
                let det = t00 * t11 - t01 * t10;
                // columns of T^{-1}
                let inv = [[t11 / det, -t01 / det], [-t10 / det, t00 / det]];
                let f: Vec<_> = (0..2)
                    .map(|j| e[0].scale(inv[0][j]).add(&e[1].scale(inv[1][j])))
                    .collect();
                let (scale, a, b, c) = hnf_of_module(x.d, &f).expect("dual of a lattice");
                FracIdeal::Quadratic(QuadIdeal { d: x.d, scale, a, b, c, generator: None })
            }
        }
    }

    /// Embedded Z-basis under the first embedding.
    pub fn embedded_basis(&self) -> Vec<Complex64> {
        self.z_basis().iter().map(|e| e.embed()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        match self {
            FracIdeal::Rational(q) => q.is_one(),
            FracIdeal::Quadratic(x) => x.scale.is_one() && x.a == 1 && x.b == 0 && x.c == 1,
        }
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FracIdeal::Rational(q) => write!(f, "({q})"),
            FracIdeal::Quadratic(x) => {
                if let Some(g) = &x.generator {
                    write!(f, "({g})")
                } else {
                    write!(f, "{}·[{}, {} + {}ω]", x.scale, x.a, x.b, x.c)
                }
            }
        }
    }
}

/// The dual ideal `a* = (a·d_F)^{-1}` with respect to `e^{2πi Tr(xy)}`.
pub fn dual_ideal(field: &FieldDescriptor, a: &FracIdeal) -> Result<FracIdeal> {
    if a.d() != field.d() {
        return Err(Error::InvalidIdeal(format!("ideal does not belong to {field}")));
    }
    match a.generator() {
        Some(g) if !field.is_rational() => {
            let h = g.mul(field.different_generator()).inv()?;
            FracIdeal::principal(field, &h)
        }
        _ => Ok(a.trace_dual()),
    }
}

/// Whether `α` is the chosen representative of its `⟨±ε⟩`-orbit in a real
/// quadratic field: `α > 0` and `1 ≤ |α/α'| < ε²`, decided exactly.
pub fn unit_fundamental_domain_test(field: &FieldDescriptor, alpha: &QuadElement) -> Result<bool> {
    let eps = field
        .fundamental_unit()
        .ok_or_else(|| Error::InvalidArgument(format!("{field} is not real quadratic")))?;
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("α = 0 has no unit orbit".into()));
    }
    if alpha.sign_real() <= 0 {
        return Ok(false);
    }
    // |α/α'| = α² / |N(α)|
    let n = alpha.norm().abs();
    let sq = alpha.mul(alpha);
    let lower = sq.sub(&QuadElement::rational(field.d(), n));
    let upper = eps.mul(eps).scale(n).sub(&sq);
    Ok(lower.sign_real() >= 0 && upper.sign_real() > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    /// Brute-force smallest unit > 1 from x² − D y² = ±4.
    fn brute_unit(d: i64) -> f64 {
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d } as i128;
        for y in 1i128..100_000 {
            for t in [-4i128, 4] {
                let x2 = disc * y * y + t;
                if x2 > 0 {
                    let x = (x2 as f64).sqrt().round() as i128;
                    if x * x == x2 {
                        return (x as f64 + y as f64 * (disc as f64).sqrt()) / 2.0;
                    }
                }
            }
        }
        panic!("no unit found");
    }

    #[test]
    fn rational_field_invariants() {
        let q = FieldDescriptor::rational();
        assert_eq!(q.discriminant(), 1);
        assert_eq!((q.r1(), q.r2(), q.roots_of_unity_count()), (1, 0, 2));
        assert_eq!(q.regulator(), 1.0);
        assert_eq!(q.c_constant(), 1.0);
    }

    #[test]
    fn sqrt5_golden_ratio() {
        let k = FieldDescriptor::quadratic(5).unwrap();
        assert_eq!(k.discriminant(), 5);
        assert_eq!(k.roots_of_unity_count(), 2);
        let eps = k.fundamental_unit().unwrap();
        assert!((eps.embed().re - 1.618_033_988_749_895).abs() < 1e-15);
        assert_eq!(eps.norm(), r(-1, 1));
        assert!((k.regulator() - eps.embed().re.ln()).abs() < 1e-15);
    }

    #[test]
    fn fundamental_units_match_brute_force() {
        for d in [2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 29, 31, 46, 61] {
            let k = FieldDescriptor::quadratic(d).unwrap();
            let eps = k.fundamental_unit().unwrap();
            let e = eps.embed().re;
            let b = brute_unit(d);
            assert!((e - b).abs() < 1e-9 * b, "d={d}: cf {e} vs brute {b}");
            assert!(e > 1.0);
            // ε·ε' = ±1 exactly
            assert!(eps.mul(&eps.conj()).norm().is_one());
            assert!(eps.is_integral());
        }
    }

    #[test]
    fn gaussian_field_roots_of_unity() {
        let k = FieldDescriptor::quadratic(-1).unwrap();
        assert_eq!(k.discriminant(), -4);
        assert_eq!(k.regulator(), 1.0);
        for d in [-1i64, -2, -3, -5, -7, -11, -15] {
            let k = FieldDescriptor::quadratic(d).unwrap();
            assert_eq!(roots_of_unity(&k).len(), k.roots_of_unity_count(), "d = {d}");
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FieldDescriptor::quadratic(12).is_err());
        assert!(FieldDescriptor::quadratic(1).is_err());
        assert!(FieldDescriptor::quadratic(0).is_err());
        assert!(FieldDescriptor::quadratic(-4).is_err());
        assert!(matches!(
            FieldDescriptor::base_field(FieldKind::Quadratic(-5)),
            Err(Error::UnsupportedBaseField(_))
        ));
        assert!(FieldDescriptor::base_field(FieldKind::Quadratic(5)).is_err());
        for d in SUPPORTED_IMAGINARY_BASES {
            assert!(FieldDescriptor::base_field(FieldKind::Quadratic(d)).is_ok());
        }
    }

    #[test]
    fn parse_field_specs() {
        assert!(FieldDescriptor::parse("Q").unwrap().is_rational());
        assert_eq!(FieldDescriptor::parse("Q(sqrt5)").unwrap().d(), 5);
        assert_eq!(FieldDescriptor::parse("Q(sqrt-1)").unwrap().d(), -1);
        assert_eq!(FieldDescriptor::parse("Q(sqrt{-3})").unwrap().d(), -3);
        assert_eq!(FieldDescriptor::parse("Q(sqrt(2))").unwrap().d(), 2);
        assert!(FieldDescriptor::parse("R").is_err());
        assert!(FieldDescriptor::parse("Q(sqrt8)").is_err());
    }

    #[test]
    fn element_arithmetic() {
        let k = FieldDescriptor::quadratic(-3).unwrap();
        let x = k.element(r(1, 2), r(3, 1));
        let y = k.element(r(-2, 1), r(1, 3));
        let p = x.mul(&y);
        let pe = x.embed() * y.embed();
        assert!((p.embed() - pe).norm() < 1e-12);
        assert_eq!(p.norm(), x.norm() * y.norm());
        assert!((x.embed_conj() - x.embed().conj()).norm() < 1e-12);
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi), k.one());
    }

    #[test]
    fn dual_of_rational_ideals() {
        let q = FieldDescriptor::rational();
        let z = FracIdeal::unit(&q);
        assert_eq!(dual_ideal(&q, &z).unwrap(), z);
        let three = FracIdeal::rational(r(3, 1)).unwrap();
        assert_eq!(dual_ideal(&q, &three).unwrap(), FracIdeal::rational(r(1, 3)).unwrap());
    }

    #[test]
    fn dual_of_gaussian_integers() {
        let k = FieldDescriptor::quadratic(-1).unwrap();
        let o = FracIdeal::unit(&k);
        let dual = dual_ideal(&k, &o).unwrap();
        let expected = FracIdeal::principal(&k, &k.int(0, 2).inv().unwrap()).unwrap();
        assert_eq!(dual, expected);
        // trace pairing is integral on Z-bases
        for x in o.z_basis() {
            for y in dual.z_basis() {
                assert!(x.mul(&y).trace().is_integer());
            }
        }
        assert_eq!(dual, o.trace_dual());
    }

    #[test]
    fn dual_matches_trace_dual_and_is_involutive() {
        for d in [-1i64, -2, -3, -7, -11] {
            let k = FieldDescriptor::quadratic(d).unwrap();
            for g in [k.int(1, 1), k.int(2, -1), k.int(3, 0), k.element(r(1, 2), r(1, 1))] {
                let a = FracIdeal::principal(&k, &g).unwrap();
                let dual = dual_ideal(&k, &a).unwrap();
                assert_eq!(dual, a.trace_dual(), "d={d}, g={g}");
                assert_eq!(dual_ideal(&k, &dual).unwrap(), a);
            }
        }
    }

    #[test]
    fn hnf_ideal_inverse_is_unit() {
        let k = FieldDescriptor::quadratic(-5).unwrap();
        let p = FracIdeal::from_hnf(&k, Rat::one(), 2, 1, 1).unwrap();
        assert_eq!(p.norm(), r(2, 1));
        let prod = p.mul(&p.inverse()).unwrap();
        assert!(prod.is_unit_ideal(), "{prod}");
        // p² = (2)
        let p2 = p.mul(&p).unwrap();
        assert_eq!(p2, FracIdeal::principal(&k, &k.int(2, 0)).unwrap());
        assert!(FracIdeal::from_hnf(&k, Rat::one(), 3, 0, 1).is_err());
    }

    #[test]
    fn fundamental_domain_predicate() {
        let k = FieldDescriptor::quadratic(5).unwrap();
        let eps = k.fundamental_unit().unwrap().clone();
        assert!(unit_fundamental_domain_test(&k, &k.one()).unwrap());
        assert!(!unit_fundamental_domain_test(&k, &eps.mul(&eps)).unwrap());
        assert!(!unit_fundamental_domain_test(&k, &k.int(-1, 0)).unwrap());
        assert!(unit_fundamental_domain_test(&k, &k.int(0, 0)).is_err());
        assert!(unit_fundamental_domain_test(&FieldDescriptor::quadratic(-1).unwrap(), &k.one()).is_err());
    }

    #[test]
    fn one_orbit_representative_passes() {
        for d in [2i64, 3, 5, 7] {
            let k = FieldDescriptor::quadratic(d).unwrap();
            let eps = k.fundamental_unit().unwrap().clone();
            let epsi = eps.inv().unwrap();
            for (a, b) in [(1, 1), (2, -1), (3, 2), (-4, 1), (5, 0), (1, -3)] {
                let alpha = k.int(a, b);
                if alpha.is_zero() {
                    continue;
                }
                let mut count = 0;
                for sign in [1i128, -1] {
                    let mut x = alpha.scale(Rat::from_integer(sign));
                    for _ in 0..6 {
                        x = x.mul(&epsi);
                    }
                    for _ in 0..13 {
                        if unit_fundamental_domain_test(&k, &x).unwrap() {
                            count += 1;
                        }
                        x = x.mul(&eps);
                    }
                }
                assert_eq!(count, 1, "d={d}, α={alpha}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn ideal_norm_is_multiplicative(
            d in proptest::sample::select(vec![-1i64, -2, -3, -5, -7, 2, 3, 5, 6]),
            a in -9i128..9, b in -9i128..9, e in -9i128..9, f in -9i128..9,
        ) {
            proptest::prop_assume!((a, b) != (0, 0) && (e, f) != (0, 0));
            let k = FieldDescriptor::quadratic(d).unwrap();
            let p = FracIdeal::principal(&k, &k.int(a, b)).unwrap();
            let q = FracIdeal::generated_by(&k, &[k.int(e, f), k.int(2, 0)]).unwrap();
            let pq = p.mul(&q).unwrap();
            proptest::prop_assert_eq!(pq.norm(), p.norm() * q.norm());
            proptest::prop_assert!(q.mul(&q.inverse()).unwrap().is_unit_ideal());
            proptest::prop_assert_eq!(p.norm(), k.int(a, b).norm().abs());
        }
    }
}
