//! `O_F`-lattices `Λ = a·z + b` in `D_F`: Z-bases, covolume, the dual
//! lattice for the pairing `(λ, μ) ↦ Tr_{F/Q}(x-part of λμ)`, norm-bounded
//! enumeration and the theta series `Θ(t, Λ)`.

use std::collections::HashSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basefield::{dual_ideal, roots_of_unity, FieldDescriptor, FracIdeal};
use crate::dalgebra::{abs_norm_fr, dnorm, psi_exponent, DNumber, PlaceKind};
use crate::error::{Error, Result};
use crate::specialfun::PrecisionConfig;

/// A full-rank Z-lattice in `D_F` given by a Z-basis.
#[derive(Clone, Debug)]
pub struct ZLattice {
    place: PlaceKind,
    basis: Vec<DNumber>,
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

/// Lattice points of norm at most a bound, with the size of each unit orbit.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub points: Vec<DNumber>,
    pub orbit_size: usize,
}

impl Enumeration {
    pub fn orbit_count(&self) -> usize {
        self.points.len() / self.orbit_size
    }
}

impl ZLattice {
    pub fn new(place: PlaceKind, basis: Vec<DNumber>) -> Result<Self> {
        let m = 2 * place.degree();
        if basis.len() != m || basis.iter().any(|b| b.place != place) {
            return Err(Error::DegenerateLattice(format!(
                "need {m} basis vectors at a {place:?} place, got {}",
                basis.len()
            )));
        }
        let matrix = DMatrix::from_fn(m, m, |r, c| basis[c].real_coords()[r]);
        let scale = matrix.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let det = matrix.determinant();
        if !(det.abs() > 1e-13 * scale.powi(m as i32)) {
            return Err(Error::DegenerateLattice("basis vectors are linearly dependent".into()));
        }
        let inverse = matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::DegenerateLattice("singular basis matrix".into()))?;
        Ok(Self { place, basis, matrix, inverse })
    }

    pub fn place(&self) -> PlaceKind {
        self.place
    }

    pub fn basis(&self) -> &[DNumber] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as columns of real coordinates.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Covolume for the Haar measure on `D_F` (4 × Lebesgue at a complex place).
    pub fn covolume(&self) -> f64 {
        let haar = match self.place {
            PlaceKind::Real => 1.0,
            PlaceKind::Complex => 4.0,
        };
        self.matrix.determinant().abs() * haar
    }

    /// Real coefficients of `v` in the basis.
    pub fn coefficients(&self, v: &DNumber) -> Vec<f64> {
        let x = nalgebra::DVector::from_vec(v.real_coords());
        (&self.inverse * x).iter().copied().collect()
    }

    /// Whether `v` lies in the lattice up to `tol` in the coefficients.
    pub fn contains(&self, v: &DNumber, tol: f64) -> bool {
        self.coefficients(v).iter().all(|c| (c - c.round()).abs() <= tol)
    }

    /// Same Z-span, decided by mutual integrality of coordinates.
    pub fn same_span(&self, other: &ZLattice, tol: f64) -> bool {
        other.basis.iter().all(|b| self.contains(b, tol)) && self.basis.iter().all(|b| other.contains(b, tol))
    }

    pub fn left_mul(&self, w: &DNumber) -> Result<Self> {
        Self::new(self.place, self.basis.iter().map(|b| *w * *b).collect())
    }

    pub fn right_mul(&self, w: &DNumber) -> Result<Self> {
        Self::new(self.place, self.basis.iter().map(|b| *b * *w).collect())
    }

    pub fn conj(&self) -> Result<Self> {
        Self::new(self.place, self.basis.iter().map(|b| b.conj()).collect())
    }

    /// Dual lattice `{μ : ψ(λμ) = 1 for all λ ∈ Λ}`.
    pub fn dual(&self) -> Result<Self> {
        let m = self.dim();
        // P[i][r] = pairing of e_i with the r-th real unit vector
        let mut p = DMatrix::<f64>::zeros(m, m);
        for (i, e) in self.basis.iter().enumerate() {
            for r in 0..m {
                let mut u = vec![0.0; m];
                u[r] = 1.0;
                let ur = DNumber::from_real_coords(self.place, &u);
                p[(i, r)] = psi_exponent(&(*e * ur));
            }
        }
        let pinv = p
            .try_inverse()
            .ok_or_else(|| Error::IllConditioned("pairing matrix is singular".into()))?;
        let basis = (0..m)
            .map(|k| {
                let col: Vec<f64> = pinv.column(k).iter().copied().collect();
                DNumber::from_real_coords(self.place, &col)
            })
            .collect();
        Self::new(self.place, basis)
    }

    /// All lattice points with Euclidean length `|λ| ≤ radius`, as coordinate
    /// vectors. The coefficient box `|c_i| ≤ radius·‖row_i(A^{-1})‖` contains
    /// the whole ball.
    pub fn points_in_ball(&self, radius: f64, cap: u64) -> Result<Vec<(Vec<i64>, DNumber)>> {
        let m = self.dim();
        let bounds: Vec<i64> = (0..m)
            .map(|i| (radius * self.inverse.row(i).norm()).floor() as i64)
            .collect();
        let total: f64 = bounds.iter().map(|b| (2 * b + 1) as f64).product();
        if total > cap as f64 {
            return Err(Error::TooManyPoints { requested: total as u64, cap });
        }
        let r2 = radius * radius;
        let cols: Vec<Vec<f64>> = (0..m).map(|c| self.matrix.column(c).iter().copied().collect()).collect();
        let mut out = Vec::new();
        let mut c = bounds.iter().map(|b| -b).collect::<Vec<_>>();
        let mut v = vec![0.0; m];
        loop {
            v.iter_mut().for_each(|x| *x = 0.0);
            for (k, ck) in c.iter().enumerate() {
                if *ck != 0 {
                    let f = *ck as f64;
                    for r in 0..m {
                        v[r] += f * cols[k][r];
                    }
                }
            }
            if v.iter().map(|x| x * x).sum::<f64>() <= r2 {
                out.push((c.clone(), DNumber::from_real_coords(self.place, &v)));
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == m {
                    return Ok(out);
                }
                if c[k] < bounds[k] {
                    c[k] += 1;
                    break;
                }
                c[k] = -bounds[k];
                k += 1;
            }
        }
    }

    /// Nonzero points with `‖λ‖ ≤ bound`. Roots of unity of `F` act freely on
    /// them, each orbit having `orbit_size` elements.
    pub fn enumerate(&self, field: &FieldDescriptor, bound: f64, cap: u64) -> Result<Enumeration> {
        if !(bound > 0.0) {
            return Err(Error::InvalidArgument(format!("norm bound must be positive, got {bound}")));
        }
        let radius = bound.powf(1.0 / self.place.degree() as f64);
        let pts = self.points_in_ball(radius * (1.0 + 1e-12), cap)?;
        let points = pts
            .into_iter()
            .filter(|(c, p)| c.iter().any(|x| *x != 0) && dnorm(p) <= bound * (1.0 + 1e-12))
            .map(|(_, p)| p)
            .collect();
        Ok(Enumeration { points, orbit_size: field.roots_of_unity_count() })
    }

    /// One representative of each orbit of the roots of unity of `F`.
    pub fn orbit_representatives(&self, field: &FieldDescriptor, points: &[DNumber]) -> Vec<DNumber> {
        let units: Vec<Complex64> = roots_of_unity(field).iter().map(|u| u.embed()).collect();
        let key = |p: &DNumber| -> Vec<i64> { self.coefficients(p).iter().map(|c| c.round() as i64).collect() };
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for p in points {
            if seen.contains(&key(p)) {
                continue;
            }
            for u in &units {
                seen.insert(key(&p.left_scale(*u)));
            }
            reps.push(*p);
        }
        reps
    }

    /// `Θ(t, Λ) = Σ_{λ ∈ Λ} exp(−n π |t|² |λ|²)` for `t ∈ F_R^×`, including `λ = 0`.
    pub fn theta(&self, t: Complex64, cfg: &PrecisionConfig) -> Result<f64> {
        let n = self.place.degree() as f64;
        let t2 = t.norm_sqr();
        if t2 == 0.0 {
            return Err(Error::InvalidArgument("Θ(t, Λ) needs t ≠ 0".into()));
        }
        let cutoff = (1.0 / cfg.tol()).ln() + 12.0;
        let radius = (cutoff / (n * PI * t2)).sqrt();
        let pts = self.points_in_ball(radius, cfg.max_points)?;
        let mut terms: Vec<f64> = pts.iter().map(|(_, p)| (-n * PI * t2 * p.abs_sqr()).exp()).collect();
        terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(terms.iter().sum())
    }
}

/// An `O_F`-lattice `a·z + b` with `z = x + y·j_F`, `y ≠ 0`.
#[derive(Clone, Debug)]
pub struct OFLattice {
    field: FieldDescriptor,
    ideal_a: FracIdeal,
    ideal_b: FracIdeal,
    z: DNumber,
    zlat: ZLattice,
    volume: f64,
}

impl OFLattice {
    pub fn new(field: &FieldDescriptor, ideal_a: FracIdeal, ideal_b: FracIdeal, z: DNumber) -> Result<Self> {
        field.require_base()?;
        let place = PlaceKind::of(field);
        if z.place != place {
            return Err(Error::InvalidArgument(format!("z lives at a {:?} place, {field} needs {place:?}", z.place)));
        }
        let y_norm = abs_norm_fr(place, z.y());
        if !(y_norm > 0.0) || !y_norm.is_finite() {
            return Err(Error::DegenerateLattice("y-part of z must be invertible".into()));
        }
        let mut basis: Vec<DNumber> = ideal_a.embedded_basis().iter().map(|a| z.left_scale(*a)).collect();
        basis.extend(ideal_b.embedded_basis().iter().map(|b| DNumber::scalar(place, *b)));
        let zlat = ZLattice::new(place, basis)?;
        let volume = field.abs_discriminant() * ideal_a.norm_f64() * ideal_b.norm_f64() * y_norm;
        let det_volume = zlat.covolume();
        if (volume - det_volume).abs() > 1e-10 * volume {
            return Err(Error::IllConditioned(format!(
                "covolume mismatch: closed form {volume}, determinant {det_volume}"
            )));
        }
        Ok(Self { field: field.clone(), ideal_a, ideal_b, z, zlat, volume })
    }

    /// `O_F z + O_F`.
    pub fn standard(field: &FieldDescriptor, z: DNumber) -> Result<Self> {
        Self::new(field, FracIdeal::unit(field), FracIdeal::unit(field), z)
    }

    /// `Z z + Z` over `Q` for `z = x + iy`.
    pub fn rational(z: Complex64) -> Result<Self> {
        Self::standard(&FieldDescriptor::rational(), DNumber::complex(z))
    }

    /// Writes the Q-lattice `Zω₁ + Zω₂ ⊂ C` as `(Zτ + Z)·ω₂` with `Im τ > 0`,
    /// returning the lattice `Zτ + Z` and the factor `ω₂`.
    pub fn from_rational_z_basis(w1: Complex64, w2: Complex64) -> Result<(Self, Complex64)> {
        if w2.norm() == 0.0 {
            return Err(Error::DegenerateLattice("ω₂ = 0".into()));
        }
        let mut tau = w1 / w2;
        if tau.im < 0.0 {
            tau = -tau;
        }
        Ok((Self::rational(tau)?, w2))
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn ideal_a(&self) -> &FracIdeal {
        &self.ideal_a
    }

    pub fn ideal_b(&self) -> &FracIdeal {
        &self.ideal_b
    }

    pub fn z(&self) -> DNumber {
        self.z
    }

    pub fn place(&self) -> PlaceKind {
        self.z.place
    }

    pub fn z_lattice(&self) -> &ZLattice {
        &self.zlat
    }

    /// `V(Λ) = d_F N(a) N(b) |N(y)|`, cross-checked against the basis determinant.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// `|N(y)|`.
    pub fn abs_norm_y(&self) -> f64 {
        abs_norm_fr(self.place(), self.z.y())
    }

    /// `Y = N(a)/N(b)·|N(y)|`.
    pub fn y_factor(&self) -> f64 {
        self.ideal_a.norm_f64() / self.ideal_b.norm_f64() * self.abs_norm_y()
    }

    pub fn dual(&self) -> Result<ZLattice> {
        self.zlat.dual()
    }

    /// A lattice `a'·z̃ + b'` whose Eisenstein series equals that of `Λ*`.
    ///
    /// `Λ* = w₁ b* + w₂ a*` (right multiplication) with `w₁ = 1 + (x̄/ȳ) j`
    /// and `w₂ = −(1/ȳ) j`; conjugating gives the left module
    /// `(ā*·z̃ + b̄*)·w̄₁` with `z̃ = w̄₂ w̄₁^{-1}`, which has the same norms and
    /// covolume as `Λ*`. Returns the lattice and the factor `w̄₁`.
    pub fn dual_pseudo_basis(&self) -> Result<(OFLattice, DNumber)> {
        let place = self.place();
        let (x, y) = (self.z.x(), self.z.y());
        let yb = y.conj();
        let w1 = DNumber::one(place) + DNumber::j(place).left_scale(x.conj() / yb);
        let w2 = DNumber::j(place).left_scale(-1.0 / yb);
        let w1c = w1.conj();
        let w2c = w2.conj();
        let zt = w2c * w1c.inv().ok_or_else(|| Error::DegenerateLattice("w₁ = 0".into()))?;
        let a_dual = dual_ideal(&self.field, &self.ideal_a)?.conj();
        let b_dual = dual_ideal(&self.field, &self.ideal_b)?.conj();
        Ok((OFLattice::new(&self.field, a_dual, b_dual, zt)?, w1c))
    }

    /// Nonzero points of norm at most `bound`.
    pub fn enumerate(&self, bound: f64, cap: u64) -> Result<Enumeration> {
        self.zlat.enumerate(&self.field, bound, cap)
    }

    pub fn theta(&self, t: Complex64, cfg: &PrecisionConfig) -> Result<f64> {
        self.zlat.theta(t, cfg)
    }
}

/// An element of `SL₂(Z)` acting by Möbius transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2z {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a as f64 + self.b as f64) / (z * self.c as f64 + self.d as f64)
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Moves `z` into the standard fundamental domain of `SL₂(Z)` (after replacing
/// `z` by `−z` when `Im z < 0`); returns the reduced point and the matrix `g`
/// with `g·z = reduced`.
pub fn reduce_upper_half_plane(z: Complex64) -> (Complex64, Sl2z) {
    let mut w = if z.im < 0.0 { -z } else { z };
    let mut g = Sl2z::IDENTITY;
    for _ in 0..10_000 {
        let n = w.re.round();
        if n != 0.0 {
            w -= n;
            g = Sl2z { a: 1, b: -(n as i64), c: 0, d: 1 }.compose(&g);
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            w = -1.0 / w;
            g = Sl2z { a: 0, b: -1, c: 1, d: 0 }.compose(&g);
        } else {
            break;
        }
    }
    (w, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::Rat;
    use crate::dalgebra::Quaternion;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_rational(rng: &mut ChaCha8Rng) -> OFLattice {
        OFLattice::rational(c(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..2.0))).unwrap()
    }

    fn random_gaussian(rng: &mut ChaCha8Rng, d: i64) -> OFLattice {
        let f = FieldDescriptor::quadratic(d).unwrap();
        let z = DNumber::quaternion(Quaternion::new(
            c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            c(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5)),
        ));
        OFLattice::standard(&f, z).unwrap()
    }

    #[test]
    fn volume_examples() {
        let l = OFLattice::rational(c(0.3, 1.7)).unwrap();
        assert!((l.volume() - 1.7).abs() < 1e-15);
        let scaled = l.z_lattice().left_mul(&DNumber::complex(c(2.5, 0.0))).unwrap();
        assert!((scaled.covolume() - 2.5f64.powi(2) * l.volume()).abs() < 1e-12);
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let l = OFLattice::standard(&gi, DNumber::j(PlaceKind::Complex)).unwrap();
        assert!((l.volume() - 4.0).abs() < 1e-14);
        assert!((l.z_lattice().covolume() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn volume_scaling_by_dnumbers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [-1, -2, -3, -7, -11] {
            let l = random_gaussian(&mut rng, d);
            let w = DNumber::quaternion(Quaternion::from_coords(0.3, -1.1, 0.7, 0.2));
            let nw = dnorm(&w);
            for m in [l.z_lattice().left_mul(&w).unwrap(), l.z_lattice().right_mul(&w).unwrap()] {
                assert!((m.covolume() - nw * nw * l.volume()).abs() < 1e-10 * l.volume());
            }
        }
    }

    #[test]
    fn rejects_degenerate_z() {
        assert!(matches!(OFLattice::rational(c(0.5, 0.0)), Err(Error::DegenerateLattice(_))));
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let z = DNumber::scalar(PlaceKind::Complex, c(0.2, 0.3));
        assert!(matches!(OFLattice::standard(&gi, z), Err(Error::DegenerateLattice(_))));
        let f = FieldDescriptor::quadratic(-5).unwrap();
        assert!(matches!(
            OFLattice::standard(&f, DNumber::j(PlaceKind::Complex)),
            Err(Error::UnsupportedBaseField(_))
        ));
    }

    #[test]
    fn dual_of_square_lattice() {
        let l = OFLattice::rational(c(0.0, 1.0)).unwrap();
        let dual = l.dual().unwrap();
        assert!(dual.same_span(l.z_lattice(), 1e-12));
    }

    #[test]
    fn rational_dual_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let l = random_rational(&mut rng);
            let z = l.z().as_complex();
            let y = z.im;
            let expected = ZLattice::new(
                PlaceKind::Real,
                vec![DNumber::complex(c(0.0, 1.0 / y) * z.conj()), DNumber::complex(c(0.0, 1.0 / y))],
            )
            .unwrap();
            let dual = l.dual().unwrap();
            assert!(dual.same_span(&expected, 1e-9));
            assert!((dual.covolume() * l.volume() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn dual_pairing_volume_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut lattices: Vec<OFLattice> = (0..5).map(|_| random_rational(&mut rng)).collect();
        for d in [-1, -2, -3, -7, -11] {
            lattices.push(random_gaussian(&mut rng, d));
        }
        for l in &lattices {
            let dual = l.dual().unwrap();
            for e in l.z_lattice().basis() {
                for f in dual.basis() {
                    let p = psi_exponent(&(*e * *f));
                    assert!((p - p.round()).abs() < 1e-10);
                }
            }
            assert!((dual.covolume() * l.volume() - 1.0).abs() < 1e-10);
            assert!(dual.dual().unwrap().same_span(l.z_lattice(), 1e-9));
        }
    }

    #[test]
    fn dual_pseudo_basis_spans_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut lattices: Vec<OFLattice> = (0..5).map(|_| random_rational(&mut rng)).collect();
        for d in [-1, -2, -3, -7, -11] {
            lattices.push(random_gaussian(&mut rng, d));
        }
        // non-unit ideals
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let a = FracIdeal::principal(&gi, &gi.int(1, 1)).unwrap();
        let b = FracIdeal::principal(&gi, &gi.int(3, 0)).unwrap();
        lattices.push(OFLattice::new(&gi, a, b, DNumber::quaternion(Quaternion::from_coords(0.1, 0.2, 0.9, 0.3))).unwrap());
        let q = FieldDescriptor::rational();
        lattices.push(
            OFLattice::new(
                &q,
                FracIdeal::rational(Rat::new(2, 3)).unwrap(),
                FracIdeal::rational(Rat::new(5, 1)).unwrap(),
                DNumber::complex(c(0.4, 0.8)),
            )
            .unwrap(),
        );
        for l in &lattices {
            let dual = l.dual().unwrap();
            let (pb, w) = l.dual_pseudo_basis().unwrap();
            let recon = pb.z_lattice().right_mul(&w).unwrap().conj().unwrap();
            assert!(recon.same_span(&dual, 1e-9), "z = {:?}", l.z());
            assert!((pb.volume() * dnorm(&w).powi(2) - 1.0 / l.volume()).abs() < 1e-10 / l.volume());
        }
    }

    #[test]
    fn enumeration_examples() {
        let q = FieldDescriptor::rational();
        let l = OFLattice::rational(c(0.0, 1.0)).unwrap();
        let e = l.enumerate(1.0, 1_000_000).unwrap();
        assert_eq!(e.points.len(), 4);
        assert_eq!(e.orbit_count(), 2);
        assert_eq!(l.z_lattice().orbit_representatives(&q, &e.points).len(), 2);
        let l = OFLattice::rational(c(0.0, 2.0)).unwrap();
        let e = l.enumerate(1.5, 1_000_000).unwrap();
        assert_eq!(e.points.len(), 2);
        assert!(e.points.iter().all(|p| (p.as_complex().norm() - 1.0).abs() < 1e-15));
        assert!(matches!(l.enumerate(1e6, 1000), Err(Error::TooManyPoints { .. })));
    }

    #[test]
    fn enumeration_orbits_are_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for i in 0..10 {
            let l = if i < 5 { random_rational(&mut rng) } else { random_gaussian(&mut rng, [-1, -3, -2, -7, -11][i - 5]) };
            let e = l.enumerate(6.0, 10_000_000).unwrap();
            let w = l.field().roots_of_unity_count();
            assert_eq!(e.points.len() % w, 0);
            let reps = l.z_lattice().orbit_representatives(l.field(), &e.points);
            assert_eq!(reps.len() * w, e.points.len());
        }
    }

    #[test]
    fn ball_enumeration_is_complete() {
        // brute force over a generous box
        let l = OFLattice::rational(c(0.37, 0.41)).unwrap();
        let pts = l.z_lattice().points_in_ball(3.0, 1_000_000).unwrap();
        let z = c(0.37, 0.41);
        let mut count = 0;
        for m in -40i64..=40 {
            for n in -40i64..=40 {
                if (z * m as f64 + n as f64).norm() <= 3.0 {
                    count += 1;
                }
            }
        }
        assert_eq!(pts.len(), count);
    }

    #[test]
    fn theta_transformation_law() {
        let cfg = PrecisionConfig::new(1e-14).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for i in 0..20 {
            let l = if i % 2 == 0 { random_rational(&mut rng) } else { random_gaussian(&mut rng, -1) };
            let t = if i % 2 == 0 {
                c(rng.gen_range(0.5..1.8), 0.0)
            } else {
                c(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))
            };
            let dual = l.dual().unwrap();
            let lhs = l.theta(t, &cfg).unwrap();
            let nt = abs_norm_fr(l.place(), t);
            let rhs = dual.theta(1.0 / t, &cfg).unwrap() / (l.volume() * nt * nt);
            assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
        }
        let l = OFLattice::rational(c(0.0, 1.0)).unwrap();
        let lhs = l.theta(c(1.3, 0.0), &cfg).unwrap();
        let rhs = l.dual().unwrap().theta(c(1.0 / 1.3, 0.0), &cfg).unwrap() / 1.3f64.powi(2);
        assert!((lhs - rhs).abs() < 1e-12);
        assert!((l.theta(c(30.0, 0.0), &cfg).unwrap() - 1.0).abs() < 1e-300);
    }

    #[test]
    fn reduction_lands_in_fundamental_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(0.01..3.0));
            let (w, g) = reduce_upper_half_plane(z);
            assert!(w.re.abs() <= 0.5 + 1e-12 && w.norm_sqr() >= 1.0 - 1e-12);
            assert!((g.apply(z) - w).norm() < 1e-9 * w.norm());
            assert_eq!(g.a * g.d - g.b * g.c, 1);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn duality_invariants(x in -3.0f64..3.0, y in 0.3f64..3.0, t in 0.6f64..1.6) {
            let l = OFLattice::rational(c(x, y)).unwrap();
            let dual = l.dual().unwrap();
            proptest::prop_assert!((dual.covolume() * l.volume() - 1.0).abs() < 1e-10);
            proptest::prop_assert!(dual.dual().unwrap().same_span(l.z_lattice(), 1e-9));
            let cfg = PrecisionConfig::new(1e-14).unwrap();
            let lhs = l.theta(c(t, 0.0), &cfg).unwrap();
            let rhs = dual.theta(c(1.0 / t, 0.0), &cfg).unwrap() / (l.volume() * t * t);
            proptest::prop_assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
