//! Partial and completed zeta functions of ideals, Dirichlet L-series of
//! quadratic characters, and the constant `C_F`.
//!
//! `ξ_F(s, a) = d_F^{s/2} Γ_F(s) ζ_F(s, a)` with
//! `ζ_F(s, a) = N(a)^s Σ'_{α ∈ a/U_F} |N α|^{−s}`. For `F = Q` and imaginary
//! quadratic `F` it is continued to all `s` by splitting its Mellin integral
//! at `|N t| = 1`: after rescaling `a` to a lattice `L ⊂ F_R` of covolume 1,
//!
//! `ξ_F(s, a) = C_F [Φ(s, L) + Φ(1 − s, L*) + 1/(s − 1) − 1/s]`,
//! `Φ(s, L) = Σ'_{α ∈ L} (n/2) (nπ)^{−ns/2} |N α|^{−s} Γ(ns/2, nπ|α|²)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::basefield::{dual_ideal, rat_to_f64, unit_fundamental_domain_test, FieldDescriptor, FracIdeal, Rat};
use crate::dalgebra::{DNumber, PlaceKind};
use crate::error::{Error, Result};
use crate::lattice::ZLattice;
use crate::specialfun::{gamma, gamma_f, upper_incomplete_gamma, PrecisionConfig};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Distance from 0 and 1 below which `ξ_F` reports a pole.
pub const POLE_RADIUS: f64 = 1e-8;

const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

const EM_TERMS: usize = 30;

/// `(x^{1−s} − 1)/(s − 1)`, stable as `s → 1`.
fn em_power_difference(s: Complex64, x: f64) -> Complex64 {
    let lx = x.ln();
    let u = (1.0 - s) * lx;
    // (e^u − 1)/(s − 1) = −ln x · (e^u − 1)/u
    let ratio = if u.norm() < 1e-4 {
        1.0 + u * (0.5 + u * (1.0 / 6.0 + u / 24.0))
    } else {
        (u.exp() - 1.0) / u
    };
    -lx * ratio
}

/// Euler–Maclaurin remainder of `Σ_{k ≥ N} (k + a)^{−s}` without the
/// `1/(s − 1)` part of the integral term.
fn hurwitz_tail_regular(s: Complex64, a: f64) -> Complex64 {
    let x = EM_TERMS as f64 + a;
    let xs = (-s * x.ln()).exp();
    let mut sum = em_power_difference(s, x) + xs * 0.5;
    // B_{2j}/(2j)! · s(s+1)⋯(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut xpow = xs / x;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let jj = j + 1;
        sum += rising * xpow * (*b / fact);
        let k = 2 * jj - 1;
        rising *= (s + k as f64) * (s + (k + 1) as f64);
        fact *= ((2 * jj + 1) * (2 * jj + 2)) as f64;
        xpow /= x * x;
    }
    sum
}

fn hurwitz_head(s: Complex64, a: f64) -> Complex64 {
    (0..EM_TERMS).map(|k| (-s * (k as f64 + a).ln()).exp()).sum()
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k ≥ 0} (k + a)^{−s}` for `0 < a ≤ 1`, `s ≠ 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::Pole { s, residue: Complex64::new(1.0, 0.0) });
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz parameter {a} outside (0, 1]")));
    }
    Ok(hurwitz_head(s, a) + hurwitz_tail_regular(s, a) + 1.0 / (s - 1.0))
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// Kronecker symbol `(D/n)` for `n ≥ 1`.
pub fn kronecker_symbol(d: i64, n: u64) -> i32 {
    let mut n = n;
    let mut result = 1;
    while n % 2 == 0 {
        n /= 2;
        result *= match d.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
    }
    let mut p = 3u64;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            result *= legendre(d, p);
        }
        p += 2;
    }
    if n > 1 {
        result *= legendre(d, n);
    }
    result
}

fn legendre(d: i64, p: u64) -> i32 {
    let a = d.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u128;
    let mut b = a as u128;
    let mut e = (p - 1) / 2;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `L(s, χ_D)` for a fundamental discriminant `D ≠ 1` (or `ζ(s)` for `D = 1`).
pub fn dirichlet_l(s: Complex64, disc: i64) -> Result<Complex64> {
    if disc == 1 {
        return riemann_zeta(s);
    }
    let q = disc.unsigned_abs();
    let qf = q as f64;
    let mut sum = Complex64::zero();
    for a in 1..=q {
        let chi = kronecker_symbol(disc, a);
        if chi == 0 {
            continue;
        }
        let frac = a as f64 / qf;
        // the 1/(s − 1) parts cancel because Σ χ(a) = 0
        sum += (hurwitz_head(s, frac) + hurwitz_tail_regular(s, frac)) * chi as f64;
    }
    Ok(sum * (-s * qf.ln()).exp())
}

/// Dedekind zeta `ζ(s) L(s, χ_D)` of the quadratic field of discriminant `D`.
pub fn dedekind_zeta_quadratic(s: Complex64, disc: i64) -> Result<Complex64> {
    Ok(riemann_zeta(s)? * dirichlet_l(s, disc)?)
}

/// Partial zeta of one of the two ideal classes of a quadratic field whose
/// class group has order 2, separated by the genus characters attached to
/// `D = d1·d2`: `(ζ(s)L(s, χ_D) ± L(s, χ_{d1})L(s, χ_{d2}))/2`.
pub fn genus_partial_zeta(s: Complex64, d1: i64, d2: i64, principal: bool) -> Result<Complex64> {
    let full = dedekind_zeta_quadratic(s, d1 * d2)?;
    let genus = dirichlet_l(s, d1)? * dirichlet_l(s, d2)?;
    Ok(if principal { (full + genus) * 0.5 } else { (full - genus) * 0.5 })
}

/// `C_F = 2^{r1} (2π)^{r2} R_F / w_F`.
pub fn c_f(field: &FieldDescriptor) -> f64 {
    field.c_constant()
}

/// Archimedean factor `Γ_K(s)` of any quadratic field `K` (`π^{−s}Γ(s/2)²`
/// for real `K`, `(2π)^{1−s}Γ(s)` for imaginary `K`), or of `Q`.
pub fn gamma_k(field: &FieldDescriptor, s: Complex64) -> Complex64 {
    if field.is_real_quadratic() {
        let g = gamma(s * 0.5);
        (-s * PI.ln()).exp() * g * g
    } else if field.is_imaginary_quadratic() {
        ((1.0 - s) * (2.0 * PI).ln()).exp() * gamma(s)
    } else {
        (-(s * 0.5) * PI.ln()).exp() * gamma(s * 0.5)
    }
}

/// A truncated Dirichlet series with an estimate of the neglected tail.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `N(a)^s Σ'_{α ∈ a/U_F, |Nα| ≤ X} |N α|^{−s}` plus the asymptotic tail
/// `κ Y^{1−s}/(s − 1)`, `κ = C_F/√d_F`, `Y = X/N(a)`.
pub fn partial_zeta_series(field: &FieldDescriptor, ideal: &FracIdeal, s: Complex64, cutoff: f64) -> Result<SeriesValue> {
    if s.re <= 1.1 {
        return Err(Error::InvalidArgument(format!("Dirichlet series needs Re s > 1.1, got {s}")));
    }
    if !(cutoff >= 1.0) {
        return Err(Error::CutoffTooSmall(format!("cutoff {cutoff} < 1")));
    }
    let na = ideal.norm_f64();
    let y = cutoff / na;
    if y < 1.0 {
        return Err(Error::CutoffTooSmall(format!("cutoff {cutoff} below N(a) = {na}")));
    }
    let norms = orbit_norms(field, ideal, cutoff)?;
    let mut sum = Complex64::zero();
    // ascending norms keep the accumulation well conditioned
    for (n, mult) in norms.iter().rev() {
        sum += (-s * (rat_to_f64(*n) / na).ln()).exp() * *mult as f64;
    }
    let kappa = field.c_constant() / field.abs_discriminant().sqrt();
    let tail = kappa * ((1.0 - s) * y.ln()).exp() / (s - 1.0);
    let tail_bound = 10.0 * kappa * y.powf(0.5 - s.re) + tail.norm() * 1e-3;
    Ok(SeriesValue { value: sum + tail, tail_bound })
}

/// Norms `|N α|` of the nonzero `α ∈ a/U_F` with `|N α| ≤ X`, with multiplicity.
fn orbit_norms(field: &FieldDescriptor, ideal: &FracIdeal, cutoff: f64) -> Result<BTreeMap<Rat, u64>> {
    let mut out: BTreeMap<Rat, u64> = BTreeMap::new();
    let basis = ideal.z_basis();
    if field.is_rational() {
        let q = basis[0].a;
        let kmax = (cutoff / rat_to_f64(q)).floor() as i128;
        for k in 1..=kmax {
            *out.entry(q * Rat::from_integer(k)).or_default() += 1;
        }
        return Ok(out);
    }
    if field.is_imaginary_quadratic() {
        let lat = ZLattice::new(PlaceKind::Real, basis.iter().map(|e| DNumber::complex(e.embed())).collect())?;
        let w = field.roots_of_unity_count() as u64;
        let pts = lat.points_in_ball(cutoff.sqrt() * (1.0 + 1e-12), PrecisionConfig::default().max_points)?;
        let mut counts: BTreeMap<Rat, u64> = BTreeMap::new();
        for (c, _) in pts {
            if c.iter().all(|x| *x == 0) {
                continue;
            }
            let alpha = basis[0].scale(Rat::from_integer(c[0] as i128)).add(&basis[1].scale(Rat::from_integer(c[1] as i128)));
            let n = alpha.norm();
            if rat_to_f64(n) <= cutoff {
                *counts.entry(n).or_default() += 1;
            }
        }
        for (n, m) in counts {
            out.insert(n, m / w);
        }
        return Ok(out);
    }
    // real quadratic: one representative per ⟨±ε⟩-orbit
    let eps = field.fundamental_unit().expect("real quadratic").embed().re;
    let r = eps * cutoff.sqrt() * (1.0 + 1e-9);
    let m = [[basis[0].embed().re, basis[1].embed().re], [basis[0].embed_conj().re, basis[1].embed_conj().re]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let inv = [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]];
    let b0 = (r * (inv[0][0].abs() + inv[0][1].abs())).ceil() as i128;
    let b1 = (r * (inv[1][0].abs() + inv[1][1].abs())).ceil() as i128;
    if ((2 * b0 + 1) as f64) * ((2 * b1 + 1) as f64) > PrecisionConfig::default().max_points as f64 {
        return Err(Error::TooManyPoints { requested: ((2 * b0 + 1) * (2 * b1 + 1)) as u64, cap: PrecisionConfig::default().max_points });
    }
    for i in -b0..=b0 {
        for j in -b1..=b1 {
            if i == 0 && j == 0 {
                continue;
            }
            let a1 = i as f64 * m[0][0] + j as f64 * m[0][1];
            let a2 = (i as f64 * m[1][0] + j as f64 * m[1][1]).abs();
            if a1 <= 0.0 || a1 * a2 > cutoff * (1.0 + 1e-9) || a1 < a2 * (1.0 - 1e-9) || a1 > a2 * eps * eps * (1.0 + 1e-9) {
                continue;
            }
            let alpha = basis[0].scale(Rat::from_integer(i)).add(&basis[1].scale(Rat::from_integer(j)));
            let n = alpha.norm().abs();
            if rat_to_f64(n) > cutoff {
                continue;
            }
            if unit_fundamental_domain_test(field, &alpha)? {
                *out.entry(n).or_default() += 1;
            }
        }
    }
    Ok(out)
}

/// Distinct values of `|α|²` over the nonzero points of a lattice in `F_R`,
/// with multiplicities, up to a radius.
#[derive(Clone, Debug)]
struct NormShells {
    shells: Vec<(f64, u64)>,
}

impl NormShells {
    /// Shells of `c·a` for real `c > 0`, with `|α|² ≤ r2max`.
    fn new(field: &FieldDescriptor, ideal: &FracIdeal, c: f64, r2max: f64, cap: u64) -> Result<Self> {
        let basis = ideal.z_basis();
        let mut map: BTreeMap<Rat, u64> = BTreeMap::new();
        let c2 = c * c;
        if field.is_rational() {
            let q = basis[0].a;
            let qf = rat_to_f64(q);
            let kmax = ((r2max / c2).sqrt() / qf).floor() as i128 + 1;
            for k in 1..=kmax {
                let a = q * Rat::from_integer(k);
                *map.entry(a * a).or_default() += 2;
            }
        } else {
            let lat = ZLattice::new(PlaceKind::Real, basis.iter().map(|e| DNumber::complex(e.embed())).collect())?;
            let pts = lat.points_in_ball((r2max / c2).sqrt() * (1.0 + 1e-9) + 1e-9, cap)?;
            for (co, _) in pts {
                if co.iter().all(|x| *x == 0) {
                    continue;
                }
                let alpha = basis[0].scale(Rat::from_integer(co[0] as i128)).add(&basis[1].scale(Rat::from_integer(co[1] as i128)));
                *map.entry(alpha.norm()).or_default() += 1;
            }
        }
        let shells = map
            .into_iter()
            .map(|(n, m)| (rat_to_f64(n) * c2, m))
            .filter(|(r2, _)| *r2 <= r2max)
            .collect();
        Ok(Self { shells })
    }

    /// `Φ(s) = Σ' (n/2)(nπ)^{−ns/2} |α|^{−ns} Γ(ns/2, nπ|α|²)`.
    fn phi(&self, n: f64, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
        let sigma = s * n * 0.5;
        let pref = (-sigma * (n * PI).ln()).exp() * (n * 0.5);
        let mut acc = Complex64::zero();
        for (r2, mult) in self.shells.iter().rev() {
            let g = upper_incomplete_gamma(sigma, n * PI * r2, cfg)?;
            acc += g * (-sigma * r2.ln()).exp() * *mult as f64;
        }
        Ok(acc * pref)
    }
}

/// `ξ_F(s, a)` for `F = Q` or an imaginary quadratic base field, continued
/// to all `s ≠ 0, 1`.
#[derive(Clone, Debug)]
pub struct CompletedZeta {
    field: FieldDescriptor,
    ideal: FracIdeal,
    c_f: f64,
    cfg: PrecisionConfig,
    primal: NormShells,
    dual: NormShells,
}

impl CompletedZeta {
    pub fn new(field: &FieldDescriptor, ideal: &FracIdeal, cfg: &PrecisionConfig) -> Result<Self> {
        field.require_base()?;
        let n = PlaceKind::of(field).degree() as f64;
        // rescale so that V(c·a) = √d_F N(a) c^n = 1, which makes L* = c^{-1}·a* unimodular too
        let v = field.abs_discriminant().sqrt() * ideal.norm_f64();
        let c = v.powf(-1.0 / n);
        let dual_ideal = dual_ideal(field, ideal)?;
        // Γ(σ, x) ≤ x^{Re σ − 1} e^{−x} for the orders used (|Re s| ≲ 4)
        let ln_inv_tol = (1.0 / cfg.tol()).ln();
        let xmax = ln_inv_tol + 25.0 + 4.0 * n * (ln_inv_tol + 25.0).ln();
        let r2max = xmax / (n * PI);
        let primal = NormShells::new(field, ideal, c, r2max, cfg.max_points)?;
        let dual = NormShells::new(field, &dual_ideal, 1.0 / c, r2max, cfg.max_points)?;
        Ok(Self {
            field: field.clone(),
            ideal: ideal.clone(),
            c_f: field.c_constant(),
            cfg: *cfg,
            primal,
            dual,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }

    pub fn c_f(&self) -> f64 {
        self.c_f
    }

    fn n(&self) -> f64 {
        PlaceKind::of(&self.field).degree() as f64
    }

    /// `ξ_F(s, a)`; reports a pole within [`POLE_RADIUS`] of 0 and 1.
    pub fn xi(&self, s: Complex64) -> Result<Complex64> {
        if (s - 1.0).norm() < POLE_RADIUS {
            return Err(Error::Pole { s, residue: self.c_f.into() });
        }
        if s.norm() < POLE_RADIUS {
            return Err(Error::Pole { s, residue: (-self.c_f).into() });
        }
        Ok(self.xi_regular_part(s)? + self.c_f * (1.0 / (s - 1.0) - 1.0 / s))
    }

    /// `ξ_F(s, a) − C_F/(s − 1) + C_F/s`, entire in `s`.
    pub fn xi_regular_part(&self, s: Complex64) -> Result<Complex64> {
        let n = self.n();
        let a = self.primal.phi(n, s, &self.cfg)?;
        let b = self.dual.phi(n, 1.0 - s, &self.cfg)?;
        Ok((a + b) * self.c_f)
    }

    /// `Res_{s=1} ξ_F(s, a) = C_F`.
    pub fn residue_at_one(&self) -> f64 {
        self.c_f
    }

    /// `CT_{s=1} ξ_F(s, a) = C_F [Φ(1, L) + Φ(0, L*) − 1]`.
    pub fn ct_at_one(&self) -> Result<Complex64> {
        Ok(self.xi_regular_part(Complex64::new(1.0, 0.0))? - self.c_f)
    }

    /// `d_F^{s/2} Γ_F(s) ζ_F(s, a)` from the Dirichlet series (Re s > 1.1).
    pub fn xi_from_series(&self, s: Complex64, cutoff: f64) -> Result<SeriesValue> {
        let z = partial_zeta_series(&self.field, &self.ideal, s, cutoff)?;
        let f = (s * 0.5 * self.field.abs_discriminant().ln()).exp() * gamma_f(&self.field, s)?;
        Ok(SeriesValue { value: z.value * f, tail_bound: z.tail_bound * f.norm() })
    }
}

/// `ξ_F(s, a)` for a base field from the class-number-one factorisation
/// `ζ_F = ζ · L(·, χ_D)`; an oracle independent of the lattice code.
pub fn xi_oracle(field: &FieldDescriptor, s: Complex64) -> Result<Complex64> {
    field.require_base()?;
    let zeta = if field.is_rational() {
        riemann_zeta(s)?
    } else {
        dedekind_zeta_quadratic(s, field.discriminant())?
    };
    Ok((s * 0.5 * field.abs_discriminant().ln()).exp() * gamma_f(field, s)? * zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::simple_pole_laurent;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(1e-14).unwrap()
    }

    #[test]
    fn riemann_zeta_values() {
        let z2 = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-15);
        assert!((z2.re - 1.644_934_1).abs() < 1e-7);
        assert!((riemann_zeta(c(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-14);
        assert!((riemann_zeta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-12);
        // first nontrivial zero
        assert!(riemann_zeta(c(0.5, 14.134_725_141_734_69)).unwrap().norm() < 1e-12);
        // Laurent constant at 1 is Euler's γ
        let h = 2f64.powi(-17);
        let ct = (riemann_zeta(c(1.0 + h, 0.0)).unwrap() + riemann_zeta(c(1.0 - h, 0.0)).unwrap()) * 0.5;
        assert!((ct.re - EULER_GAMMA).abs() < 1e-9, "{ct}");
    }

    #[test]
    fn kronecker_symbols() {
        let chi4: Vec<i32> = (1..=8).map(|n| kronecker_symbol(-4, n)).collect();
        assert_eq!(chi4, vec![1, 0, -1, 0, 1, 0, -1, 0]);
        let chi5: Vec<i32> = (1..=5).map(|n| kronecker_symbol(5, n)).collect();
        assert_eq!(chi5, vec![1, -1, -1, 1, 0]);
        let chi8: Vec<i32> = (1..=8).map(|n| kronecker_symbol(8, n)).collect();
        assert_eq!(chi8, vec![1, 0, -1, 0, -1, 0, 1, 0]);
        // multiplicativity
        for d in [-20i64, -3, 12, 13, -7] {
            for a in 1..30u64 {
                for b in 1..30u64 {
                    assert_eq!(kronecker_symbol(d, a * b), kronecker_symbol(d, a) * kronecker_symbol(d, b));
                }
            }
        }
    }

    #[test]
    fn dirichlet_values() {
        let catalan = 0.915_965_594_177_219;
        assert!((dirichlet_l(c(2.0, 0.0), -4).unwrap().re - catalan).abs() < 1e-14);
        assert!((dirichlet_l(c(1.0, 0.0), -4).unwrap().re - PI / 4.0).abs() < 1e-14);
        // L(1, χ_5) = 2 log(φ)/√5
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((dirichlet_l(c(1.0, 0.0), 5).unwrap().re - 2.0 * phi.ln() / 5f64.sqrt()).abs() < 1e-14);
        // class number formula for Q(√−23): h = 3
        let l = dirichlet_l(c(1.0, 0.0), -23).unwrap().re;
        assert!((l * 23f64.sqrt() / PI - 3.0).abs() < 1e-12);
        let zk = dedekind_zeta_quadratic(c(2.0, 0.0), -4).unwrap().re;
        assert!((zk - 1.506_703_0).abs() < 1e-7);
    }

    /// `Σ χ(n) n^{−s}` summed directly with a large cutoff and averaged over
    /// the final period.
    fn brute_l(s: f64, d: i64) -> f64 {
        let q = d.unsigned_abs();
        let mut sum = 0.0;
        let n_max = 200_000u64 / q * q;
        let mut partials = 0.0;
        for n in 1..=n_max + q {
            sum += kronecker_symbol(d, n) as f64 * (n as f64).powf(-s);
            if n > n_max {
                partials += sum;
            }
        }
        partials / q as f64
    }

    #[test]
    fn dirichlet_against_direct_summation() {
        for d in [-4i64, 5, -20, 8, 12] {
            let s = 2.0;
            let l = dirichlet_l(c(s, 0.0), d).unwrap().re;
            assert!((l - brute_l(s, d)).abs() < 1e-8, "D = {d}");
        }
    }

    #[test]
    fn partial_series_examples() {
        let q = FieldDescriptor::rational();
        let z = FracIdeal::unit(&q);
        let v = partial_zeta_series(&q, &z, c(2.0, 0.0), 1e5).unwrap();
        assert!((v.value.re - 1.644_934_1).abs() < 1e-7);
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let o = FracIdeal::unit(&gi);
        let v = partial_zeta_series(&gi, &o, c(2.0, 0.0), 5e4).unwrap();
        assert!((v.value.re - 1.506_703_0).abs() < 1e-5, "{}", v.value);
        // scaling invariance
        let a = FracIdeal::principal(&gi, &gi.int(2, 1)).unwrap();
        let w = partial_zeta_series(&gi, &a, c(2.0, 0.0), 5e4 * 5.0).unwrap();
        assert!((w.value - v.value).norm() < 1e-6);
        assert!(partial_zeta_series(&gi, &o, c(1.05, 0.0), 1e3).is_err());
        assert!(matches!(partial_zeta_series(&gi, &a, c(2.0, 0.0), 2.0), Err(Error::CutoffTooSmall(_))));
    }

    #[test]
    fn real_quadratic_partial_series() {
        for d in [2i64, 5, 3] {
            let k = FieldDescriptor::quadratic(d).unwrap();
            let o = FracIdeal::unit(&k);
            let v = partial_zeta_series(&k, &o, c(2.0, 0.0), 2e5).unwrap();
            let oracle = dedekind_zeta_quadratic(c(2.0, 0.0), k.discriminant()).unwrap();
            assert!((v.value - oracle).norm() < 1e-5, "d={d}: {} vs {}", v.value, oracle);
        }
    }

    #[test]
    fn c_f_values() {
        assert_eq!(c_f(&FieldDescriptor::rational()), 1.0);
        assert!((c_f(&FieldDescriptor::quadratic(-1).unwrap()) - PI / 2.0).abs() < 1e-15);
        assert!((c_f(&FieldDescriptor::quadratic(-3).unwrap()) - PI / 3.0).abs() < 1e-15);
        assert!((c_f(&FieldDescriptor::quadratic(-7).unwrap()) - PI).abs() < 1e-15);
    }

    #[test]
    fn xi_rational_closed_form() {
        let q = FieldDescriptor::rational();
        let z = CompletedZeta::new(&q, &FracIdeal::unit(&q), &cfg()).unwrap();
        assert!((z.xi(c(2.0, 0.0)).unwrap().re - PI / 6.0).abs() < 1e-14);
        let ct = z.ct_at_one().unwrap();
        let oracle = EULER_GAMMA / 2.0 - (2.0 * PI.sqrt()).ln();
        assert!((ct.re - oracle).abs() < 1e-13);
        assert!((ct.re + 0.976_90).abs() < 1e-5);
        assert!(matches!(z.xi(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(z.xi(c(0.0, 1e-9)), Err(Error::Pole { .. })));
    }

    #[test]
    fn xi_matches_l_function_oracle() {
        let mut fields = vec![FieldDescriptor::rational()];
        for d in crate::basefield::SUPPORTED_IMAGINARY_BASES {
            fields.push(FieldDescriptor::quadratic(d).unwrap());
        }
        for f in &fields {
            for gen in [f.one(), if f.is_rational() { f.int(3, 0) } else { f.int(1, 1) }] {
                let ideal = FracIdeal::principal(f, &gen).unwrap();
                let z = CompletedZeta::new(f, &ideal, &cfg()).unwrap();
                for s in [c(1.5, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(0.5, 3.0), c(-0.7, 0.4)] {
                    let lhs = z.xi(s).unwrap();
                    let rhs = xi_oracle(f, s).unwrap();
                    assert!((lhs - rhs).norm() < 1e-11 * rhs.norm().max(1.0), "{f} s={s}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn xi_matches_dirichlet_series() {
        let gi = FieldDescriptor::quadratic(-3).unwrap();
        let z = CompletedZeta::new(&gi, &FracIdeal::unit(&gi), &cfg()).unwrap();
        let v = z.xi_from_series(c(2.0, 0.0), 1e5).unwrap();
        assert!((v.value - z.xi(c(2.0, 0.0)).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn xi_functional_equation() {
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let o = FracIdeal::unit(&gi);
        let dual = dual_ideal(&gi, &o).unwrap();
        let z = CompletedZeta::new(&gi, &o, &cfg()).unwrap();
        let zd = CompletedZeta::new(&gi, &dual, &cfg()).unwrap();
        for s in [c(0.3, 0.2), c(-1.0, 1.0), c(2.0, -0.5), c(0.5, 4.0), c(1.7, 0.1)] {
            let lhs = z.xi(s).unwrap();
            let rhs = zd.xi(1.0 - s).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn residue_and_constant_term_numerically() {
        for d in [0i64, -1, -3, -7] {
            let f = if d == 0 { FieldDescriptor::rational() } else { FieldDescriptor::quadratic(d).unwrap() };
            let z = CompletedZeta::new(&f, &FracIdeal::unit(&f), &cfg()).unwrap();
            let (res, ct) = simple_pole_laurent(|s| z.xi(s).unwrap(), c(1.0, 0.0), &[1e-2, 5e-3, 2.5e-3, 1.25e-3]);
            assert!((res.re - f.c_constant()).abs() < 1e-7);
            assert!((ct - z.ct_at_one().unwrap()).norm() < 1e-8);
            // (s − 1) ξ(s) along s = 1 + 10^{−k}
            let hs: Vec<f64> = (2..=5).map(|k| 10f64.powi(-k)).collect();
            let vals: Vec<Complex64> = hs.iter().map(|h| z.xi(c(1.0 + h, 0.0)).unwrap() * *h).collect();
            let r = crate::numeric::neville_at_zero(&hs, &vals);
            assert!((r.re - f.c_constant()).abs() < 1e-7);
        }
    }

    #[test]
    fn genus_split_of_minus_twenty() {
        let s = c(2.0, 0.0);
        let a0 = genus_partial_zeta(s, -4, 5, true).unwrap();
        let a1 = genus_partial_zeta(s, -4, 5, false).unwrap();
        // brute force over reduced forms x² + 5y² and 2x² + 2xy + 3y² (w = 2)
        let mut b0 = 0.0;
        let mut b1 = 0.0;
        let r = 1500i64;
        for x in -r..=r {
            for y in -r..=r {
                if x == 0 && y == 0 {
                    continue;
                }
                b0 += ((x * x + 5 * y * y) as f64).powi(-2);
                b1 += ((2 * x * x + 2 * x * y + 3 * y * y) as f64).powi(-2);
            }
        }
        assert!((a0.re - b0 / 2.0).abs() < 1e-5);
        assert!((a1.re - b1 / 2.0).abs() < 1e-5);
    }
}
