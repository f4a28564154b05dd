//! The Eisenstein series `E(Λ, s) = Σ'_{λ ∈ Λ/U_F} V(Λ)^s ‖λ‖^{−2s}` and its
//! completion `Ê(Λ, s) = Γ_F(2s) E(Λ, s)`.
//!
//! Two evaluation paths are provided: a screened lattice sum (Ewald
//! splitting of the Epstein zeta function of `Λ ⊂ R^m`) and the
//! Fourier–Bessel expansion of `Ê(a z + b, s)`, which is valid for every `s`
//! away from the poles at `0` and `1`. The latter also yields the residue,
//! the constant term at `s = 1` and the Kronecker limit function `h_F`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basefield::{dual_ideal, rat_to_f64, FieldDescriptor, FracIdeal};
use crate::dalgebra::{dnorm, trace_fr, DNumber, PlaceKind};
use crate::error::{Error, Result};
use crate::lattice::{OFLattice, ZLattice};
use crate::numeric::simple_pole_laurent;
use crate::specialfun::{b_f, gamma, gamma_f, upper_incomplete_gamma, PrecisionConfig};
use crate::zeta::{CompletedZeta, POLE_RADIUS};

/// Smallest `Re s` accepted by the direct lattice sum.
pub const DIRECT_MIN_RE: f64 = 1.05;

/// Radius of the circle around `s = 1/2` on which the expansion is sampled
/// when `s` is close to `1/2`, where two of its terms have cancelling poles.
const HALF_CIRCLE_RADIUS: f64 = 0.05;
const HALF_CIRCLE_NODES: usize = 32;

/// Evaluation path for `Ê(Λ, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Expansion,
    /// Direct sum for `Re s > 1.05`, expansion otherwise.
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(Self::Direct),
            "expansion" => Ok(Self::Expansion),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Parse {
                field: "method".into(),
                message: format!("expected direct, expansion or auto, got {other:?}"),
            }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Direct => "direct",
            Self::Expansion => "expansion",
            Self::Auto => "auto",
        })
    }
}

/// Points of equal length in a lattice.
#[derive(Clone, Debug)]
struct Shell {
    r2: f64,
    points: Vec<Complex64>,
}

/// Groups `(|p|², p)` pairs into shells of equal length.
fn cluster<T: Copy>(mut pts: Vec<(f64, T)>) -> Vec<(f64, Vec<T>)> {
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut out: Vec<(f64, Vec<T>)> = Vec::new();
    for (r2, p) in pts {
        match out.last_mut() {
            Some((last, v)) if (r2 - *last).abs() <= 1e-12 * r2.max(1e-300) => v.push(p),
            _ => out.push((r2, vec![p])),
        }
    }
    out
}

/// Nonzero elements of a fractional ideal (embedded in `F_R`) with
/// `|α| ≤ radius`, grouped by `|α|`.
fn ideal_shells(field: &FieldDescriptor, ideal: &FracIdeal, radius: f64, cap: u64) -> Result<Vec<Shell>> {
    if field.is_rational() {
        let q = rat_to_f64(ideal.z_basis()[0].a).abs();
        let kmax = (radius / q).floor() as u64;
        if kmax > cap {
            return Err(Error::TooManyPoints { requested: kmax, cap });
        }
        return Ok((1..=kmax)
            .map(|k| {
                let a = k as f64 * q;
                Shell { r2: a * a, points: vec![Complex64::new(a, 0.0), Complex64::new(-a, 0.0)] }
            })
            .collect());
    }
    let basis: Vec<DNumber> = ideal.embedded_basis().iter().map(|e| DNumber::complex(*e)).collect();
    let lat = ZLattice::new(PlaceKind::Real, basis)?;
    let pts = lat
        .points_in_ball(radius, cap)?
        .into_iter()
        .filter(|(c, _)| c.iter().any(|x| *x != 0))
        .map(|(_, p)| (p.abs_sqr(), p.as_complex()))
        .collect();
    Ok(cluster(pts).into_iter().map(|(r2, points)| Shell { r2, points }).collect())
}

/// Length of a shortest nonzero element of a fractional ideal.
fn ideal_minimum(field: &FieldDescriptor, ideal: &FracIdeal) -> Result<f64> {
    let radius = ideal
        .embedded_basis()
        .iter()
        .map(|e| e.norm())
        .fold(0.0f64, f64::max)
        * (1.0 + 1e-12);
    let shells = ideal_shells(field, ideal, radius, 1_000_000)?;
    Ok(shells.first().map(|s| s.r2.sqrt()).unwrap_or(radius))
}

fn cexp(z: Complex64) -> Complex64 {
    z.exp()
}

/// `x^s` for real `x > 0`.
fn rpow(x: f64, s: Complex64) -> Complex64 {
    cexp(s * x.ln())
}

/// The Euclidean dual `{μ : ⟨μ, λ⟩ ∈ Z}` of a lattice in `R^m`.
fn euclidean_dual(zlat: &ZLattice) -> Result<ZLattice> {
    let a: &DMatrix<f64> = zlat.matrix();
    let inv_t = a
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateLattice("singular basis matrix".into()))?
        .transpose();
    let basis = (0..zlat.dim())
        .map(|k| {
            let col: Vec<f64> = inv_t.column(k).iter().copied().collect();
            DNumber::from_real_coords(zlat.place(), &col)
        })
        .collect();
    ZLattice::new(zlat.place(), basis)
}

/// Shells `(|λ|², multiplicity)` of nonzero lattice points with `|λ|² ≤ r2max`.
fn norm_shells(zlat: &ZLattice, r2max: f64, cap: u64) -> Result<Vec<(f64, usize)>> {
    let pts = zlat
        .points_in_ball(r2max.sqrt(), cap)?
        .into_iter()
        .filter(|(c, _)| c.iter().any(|x| *x != 0))
        .map(|(_, p)| (p.abs_sqr(), ()))
        .collect();
    Ok(cluster(pts).into_iter().map(|(r2, v)| (r2, v.len())).collect())
}

/// The Epstein zeta function `Z(σ) = Σ'_{λ ∈ L} |λ|^{−2σ}` of a lattice in
/// `R^m`, continued to all `σ ≠ m/2` by Ewald splitting.
///
/// With `τ₀ = V_L^{−2/m}` (`V_L` the Lebesgue covolume) and `L^∨` the
/// Euclidean dual,
/// `Z(σ) = Σ' Γ(σ, πτ₀|λ|²)/Γ(σ) |λ|^{−2σ}
///        + π^σ/(Γ(σ) V_L) [τ₀^{σ−m/2}/(σ − m/2) + Σ'_{μ ∈ L^∨} (π|μ|²)^{σ−m/2} Γ(m/2 − σ, π|μ|²/τ₀)]
///        − (πτ₀)^σ/Γ(σ + 1)`.
pub fn epstein_zeta(zlat: &ZLattice, sigma: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let m = zlat.dim() as f64;
    let half_m = m / 2.0;
    let vl = zlat.matrix().determinant().abs();
    if (sigma - half_m).norm() < POLE_RADIUS {
        let residue = PI.powf(half_m) / (gamma(Complex64::new(half_m, 0.0)).re * vl);
        return Err(Error::Pole { s: sigma, residue: residue.into() });
    }
    let tau0 = vl.powf(-2.0 / m);
    let g = gamma(sigma);
    let inv_gamma = if g.is_finite() { 1.0 / g } else { Complex64::new(0.0, 0.0) };
    let g1 = gamma(sigma + 1.0);
    let inv_gamma1 = if g1.is_finite() { 1.0 / g1 } else { Complex64::new(0.0, 0.0) };

    // terms on either side behave like (πτ₀)^σ/Γ(σ)·e^{−X}/X times a shell count ~ X^{m/2−1}
    let amp = (rpow(PI * tau0, sigma) * inv_gamma).norm().max(1e-300);
    let target = cfg.tol() * 1e-3;
    let mut x_cut = 30.0f64;
    for _ in 0..8 {
        x_cut = ((1e3 * amp / target).ln() + (half_m - 2.0) * x_cut.ln()).max(10.0);
    }

    let direct_shells = norm_shells(zlat, x_cut / (PI * tau0), cfg.max_points)?;
    let mut direct = Complex64::new(0.0, 0.0);
    for (r2, mult) in direct_shells.iter().rev() {
        let gi = upper_incomplete_gamma(sigma, PI * tau0 * r2, cfg)?;
        direct += gi * rpow(*r2, -sigma) * (*mult as f64);
    }

    let dual = euclidean_dual(zlat)?;
    let recip_shells = norm_shells(&dual, x_cut * tau0 / PI, cfg.max_points)?;
    let order = half_m - sigma;
    let mut recip = Complex64::new(0.0, 0.0);
    for (mu2, mult) in recip_shells.iter().rev() {
        let gi = upper_incomplete_gamma(order, PI * mu2 / tau0, cfg)?;
        recip += gi * rpow(PI * mu2, -order) * (*mult as f64);
    }
    recip += rpow(tau0, -order) / (sigma - half_m);

    Ok(inv_gamma * direct + rpow(PI, sigma) * inv_gamma / vl * recip - rpow(PI * tau0, sigma) * inv_gamma1)
}

/// `E(Λ, s) = V(Λ)^s/w_F · Σ'_{λ ∈ Λ} |λ|^{−2 n s}` for any `Z`-lattice
/// `Λ ⊂ D_F` stable under the roots of unity, continued by
/// [`epstein_zeta`]; no restriction on `s` beyond `s ≠ 1`.
pub fn eisenstein_screened(field: &FieldDescriptor, zlat: &ZLattice, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let n = zlat.place().degree() as f64;
    let w = field.roots_of_unity_count() as f64;
    let z = epstein_zeta(zlat, s * n, cfg).map_err(|e| match e {
        Error::Pole { residue, .. } => Error::Pole { s, residue: residue / n * rpow(zlat.covolume(), Complex64::new(1.0, 0.0)) / w },
        other => other,
    })?;
    Ok(rpow(zlat.covolume(), s) * z / w)
}

/// Direct evaluation of `E(Λ, s)` for `Re s > 1.05`.
pub fn eisenstein_direct(field: &FieldDescriptor, zlat: &ZLattice, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    if !(s.re > DIRECT_MIN_RE) {
        return Err(Error::DirectSumDomain { s, min_re: DIRECT_MIN_RE });
    }
    eisenstein_screened(field, zlat, s, cfg)
}

/// The three pieces of the Fourier expansion of `Ê(a z + b, s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionTerms {
    /// `Y^s ξ_F(2s, b)` with `Y = N(a)/N(b)·|N(y)|`.
    pub zeta_b: Complex64,
    /// `Y^{1−s} ξ_F(2s − 1, a)`.
    pub zeta_a: Complex64,
    /// `V(a)^s V(b)^{s−1} |N(y)|^s Σ_{(α, β*)} e^{2πi Tr(xαβ*)} B_F(αy, β*, s − 1/2)`.
    pub bessel: Complex64,
}

impl ExpansionTerms {
    pub fn total(&self) -> Complex64 {
        self.zeta_b + self.zeta_a + self.bessel
    }
}

/// Laurent data of `Ê(Λ, s)` at `s = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaurentAtOne {
    pub residue: f64,
    pub constant_term: f64,
}

/// Evaluator for `Ê(a z + b, s)` with cached completed zeta functions of
/// `a` and `b`.
#[derive(Clone, Debug)]
pub struct EisensteinEvaluator {
    lattice: OFLattice,
    cfg: PrecisionConfig,
    xi_a: CompletedZeta,
    xi_b: CompletedZeta,
    b_dual: FracIdeal,
    alpha_min: f64,
    beta_min: f64,
}

impl EisensteinEvaluator {
    pub fn new(lattice: OFLattice, cfg: &PrecisionConfig) -> Result<Self> {
        let field = lattice.field().clone();
        if lattice.abs_norm_y() < 1e-10 {
            return Err(Error::IllConditioned(format!(
                "|N(y)| = {:e} is too small for the Fourier expansion",
                lattice.abs_norm_y()
            )));
        }
        let xi_a = CompletedZeta::new(&field, lattice.ideal_a(), cfg)?;
        let xi_b = CompletedZeta::new(&field, lattice.ideal_b(), cfg)?;
        let b_dual = dual_ideal(&field, lattice.ideal_b())?;
        let alpha_min = ideal_minimum(&field, lattice.ideal_a())?;
        let beta_min = ideal_minimum(&field, &b_dual)?;
        Ok(Self { lattice, cfg: *cfg, xi_a, xi_b, b_dual, alpha_min, beta_min })
    }

    pub fn lattice(&self) -> &OFLattice {
        &self.lattice
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.lattice.field()
    }

    pub fn precision(&self) -> &PrecisionConfig {
        &self.cfg
    }

    fn n(&self) -> f64 {
        self.lattice.place().degree() as f64
    }

    /// `Ê(Λ, s)` by the chosen method.
    pub fn completed(&self, s: Complex64, method: Method) -> Result<Complex64> {
        match method {
            Method::Direct => self.direct(s),
            Method::Expansion => self.expansion(s),
            Method::Auto if s.re > DIRECT_MIN_RE => self.direct(s),
            Method::Auto => self.expansion(s),
        }
    }

    /// `E(Λ, s) = Ê(Λ, s)/Γ_F(2s)`.
    pub fn eisenstein(&self, s: Complex64, method: Method) -> Result<Complex64> {
        let e_hat = self.completed(s, method)?;
        Ok(e_hat / gamma_f(self.field(), s * 2.0)?)
    }

    /// `Ê(Λ, s)` from the direct lattice sum (`Re s > 1.05`).
    pub fn direct(&self, s: Complex64) -> Result<Complex64> {
        let e = eisenstein_direct(self.field(), self.lattice.z_lattice(), s, &self.cfg)?;
        Ok(e * gamma_f(self.field(), s * 2.0)?)
    }

    /// `Ê(Λ, s)` from the Fourier expansion.
    pub fn expansion(&self, s: Complex64) -> Result<Complex64> {
        let c = Complex64::new(0.5, 0.0);
        if (s - c).norm() < 0.2 * HALF_CIRCLE_RADIUS {
            // Cauchy's formula on a circle around 1/2, where Ê is analytic
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..HALF_CIRCLE_NODES {
                let e = Complex64::from_polar(HALF_CIRCLE_RADIUS, 2.0 * PI * k as f64 / HALF_CIRCLE_NODES as f64);
                acc += self.expansion_terms(c + e)?.total() * e / (c + e - s);
            }
            return Ok(acc / HALF_CIRCLE_NODES as f64);
        }
        Ok(self.expansion_terms(s)?.total())
    }

    /// The individual terms of the expansion at `s` (not near `1/2`).
    pub fn expansion_terms(&self, s: Complex64) -> Result<ExpansionTerms> {
        let c_half = self.field().c_constant() / 2.0;
        let y_fac = self.lattice.y_factor();
        let xi_b = self.xi_b.xi(s * 2.0).map_err(|e| match e {
            Error::Pole { .. } if s.norm() < 1.0 => Error::Pole { s, residue: (-c_half).into() },
            other => other,
        })?;
        let xi_a = self.xi_a.xi(s * 2.0 - 1.0).map_err(|e| match e {
            Error::Pole { .. } if (s - 1.0).norm() < 1.0 => Error::Pole { s, residue: c_half.into() },
            other => other,
        })?;
        Ok(ExpansionTerms {
            zeta_b: rpow(y_fac, s) * xi_b,
            zeta_a: rpow(y_fac, 1.0 - s) * xi_a,
            bessel: self.bessel_sum(s)?,
        })
    }

    /// `V(a)^s V(b)^{s−1} |N(y)|^s · (1/w_F) Σ_{α ≠ 0, β* ≠ 0} e^{2πi Tr(xαβ*)} B_F(αy, β*, s − 1/2)`.
    pub fn bessel_sum(&self, s: Complex64) -> Result<Complex64> {
        self.bessel_sum_with_margin(s, 0.0)
    }

    /// As [`Self::bessel_sum`], with the truncation threshold raised by `margin`.
    pub fn bessel_sum_with_margin(&self, s: Complex64, margin: f64) -> Result<Complex64> {
        let field = self.field();
        let place = self.lattice.place();
        let n = self.n();
        let w = field.roots_of_unity_count() as f64;
        let sqrt_d = field.abs_discriminant().sqrt();
        let v_a = sqrt_d * self.lattice.ideal_a().norm_f64();
        let v_b = sqrt_d * self.lattice.ideal_b().norm_f64();
        let ny = self.lattice.abs_norm_y();
        let pref = rpow(v_a, s) * rpow(v_b, s - 1.0) * rpow(ny, s);
        let z = self.lattice.z();
        let (x, y) = (z.x(), z.y());
        let y_abs = y.norm();
        let u_min = self.alpha_min * y_abs;
        let v_min = self.beta_min;

        // |term| ≤ |pref|(2π)^{r2}(x/(nπL²))^{n|c|} K_{n|c|}(x), x = nπ|αy||β*|, with
        // L the shortest |αy| (c ≥ 0) or |β*| (c < 0), and K_ν(x) ≲ √(π/2x) e^{ν²/2x − x}
        let cr = s.re - 0.5;
        let nu = n * cr.abs();
        let l_min = if cr >= 0.0 { u_min } else { v_min };
        let amp = pref.norm() * (2.0 * PI).powi(field.r2() as i32) * 100.0 / w;
        let target = self.cfg.tol() * 1e-3;
        let mut x_cut = 30.0f64;
        for _ in 0..8 {
            let ln_bound = amp.ln() + nu * (x_cut / (n * PI * l_min * l_min)).ln().max(0.0) + 0.5 * (PI / 2.0).ln()
                - 0.5 * x_cut.ln()
                + nu * nu / (2.0 * x_cut);
            x_cut = (ln_bound - target.ln()).max(10.0);
        }
        x_cut += margin;

        let alphas = ideal_shells(field, self.lattice.ideal_a(), x_cut / (n * PI * v_min * y_abs), self.cfg.max_points)?;
        let betas = ideal_shells(field, &self.b_dual, x_cut / (n * PI * u_min), self.cfg.max_points)?;
        let s_half = s - 0.5;
        let cfg = self.cfg;
        let parts: Vec<Complex64> = alphas
            .par_iter()
            .map(|sa| -> Result<Complex64> {
                let u = sa.r2.sqrt() * y_abs;
                let mut acc = Complex64::new(0.0, 0.0);
                for sb in &betas {
                    let v = sb.r2.sqrt();
                    if n * PI * u * v > x_cut {
                        break;
                    }
                    let mut phase = Complex64::new(0.0, 0.0);
                    for a in &sa.points {
                        let xa = x * a;
                        for b in &sb.points {
                            let t = trace_fr(place, xa * b);
                            phase += Complex64::from_polar(1.0, 2.0 * PI * t);
                        }
                    }
                    let bf = b_f(field, Complex64::new(u, 0.0), Complex64::new(v, 0.0), s_half, &cfg)?;
                    acc += phase * bf;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let total: Complex64 = parts.iter().rev().sum();
        Ok(pref * total / w)
    }

    /// `Res_{s=1} Ê(Λ, s) = C_F/2`.
    pub fn residue(&self) -> f64 {
        self.xi_a.residue_at_one() / 2.0
    }

    /// Laurent data at `s = 1` from the limit formula
    /// `CT = CT ξ_F(s, a) + (C_F/2)(h_F(z, a, b) − log Y)`.
    pub fn laurent_at_one(&self) -> Result<LaurentAtOne> {
        let c_half = self.residue();
        let ct = self.xi_a.ct_at_one()?.re + c_half * (self.h_function()? - self.lattice.y_factor().ln());
        Ok(LaurentAtOne { residue: c_half, constant_term: ct })
    }

    /// Residue and constant term at `s = 1` extrapolated from symmetric
    /// samples of the expansion at `1 ± h`.
    pub fn laurent_at_one_numeric(&self) -> Result<(Complex64, Complex64)> {
        let hs = [0.02, 0.01, 0.005, 0.0025];
        let mut samples = Vec::with_capacity(2 * hs.len());
        for h in hs {
            samples.push((1.0 + h, self.expansion(Complex64::new(1.0 + h, 0.0))?));
            samples.push((1.0 - h, self.expansion(Complex64::new(1.0 - h, 0.0))?));
        }
        let lookup = |z: Complex64| -> Complex64 {
            samples
                .iter()
                .find(|(t, _)| (*t - z.re).abs() < 1e-15)
                .map(|(_, v)| *v)
                .expect("sampled point")
        };
        Ok(simple_pole_laurent(lookup, Complex64::new(1.0, 0.0), &hs))
    }

    /// `h_F(z, a, b)`, returned as a complex number whose imaginary part is
    /// rounding noise.
    pub fn h_function_complex(&self) -> Result<Complex64> {
        let c_f = self.field().c_constant();
        let y_fac = self.lattice.y_factor();
        let one = Complex64::new(1.0, 0.0);
        let total = self.xi_b.xi(one * 2.0)? * y_fac + self.bessel_sum(one)?;
        Ok(total * (2.0 / c_f))
    }

    /// The Kronecker limit function `h_F(z, a, b)`.
    pub fn h_function(&self) -> Result<f64> {
        Ok(self.h_function_complex()?.re)
    }

    /// Evaluator for a lattice `a' z̃ + b'` with the same completed Eisenstein
    /// series as the dual lattice `Λ*`.
    pub fn dual(&self) -> Result<Self> {
        let (lat, _) = self.lattice.dual_pseudo_basis()?;
        Self::new(lat, &self.cfg)
    }
}

/// `(a z + b)(c z + d)^{-1}` for `a, b, c, d ∈ F_R` acting on `D_F`.
pub fn mobius(a: Complex64, b: Complex64, c: Complex64, d: Complex64, z: &DNumber) -> Result<DNumber> {
    let place = z.place;
    let num = z.left_scale(a) + DNumber::scalar(place, b);
    let den = z.left_scale(c) + DNumber::scalar(place, d);
    let inv = den
        .inv()
        .ok_or_else(|| Error::DegenerateLattice("c z + d = 0".into()))?;
    Ok(num * inv)
}

/// `‖c z + d‖`.
pub fn automorphy_norm(c: Complex64, d: Complex64, z: &DNumber) -> f64 {
    dnorm(&(z.left_scale(c) + DNumber::scalar(z.place, d)))
}

/// `h_F(z, a, b)` for a lattice `a z + b`.
pub fn h_function(field: &FieldDescriptor, z: DNumber, a: FracIdeal, b: FracIdeal, cfg: &PrecisionConfig) -> Result<f64> {
    let lat = OFLattice::new(field, a, b, z)?;
    EisensteinEvaluator::new(lat, cfg)?.h_function()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dalgebra::Quaternion;
    use crate::zeta::{dirichlet_l, riemann_zeta};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    /// Plain truncated sum of `V^s/w · Σ' ‖λ‖^{−2s}` over `‖λ‖ ≤ bound`.
    fn truncated_sum(field: &FieldDescriptor, zlat: &ZLattice, s: f64, bound: f64) -> f64 {
        let e = zlat.enumerate(field, bound, 50_000_000).unwrap();
        let mut terms: Vec<f64> = e.points.iter().map(|p| dnorm(p).powf(-2.0 * s)).collect();
        terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        zlat.covolume().powf(s) * terms.iter().sum::<f64>() / field.roots_of_unity_count() as f64
    }

    #[test]
    fn square_lattice_value() {
        let lat = OFLattice::rational(c(0.0, 1.0)).unwrap();
        let q = FieldDescriptor::rational();
        let e = eisenstein_direct(&q, lat.z_lattice(), c(2.0, 0.0), &cfg()).unwrap();
        let oracle = 2.0 * riemann_zeta(c(2.0, 0.0)).unwrap().re * dirichlet_l(c(2.0, 0.0), -4).unwrap().re;
        assert!((e.re - oracle).abs() < 1e-12, "{e} vs {oracle}");
        assert!((e.re - 3.013_406_1).abs() < 1e-7);
        assert!(e.im.abs() < 1e-14);
    }

    #[test]
    fn screened_sum_matches_truncated_sum() {
        let q = FieldDescriptor::rational();
        let lat = OFLattice::rational(c(0.3, 1.7)).unwrap();
        let e = eisenstein_direct(&q, lat.z_lattice(), c(3.0, 0.0), &cfg()).unwrap().re;
        let t = truncated_sum(&q, lat.z_lattice(), 3.0, 400.0);
        // tail ~ Σ_{‖λ‖>B} ‖λ‖^{−6} ~ π/(2 B⁴)
        assert!((e - t).abs() < 1e-8, "{e} vs {t}");
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let z = DNumber::quaternion(Quaternion::new(c(0.2, 0.1), c(1.1, 0.3)));
        let lat = OFLattice::standard(&gi, z).unwrap();
        let e = eisenstein_direct(&gi, lat.z_lattice(), c(2.0, 0.0), &cfg()).unwrap().re;
        let t = truncated_sum(&gi, lat.z_lattice(), 2.0, 150.0);
        assert!((e - t).abs() < 1e-4 * e, "{e} vs {t}");
    }

    #[test]
    fn epstein_special_values() {
        // Z(0) = −1 for every lattice
        let lat = OFLattice::rational(c(0.41, 0.93)).unwrap();
        let z0 = epstein_zeta(lat.z_lattice(), c(0.0, 0.0), &cfg()).unwrap();
        assert!((z0 + 1.0).norm() < 1e-12, "{z0}");
        let z1 = epstein_zeta(lat.z_lattice(), c(1.0, 0.0), &cfg());
        assert!(matches!(z1, Err(Error::Pole { .. })));
    }

    #[test]
    fn direct_domain_is_enforced() {
        let q = FieldDescriptor::rational();
        let lat = OFLattice::rational(c(0.0, 1.0)).unwrap();
        let r = eisenstein_direct(&q, lat.z_lattice(), c(1.02, 0.0), &cfg());
        assert!(matches!(r, Err(Error::DirectSumDomain { .. })));
    }

    #[test]
    fn modular_invariance_of_direct_sum() {
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let z = DNumber::quaternion(Quaternion::new(c(0.3, -0.2), c(0.9, 0.4)));
        let lat = OFLattice::standard(&gi, z).unwrap();
        let w = DNumber::quaternion(Quaternion::new(c(1.0, 2.0), c(0.5, -0.7)));
        let s = c(2.5, 0.0);
        let e0 = eisenstein_direct(&gi, lat.z_lattice(), s, &cfg()).unwrap();
        let e1 = eisenstein_direct(&gi, &lat.z_lattice().left_mul(&w).unwrap(), s, &cfg()).unwrap();
        let e2 = eisenstein_direct(&gi, &lat.z_lattice().right_mul(&w).unwrap(), s, &cfg()).unwrap();
        assert!((e0 - e1).norm() < 1e-11 * e0.norm());
        assert!((e0 - e2).norm() < 1e-11 * e0.norm());
    }

    #[test]
    fn expansion_matches_direct_over_q() {
        let lat = OFLattice::rational(c(0.3, 1.7)).unwrap();
        let ev = EisensteinEvaluator::new(lat, &cfg()).unwrap();
        for s in [c(2.5, 0.0), c(1.5, 0.0), c(1.3, 0.7)] {
            let a = ev.direct(s).unwrap();
            let b = ev.expansion(s).unwrap();
            assert!((a - b).norm() < 1e-10, "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn expansion_matches_direct_over_imaginary_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [-1i64, -2, -3, -7, -11] {
            let f = FieldDescriptor::quadratic(d).unwrap();
            let x = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let y = c(rng.gen_range(0.6..1.4), rng.gen_range(-0.3..0.3));
            let lat = OFLattice::standard(&f, DNumber::quaternion(Quaternion::new(x, y))).unwrap();
            let ev = EisensteinEvaluator::new(lat, &cfg()).unwrap();
            let s = c(2.0, 0.0);
            let a = ev.direct(s).unwrap();
            let b = ev.expansion(s).unwrap();
            assert!((a - b).norm() < 1e-10, "d={d}: {a} vs {b}");
        }
    }

    #[test]
    fn functional_equation_and_half_point() {
        let lat = OFLattice::rational(c(0.3, 1.7)).unwrap();
        let ev = EisensteinEvaluator::new(lat, &cfg()).unwrap();
        let dual = ev.dual().unwrap();
        for s in [c(0.3, 0.0), c(0.5, 0.9), c(1.8, 0.0), c(0.501, 0.0)] {
            let a = ev.expansion(s).unwrap();
            let b = dual.expansion(1.0 - s).unwrap();
            assert!((a - b).norm() < 1e-10, "s={s}: {a} vs {b}");
        }
        // the screened sum continues E independently of the expansion
        let s = c(0.3, 0.2);
        let q = FieldDescriptor::rational();
        let e = eisenstein_screened(&q, ev.lattice().z_lattice(), s, &cfg()).unwrap() * gamma_f(&q, s * 2.0).unwrap();
        assert!((e - ev.expansion(s).unwrap()).norm() < 1e-10);
        // Λ = Zi + Z is its own dual
        let sq = EisensteinEvaluator::new(OFLattice::rational(c(0.0, 1.0)).unwrap(), &cfg()).unwrap();
        let a = sq.expansion(c(0.3, 0.0)).unwrap();
        let b = sq.expansion(c(0.7, 0.0)).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn dual_pseudo_basis_has_the_dual_series() {
        let gi = FieldDescriptor::quadratic(-3).unwrap();
        let z = DNumber::quaternion(Quaternion::new(c(0.1, 0.35), c(0.8, -0.5)));
        let a = FracIdeal::principal(&gi, &gi.int(1, 1)).unwrap();
        let lat = OFLattice::new(&gi, a, FracIdeal::unit(&gi), z).unwrap();
        let s = c(2.2, 0.0);
        let true_dual = lat.dual().unwrap();
        let e_true = eisenstein_direct(&gi, &true_dual, s, &cfg()).unwrap();
        let (pb, _) = lat.dual_pseudo_basis().unwrap();
        let e_pb = eisenstein_direct(&gi, pb.z_lattice(), s, &cfg()).unwrap();
        assert!((e_true - e_pb).norm() < 1e-11 * e_true.norm());
    }

    #[test]
    fn large_y_asymptotics() {
        let lat = OFLattice::rational(c(0.2, 20.0)).unwrap();
        let ev = EisensteinEvaluator::new(lat, &cfg()).unwrap();
        let s = c(0.8, 0.0);
        let t = ev.expansion_terms(s).unwrap();
        assert!(t.bessel.norm() < 1e-15);
    }

    #[test]
    fn residue_and_constant_term() {
        for (d, z) in [(0i64, c(0.3, 1.7)), (-1, c(0.1, 0.9)), (-3, c(-0.2, 1.1))] {
            let f = if d == 0 { FieldDescriptor::rational() } else { FieldDescriptor::quadratic(d).unwrap() };
            let zz = if d == 0 {
                DNumber::complex(z)
            } else {
                DNumber::quaternion(Quaternion::new(c(z.re, 0.05), c(z.im, 0.2)))
            };
            let ev = EisensteinEvaluator::new(OFLattice::standard(&f, zz).unwrap(), &cfg()).unwrap();
            let (res, ct) = ev.laurent_at_one_numeric().unwrap();
            let l = ev.laurent_at_one().unwrap();
            assert!((res.re - f.c_constant() / 2.0).abs() < 1e-7, "d={d}: {res}");
            assert!((ct.re - l.constant_term).abs() < 1e-8, "d={d}: {ct} vs {}", l.constant_term);
        }
    }

    #[test]
    fn h_modularity_over_q() {
        let q = FieldDescriptor::rational();
        let z = c(0.3, 1.7);
        let h = |w: Complex64| h_function(&q, DNumber::complex(w), FracIdeal::unit(&q), FracIdeal::unit(&q), &cfg()).unwrap();
        let h0 = h(z);
        assert!((h(-1.0 / z) - h0 + 2.0 * z.norm().ln()).abs() < 1e-10);
        assert!((h(z + 1.0) - h0).abs() < 1e-10);
    }

    #[test]
    fn h_modularity_over_gaussian_field() {
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        let o = || FracIdeal::unit(&gi);
        let z = DNumber::quaternion(Quaternion::new(c(0.15, -0.3), c(0.7, 0.45)));
        // det = (1 + i)·1 − i·1 = 1
        let (a, b, cc, d) = (c(1.0, 1.0), c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0));
        let z2 = mobius(a, b, cc, d, &z).unwrap();
        let h1 = h_function(&gi, z, o(), o(), &cfg()).unwrap();
        let h2 = h_function(&gi, z2, o(), o(), &cfg()).unwrap();
        assert!((h2 - h1 + 2.0 * automorphy_norm(cc, d, &z).ln()).abs() < 1e-9, "{h1} {h2}");
    }

    #[test]
    fn truncation_margin_is_sufficient() {
        let lat = OFLattice::rational(c(-0.41, 0.62)).unwrap();
        let ev = EisensteinEvaluator::new(lat, &cfg()).unwrap();
        for s in [c(2.5, 0.0), c(-0.7, 0.3)] {
            let a = ev.bessel_sum(s).unwrap();
            let b = ev.bessel_sum_with_margin(s, 2.0).unwrap();
            assert!((a - b).norm() < 1e-13, "s={s}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]
        #[test]
        fn functional_equation_over_q(x in -0.5f64..0.5, y in 0.7f64..2.0, sr in -0.8f64..1.8, si in -2.0f64..2.0) {
            let s = c(sr, si);
            proptest::prop_assume!((s - 1.0).norm() > 0.05 && s.norm() > 0.05);
            let ev = EisensteinEvaluator::new(OFLattice::rational(c(x, y)).unwrap(), &cfg()).unwrap();
            let a = ev.expansion(s).unwrap();
            let b = ev.dual().unwrap().expansion(1.0 - s).unwrap();
            proptest::prop_assert!((a - b).norm() < 1e-9 * a.norm().max(1.0), "s={} {} vs {}", s, a, b);
        }
    }
}
