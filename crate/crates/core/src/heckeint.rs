//! Hecke's integral formula for a quadratic field `K` over `Q`: the lattice
//! family `ρ(ũ A)` over the norm-one torus `T_{K/Q}`, the integral of the
//! completed Eisenstein series over `T_{K/Q}/U²_{K/Q}`, and the relative
//! Kronecker limit formula that follows from it.
//!
//! For real `K` the torus is `R^× = {±1} × R_{>0}` with `ũ = (±√t, 1/√t)`,
//! and `U²_{K/Q}` is generated by `ε₀ = ε⁴` (if `N ε = −1`) or `ε₀ = ε²`
//! (if `N ε = +1`), with index `w_{K/Q} = 2` resp. `1`. For imaginary `K`
//! the torus is the unit circle and the integrand is constant.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basefield::{FieldDescriptor, FracIdeal, QuadElement};
use crate::dalgebra::{DNumber, PlaceKind};
use crate::eisenstein::{EisensteinEvaluator, Method};
use crate::error::{Error, Result};
use crate::lattice::{reduce_upper_half_plane, OFLattice, ZLattice};
use crate::numeric::{cauchy_derivative, gauss_legendre, simple_pole_laurent};
use crate::specialfun::{gamma, PrecisionConfig};
use crate::zeta::{dirichlet_l, gamma_k, genus_partial_zeta, riemann_zeta, CompletedZeta, EULER_GAMMA};

/// Fundamental discriminants of the real quadratic fields of class number
/// one below 100.
const REAL_CLASS_NUMBER_ONE: [i64; 26] = [
    5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 41, 44, 53, 56, 57, 61, 69, 73, 76, 77, 88, 89, 92, 93, 97,
];
/// Discriminants of the imaginary quadratic fields of class number one.
const IMAG_CLASS_NUMBER_ONE: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

/// Node counts tried in turn by the torus quadrature.
const NODE_LADDER: [usize; 6] = [16, 32, 64, 128, 256, 512];

/// Unit data of a real quadratic `K` relevant to the torus integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitData {
    /// The fundamental unit `ε > 1`.
    pub epsilon: f64,
    /// `N(ε) = ±1`.
    pub norm_sign: i32,
    /// `w_{K/Q} = [U_K : U_Q U_{K/Q}]`.
    pub w_kf: u32,
    /// Generator `ε₀` of `U²_{K/Q}` in the coordinate `t`.
    pub eps0: f64,
}

impl UnitData {
    fn from_unit(eps: &QuadElement) -> Self {
        let epsilon = eps.embed().re;
        let norm_sign = if eps.norm() > 0.into() { 1 } else { -1 };
        if norm_sign < 0 {
            Self { epsilon, norm_sign, w_kf: 2, eps0: epsilon.powi(4) }
        } else {
            Self { epsilon, norm_sign, w_kf: 1, eps0: epsilon.powi(2) }
        }
    }

    /// The alternative reading `(w, ε₀)` with the norm case swapped.
    fn swapped(&self) -> Self {
        if self.norm_sign < 0 {
            Self { w_kf: 1, eps0: self.epsilon.powi(2), ..*self }
        } else {
            Self { w_kf: 2, eps0: self.epsilon.powi(4), ..*self }
        }
    }

    /// `∫_{T/U²} d^×u = 2 log ε₀` (both signs).
    pub fn torus_measure(&self) -> f64 {
        2.0 * self.eps0.ln()
    }
}

/// Outcome of checking the unit data against the zeta oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitDataCheck {
    pub units: UnitData,
    pub integral: Complex64,
    pub oracle: Complex64,
    pub abs_error: f64,
}

/// The terms of the relative limit formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeKlf {
    /// `CT_{s=1} ξ_K(s, A)/C_K` from `ζ·L(χ_{d_K})`.
    pub lhs: f64,
    /// `2 CT_{s=1} ξ_Q(s, a)/C_Q`.
    pub ct_xi_f_term: f64,
    /// `−log(N a/N b)`.
    pub log_norm_term: f64,
    /// `C_Q/(2 w_{K/Q} C_K) ∫ (h_Q(z_ũ, a, b) − log|N y_ũ|) d^×u`.
    pub quadrature_term: f64,
    pub rhs: f64,
    pub abs_error: f64,
    /// `C_K` and `(C_Q/(2 w_{K/Q})) ∫ d^×u`, which must agree.
    pub c_k: f64,
    pub c_k_from_measure: f64,
}

/// A quadratic field `K/Q` with an ideal `A = (Z z + Z)·ω₂` and the data
/// of the torus integral.
#[derive(Clone, Debug)]
pub struct HeckeSetup {
    k: FieldDescriptor,
    ideal: FracIdeal,
    z: QuadElement,
    units: Option<UnitData>,
    cfg: PrecisionConfig,
}

impl HeckeSetup {
    /// Writes `A = Z ω₁ + Z ω₂` as `(Z z + Z)·ω₂` with `z = ±ω₁/ω₂` chosen
    /// so that `z' > z` (real `K`) or `Im z > 0` (imaginary `K`).
    pub fn new(k: &FieldDescriptor, ideal: &FracIdeal, cfg: &PrecisionConfig) -> Result<Self> {
        if k.is_rational() {
            return Err(Error::InvalidField("K must be a quadratic field".into()));
        }
        let basis = ideal.z_basis();
        if basis.len() != 2 || basis[0].d() != k.d() {
            return Err(Error::InvalidIdeal(format!("{ideal} is not an ideal of {k}")));
        }
        let mut z = basis[0].mul(&basis[1].inv()?);
        let flip = if k.is_real_quadratic() {
            z.embed_conj().re < z.embed().re
        } else {
            z.embed().im < 0.0
        };
        if flip {
            z = z.neg();
        }
        let units = k.fundamental_unit().filter(|_| k.is_real_quadratic()).map(UnitData::from_unit);
        Ok(Self { k: k.clone(), ideal: ideal.clone(), z, units, cfg: *cfg })
    }

    /// `A = O_K`.
    pub fn standard(k: &FieldDescriptor, cfg: &PrecisionConfig) -> Result<Self> {
        Self::new(k, &FracIdeal::unit(k), cfg)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.k
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }

    /// The generator `z` with `A ∼ Z z + Z`.
    pub fn z(&self) -> &QuadElement {
        &self.z
    }

    /// `(z, z')` under the two embeddings.
    pub fn z_embeddings(&self) -> (Complex64, Complex64) {
        (self.z.embed(), self.z.embed_conj())
    }

    /// Unit data (real `K` only).
    pub fn units(&self) -> Option<UnitData> {
        self.units
    }

    /// `w_{K/Q}`: from the unit data for real `K`, `1` for imaginary `K`.
    pub fn w_kf(&self) -> u32 {
        self.units.map(|u| u.w_kf).unwrap_or(1)
    }

    fn require_real(&self) -> Result<UnitData> {
        self.units
            .ok_or_else(|| Error::InvalidField(format!("{} is not real quadratic", self.k)))
    }

    /// `z_ũ = ρ(ũ z) ρ(ũ)^{-1}` for `ũ = (sign·√t, 1/√t)`, any `t > 0`.
    pub fn torus_point(&self, sign: i32, t: f64) -> Result<Complex64> {
        self.require_real()?;
        if !(t > 0.0) || !t.is_finite() || sign.abs() != 1 {
            return Err(Error::InvalidArgument(format!("torus point needs sign ±1 and t > 0, got ({sign}, {t})")));
        }
        let (z, zp) = self.z_embeddings();
        let r = t.sqrt();
        let u = Complex64::new(sign as f64 * r, 1.0 / r);
        let uz = Complex64::new(sign as f64 * r * z.re, zp.re / r);
        Ok(uz / u)
    }

    /// `ρ(ũ A) = (Z z_ũ + Z)·ρ(ũ)` for `t ∈ [1, ε₀]`, returned as the
    /// lattice `Z z_ũ + Z` and the factor `ρ(ũ) = sign·√t + i/√t`.
    pub fn lattice_at(&self, sign: i32, t: f64) -> Result<(OFLattice, Complex64)> {
        let u = self.require_real()?;
        if !(1.0..=u.eps0 * (1.0 + 1e-12)).contains(&t) {
            return Err(Error::InvalidArgument(format!("t = {t} outside [1, ε₀ = {}]", u.eps0)));
        }
        let zu = self.torus_point(sign, t)?;
        let r = t.sqrt();
        Ok((OFLattice::rational(zu)?, Complex64::new(sign as f64 * r, 1.0 / r)))
    }

    /// Evaluator for `Z τ + Z` with `τ` moved into the `SL₂(Z)` fundamental domain.
    fn reduced_evaluator(&self, tau: Complex64) -> Result<EisensteinEvaluator> {
        let (w, _) = reduce_upper_half_plane(tau);
        EisensteinEvaluator::new(OFLattice::rational(w)?, &self.cfg)
    }

    /// `Σ_{±} ∫_0^{log T} f(±, e^τ) dτ` by Gauss–Legendre with node doubling
    /// until two successive estimates agree to `tol`.
    fn integrate_torus<G>(&self, period: f64, f: G, tol: f64) -> Result<Complex64>
    where
        G: Fn(i32, f64) -> Result<Complex64> + Sync,
    {
        let len = period.ln();
        let mut prev: Option<Complex64> = None;
        for &n in &NODE_LADDER {
            let (x, w) = gauss_legendre(n);
            let nodes: Vec<(i32, f64, f64)> = [1, -1]
                .iter()
                .flat_map(|&sg| x.iter().zip(&w).map(move |(xi, wi)| (sg, 0.5 * len * (1.0 + xi), 0.5 * len * wi)))
                .collect();
            let vals = nodes
                .par_iter()
                .map(|(sg, tau, wt)| f(*sg, tau.exp()).map(|v| v * *wt))
                .collect::<Result<Vec<_>>>()?;
            let est: Complex64 = vals.iter().sum();
            if let Some(p) = prev {
                if (est - p).norm() <= tol * est.norm().max(1.0) {
                    return Ok(est);
                }
            }
            prev = Some(est);
        }
        Err(Error::NoConvergence { what: "torus quadrature", iterations: NODE_LADDER.len() })
    }

    /// The integrand `Ê(ρ(ũ A), s)` at `(sign, t)`.
    pub fn integrand(&self, sign: i32, t: f64, s: Complex64) -> Result<Complex64> {
        self.reduced_evaluator(self.torus_point(sign, t)?)?.expansion(s)
    }

    /// `(1/w_{K/Q}) ∫_{T_{K/Q}/U²_{K/Q}} Ê(ρ(ũ A), s) d^×u`.
    pub fn hecke_integral(&self, s: Complex64) -> Result<Complex64> {
        match self.units {
            Some(u) => self.hecke_integral_with(s, u),
            None => {
                // constant integrand on a circle of mass 2π/(w_K/2)
                let ev = self.reduced_evaluator(self.z.embed())?;
                let mass = 4.0 * PI / self.k.roots_of_unity_count() as f64;
                Ok(ev.expansion(s)? * mass)
            }
        }
    }

    fn hecke_integral_with(&self, s: Complex64, u: UnitData) -> Result<Complex64> {
        let tol = self.cfg.tol().max(1e-11) * 10.0;
        let v = self.integrate_torus(u.eps0, |sg, t| self.integrand(sg, t, s), tol)?;
        Ok(v / u.w_kf as f64)
    }

    /// `ζ_K(s, A)` from the classical formulas:
    /// `(2/w_K)(√d_K/2)^{−s} E(z, s)` for imaginary `K`, and
    /// `2 d_K^{−s/2} Γ(s)/Γ(s/2)² ∫_1^{ε²} E(z_t, s) dt/t` for real `K`.
    pub fn classical_zeta(&self, s: Complex64) -> Result<Complex64> {
        let d = self.k.abs_discriminant();
        match self.units {
            None => {
                let ev = EisensteinEvaluator::new(OFLattice::rational(self.z.embed())?, &self.cfg)?;
                let e = ev.eisenstein(s, Method::Auto)?;
                let w = self.k.roots_of_unity_count() as f64;
                Ok(e * (2.0 / w) * (-s * (d.sqrt() / 2.0).ln()).exp())
            }
            Some(u) => {
                let tol = self.cfg.tol().max(1e-11) * 10.0;
                let e_int = self.integrate_torus(
                    u.epsilon * u.epsilon,
                    |sg, t| {
                        if sg < 0 {
                            return Ok(Complex64::new(0.0, 0.0));
                        }
                        self.reduced_evaluator(self.torus_point(1, t)?)?.eisenstein(s, Method::Expansion)
                    },
                    tol,
                )?;
                let g = gamma(s * 0.5);
                Ok(e_int * 2.0 * (-(s * 0.5) * d.ln()).exp() * gamma(s) / (g * g))
            }
        }
    }

    /// `ζ_K(s, A)` from Dirichlet `L`-functions: `ζ(s) L(s, χ_{d_K})` when
    /// `K` has class number one, the genus-character split for `d_K = −20`.
    pub fn zeta_oracle(&self, s: Complex64) -> Result<Complex64> {
        let disc = self.k.discriminant();
        if REAL_CLASS_NUMBER_ONE.contains(&disc) || IMAG_CLASS_NUMBER_ONE.contains(&disc) {
            return Ok(riemann_zeta(s)? * dirichlet_l(s, disc)?);
        }
        if disc == -20 {
            return genus_partial_zeta(s, -4, 5, self.ideal_is_principal()?);
        }
        Err(Error::InvalidArgument(format!("no L-function oracle for the ideal classes of {}", self.k)))
    }

    /// Whether `A` is principal (imaginary `K`): the norm form of `A`
    /// represents `N(A)`.
    fn ideal_is_principal(&self) -> Result<bool> {
        if let Some(g) = self.ideal.generator() {
            return Ok(g.d() == self.k.d());
        }
        let basis: Vec<DNumber> = self.ideal.embedded_basis().iter().map(|e| DNumber::complex(*e)).collect();
        let lat = ZLattice::new(PlaceKind::Real, basis)?;
        let na = self.ideal.norm_f64();
        let pts = lat.points_in_ball(na.sqrt() * (1.0 + 1e-9), 1_000_000)?;
        Ok(pts.iter().any(|(c, p)| c.iter().any(|x| *x != 0) && (p.abs_sqr() - na).abs() < 1e-9 * na))
    }

    /// `ξ_K(s, A) = d_K^{s/2} Γ_K(s) ζ_K(s, A)` from [`Self::zeta_oracle`].
    pub fn xi_oracle(&self, s: Complex64) -> Result<Complex64> {
        let d = self.k.abs_discriminant();
        Ok((s * 0.5 * d.ln()).exp() * gamma_k(&self.k, s) * self.zeta_oracle(s)?)
    }

    /// Residue `C_K` and constant term of `ξ_K(s)` at `s = 1` for a class
    /// number one `K`: with `G(s) = d_K^{s/2} Γ_K(s) L(s, χ)`,
    /// `CT = γ G(1) + G'(1)`.
    pub fn xi_laurent_oracle(&self) -> Result<(f64, f64)> {
        let disc = self.k.discriminant();
        if !(REAL_CLASS_NUMBER_ONE.contains(&disc) || IMAG_CLASS_NUMBER_ONE.contains(&disc)) {
            return Err(Error::InvalidArgument(format!("{} is not a class number one field", self.k)));
        }
        let d = self.k.abs_discriminant();
        let g = |s: Complex64| -> Complex64 {
            (s * 0.5 * d.ln()).exp() * gamma_k(&self.k, s) * dirichlet_l(s, disc).expect("L(s, χ) is entire")
        };
        let one = Complex64::new(1.0, 0.0);
        let g1 = g(one);
        let dg = cauchy_derivative(g, one, 0.5, 1, 64);
        Ok((g1.re, EULER_GAMMA * g1.re + dg.re))
    }

    /// Evaluates both normalisations at `s = 2` and checks them against the
    /// zeta oracle; fails with both candidate values if neither the derived
    /// `(w_{K/Q}, ε₀)` nor the swapped reading matches.
    pub fn confirm_unit_data(&self) -> Result<UnitDataCheck> {
        let u = self.require_real()?;
        let s = Complex64::new(2.0, 0.0);
        let oracle = self.xi_oracle(s)?;
        let integral = self.hecke_integral_with(s, u)?;
        let abs_error = (integral - oracle).norm();
        if abs_error <= 1e-6 * oracle.norm().max(1.0) {
            return Ok(UnitDataCheck { units: u, integral, oracle, abs_error });
        }
        let alt = u.swapped();
        let alt_integral = self.hecke_integral_with(s, alt)?;
        Err(Error::UnitDataMismatch(format!(
            "oracle ξ_K(2) = {oracle}; (w = {}, ε₀ = {}) gives {integral}; (w = {}, ε₀ = {}) gives {alt_integral}",
            u.w_kf, u.eps0, alt.w_kf, alt.eps0
        )))
    }

    /// `C_K` and `CT_{s=1} ξ_K(s, A)` extrapolated from the integral itself.
    pub fn laurent_from_integral(&self) -> Result<(f64, f64)> {
        let hs = [0.04, 0.02, 0.01];
        let mut samples = Vec::new();
        for h in hs {
            for t in [1.0 + h, 1.0 - h] {
                samples.push((t, self.hecke_integral(Complex64::new(t, 0.0))?));
            }
        }
        let lookup = |z: Complex64| {
            samples
                .iter()
                .find(|(t, _)| (*t - z.re).abs() < 1e-15)
                .map(|(_, v)| *v)
                .expect("sampled point")
        };
        let (res, ct) = simple_pole_laurent(lookup, Complex64::new(1.0, 0.0), &hs);
        Ok((res.re, ct.re))
    }

    /// The relative Kronecker limit formula for `A = a z + b` with
    /// `a = b = Z` (real `K` of class number one).
    pub fn relative_klf(&self) -> Result<RelativeKlf> {
        let u = self.require_real()?;
        let q = FieldDescriptor::rational();
        let z_ideal = FracIdeal::unit(&q);
        let xi_q = CompletedZeta::new(&q, &z_ideal, &self.cfg)?;
        let c_q = xi_q.residue_at_one();
        let ct_xi_f_term = 2.0 * xi_q.ct_at_one()?.re / c_q;
        let log_norm_term = 0.0 - (z_ideal.norm_f64() / z_ideal.norm_f64()).ln();

        let tol = self.cfg.tol().max(1e-11) * 10.0;
        let integral = self
            .integrate_torus(
                u.eps0,
                |sg, t| {
                    let zu = self.torus_point(sg, t)?;
                    let (w, _) = reduce_upper_half_plane(zu);
                    // h − log|y| is SL₂(Z)-invariant, so the reduced point can be used
                    let ev = EisensteinEvaluator::new(OFLattice::rational(w)?, &self.cfg)?;
                    Ok(Complex64::new(ev.h_function()? - w.im.ln(), 0.0))
                },
                tol,
            )?
            .re;
        let (c_k, ct_k) = self.xi_laurent_oracle()?;
        let w = u.w_kf as f64;
        let quadrature_term = c_q / (2.0 * w * c_k) * integral;
        let lhs = ct_k / c_k;
        let rhs = ct_xi_f_term + log_norm_term + quadrature_term;
        Ok(RelativeKlf {
            lhs,
            ct_xi_f_term,
            log_norm_term,
            quadrature_term,
            rhs,
            abs_error: (lhs - rhs).abs(),
            c_k,
            c_k_from_measure: c_q / (2.0 * w) * u.torus_measure(),
        })
    }
}
