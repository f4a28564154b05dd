//! Complex Γ, the upper incomplete gamma function, the Bessel integral
//! `K_s(x) = ∫_0^∞ exp(−x(u + 1/u)) u^{s−1} du`, the archimedean factor
//! `Γ_F(s)` and the Bessel product `B_F(a, b, s)`.
//!
//! `K_s` here is the integral above, not the conventional modified Bessel
//! function: `K_s(x) = 2·K^{std}_s(2x)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basefield::FieldDescriptor;
use crate::dalgebra::PlaceKind;
use crate::error::{Error, Result};
use crate::numeric::trapezoid_halving;

/// Environment variable overriding the default absolute tolerance.
pub const PRECISION_ENV: &str = "HECKE_EIS_PRECISION";

/// Numerical accuracy settings shared by the evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    target_abs_tol: f64,
    /// Maximal number of step halvings in trapezoid quadratures.
    pub max_halvings: usize,
    /// Maximal number of terms in series and continued fractions.
    pub max_terms: usize,
    /// Cap on the number of lattice points any single sum may visit.
    pub max_points: u64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-12,
            max_halvings: 14,
            max_terms: 200_000,
            max_points: 20_000_000,
        }
    }
}

impl PrecisionConfig {
    pub const MIN_TOL: f64 = 1e-14;
    pub const MAX_TOL: f64 = 1e-4;

    pub fn new(target_abs_tol: f64) -> Result<Self> {
        Self::default().with_tol(target_abs_tol)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(Self::MIN_TOL..=Self::MAX_TOL).contains(&tol) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {tol:e} outside [{:e}, {:e}]",
                Self::MIN_TOL,
                Self::MAX_TOL
            )));
        }
        self.target_abs_tol = tol;
        Ok(self)
    }

    /// Default configuration, with the tolerance taken from
    /// `HECKE_EIS_PRECISION` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(v) => {
                let tol: f64 = v.trim().parse().map_err(|_| Error::Parse {
                    field: PRECISION_ENV.into(),
                    message: format!("not a number: {v:?}"),
                })?;
                Self::new(tol)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn tol(&self) -> f64 {
        self.target_abs_tol
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` (principal branch for `Re z ≥ 1/2`, continued by reflection).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `Γ(z)`; infinite at nonpositive integers.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return PI / (s * gamma(1.0 - z));
    }
    ln_gamma(z).exp()
}

fn near_nonpositive_integer(s: Complex64, radius: f64) -> bool {
    s.re < radius && (s - s.re.round()).norm() < radius
}

/// Upper incomplete gamma `Γ(s, x) = ∫_x^∞ e^{−u} u^{s−1} du` for `x > 0`.
pub fn upper_incomplete_gamma(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("Γ(s, x) needs x > 0, got {x}")));
    }
    if x < s.norm() + 1.0 && !near_nonpositive_integer(s, 0.1) {
        let lower = lower_gamma_series(s, x, cfg)?;
        Ok(gamma(s) - lower)
    } else {
        upper_gamma_cf(s, x, cfg)
    }
}

/// `γ(s, x) = x^s e^{−x} Σ_k x^k / (s(s+1)⋯(s+k))`.
fn lower_gamma_series(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    for k in 1..cfg.max_terms {
        term *= x / (s + k as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            let pref = (s * x.ln() - x).exp();
            return Ok(pref * sum);
        }
    }
    Err(Error::NoConvergence {
        what: "incomplete gamma series",
        iterations: cfg.max_terms,
    })
}

/// Legendre continued fraction for `Γ(s, x)` evaluated by modified Lentz.
fn upper_gamma_cf(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let tiny = Complex64::new(TINY, 0.0);
    let mut b = Complex64::new(x + 1.0, 0.0) - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..cfg.max_terms {
        let an = -(i as f64) * (Complex64::new(i as f64, 0.0) - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            let pref = (s * x.ln() - x).exp();
            return Ok(pref * h);
        }
    }
    Err(Error::NoConvergence {
        what: "incomplete gamma continued fraction",
        iterations: cfg.max_terms,
    })
}

/// `K_s(x) = ∫_0^∞ exp(−x(u + 1/u)) u^{s−1} du = 2∫_0^∞ exp(−2x cosh t) cosh(st) dt`.
pub fn bessel_k(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("K_s(x) needs x > 0, got {x}")));
    }
    let sr = s.re.abs();
    // log of the integrand envelope exp(−2x cosh t + |Re s| t)
    let env = |t: f64| -2.0 * x * t.cosh() + sr * t;
    let t_peak = (sr / (2.0 * x)).asinh();
    let peak = env(t_peak);
    let mut hi = t_peak + 0.5;
    while env(hi) > peak - 45.0 {
        hi += 0.5;
    }
    // the integrand is even in t, so trapezoid from 0 is spectrally accurate
    let f = |t: f64| {
        let c = (s * t).cosh();
        c * (-2.0 * x * t.cosh()).exp()
    };
    let tol = cfg.tol() * 0.1;
    let width = 1.0 / (2.0 * x * t_peak.cosh()).sqrt();
    let h0 = width.clamp(1e-3, 0.5);
    let n0 = (hi / h0).ceil() as usize;
    let mut h = hi / n0 as f64;
    let mut n = n0;
    let mut sum = f(0.0) * 0.5 + f(hi) * 0.5;
    for k in 1..n {
        sum += f(k as f64 * h);
    }
    let mut est = sum * h;
    for _ in 0..cfg.max_halvings {
        let mut add = Complex64::new(0.0, 0.0);
        for k in 0..n {
            add += f((k as f64 + 0.5) * h);
        }
        sum += add;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        let diff = (next - est).norm();
        est = next;
        if diff <= tol * est.norm().min(1.0) || diff == 0.0 {
            return Ok(est * 2.0);
        }
    }
    Err(Error::NoConvergence {
        what: "Bessel K quadrature",
        iterations: cfg.max_halvings,
    })
}

/// `Γ_F(s) = ∫_{T_F} f(t) |N t|^s d^×t` in closed form:
/// `π^{−s/2}Γ(s/2)` over `Q`, `(2π)^{1−s}Γ(s)` over an imaginary quadratic field.
pub fn gamma_f(field: &FieldDescriptor, s: Complex64) -> Result<Complex64> {
    field.require_base()?;
    let half = PlaceKind::of(field) == PlaceKind::Real;
    let arg = if half { s * 0.5 } else { s };
    if near_nonpositive_integer(arg, 1e-300) || (arg.im == 0.0 && arg.re <= 0.0 && arg.re.fract() == 0.0) {
        let m = -arg.re.round();
        // Res_{z=−m} Γ(z) = (−1)^m / m!
        let fact: f64 = (1..=(m as u64)).map(|k| k as f64).product();
        let res_gamma = if (m as i64) % 2 == 0 { 1.0 / fact } else { -1.0 / fact };
        let residue = if half {
            2.0 * res_gamma * PI.powf(-s.re / 2.0)
        } else {
            res_gamma * (2.0 * PI).powf(1.0 - s.re)
        };
        return Err(Error::Pole { s, residue: residue.into() });
    }
    Ok(if half {
        (-(s * 0.5) * PI.ln()).exp() * gamma(arg)
    } else {
        ((1.0 - s) * (2.0 * PI).ln()).exp() * gamma(s)
    })
}

/// `Γ_F(s)` from its defining integral by trapezoid quadrature in `log t`
/// (`Re s > 0`). Independent of [`gamma_f`]; used as its oracle.
pub fn gamma_f_integral(field: &FieldDescriptor, s: Complex64) -> Result<Complex64> {
    field.require_base()?;
    if s.re <= 0.0 {
        return Err(Error::InvalidArgument(format!("defining integral of Γ_F needs Re s > 0, got {s}")));
    }
    let real = PlaceKind::of(field) == PlaceKind::Real;
    // Q: 2∫_0^∞ e^{−πt²} t^s dt/t;  complex place: 4π ∫_0^∞ e^{−2πr²} r^{2s} dr/r
    let phi = |tau: f64| {
        let t = tau.exp();
        if real {
            (s * tau).exp() * (2.0 * (-PI * t * t).exp())
        } else {
            (s * 2.0 * tau).exp() * (4.0 * PI * (-2.0 * PI * t * t).exp())
        }
    };
    let lo = -(40.0 / s.re.min(1.0)) - 10.0;
    let (v, ok) = trapezoid_halving(phi, lo, 4.0, 0.25, 1e-15, 16);
    if !ok {
        return Err(Error::NoConvergence { what: "Γ_F integral", iterations: 16 });
    }
    Ok(v)
}

/// `B_F(a, b, s) = (2π)^{r2} |N(b/a)|^s K_{n s}(n π |a b|)`, `a, b ∈ F_R^×`.
pub fn b_f(field: &FieldDescriptor, a: Complex64, b: Complex64, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    field.require_base()?;
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::InvalidArgument("B_F needs nonzero arguments".into()));
    }
    let place = PlaceKind::of(field);
    let n = place.degree() as f64;
    let ratio = b.norm() / a.norm();
    let norm_ratio = ratio.powf(n);
    let k = bessel_k(s * n, n * PI * a.norm() * b.norm(), cfg)?;
    let pref = if place == PlaceKind::Complex { 2.0 * PI } else { 1.0 };
    Ok((s * norm_ratio.ln()).exp() * k * pref)
}
