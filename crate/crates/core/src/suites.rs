//! Invariant suites behind `hecke-eis verify`. Each suite expands into a
//! list of independent checks; random lattices are drawn from a ChaCha
//! stream seeded by the caller, so a seed fixes every report bit for bit
//! (apart from the wall time).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basefield::{FieldDescriptor, FracIdeal, QuadElement};
use crate::dalgebra::{abs_norm_fr, DNumber, PlaceKind, Quaternion};
use crate::eisenstein::{automorphy_norm, h_function, mobius, EisensteinEvaluator};
use crate::error::{Error, Result};
use crate::heckeint::HeckeSetup;
use crate::lattice::OFLattice;
use crate::report::{fmt_s, params, VerificationReport};
use crate::specialfun::{bessel_k, gamma_f, gamma_f_integral, PrecisionConfig};
use crate::zeta::partial_zeta_series;

/// Base fields covered by the suites: `Q` and the five imaginary quadratic
/// fields with `O_F` Euclidean.
pub const BASE_FIELDS: [i64; 6] = [0, -1, -2, -3, -7, -11];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fourier,
    Fe,
    Klf,
    Hecke,
    Theta,
    Special,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Fourier, Suite::Fe, Suite::Klf, Suite::Hecke, Suite::Theta, Suite::Special];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "fourier" => Suite::Fourier,
            "fe" => Suite::Fe,
            "klf" => Suite::Klf,
            "hecke" => Suite::Hecke,
            "theta" => Suite::Theta,
            "special" => Suite::Special,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse {
                    field: "suite".into(),
                    message: format!("unknown suite {s:?} (expected fourier, fe, klf, hecke, theta, special or all)"),
                })
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Fourier => "fourier",
            Suite::Fe => "fe",
            Suite::Klf => "klf",
            Suite::Hecke => "hecke",
            Suite::Theta => "theta",
            Suite::Special => "special",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

/// Settings shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub precision: PrecisionConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 0, jobs: None, precision: PrecisionConfig::default() }
    }
}

/// Result of one check before it is turned into a report.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub terms: BTreeMap<String, f64>,
}

impl Outcome {
    fn pair(lhs: Complex64, rhs: Complex64) -> Self {
        Self { lhs, rhs, terms: BTreeMap::new() }
    }

    fn real(lhs: f64, rhs: f64) -> Self {
        Self::pair(lhs.into(), rhs.into())
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

/// A single check: `|lhs − rhs| ≤ tolerance`.
pub struct Case {
    pub check: String,
    pub field: String,
    pub parameters: BTreeMap<String, String>,
    pub tolerance: f64,
    run: Runner,
}

impl Case {
    fn new<F>(check: String, field: String, parameters: BTreeMap<String, String>, tolerance: f64, run: F) -> Self
    where
        F: Fn() -> Result<Outcome> + Send + Sync + 'static,
    {
        Self { check, field, parameters, tolerance, run: Box::new(run) }
    }

    /// Runs the check; computation errors become failing reports.
    pub fn execute(&self) -> VerificationReport {
        let start = Instant::now();
        let mut report = match (self.run)() {
            Ok(o) => VerificationReport::new(
                "verify",
                &self.check,
                &self.field,
                self.parameters.clone(),
                o.lhs,
                o.rhs,
                self.tolerance,
            )
            .with_terms(o.terms),
            Err(e) => VerificationReport::failed(
                "verify",
                &self.check,
                &self.field,
                self.parameters.clone(),
                self.tolerance,
                e.to_string(),
            ),
        };
        report.wall_time_ms = start.elapsed().as_millis() as u64;
        report
    }
}

/// The checks making up `suite`, in report order.
pub fn cases(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Case>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let cfg = opts.precision;
    let mut out = Vec::new();
    let list: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    for s in list {
        match s {
            Suite::Fourier => fourier_cases(&mut rng, &cfg, &mut out)?,
            Suite::Fe => fe_cases(&mut rng, &cfg, &mut out)?,
            Suite::Klf => klf_cases(&mut rng, &cfg, &mut out)?,
            Suite::Hecke => hecke_cases(&cfg, &mut out)?,
            Suite::Theta => theta_cases(&mut rng, &cfg, &mut out)?,
            Suite::Special => special_cases(&cfg, &mut out)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(out)
}

/// Runs every check of `suite` in parallel (up to `opts.jobs` threads) and
/// returns the reports in a fixed order.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let cases = cases(suite, opts)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| cases.par_iter().map(Case::execute).collect()))
}

pub fn base_field(d: i64) -> FieldDescriptor {
    if d == 0 {
        FieldDescriptor::rational()
    } else {
        FieldDescriptor::quadratic(d).expect("supported base field")
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A random lattice `a z + b` over `field`: `z` in a box above the
/// fundamental domain, `a` and `b` drawn from a few small principal ideals.
pub fn random_lattice(field: &FieldDescriptor, rng: &mut ChaCha8Rng) -> Result<OFLattice> {
    if field.is_rational() {
        let z = DNumber::complex(c(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..2.0)));
        let pick = |rng: &mut ChaCha8Rng| -> Result<FracIdeal> {
            let q = [(1, 1), (2, 1), (1, 2), (3, 2)][rng.gen_range(0..4)];
            FracIdeal::rational(num_rational::Ratio::new(q.0, q.1))
        };
        let a = pick(rng)?;
        let b = pick(rng)?;
        return OFLattice::new(field, a, b, z);
    }
    let x = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let y = c(rng.gen_range(0.6..1.4), rng.gen_range(-0.3..0.3));
    let z = DNumber::quaternion(Quaternion::new(x, y));
    let gens: [QuadElement; 3] = [field.one(), field.int(1, 1), field.int(2, 0)];
    let a = FracIdeal::principal(field, &gens[rng.gen_range(0..3)])?;
    let b = FracIdeal::principal(field, &gens[rng.gen_range(0..3)])?;
    OFLattice::new(field, a, b, z)
}

/// `"a,z,b"` description of a lattice for report parameters.
pub fn describe_lattice(l: &OFLattice) -> String {
    let z = l.z();
    let comps = match l.place() {
        PlaceKind::Real => {
            let w = z.as_complex();
            vec![w.re, w.im]
        }
        PlaceKind::Complex => {
            let (x, y) = (z.x(), z.y());
            vec![x.re, x.im, y.re, y.im]
        }
    };
    let zs: Vec<String> = comps.iter().map(|v| format!("{v:+}")).collect();
    format!("{},{},{}", l.ideal_a(), zs.join(""), l.ideal_b())
}

fn fourier_cases(rng: &mut ChaCha8Rng, cfg: &PrecisionConfig, out: &mut Vec<Case>) -> Result<()> {
    for d in BASE_FIELDS {
        let f = base_field(d);
        for i in 0..10 {
            let lat = random_lattice(&f, rng)?;
            for s in [c(1.5, 0.0), c(2.5, 0.0)] {
                let desc = describe_lattice(&lat);
                let lat = lat.clone();
                let cfg = *cfg;
                out.push(Case::new(
                    format!("fourier/lattice-{i}/s={}", fmt_s(s)),
                    f.to_string(),
                    params([("s", fmt_s(s)), ("lattice", desc), ("lhs", "direct".into()), ("rhs", "expansion".into())]),
                    1e-9,
                    move || {
                        let ev = EisensteinEvaluator::new(lat.clone(), &cfg)?;
                        Ok(Outcome::pair(ev.direct(s)?, ev.expansion(s)?))
                    },
                ));
            }
        }
    }
    Ok(())
}

fn fe_cases(rng: &mut ChaCha8Rng, cfg: &PrecisionConfig, out: &mut Vec<Case>) -> Result<()> {
    for (d, count) in [(0, 5), (-1, 2)] {
        let f = base_field(d);
        for i in 0..count {
            let lat = random_lattice(&f, rng)?;
            for s in [c(0.3, 0.0), c(0.5, 0.9), c(1.8, 0.0)] {
                let desc = describe_lattice(&lat);
                let lat = lat.clone();
                let cfg = *cfg;
                out.push(Case::new(
                    format!("fe/lattice-{i}/s={}", fmt_s(s)),
                    f.to_string(),
                    params([("s", fmt_s(s)), ("lattice", desc), ("lhs", "E(L,s)".into()), ("rhs", "E(L*,1-s)".into())]),
                    1e-9,
                    move || {
                        let ev = EisensteinEvaluator::new(lat.clone(), &cfg)?;
                        let dual = ev.dual()?;
                        Ok(Outcome::pair(ev.expansion(s)?, dual.expansion(1.0 - s)?))
                    },
                ));
            }
        }
    }
    Ok(())
}

fn klf_cases(rng: &mut ChaCha8Rng, cfg: &PrecisionConfig, out: &mut Vec<Case>) -> Result<()> {
    for d in [0, -1, -3] {
        let f = base_field(d);
        let lat = random_lattice(&f, rng)?;
        let desc = describe_lattice(&lat);
        let cfg = *cfg;
        let half_c = f.c_constant() / 2.0;
        out.push(Case::new(
            "klf/residue".into(),
            f.to_string(),
            params([("lattice", desc), ("lhs", "Res numeric".into()), ("rhs", "C_F/2".into())]),
            1e-7,
            move || {
                let ev = EisensteinEvaluator::new(lat.clone(), &cfg)?;
                let (res, _) = ev.laurent_at_one_numeric()?;
                Ok(Outcome::pair(res, half_c.into()))
            },
        ));
    }
    for (i, d) in [0, 0, 0, -1, -3].into_iter().enumerate() {
        let f = base_field(d);
        let lat = random_lattice(&f, rng)?;
        let desc = describe_lattice(&lat);
        let cfg = *cfg;
        out.push(Case::new(
            format!("klf/constant-term/lattice-{i}"),
            f.to_string(),
            params([("lattice", desc), ("lhs", "CT numeric".into()), ("rhs", "CT limit formula".into())]),
            1e-8,
            move || {
                let ev = EisensteinEvaluator::new(lat.clone(), &cfg)?;
                let (_, ct) = ev.laurent_at_one_numeric()?;
                let l = ev.laurent_at_one()?;
                let mut o = Outcome::pair(ct, l.constant_term.into());
                o.terms.insert("residue".into(), l.residue);
                Ok(o)
            },
        ));
    }
    let q = FieldDescriptor::rational();
    for i in 0..5 {
        let z = c(rng.gen_range(-0.5..0.5), rng.gen_range(0.7..2.0));
        let cfg = *cfg;
        let h = move |w: Complex64| {
            let q = FieldDescriptor::rational();
            h_function(&q, DNumber::complex(w), FracIdeal::unit(&q), FracIdeal::unit(&q), &cfg)
        };
        out.push(Case::new(
            format!("klf/h-modular-S/point-{i}"),
            q.to_string(),
            params([("z", fmt_s(z)), ("lhs", "h(-1/z)".into()), ("rhs", "h(z) - 2 log|z|".into())]),
            1e-8,
            move || Ok(Outcome::real(h(-1.0 / z)?, h(z)? - 2.0 * z.norm().ln())),
        ));
        out.push(Case::new(
            format!("klf/h-modular-T/point-{i}"),
            q.to_string(),
            params([("z", fmt_s(z)), ("lhs", "h(z+1)".into()), ("rhs", "h(z)".into())]),
            1e-10,
            move || Ok(Outcome::real(h(z + 1.0)?, h(z)?)),
        ));
    }
    {
        let gi = base_field(-1);
        let x = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let y = c(rng.gen_range(0.6..1.2), rng.gen_range(-0.4..0.4));
        let z = DNumber::quaternion(Quaternion::new(x, y));
        let cfg = *cfg;
        out.push(Case::new(
            "klf/h-modular-GL2".into(),
            gi.to_string(),
            params([
                ("matrix", "[[1+i, i], [1, 1]]".into()),
                ("z", format!("{}{:+}i{:+}j{:+}k", x.re, x.im, y.re, y.im)),
                ("lhs", "h(gz)".into()),
                ("rhs", "h(z) - 2 log||cz+d||".into()),
            ]),
            1e-8,
            move || {
                let gi = base_field(-1);
                let o = || FracIdeal::unit(&gi);
                let (a, b, cc, d) = (c(1.0, 1.0), c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0));
                let gz = mobius(a, b, cc, d, &z)?;
                let h1 = h_function(&gi, z, o(), o(), &cfg)?;
                let h2 = h_function(&gi, gz, o(), o(), &cfg)?;
                Ok(Outcome::real(h2, h1 - 2.0 * automorphy_norm(cc, d, &z).ln()))
            },
        ));
    }
    for d in [5, 2] {
        let k = FieldDescriptor::quadratic(d)?;
        let name = k.to_string();
        let cfg = *cfg;
        let kk = k.clone();
        out.push(Case::new(
            "klf/relative".into(),
            name.clone(),
            params([("ideal", "O".into()), ("a", "Z".into()), ("b", "Z".into())]),
            1e-5,
            move || {
                let r = HeckeSetup::standard(&kk, &cfg)?.relative_klf()?;
                let mut o = Outcome::real(r.lhs, r.rhs);
                o.terms.insert("ctXiF".into(), r.ct_xi_f_term);
                o.terms.insert("logNorm".into(), r.log_norm_term);
                o.terms.insert("quadrature".into(), r.quadrature_term);
                Ok(o)
            },
        ));
        out.push(Case::new(
            "klf/torus-measure".into(),
            name,
            params([("lhs", "C_K".into()), ("rhs", "C_Q/(2w) vol(T/U)".into())]),
            1e-8,
            move || {
                let h = HeckeSetup::standard(&k, &cfg)?;
                let (c_k, _) = h.xi_laurent_oracle()?;
                let u = h.units().expect("real quadratic");
                let c_q = FieldDescriptor::rational().c_constant();
                Ok(Outcome::real(c_k, c_q / (2.0 * u.w_kf as f64) * u.torus_measure()))
            },
        ));
    }
    Ok(())
}

/// `ζ_K(s, A)` from the lattice Dirichlet series, with the cutoff grown
/// until the tail bound drops below `bound`.
pub fn lattice_series_zeta(k: &FieldDescriptor, ideal: &FracIdeal, s: Complex64, bound: f64) -> Result<Complex64> {
    let mut cutoff = 1e3;
    loop {
        let v = partial_zeta_series(k, ideal, s, cutoff)?;
        if v.tail_bound < bound {
            return Ok(v.value);
        }
        cutoff *= 4.0;
        if cutoff > 1e8 {
            return Err(Error::CutoffTooSmall(format!(
                "tail bound {:e} still above {bound:e} at cutoff {cutoff:e}",
                v.tail_bound
            )));
        }
    }
}

/// The ideals used for the imaginary `K` checks: `O_K` for `Q(i)` and
/// `Q(√−3)`, the nonprincipal `[2, 1 + √−5]` for `Q(√−5)`.
pub fn hecke_ideal(k: &FieldDescriptor) -> Result<(FracIdeal, String)> {
    if k.d() == -5 {
        Ok((FracIdeal::generated_by(k, &[k.int(2, 0), k.int(1, 1)])?, "[2, 1+sqrt-5]".into()))
    } else {
        Ok((FracIdeal::unit(k), "O".into()))
    }
}

fn hecke_cases(cfg: &PrecisionConfig, out: &mut Vec<Case>) -> Result<()> {
    for d in [-1, -3, -5] {
        let k = FieldDescriptor::quadratic(d)?;
        let (ideal, ideal_name) = hecke_ideal(&k)?;
        for s in [c(1.5, 0.0), c(2.0, 0.0), c(3.0, 0.0)] {
            let setup = HeckeSetup::new(&k, &ideal, cfg)?;
            out.push(Case::new(
                format!("hecke/imaginary-zeta/s={}", fmt_s(s)),
                k.to_string(),
                params([
                    ("s", fmt_s(s)),
                    ("ideal", ideal_name.clone()),
                    ("lhs", "zeta_K(s,A) L-function oracle".into()),
                    ("rhs", "(2/w)(sqrt d/2)^-s E(z,s)".into()),
                ]),
                1e-6,
                move || Ok(Outcome::pair(setup.zeta_oracle(s)?, setup.classical_zeta(s)?)),
            ));
            if s.re >= 2.0 {
                let setup = HeckeSetup::new(&k, &ideal, cfg)?;
                let (kk, ii) = (k.clone(), ideal.clone());
                out.push(Case::new(
                    format!("hecke/imaginary-zeta-series/s={}", fmt_s(s)),
                    k.to_string(),
                    params([
                        ("s", fmt_s(s)),
                        ("ideal", ideal_name.clone()),
                        ("lhs", "zeta_K(s,A) lattice series".into()),
                        ("rhs", "(2/w)(sqrt d/2)^-s E(z,s)".into()),
                    ]),
                    1e-6,
                    move || Ok(Outcome::pair(lattice_series_zeta(&kk, &ii, s, 1e-7)?, setup.classical_zeta(s)?)),
                ));
            }
        }
        let setup = HeckeSetup::new(&k, &ideal, cfg)?;
        let s = c(2.0, 0.0);
        out.push(Case::new(
            "hecke/integral".into(),
            k.to_string(),
            params([("s", fmt_s(s)), ("ideal", ideal_name), ("lhs", "torus integral".into()), ("rhs", "xi_K(s,A)".into())]),
            1e-6,
            move || Ok(Outcome::pair(setup.hecke_integral(s)?, setup.xi_oracle(s)?)),
        ));
    }
    for d in [2, 5, 3] {
        let k = FieldDescriptor::quadratic(d)?;
        let s = c(2.0, 0.0);
        let setup = HeckeSetup::standard(&k, cfg)?;
        out.push(Case::new(
            "hecke/real-zeta".into(),
            k.to_string(),
            params([("s", fmt_s(s)), ("ideal", "O".into()), ("lhs", "zeta(s)L(s,chi)".into()), ("rhs", "2 d^-s/2 G(s)/G(s/2)^2 int E".into())]),
            1e-6,
            move || Ok(Outcome::pair(setup.zeta_oracle(s)?, setup.classical_zeta(s)?)),
        ));
        let setup = HeckeSetup::standard(&k, cfg)?;
        out.push(Case::new(
            "hecke/integral".into(),
            k.to_string(),
            params([("s", fmt_s(s)), ("ideal", "O".into()), ("lhs", "torus integral".into()), ("rhs", "xi_K(s)".into())]),
            1e-6,
            move || Ok(Outcome::pair(setup.hecke_integral(s)?, setup.xi_oracle(s)?)),
        ));
    }
    let k = FieldDescriptor::quadratic(5)?;
    let s = c(1.5, 0.5);
    let setup = HeckeSetup::standard(&k, cfg)?;
    out.push(Case::new(
        "hecke/integral-off-axis".into(),
        k.to_string(),
        params([("s", fmt_s(s)), ("ideal", "O".into()), ("lhs", "torus integral".into()), ("rhs", "xi_K(s)".into())]),
        1e-6,
        move || Ok(Outcome::pair(setup.hecke_integral(s)?, setup.xi_oracle(s)?)),
    ));
    Ok(())
}

fn theta_cases(rng: &mut ChaCha8Rng, cfg: &PrecisionConfig, out: &mut Vec<Case>) -> Result<()> {
    let tcfg = cfg.with_tol(PrecisionConfig::MIN_TOL)?;
    for i in 0..20 {
        let d = [0, -1, -3, -7][i % 4];
        let f = base_field(d);
        let lat = random_lattice(&f, rng)?;
        let t = if d == 0 {
            c(rng.gen_range(0.5..1.8), 0.0)
        } else {
            c(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))
        };
        let desc = describe_lattice(&lat);
        let l2 = lat.clone();
        out.push(Case::new(
            format!("theta/poisson/pair-{i}"),
            f.to_string(),
            params([("t", fmt_s(t)), ("lattice", desc.clone()), ("lhs", "theta(t,L)".into()), ("rhs", "theta(1/t,L*)/(V |Nt|^2)".into())]),
            1e-10,
            move || {
                let lhs = lat.theta(t, &tcfg)?;
                let nt = abs_norm_fr(lat.place(), t);
                let rhs = lat.dual()?.theta(1.0 / t, &tcfg)? / (lat.volume() * nt * nt);
                Ok(Outcome::real(lhs, rhs))
            },
        ));
        out.push(Case::new(
            format!("theta/volume/pair-{i}"),
            f.to_string(),
            params([("lattice", desc), ("lhs", "V(L*) V(L)".into()), ("rhs", "1".into())]),
            1e-10,
            move || Ok(Outcome::real(l2.dual()?.covolume() * l2.volume(), 1.0)),
        ));
    }
    Ok(())
}

fn special_cases(cfg: &PrecisionConfig, out: &mut Vec<Case>) -> Result<()> {
    for d in BASE_FIELDS {
        let f = base_field(d);
        for s in [c(0.8, 0.0), c(1.7, 0.0), c(2.5, 1.0)] {
            let ff = f.clone();
            out.push(Case::new(
                format!("special/gamma-f/s={}", fmt_s(s)),
                f.to_string(),
                params([("s", fmt_s(s)), ("lhs", "closed form".into()), ("rhs", "defining integral".into())]),
                1e-10,
                move || Ok(Outcome::pair(gamma_f(&ff, s)?, gamma_f_integral(&ff, s)?)),
            ));
        }
    }
    for x in [0.5, 1.0, 5.0] {
        let cfg = *cfg;
        out.push(Case::new(
            format!("special/bessel-half/x={x}"),
            "-".into(),
            params([("x", x.to_string()), ("lhs", "K_1/2(x)".into()), ("rhs", "sqrt(pi/x) e^-2x".into())]),
            1e-12,
            move || {
                let k = bessel_k(c(0.5, 0.0), x, &cfg)?;
                Ok(Outcome::pair(k, ((std::f64::consts::PI / x).sqrt() * (-2.0 * x).exp()).into()))
            },
        ));
    }
    for (s, x) in [(c(0.7, 0.3), 2.0), (c(2.5, 0.0), 0.3), (c(-1.2, 2.0), 1.0)] {
        let cfg = *cfg;
        out.push(Case::new(
            format!("special/bessel-even/s={}/x={x}", fmt_s(s)),
            "-".into(),
            params([("s", fmt_s(s)), ("x", x.to_string()), ("lhs", "K_s(x)".into()), ("rhs", "K_-s(x)".into())]),
            1e-12,
            move || Ok(Outcome::pair(bessel_k(s, x, &cfg)?, bessel_k(-s, x, &cfg)?)),
        ));
    }
    Ok(())
}
