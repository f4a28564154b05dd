//! Acceptance run: every criterion is checked at its stated tolerance and
//! reported on one line. Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hecke_eisenstein::dalgebra::abs_norm_fr;
use hecke_eisenstein::eisenstein::{automorphy_norm, h_function, mobius};
use hecke_eisenstein::specialfun::{bessel_k, gamma_f, gamma_f_integral};
use hecke_eisenstein::suites::{base_field, hecke_ideal, lattice_series_zeta, random_lattice, BASE_FIELDS};
use hecke_eisenstein::{
    DNumber, EisensteinEvaluator, FieldDescriptor, FracIdeal, HeckeSetup, PrecisionConfig, Quaternion, Result,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Default)]
struct Tally {
    checks: usize,
    worst_ratio: f64,
    worst: String,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, label: &str, lhs: Complex64, rhs: Complex64, tol: f64) {
        let err = (lhs - rhs).norm();
        self.checks += 1;
        let ratio = err / tol;
        if ratio >= self.worst_ratio {
            self.worst_ratio = ratio;
            self.worst = format!("{label}: err {err:.2e} (tol {tol:.0e})");
        }
        if !(err <= tol) {
            self.failures.push(format!("{label}: |{lhs} - {rhs}| = {err:.3e} > {tol:.0e}"));
        }
    }

    fn real(&mut self, label: &str, lhs: f64, rhs: f64, tol: f64) {
        self.check(label, lhs.into(), rhs.into(), tol);
    }
}

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

fn imaginary_zeta(t: &mut Tally) -> Result<()> {
    for d in [-1, -3, -5] {
        let k = FieldDescriptor::quadratic(d)?;
        let (ideal, name) = hecke_ideal(&k)?;
        let h = HeckeSetup::new(&k, &ideal, &cfg())?;
        for s in [c(1.5, 0.0), c(2.0, 0.0), c(3.0, 0.0)] {
            let e_side = h.classical_zeta(s)?;
            t.check(&format!("{k} A={name} s={} L-oracle", s.re), h.zeta_oracle(s)?, e_side, 1e-6);
            if s.re >= 2.0 {
                let series = lattice_series_zeta(&k, &ideal, s, 1e-7)?;
                t.check(&format!("{k} A={name} s={} lattice series", s.re), series, e_side, 1e-6);
            }
        }
    }
    Ok(())
}

fn hif_real(t: &mut Tally) -> Result<()> {
    for d in [2, 5, 3] {
        let h = HeckeSetup::standard(&FieldDescriptor::quadratic(d)?, &cfg())?;
        let s = c(2.0, 0.0);
        t.check(&format!("Q(sqrt{d}) s=2"), h.hecke_integral(s)?, h.xi_oracle(s)?, 1e-6);
    }
    Ok(())
}

fn hif_off_axis(t: &mut Tally) -> Result<()> {
    let h = HeckeSetup::standard(&FieldDescriptor::quadratic(5)?, &cfg())?;
    let s = c(1.5, 0.5);
    t.check("Q(sqrt5) s=1.5+0.5i", h.hecke_integral(s)?, h.xi_oracle(s)?, 1e-6);
    Ok(())
}

fn functional_equation(t: &mut Tally) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (d, count) in [(0, 5), (-1, 2)] {
        let f = base_field(d);
        for i in 0..count {
            let ev = EisensteinEvaluator::new(random_lattice(&f, &mut rng)?, &cfg())?;
            let dual = ev.dual()?;
            for s in [c(0.3, 0.0), c(0.5, 0.9), c(1.8, 0.0)] {
                t.check(&format!("{f} lattice {i} s={s}"), ev.expansion(s)?, dual.expansion(1.0 - s)?, 1e-9);
            }
        }
    }
    Ok(())
}

fn fourier_vs_direct(t: &mut Tally) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in BASE_FIELDS {
        let f = base_field(d);
        for i in 0..10 {
            let ev = EisensteinEvaluator::new(random_lattice(&f, &mut rng)?, &cfg())?;
            for s in [c(1.5, 0.0), c(2.5, 0.0)] {
                t.check(&format!("{f} lattice {i} s={}", s.re), ev.direct(s)?, ev.expansion(s)?, 1e-9);
            }
        }
    }
    Ok(())
}

fn residue_and_limit(t: &mut Tally) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for d in [0, -1, -3] {
        let f = base_field(d);
        let ev = EisensteinEvaluator::new(random_lattice(&f, &mut rng)?, &cfg())?;
        let (res, _) = ev.laurent_at_one_numeric()?;
        t.check(&format!("{f} residue"), res, (f.c_constant() / 2.0).into(), 1e-7);
    }
    for (i, d) in [0, 0, 0, -1, -3].into_iter().enumerate() {
        let f = base_field(d);
        let ev = EisensteinEvaluator::new(random_lattice(&f, &mut rng)?, &cfg())?;
        let (_, ct) = ev.laurent_at_one_numeric()?;
        t.check(&format!("{f} lattice {i} constant term"), ct, ev.laurent_at_one()?.constant_term.into(), 1e-8);
    }
    Ok(())
}

fn h_modularity(t: &mut Tally) -> Result<()> {
    let q = FieldDescriptor::rational();
    let h = |w: Complex64| h_function(&q, DNumber::complex(w), FracIdeal::unit(&q), FracIdeal::unit(&q), &cfg());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let z = c(rng.gen_range(-0.5..0.5), rng.gen_range(0.7..2.0));
        t.real(&format!("S at {z}"), h(-1.0 / z)?, h(z)? - 2.0 * z.norm().ln(), 1e-8);
        t.real(&format!("T at {z}"), h(z + 1.0)?, h(z)?, 1e-10);
    }
    let gi = FieldDescriptor::quadratic(-1)?;
    let o = || FracIdeal::unit(&gi);
    let z = DNumber::quaternion(Quaternion::new(c(0.15, -0.3), c(0.7, 0.45)));
    let (a, b, cc, d) = (c(1.0, 1.0), c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0));
    let h1 = h_function(&gi, z, o(), o(), &cfg())?;
    let h2 = h_function(&gi, mobius(a, b, cc, d, &z)?, o(), o(), &cfg())?;
    t.real("Q(i) [[1+i, i], [1, 1]]", h2, h1 - 2.0 * automorphy_norm(cc, d, &z).ln(), 1e-8);
    Ok(())
}

fn theta_transformation(t: &mut Tally) -> Result<()> {
    let tcfg = PrecisionConfig::new(1e-14)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..20 {
        let f = base_field([0, -1, -3, -7][i % 4]);
        let lat = random_lattice(&f, &mut rng)?;
        let tt = if f.is_rational() {
            c(rng.gen_range(0.5..1.8), 0.0)
        } else {
            c(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))
        };
        let dual = lat.dual()?;
        let nt = abs_norm_fr(lat.place(), tt);
        let rhs = dual.theta(1.0 / tt, &tcfg)? / (lat.volume() * nt * nt);
        t.real(&format!("{f} pair {i} theta"), lat.theta(tt, &tcfg)?, rhs, 1e-10);
        t.real(&format!("{f} pair {i} volume"), dual.covolume() * lat.volume(), 1.0, 1e-10);
    }
    Ok(())
}

fn relative_klf(t: &mut Tally) -> Result<()> {
    let c_q = FieldDescriptor::rational().c_constant();
    for d in [5, 2] {
        let h = HeckeSetup::standard(&FieldDescriptor::quadratic(d)?, &cfg())?;
        let r = h.relative_klf()?;
        t.real(&format!("Q(sqrt{d}) LHS vs RHS"), r.lhs, r.rhs, 1e-5);
        let u = h.units().expect("real quadratic");
        // vol(T/U²) = 2 w C_K / C_Q
        t.real(&format!("Q(sqrt{d}) torus measure"), u.torus_measure(), 2.0 * u.w_kf as f64 * r.c_k / c_q, 1e-8);
    }
    Ok(())
}

fn special_functions(t: &mut Tally) -> Result<()> {
    let cfg = cfg();
    for d in BASE_FIELDS {
        let f = base_field(d);
        for s in [c(0.8, 0.0), c(1.7, 0.0), c(2.5, 1.0)] {
            t.check(&format!("Gamma_F {f} s={s}"), gamma_f(&f, s)?, gamma_f_integral(&f, s)?, 1e-10);
        }
    }
    for x in [0.5, 1.0, 5.0] {
        let exact = (PI / x).sqrt() * (-2.0 * x).exp();
        t.check(&format!("K_1/2({x})"), bessel_k(c(0.5, 0.0), x, &cfg)?, exact.into(), 1e-12);
    }
    for (s, x) in [(c(0.7, 0.3), 2.0), (c(2.5, 0.0), 0.3), (c(-1.2, 2.0), 1.0)] {
        t.check(&format!("K_s = K_-s s={s} x={x}"), bessel_k(s, x, &cfg)?, bessel_k(-s, x, &cfg)?, 1e-12);
    }
    Ok(())
}

type Criterion = (&'static str, fn(&mut Tally) -> Result<()>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("zeta_K(s,A) = (2/w)(sqrt d/2)^-s E(z,s), imaginary K", imaginary_zeta),
        ("Hecke integral vs xi_K at s = 2, real K", hif_real),
        ("Hecke integral vs xi_K off the real axis", hif_off_axis),
        ("functional equation E(L,s) = E(L*,1-s)", functional_equation),
        ("Fourier expansion vs direct sum", fourier_vs_direct),
        ("residue and limit formula at s = 1", residue_and_limit),
        ("modularity of h_F", h_modularity),
        ("theta transformation and dual volume", theta_transformation),
        ("relative Kronecker limit formula", relative_klf),
        ("special functions", special_functions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut tally = Tally::default();
        let outcome = run(&mut tally);
        let secs = start.elapsed().as_secs_f64();
        let pass = outcome.is_ok() && tally.failures.is_empty() && tally.checks > 0;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({} checks, worst {}, {:.1} s)",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            tally.checks,
            tally.worst,
            secs
        );
        if let Err(e) = outcome {
            println!("    error: {e}");
        }
        for f in &tally.failures {
            println!("    {f}");
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
