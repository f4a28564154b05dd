//! The archimedean gamma factor Γ_F, the Bessel function K_s and B_F.

use std::f64::consts::PI;

use num_complex::Complex64;

use hecke_eisenstein::specialfun::{b_f, bessel_k, gamma_f, gamma_f_integral, upper_incomplete_gamma};
use hecke_eisenstein::{FieldDescriptor, PrecisionConfig, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::default();
    for spec in ["Q", "Q(i)", "Q(sqrt-3)"] {
        let f = FieldDescriptor::parse(spec)?;
        for s in [Complex64::new(0.8, 0.0), Complex64::new(2.5, 1.0)] {
            let closed = gamma_f(&f, s)?;
            let integral = gamma_f_integral(&f, s)?;
            println!("Gamma_{spec}({s}) = {closed:.14}  (integral {integral:.14})");
        }
    }

    println!();
    for x in [0.5, 1.0, 5.0] {
        let k = bessel_k(Complex64::new(0.5, 0.0), x, &cfg)?;
        println!("K_1/2({x}) = {:.16e}, sqrt(pi/x) e^-2x = {:.16e}", k.re, (PI / x).sqrt() * (-2.0 * x).exp());
    }
    let s = Complex64::new(0.7, 3.0);
    println!("K_s(2) = {:.14}, K_-s(2) = {:.14}", bessel_k(s, 2.0, &cfg)?, bessel_k(-s, 2.0, &cfg)?);

    let q = FieldDescriptor::rational();
    let one = Complex64::new(1.0, 0.0);
    println!("\nB_Q(1, 1, 1/2) = {:.16}", b_f(&q, one, one, Complex64::new(0.5, 0.0), &cfg)?.re);
    println!("Gamma(0.5, 2) = {:.16}", upper_incomplete_gamma(Complex64::new(0.5, 0.0), 2.0, &cfg)?.re);
    Ok(())
}
