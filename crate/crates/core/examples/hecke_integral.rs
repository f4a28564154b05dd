//! Hecke's integral formula: ξ_K(s, A) for a quadratic field K as an
//! integral of the completed Eisenstein series over Q along a norm-one torus.

use num_complex::Complex64;

use hecke_eisenstein::{FieldDescriptor, FracIdeal, HeckeSetup, PrecisionConfig, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::default();
    for spec in ["Q(sqrt5)", "Q(sqrt2)", "Q(sqrt3)"] {
        let k = FieldDescriptor::parse(spec)?;
        let h = HeckeSetup::standard(&k, &cfg)?;
        let check = h.confirm_unit_data()?;
        let u = check.units;
        println!(
            "{spec}: eps = {:.10}, N(eps) = {:+}, w = {}, eps0 = {:.6}",
            u.epsilon, u.norm_sign, u.w_kf, u.eps0
        );
        for s in [Complex64::new(2.0, 0.0), Complex64::new(1.5, 0.5), Complex64::new(0.3, 2.0)] {
            let integral = h.hecke_integral(s)?;
            let oracle = h.xi_oracle(s)?;
            println!("  s = {s}: integral {integral:.13}, d^(s/2) Gamma_K zeta L {oracle:.13}");
        }
        println!("  zeta_K(2) from the classical integral: {:.13}", h.classical_zeta(Complex64::new(2.0, 0.0))?.re);
    }

    let k = FieldDescriptor::parse("Q(sqrt-5)")?;
    for (name, ideal) in [
        ("O", FracIdeal::unit(&k)),
        ("[2, 1+sqrt-5]", FracIdeal::generated_by(&k, &[k.int(2, 0), k.int(1, 1)])?),
    ] {
        let h = HeckeSetup::new(&k, &ideal, &cfg)?;
        let s = Complex64::new(1.5, 0.0);
        println!(
            "\nQ(sqrt-5), A = {name}: zeta_K(1.5, A) = {:.13} (lattice), {:.13} (genus characters)",
            h.classical_zeta(s)?.re,
            h.zeta_oracle(s)?.re
        );
    }
    Ok(())
}
