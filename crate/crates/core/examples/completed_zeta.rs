//! Completed partial zeta functions ξ_F(s, a) of the base fields, continued
//! to all s through the theta integral, compared with ζ·L factorisations.

use num_complex::Complex64;

use hecke_eisenstein::zeta::{dirichlet_l, riemann_zeta, xi_oracle};
use hecke_eisenstein::{CompletedZeta, FieldDescriptor, FracIdeal, PrecisionConfig, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::default();
    let two = Complex64::new(2.0, 0.0);
    println!("zeta(2) = {:.15}, L(1, chi_-4) = {:.15}", riemann_zeta(two)?.re, dirichlet_l(Complex64::new(1.0, 0.0), -4)?.re);

    for spec in ["Q", "Q(i)", "Q(sqrt-3)", "Q(sqrt-7)"] {
        let f = FieldDescriptor::parse(spec)?;
        let xi = CompletedZeta::new(&f, &FracIdeal::unit(&f), &cfg)?;
        println!("\n{spec}: residue at 1 = {:.12}, constant term = {:.12}", xi.residue_at_one(), xi.ct_at_one()?.re);
        for s in [Complex64::new(0.3, 0.0), Complex64::new(0.5, 14.13), Complex64::new(2.0, 0.0)] {
            let v = xi.xi(s)?;
            let w = xi.xi(1.0 - s)?;
            let o = xi_oracle(&f, s)?;
            println!("  xi({s}) = {v:.12}   xi(1-s) = {w:.12}   oracle {o:.12}");
        }
    }
    Ok(())
}
