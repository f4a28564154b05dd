//! The relative Kronecker limit formula for real quadratic fields: the
//! constant term of ξ_K at s = 1 from the torus average of h_Q.

use hecke_eisenstein::{FieldDescriptor, HeckeSetup, PrecisionConfig, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::default();
    println!("{:<10} {:>16} {:>16} {:>16} {:>16} {:>10}", "K", "CT xi_K / C_K", "2 CT xi_Q / C_Q", "torus term", "RHS", "error");
    for spec in ["Q(sqrt5)", "Q(sqrt2)", "Q(sqrt13)", "Q(sqrt3)", "Q(sqrt7)"] {
        let h = HeckeSetup::standard(&FieldDescriptor::parse(spec)?, &cfg)?;
        let r = h.relative_klf()?;
        println!(
            "{spec:<10} {:>16.12} {:>16.12} {:>16.12} {:>16.12} {:>10.1e}",
            r.lhs, r.ct_xi_f_term, r.quadrature_term, r.rhs, r.abs_error
        );
        println!("{:<10} C_K = {:.14}, from the torus measure {:.14}", "", r.c_k, r.c_k_from_measure);
    }
    Ok(())
}
