//! Invariants of the supported fields: discriminants, units, regulators,
//! the constant C_F, and a little ideal arithmetic.

use hecke_eisenstein::basefield::dual_ideal;
use hecke_eisenstein::{FieldDescriptor, FracIdeal, Result};

fn main() -> Result<()> {
    println!("{:<12} {:>6} {:>3} {:>14} {:>12}", "field", "disc", "w", "regulator", "C_F");
    for spec in ["Q", "Q(i)", "Q(sqrt-2)", "Q(sqrt-3)", "Q(sqrt-7)", "Q(sqrt-11)", "Q(sqrt2)", "Q(sqrt5)", "Q(sqrt3)"] {
        let f = FieldDescriptor::parse(spec)?;
        println!(
            "{:<12} {:>6} {:>3} {:>14.10} {:>12.8}",
            f.to_string(),
            f.discriminant(),
            f.roots_of_unity_count(),
            f.regulator(),
            f.c_constant()
        );
    }

    let k = FieldDescriptor::parse("Q(sqrt5)")?;
    if let Some(eps) = k.fundamental_unit() {
        println!("\nQ(sqrt5): fundamental unit {eps} = {:.12}, norm {}", eps.embed().re, eps.norm());
    }

    let k = FieldDescriptor::parse("Q(sqrt-5)")?;
    let p = FracIdeal::generated_by(&k, &[k.int(2, 0), k.int(1, 1)])?;
    println!("\nQ(sqrt-5): p = {p}, N(p) = {}, principal generator: {:?}", p.norm(), p.generator());
    let p2 = p.mul(&p)?;
    println!("p^2 = {p2}, N(p^2) = {}", p2.norm());
    println!("p * p^-1 is the unit ideal: {}", p.mul(&p.inverse())?.is_unit_ideal());
    let pd = dual_ideal(&k, &p)?;
    println!("dual of p = {pd}, N = {}", pd.norm());
    Ok(())
}
