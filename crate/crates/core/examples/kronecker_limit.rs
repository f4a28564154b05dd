//! Laurent data of the completed Eisenstein series at s = 1 and the limit
//! function h_F, with its transformation under GL2(O_F).

use num_complex::Complex64;

use hecke_eisenstein::eisenstein::{automorphy_norm, h_function, mobius};
use hecke_eisenstein::{DNumber, EisensteinEvaluator, FieldDescriptor, FracIdeal, OFLattice, PrecisionConfig, Quaternion, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::default();
    for (spec, z) in [
        ("Q", DNumber::complex(Complex64::new(0.3, 1.7))),
        ("Q(i)", DNumber::quaternion(Quaternion::new(Complex64::new(0.1, 0.05), Complex64::new(0.9, 0.2)))),
        ("Q(sqrt-3)", DNumber::quaternion(Quaternion::new(Complex64::new(-0.2, 0.1), Complex64::new(1.1, -0.3)))),
    ] {
        let f = FieldDescriptor::parse(spec)?;
        let ev = EisensteinEvaluator::new(OFLattice::standard(&f, z)?, &cfg)?;
        let exact = ev.laurent_at_one()?;
        let (res, ct) = ev.laurent_at_one_numeric()?;
        println!(
            "{spec:<10} residue {:.12} (numeric {:.12}), CT {:.12} (numeric {:.12}), h = {:.12}",
            exact.residue,
            res.re,
            exact.constant_term,
            ct.re,
            ev.h_function()?
        );
    }

    let q = FieldDescriptor::rational();
    let h = |w: Complex64| h_function(&q, DNumber::complex(w), FracIdeal::unit(&q), FracIdeal::unit(&q), &cfg);
    let z = Complex64::new(0.31, 1.2);
    println!("\nover Q at z = {z}:");
    println!("  h(-1/z) - h(z) + 2 log|z| = {:.2e}", h(-1.0 / z)? - h(z)? + 2.0 * z.norm().ln());
    println!("  h(z + 1) - h(z)           = {:.2e}", h(z + 1.0)? - h(z)?);

    let gi = FieldDescriptor::parse("Q(i)")?;
    let o = || FracIdeal::unit(&gi);
    let z = DNumber::quaternion(Quaternion::new(Complex64::new(0.15, -0.3), Complex64::new(0.7, 0.45)));
    let (a, b, c, d) = (Complex64::new(1.0, 1.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    let gz = mobius(a, b, c, d, &z)?;
    let diff = h_function(&gi, gz, o(), o(), &cfg)? - h_function(&gi, z, o(), o(), &cfg)? + 2.0 * automorphy_norm(c, d, &z).ln();
    println!("over Q(i), g = [[1+i, i], [1, 1]]: h(gz) - h(z) + 2 log||cz + d|| = {diff:.2e}");
    Ok(())
}
