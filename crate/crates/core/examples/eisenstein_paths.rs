//! The two evaluation paths of the completed Eisenstein series: the direct
//! lattice sum (Re s > 1.05) and the Fourier–Bessel expansion (all s).

use num_complex::Complex64;

use hecke_eisenstein::eisenstein::Method;
use hecke_eisenstein::{DNumber, EisensteinEvaluator, FieldDescriptor, OFLattice, PrecisionConfig, Quaternion, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::default();

    let square = EisensteinEvaluator::new(OFLattice::rational(Complex64::new(0.0, 1.0))?, &cfg)?;
    let s = Complex64::new(2.0, 0.0);
    println!("E(Zi + Z, 2) = {:.12} (direct)", square.eisenstein(s, Method::Direct)?.re);

    let gi = FieldDescriptor::parse("Q(i)")?;
    let z = DNumber::quaternion(Quaternion::new(Complex64::new(0.2, -0.1), Complex64::new(0.8, 0.3)));
    let ev = EisensteinEvaluator::new(OFLattice::standard(&gi, z)?, &cfg)?;
    for s in [Complex64::new(1.5, 0.0), Complex64::new(2.5, 1.0)] {
        let d = ev.direct(s)?;
        let e = ev.expansion(s)?;
        println!("Q(i), s = {s}: direct {d:.13}, expansion {e:.13}, diff {:.1e}", (d - e).norm());
    }

    let t = ev.expansion_terms(Complex64::new(0.7, 0.0))?;
    println!("\nterms at s = 0.7: xi(2s, b) part {:.10}, xi(2s-1, a) part {:.10}, Bessel part {:.10}", t.zeta_b, t.zeta_a, t.bessel);

    let dual = ev.dual()?;
    for s in [Complex64::new(0.3, 0.0), Complex64::new(0.5, 0.9), Complex64::new(0.5, 0.0)] {
        println!("E(L, {s}) = {:.13}, E(L*, 1-s) = {:.13}", ev.expansion(s)?, dual.expansion(1.0 - s)?);
    }

    match ev.completed(Complex64::new(0.3, 0.0), Method::Direct) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("\ndirect path at s = 0.3: {e}"),
    }
    println!("auto path at s = 0.3: {:.13}", ev.completed(Complex64::new(0.3, 0.0), Method::Auto)?);
    Ok(())
}
