//! Lattices a z + b in C (over Q) and in the Hamilton quaternions (over an
//! imaginary quadratic field): volumes, duals, enumeration and the theta
//! transformation law.

use num_complex::Complex64;

use hecke_eisenstein::dalgebra::abs_norm_fr;
use hecke_eisenstein::lattice::reduce_upper_half_plane;
use hecke_eisenstein::{DNumber, FieldDescriptor, FracIdeal, OFLattice, PrecisionConfig, Quaternion, Result};

fn main() -> Result<()> {
    let cfg = PrecisionConfig::new(1e-14)?;

    let q = Quaternion::new(Complex64::new(0.3, -0.2), Complex64::new(0.9, 0.4));
    let r = Quaternion::from_coords(1.0, 2.0, -0.5, 0.25);
    println!("|qr| = {:.15}, |q||r| = {:.15}", (q * r).abs(), q.abs() * r.abs());

    let z = Complex64::new(3.7, 0.4);
    let (w, g) = reduce_upper_half_plane(z);
    println!("\n{z} reduces to {w:.6} by [[{}, {}], [{}, {}]]", g.a, g.b, g.c, g.d);

    let lat = OFLattice::rational(w)?;
    let e = lat.enumerate(4.0, 1_000_000)?;
    println!("Z z + Z: volume {:.6}, {} points of norm <= 4", lat.volume(), e.points.len());

    let gi = FieldDescriptor::parse("Q(i)")?;
    let zq = DNumber::quaternion(q);
    let a = FracIdeal::principal(&gi, &gi.int(1, 1))?;
    let lat = OFLattice::new(&gi, a, FracIdeal::unit(&gi), zq)?;
    let dual = lat.dual()?;
    println!(
        "\nover Q(i): V(L) = {:.12}, V(L*) = {:.12}, product {:.15}",
        lat.volume(),
        dual.covolume(),
        lat.volume() * dual.covolume()
    );
    let e = lat.enumerate(6.0, 1_000_000)?;
    println!("{} points of norm <= 6 in {} unit orbits", e.points.len(), e.orbit_count());

    for t in [Complex64::new(0.8, 0.0), Complex64::new(1.1, 0.3)] {
        let lhs = lat.theta(t, &cfg)?;
        let nt = abs_norm_fr(lat.place(), t);
        let rhs = dual.theta(1.0 / t, &cfg)? / (lat.volume() * nt * nt);
        println!("theta(t = {t}): {lhs:.15} vs {rhs:.15}");
    }
    Ok(())
}
