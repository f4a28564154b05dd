//! Real-analytic Eisenstein series over number fields and their arithmetic
//! applications.
//!
//! The crate evaluates the Eisenstein series `E(Λ, s)` of an `O_F`-lattice
//! `Λ` inside `D_F = Π_v D_v` (complex numbers at real places, Hamilton
//! quaternions at complex places), together with:
//!
//! * completed partial zeta functions `ξ_F(s, a)` continued to all `s`;
//! * the dual lattice, the theta transformation law and the functional
//!   equation `Ê(Λ, s) = Ê(Λ*, 1 - s)`;
//! * the Fourier–Bessel expansion of `Ê(az + b, s)`, its residue at `s = 1`
//!   and the Kronecker limit function `h_F`;
//! * Hecke's integral formula expressing `ξ_K(s, A)` for a quadratic field
//!   `K` as an integral of `Ê` over a norm-one torus, and the relative
//!   Kronecker limit formula that follows from it.
//!
//! Supported base fields are `Q` and the imaginary quadratic fields of
//! discriminant −3, −4, −7, −8 and −11. Any quadratic field may appear as the
//! extension `K` over `Q`.
//!
//! Lattice-based Eisenstein series over an imaginary quadratic `F` are
//! functions on hyperbolic 3-space once `z = x + y j` is replaced by
//! `x + |y| j`; this crate works with the lattice formulation throughout.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod basefield;
pub mod cli;
pub mod dalgebra;
pub mod eisenstein;
mod error;
pub mod heckeint;
pub mod lattice;
pub mod numeric;
pub mod report;
pub mod specialfun;
pub mod suites;
pub mod zeta;

pub use basefield::{FieldDescriptor, FieldKind, FracIdeal, QuadElement};
pub use dalgebra::{DNumber, Quaternion};
pub use eisenstein::EisensteinEvaluator;
pub use error::{Error, Result};
pub use heckeint::HeckeSetup;
pub use lattice::{OFLattice, ZLattice};
pub use report::VerificationReport;
pub use specialfun::PrecisionConfig;
pub use zeta::CompletedZeta;
