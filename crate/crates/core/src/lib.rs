pub mod aluffi;
pub mod budget;
pub mod error;
pub mod graphs;
pub mod groebner;
pub mod ideals;
pub mod linalg;
pub mod pencil;
pub mod polyring;
pub mod reproduce;
pub mod scalar;

pub use aluffi::{aluffi_torsion_free, conjecture1_evidence, vv_component, AluffiVerdict, Certificate, Status, VVComponent};
pub use error::{Error, Result};
pub use ideals::{jacobian_ideal, Ideal};
pub use polyring::{parse_polynomial, Monomial, MonomialOrder, Polynomial, RingContext};
pub use scalar::{Coefficient, Field, Rational, Zp};

/// Polynomial with exact rational coefficients.
pub type Poly = Polynomial<Rational>;

/// Ideal over the rationals.
pub type QIdeal = Ideal<Rational>;

/// Verdict over the rationals.
pub type QVerdict = AluffiVerdict<Rational>;
