//! Ideals and the constructions built on Groebner bases.

pub mod cover;
mod hilbert;
mod ideal;
pub mod io;
mod matrix;
mod rees;

pub use hilbert::{count_standard_monomials, hilbert_series_of_monomials, HilbertSeries};
pub use ideal::Ideal;
pub use matrix::{jacobian_ideal, jacobian_ideal_with_height, jacobian_matrix, minor_span, MinorSpan, SymbolicMatrix};
pub use rees::{minimal_generators_modulo, rees_ideal, relation_type, ReesIdeal};
