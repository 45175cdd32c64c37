//! Multivariate polynomials over a coefficient ring.

mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{binomial, minimalize, monomials_of_degree, Exponents, Monomial};
pub use order::MonomialOrder;
pub use parse::parse_polynomial;
pub use polynomial::{Polynomial, Term};
pub(crate) use ring::same_ring;
pub use ring::RingContext;
