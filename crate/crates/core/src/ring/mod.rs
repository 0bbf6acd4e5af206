//! Exact arithmetic in `Z[a^±1, s^±1](q)`.
//!
//! [`LaurentPoly`] is the sparse polynomial ring; [`QScalar`] adds the only
//! denominators the skein calculus produces, products of balanced factors
//! `q^l - q^-l`.

mod dense;
mod gcd;
mod poly;
mod qscalar;

pub use poly::{Exp, LaurentPoly};
pub use qscalar::{QMonomial, QScalar, Substitution};

pub(crate) use dense::DensePoly;
