//! Colored HOMFLY polynomials of 2-bridge links.
//!
//! The reduced invariant for one-column colorings is evaluated by pushing a
//! state vector through twist operators on a rank `j + 1` skein module and
//! closing it off. Around that engine sit exact ring arithmetic, a model of
//! 2-bridge links as continued fractions, classical HOMFLY and Jones oracles
//! for cross-checking, and a guesser/validator for q-holonomic recurrences in
//! the color.

pub mod corpus;
pub mod holonomy;
pub mod oracle;
pub mod qcomb;
pub mod ring;
pub mod skein;
pub mod twobridge;

mod error;

pub use error::Error;
pub use ring::{Exp, LaurentPoly, QScalar, Substitution};
pub use skein::{eval_reduced, Family, Normalize, SkeinState, Start};
pub use twobridge::{ContinuedFraction, Twist, TwoBridgeLink};

/// Bumped whenever a convention change alters computed values; part of
/// every cache key.
pub const ENGINE_VERSION: &str = "1";
