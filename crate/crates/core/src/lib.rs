//! Tallini curves over finite fields: construction, smoothness, the
//! equivalence with the Pellikaan curve, divisors, automorphisms, quotients
//! and the Hasse-Witt invariant, all in exact arithmetic.

pub mod error;
pub mod ff;

pub use error::{Error, Result};
pub mod curve;
pub mod geom;
pub mod linalg;
pub mod poly;
pub mod series;
pub mod singular;
pub mod tallini;
pub mod funcfield;
pub mod symmetry;
pub mod cartier;
pub mod report;
