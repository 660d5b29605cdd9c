//! Multisingularity residues, interpolation checks and secant-plane counts.

pub mod error;
pub mod germlab;
pub mod grassmann;
pub mod kazarian;
pub mod polycore;
pub mod rat;
pub mod secant;
pub mod thomlib;

pub use error::{Error, ParseError, Result};
pub use rat::Rat;
