//! Counting secant planes through the multisingularity residues.
//!
//! The count is an enumerative answer only when the projection from `V` is
//! admissible (its multisingularities are all stable and in general position).
//! The polynomial is computed regardless; see [`ADMISSIBILITY_CAVEAT`].

mod chi;
mod lehn;
mod nu;
mod pipeline;

/// Attached to every count emitted by the CLI.
pub const ADMISSIBILITY_CAVEAT: &str =
    "valid as an enumerative count only when the projection of V is admissible; computed unconditionally";

pub use chi::{ChiIndex, ChiMonomial, ChiPolynomial};
pub use lehn::{lehn_crosscheck, lehn_transform, LehnReport};
pub use pipeline::{
    count_4secant, count_secant, nu_f_chern, ChiClass, NuTerm, SecantCount, SecantEngine, SecantProblem,
};
