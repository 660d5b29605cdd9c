//! Stable germ prototypes and the interpolation identities they impose.

pub mod genotype;
pub mod verify;
pub mod weights;

pub use genotype::{GenotypeKind, GenotypeSeries};
pub use verify::{
    factorization_spot_check, verify_divisibility, verify_divisibility_suite, verify_iii22a0, verify_quadruple,
    verify_tpa1, whitney_chain, Check, Report,
};
pub use weights::{GermPrototype, LinearForm, PrototypeKind};
