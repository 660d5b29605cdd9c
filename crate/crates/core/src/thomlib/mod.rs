//! Thom series of Morin singularities and residue polynomials of multisingularities.

pub mod residue;
pub mod series;
pub mod singularity;

pub use residue::{residue_a0a1, residue_a0r, residue_iii22, residue_iii22a0, Provenance, Residue, ResidueTable};
pub use series::{a_coeff, a_table, thom_polynomial, BuiltinSeries, TermSource, ThomSeries, ThomTerm};
pub use singularity::{LinearCodim, Singularity, SingularityInfo};
