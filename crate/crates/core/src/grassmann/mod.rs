//! Schubert calculus on `Gr_k(C^n)` and the projective bundle of its sub-bundle.

mod fiber;
mod ring;

pub use fiber::{kappa_chern, pushforward_p_s, quotient_line_chern, FiberClass, Orientation, CALIBRATED_ORIENTATION};
pub use ring::{GrassClass, GrassRing, Partition};
