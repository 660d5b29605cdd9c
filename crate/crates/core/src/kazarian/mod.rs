//! Multisingularity bookkeeping: codimensions, automorphisms and the formal
//! expansions of source and target classes.

pub mod expansion;
pub mod multi;

pub use expansion::{
    emit_quadruple_formula, expand_m, expand_m_formal, expand_m_terms, expand_n, FormalExpansion, ResolvedExpansion,
    SubsetTerm, Symbol, SymbolKind,
};
pub use multi::MultiSingularity;
