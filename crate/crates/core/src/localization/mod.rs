//! Completions of Q(z): pi-adic expansions at the prime above 5, residue
//! fields elsewhere, and the fifth-power class maps.

mod classes;
mod pi5;
mod quad;
mod residue;

pub use classes::{
    class_at, class_at_5, class_at_unramified, class_of_expansion, valuation_at, ClassBasis, UnitClass,
};
pub use pi5::{hensel_sqrt, pi5_expand, pi5_expand_integer, pi5_valuation, Pi5Expansion, DEFAULT_PRECISION, MAX_PRECISION};
pub use residue::{Fq, ResidueField};

pub(crate) use pi5::O5;
pub(crate) use quad::{Quad, QuadRing, EXTENSIONS};
