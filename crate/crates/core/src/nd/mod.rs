//! Sumsets, monoid membership and exceptional sets in `Z^n`.

mod decompose;
mod exceptional;
mod khovanskii;
mod monoid;
mod sumset;

pub use decompose::{structure_decompose, Piece, StructuredExceptionalSet};
pub use exceptional::{
    e_n_slice, e_n_slices, exceptional_truncated, verify_theorem2, ENSlice, Theorem2Report,
    Theorem2Row,
};
pub use khovanskii::{khovanskii_fit, KhovanskiiFit};
pub use monoid::{LazyMembership, Monoid, MonoidIndex};
pub use sumset::{
    mann_minimal, mu, mu_with_budget, p_membership, sumset_nd, sumset_nd_with_budget, MuValue,
    SumsetImageND, SumsetLevelsND,
};
