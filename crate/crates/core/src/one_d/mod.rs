//! One-dimensional sumsets: `N A` for finite `A ⊂ Z` normalized to
//! minimum 0 and gcd 1.

mod profile;
mod stamp;
mod sumset;
mod theorems;

pub use profile::{
    apery_set, exceptional_set_1d, residue_profile, threshold, ExceptionalSet1D, ResidueProfile,
    ResidueRow,
};
pub use stamp::{normalize, StampSet1D};
pub use sumset::{
    member, sumset_1d, sumset_1d_with_budget, MembershipOracle, Sumset1D, SumsetLevels,
};
pub use theorems::{
    bezout_coefficients, ebound_construction, interval_description, savchev_chen_certify,
    theorem1_statement_holds, SavchevChenCertificate,
};
