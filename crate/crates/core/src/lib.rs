//! Computational core for free pro-p groups.
//!
//! Everything here works on finite data: free-group words with integer
//! exponents, and non-commutative power series over `F_p` truncated at a
//! fixed total degree `N`. On top of that sit the Zassenhaus filtration,
//! the Magnus embedding `x_j -> 1 + X_j`, Fox free derivatives, the
//! Andreadakis-Johnson filtration of automorphisms with its p-Johnson
//! homomorphisms and Johnson maps, Massey products evaluated from Magnus
//! coefficients of relators, and the p-period dynamics of iterated
//! automorphisms.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line surface live in the companion `projohnson` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod autom;
mod context;
mod error;
pub mod field;
pub mod fox;
pub mod iwasawa;
pub mod magnus;
pub mod massey;
pub mod words;

pub use autom::{
    AlgebraEndo, AutDepth, GroupEndo, HomTable, Iterate, JohnsonTable, LinearMapH,
    DEFAULT_WORD_LIMIT,
};
pub use context::{GroupContext, MAX_RANK, MAX_TRUNC};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use magnus::{FiltrationDepth, GradedComponent, Monomial, TruncSeries};
pub use words::{Letter, Word};
