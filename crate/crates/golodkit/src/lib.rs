//! Exact-arithmetic toolkit for monomial rings R = S/I.
//!
//! The crate builds the Taylor complex of a monomial ideal, runs discrete
//! Morse theory on it (matchings, splitting homotopies, Morse complexes),
//! transfers the dga product to an A-infinity structure on the minimal free
//! resolution, and evaluates the Golod criteria that these structures
//! detect. All arithmetic is exact: rationals with big integers, or a prime
//! field chosen at runtime.
//!
//! The main pipeline:
//!
//! 1. [`parse::parse_ideal`] reads an ideal (text grammar or JSON).
//! 2. [`complex::BasedComplex::taylor_full`] builds the Taylor complex with
//!    its dga product.
//! 3. [`morse::greedy_maximal_matching`] or [`morse::staged_matching`]
//!    produces an acyclic matching; [`morse::morse_complex`] contracts it.
//! 4. [`ainf::Transfer`] computes the splitting homotopy and the transferred
//!    operations, with multiplication tables per arity.
//! 5. [`golod::golod_decision`] combines the combinatorial criteria, the
//!    product tables, and the resolvability witnesses into a verdict.

pub mod ainf;
pub mod complex;
pub mod error;
pub mod field;
pub mod golod;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod morse;
pub mod parse;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use ideal::MonomialIdeal;
pub use monomial::{Monomial, PolyRing, Subset};
