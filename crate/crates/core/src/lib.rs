//! Exact bidirectional mapping between a spin-`s` representation of su(2) and
//! `L` fermion flavors with `2s + 1 = 2^L`.
//!
//! Every coefficient is computed exactly in ℚ extended by square roots
//! ([`scalar::ExactReal`]); operator identities are checked by exact matrix
//! equality rather than floating-point tolerances.

pub mod applications;
pub mod error;
pub mod expansion;
pub mod fermion_to_spin;
pub mod matrix;
pub mod operators;
pub mod scalar;
pub mod spin_to_fermion;
pub mod uodm;

pub use error::{Error, Result};
pub use expansion::{BasisElement, BasisKind, OperatorExpansion};
pub use fermion_to_spin::{RootComponentVector, SpinBasisIndex, SpinPolynomial};
pub use matrix::{anticommutator, commutator, Matrix, PolyCoeffs};
pub use operators::{Flavor, SpinRep};
pub use scalar::{ExactComplex, ExactReal, Rational};
pub use uodm::{FermionWord, PatternMatrix, UodmVector};
