//! Exact computations around Lusztig nilpotent varieties of preprojective algebras.
//!
//! The crate evaluates, at desk scale and without floating point:
//!
//! * Laurent polynomials in `q` and quantum factorials ([`qlaurent`]),
//! * quivers, double quivers, words and the symmetric Cartan pairing ([`quiver`]),
//! * the graded q-shuffle algebra on words ([`shuffle`]),
//! * points of the nilpotent variety and their finite-field reductions ([`ffmod`]),
//! * stable-flag point counts, counting polynomials and Serre polynomials ([`flagcount`]),
//! * induction-product values, dual semicanonical vectors and the quantum Serre
//!   relation on strata ([`semican`]).
//!
//! The `semican` binary wraps all of this; see [`cli`].

pub mod cli;
pub mod error;
pub mod ffmod;
pub mod fixtures;
pub mod flagcount;
pub mod linalg;
pub mod qlaurent;
pub mod quiver;
pub mod semican;
pub mod shuffle;
pub mod verify;

pub use error::{Error, Result};
pub use ffmod::{GradedSubspace, ModpModule, PPModule, ValidationReport};
pub use flagcount::{CountOptions, CountingPolynomial, SerrePolynomial};
pub use linalg::{Matrix, PrimeField};
pub use qlaurent::LaurentPolynomial;
pub use quiver::{DimVector, DoubleArrow, Quiver, Word};
pub use semican::{ComponentSpec, Engine};
pub use shuffle::ShuffleElement;
