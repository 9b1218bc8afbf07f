//! Exact-arithmetic workbench for the two-photon algebra h6.
//!
//! The crate constructs and verifies, in exact rational or polynomial
//! arithmetic:
//!
//! * the six-generator two-photon Lie algebra h6 and its tensor calculus
//!   ([`lie`], [`tensor`]),
//! * the complete 15-parameter coboundary Lie-bialgebra family with its 19
//!   classification equations, discriminant, automorphism and the classified
//!   two-primitive-generator families ([`bialgebra`]),
//! * truncated one-boson representations of the classical algebra and of its
//!   two non-standard quantum deformations ([`fockrep`]),
//! * coproducts, deformed commutation tables, universal R-matrices and their
//!   quantum Yang-Baxter / intertwining / coassociativity / semiclassical
//!   checks ([`expr`], [`quantum`]),
//! * power-series solutions of the classical and deformed eigenstate
//!   differential equations with a matrix-representation cross-check
//!   ([`eigenstates`]).

pub mod bialgebra;
pub mod eigenstates;
pub mod error;
pub mod expr;
pub mod fockrep;
pub mod lie;
pub mod matrix;
pub mod quantum;
pub mod scalar;
pub mod series;
pub mod tensor;

pub use error::{Error, Result};
pub use lie::{Gen, LieElement};
pub use scalar::{Scalar, VarSet};
pub use tensor::TensorElement;
