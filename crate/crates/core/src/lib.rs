//! Exact computations from a simple Lie type to its level-l Verlinde fusion
//! ring, the tensor-power depth d(l), and the Bratteli tower of
//! End(W^⊗k) with W = V(0) ⊕ V(ω₁) ⊕ … ⊕ V(ω_n).
//!
//! Everything is exact (integers and rationals) except the S-matrix
//! cross-check and the Perron-Frobenius data, which are `f64`.

pub mod error;
pub mod lie;
pub mod rep;
pub mod verlinde;
pub mod simplex;
pub mod depth;
pub mod tower;
pub mod config;
pub mod cli;

pub use error::{Error, Result};
pub use lie::{Family, Fold, Rational, RootSystem, SimpleType, Weight};
pub use rep::{Character, Decomposition, RepTheory, WeightSystem};
