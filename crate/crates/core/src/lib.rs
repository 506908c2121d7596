//! Exact symbolic computation for quantum doubles, Heisenberg doubles,
//! q-Boson algebras and quantized Weyl algebras built from a generalized Hopf
//! pairing, together with the decomposition of finiteness-constrained modules
//! into simple blocks via coinvariants and the extremal projector.
//!
//! All arithmetic is exact over the field of rational functions in a formal
//! root of `q`; no floating point is used outside cross-check utilities.

pub mod action;
pub mod algebra;
pub mod category_o;
pub mod doubles;
pub mod lattice;
pub mod linalg;
pub mod pairing;
pub mod scalars;

pub use scalars::{q_binom, q_fact, q_int, QRat};
