//! Substitution dynamical systems of Pisot type.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - finite words, factor languages, subword complexity and entropy estimates ([`words`]),
//! - substitutions, incidence matrices, primitivity and Pisot classification
//!   ([`substitution`], [`matrix`]),
//! - exact integer polynomial machinery: unit-circle root counting, PV certification,
//!   power sums and linear recurrences ([`poly`], [`roots`], [`algebraic`]),
//! - optimal spacing on the circle ([`spacing`]),
//! - finite-support quantum substitution operators ([`quantum`]),
//! - Hiller's function and the crystallographic restriction ([`crystal`]),
//! - numeric value maps and generalized Cantor functions ([`cantor`]).
//!
//! File formats, figures and the command line live in the `pisot` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebraic;
pub mod automaton;
pub mod cantor;
pub mod crystal;
mod error;
pub mod interval;
pub mod matrix;
pub mod poly;
#[cfg(test)]
mod properties;
pub mod quantum;
pub mod roots;
pub mod spacing;
pub mod substitution;
pub mod words;

pub use error::{Error, Result};
pub use interval::RealApprox;
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use roots::RootCount;
pub use substitution::{PisotMode, PisotReport, Substitution};
pub use words::{Alphabet, Letter, Word};
