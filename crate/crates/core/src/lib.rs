//! Quantum SU(N) invariants of torus bundles.
//!
//! The crate evaluates Witten-Reshetikhin-Turaev invariants of mapping tori
//! over the 2-torus by several independent routes (trace sums over level-k
//! labels, Gauss-sum closed forms, products of S and T matrices), together
//! with the Chern-Simons data of the flat-connection moduli spaces and
//! numerical checks of the resulting asymptotic expansions.
//!
//! Exponents of roots of unity are carried as exact rationals
//! ([`phase::RationalPhase`]); floating point enters only when a phase is
//! finally turned into a complex number.

pub mod asymp;
pub mod dynamics;
pub mod error;
pub mod gaussrec;
pub mod moduli;
pub mod phase;
pub mod weightlat;
pub mod wrt;

pub use error::{Error, Result};

/// Complex numbers used throughout.
pub type C64 = num_complex::Complex64;

/// Exact rationals used for inner products, phases and Chern-Simons values.
pub type Q = num_rational::Ratio<i64>;
