//! Exact-arithmetic toolkit for the double affine Hecke algebra of type
//! `GL(n)` at `q = 1` and the multiplicative (Ruijsenaars-Schneider)
//! Calogero-Moser space.
//!
//! The crate builds the `n!`-dimensional induced representations as explicit
//! rational matrices, verifies every defining relation as an exact matrix
//! identity, restricts to the Hecke-invariant subspace to realize points of
//! the Calogero-Moser space, checks the Poisson-bracket match in canonical
//! coordinates with exact forward-mode jets, and implements the rational and
//! trigonometric Dunkl-operator degenerations on (Laurent) polynomials.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point in the crate. Identities are certified either exactly or
//! by exact evaluation at many seeded random rational points.
//!
//! The `parallel` feature (on by default) runs the embarrassingly parallel
//! sweeps - relation instances, monomial windows, random trials - on a rayon
//! pool; disabling it falls back to sequential loops with identical output.

#![forbid(unsafe_code)]

pub mod cmspace;
pub mod daha;
pub mod degen;
pub mod exact;
pub mod linalg;
pub(crate) mod par;
pub mod poisson;
pub mod report;
pub mod rng;
pub mod suites;
pub mod symgroup;

pub use exact::{Jet, Rat};
pub use linalg::Matrix;
pub use symgroup::Permutation;
