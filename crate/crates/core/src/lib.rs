//! Exact verification of holomorphic Lefschetz fixed-point identities.
//!
//! Every identity is checked by computing both sides through separate code
//! paths over exact rational-function scalars:
//!
//! * [`exact_algebra`]: rationals, polynomials, rational functions,
//!   determinants and exterior-power traces.
//! * [`graded_vect`]: graded vector spaces and their Euler-characteristic
//!   trace.
//! * [`kernel2cat`]: a finite model of traces in a 2-category of kernels
//!   (finite sets, matrices of vector spaces, entrywise linear maps).
//! * [`projective`]: equivariant line bundles on projective space; the
//!   Lefschetz number against the fixed-point sum.
//! * [`weyl`]: root systems, Weyl groups and the Weyl character formula as
//!   a fixed-point identity.
//! * [`random`]: seeded instance generators shared by tests, the CLI and
//!   benchmarks.

pub mod error;
pub mod exact_algebra;
pub mod graded_vect;
pub mod kernel2cat;
pub mod projective;
pub mod random;
pub mod weyl;

pub use error::{Error, Result};
pub use exact_algebra::{det, parse_rf, rf_equal, Matrix, MultiPoly, Rational, RationalFunction};
