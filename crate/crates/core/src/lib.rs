//! Exact zonal (Jack, α = 2) polynomials and Monte Carlo machinery for the
//! distribution of diagonals of real symmetric matrices with a fixed spectrum.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`]: partitions, compositions, dominance order, counting.
//! * [`symfunc`]: Jack polynomials in the monomial basis, power sums, the Jack
//!   scalar product, evaluation and products.
//! * [`randmat`]: Haar sampling on O(n)/U(n), conjugated diagonals, a Jacobi
//!   eigensolver and reproducible random streams.
//! * [`measures`]: lattice distributions on the permutohedron and comparisons.
//! * [`linearize`]: zonal structure constants and the spectrum-of-sums harness.
//! * [`hciz`]: the orthogonal HCIZ-type integral by three routes.

pub mod combinatorics;
pub mod error;
pub mod hciz;
pub mod linearize;
pub mod measures;
pub mod randmat;
pub mod symfunc;

pub use combinatorics::{Composition, Partition};
pub use error::{Error, Result};
pub use num_rational::BigRational;
