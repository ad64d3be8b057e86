//! Graphs realized as bipartite pure states: exact Laplacian spectra, von
//! Neumann graph entropy, and a search for coentropic (equal-entropy,
//! non-cospectral) graph pairs.
//!
//! The crate works in exact arithmetic wherever an identity is claimed to be
//! exact — integer matrices, integer characteristic polynomials, prime-log
//! entropy fingerprints — and falls back to floating point only for
//! screening and for quantities that are genuinely irrational, which it then
//! evaluates to arbitrary decimal precision.

pub mod canon;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod highprec;
pub mod props;
pub mod quantum;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{ComponentStructure, Graph};
pub use spectral::{CharPoly, IntMatrix, IntSymMatrix, ScaledSymMatrix, Spectrum};
