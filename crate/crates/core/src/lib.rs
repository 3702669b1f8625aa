//! Shuffle lattices and bubble lattices, with exact computation of their
//! reverse characteristic polynomials, M-triangles and H-triangles.
//!
//! Every quantity is computed by at least two independent routes (brute
//! force over the materialized poset, interval decomposition, closed
//! formulas, generating-series extraction) and the [`verify`] module checks
//! that they agree as exact integer polynomials.

pub mod cli;
pub mod error;
pub mod identities;
pub mod lattices;
pub mod polyalg;
pub mod poset;
pub mod triangles;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use polyalg::{BivarPoly, ExactRational, TruncatedSeries2};
pub use poset::Poset;
pub use words::{ShuffleParams, ShuffleWord};
