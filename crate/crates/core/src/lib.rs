//! Toolkit for non-binary quasi-cyclic LDPC codes over GF(2^m).
//!
//! - [`gf`]: field arithmetic with log/antilog tables.
//! - [`construct`]: Class-I / Class-II base matrices, CPM dispersion, truncation.
//! - [`verify`]: shifting and symmetry checks on the constructed matrices.
//! - [`decode`]: layered Min-Max decoding, AWGN channel, Monte-Carlo harness.
//! - [`shuffle`]: inter-layer VNU schedules, Beneš switch model, routing.
//! - [`cost`]: shuffle-network hardware cost formulas.
//! - [`codefile`]: the text file format for parity-check matrices.

pub mod codefile;
pub mod construct;
pub mod cost;
pub mod decode;
pub mod error;
pub mod gf;
pub mod shuffle;
pub mod verify;

pub use codefile::CodeFile;
pub use construct::{Code, CodeClass, CodeSpec, IndexAssignment, ParityCheck};
pub use error::{Error, Result};
pub use gf::{Field, Gf};
