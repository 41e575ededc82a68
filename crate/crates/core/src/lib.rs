//! Error-trellis construction and decoding for binary convolutional codes.
//!
//! A convolutional code is given by a polynomial parity-check matrix `H(D)`
//! over GF(2). The transposed matrix, viewed as a sequential circuit (the
//! syndrome former), maps error sequences to syndrome sequences; the error
//! trellis for an observed syndrome sequence contains exactly the error
//! patterns consistent with it, and decoding finds the minimum-weight path.
//!
//! The crate provides:
//!
//! * exact GF(2) Laurent-polynomial and matrix arithmetic ([`gf2poly`]),
//! * check-matrix loading, partitioning and the shifted-error transform
//!   that turns a monomial row into an all-ones row ([`code`]),
//! * the syndrome former in observer canonical form plus a convolution
//!   oracle ([`former`]),
//! * trellis-module construction, degeneration and path enumeration
//!   ([`trellis`]),
//! * three decoders: full-trellis Viterbi, degenerate-trellis list decoding
//!   with an auxiliary syndrome stream, and 1-state M-algorithm decoding
//!   ([`decode`]),
//! * exact state-likelihood analysis ([`analysis`]),
//! * a seeded binary-symmetric-channel simulation harness ([`sim`]).

pub mod analysis;
pub mod code;
pub mod decode;
pub mod former;
pub mod gf2poly;
pub mod sim;
pub mod trellis;

mod error;

#[cfg(test)]
pub(crate) mod testutil;

pub use code::{CheckMatrix, ErrorSeq, RowPartition, ShiftVector};
pub use decode::{Decoded, DecoderStats};
pub use error::{Error, Result};
pub use former::{FormerState, SyndromeSeq};
pub use gf2poly::{LaurentPoly, PolyMatrix};
pub use trellis::{Branch, ErrorTrellis, TrellisModule};
