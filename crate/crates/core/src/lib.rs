//! Linear and affine codes for insertion/deletion channels.
//!
//! The building blocks are finite-field arithmetic ([`gf`]), Hamming-metric
//! linear codes ([`hamming_ecc`]), edit-distance tooling ([`editops`]), a
//! small-bias generator ([`prg`]) and separator sequences ([`separator`]).
//!
//! On top of them sit the linear insdel code over any field
//! ([`linear_insdel`]), the binary affine code built from synchronization
//! strings ([`affine_insdel`], [`sync_string`]), asymptotic rate bounds
//! ([`bounds`]) and seeded Monte Carlo experiments ([`harness`]).

pub mod affine_insdel;
pub mod bounds;
pub mod editops;
pub mod error;
pub mod gf;
pub mod hamming_ecc;
pub mod harness;
pub mod linear_insdel;
pub mod prg;
pub mod separator;
pub mod sync_string;

pub use error::{Error, Result};
pub use gf::{Field, FieldKind, FieldSpec, Symbol};
