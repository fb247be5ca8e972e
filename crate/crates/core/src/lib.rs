//! Crossed modules and 2-crossed modules over finite groups.
//!
//! The crate provides:
//! - exhaustively validated finite-group arithmetic ([`group`]),
//! - finitely presented groups with bounded coset enumeration ([`fp`]),
//! - pre-crossed and crossed modules with their axioms and standard
//!   constructions ([`xmod`]),
//! - 2-crossed modules with full Peiffer-lifting validation ([`x2mod`]),
//! - pullback constructions in both dimensions with universal-property
//!   verification ([`pullback`]),
//! - induced constructions in both dimensions, push-outs and cokernels
//!   ([`induced`]),
//! - a declarative text format and command dispatch (the `format` and [`cli`]
//!   modules),
//! - a small library of worked fixtures ([`fixtures`]).
//!
//! Everything is desk scale: constructions refuse inputs too large to check
//! exhaustively rather than skip checks.

pub mod error;
pub mod fixtures;
pub mod format;
pub mod fp;
pub mod group;
pub mod induced;
pub mod pullback;
pub mod x2mod;
pub mod xmod;

pub mod cli;

pub use error::{Error, Result};
pub use group::{ActionTable, Elt, FiniteGroup, GroupHom, Subgroup};
