//! Graded attribute implications over finite residuated chains.
//!
//! The crate works with truth degrees drawn from a finite chain
//! `0 = a_0 < a_1 < ... < a_n = 1` equipped with a residuated pair
//! (tensor, residuum) and a truth-stressing hedge. On top of that it
//! provides graded sets of attributes, implications between them,
//! object-attribute tables, and the machinery for computing and
//! transforming non-redundant implication bases.
//!
//! The crate is `no_std` (it allocates, but performs no IO and keeps no
//! global state); file formats, random generation and the command line
//! live in the companion `fai-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod basebuild;
pub mod capacity;
pub mod context;
mod error;
pub mod fuzzyset;
pub mod graphmethod;
pub mod implications;

pub use capacity::Caps;
pub use error::Error;
