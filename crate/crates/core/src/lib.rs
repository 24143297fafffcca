//! Exact computational block theory for finite permutation groups:
//! character tables, p-blocks and defect groups, coprime automorphism
//! actions, the block-level Gallagher map, the Dade ramification group,
//! character-triple central extensions and Brauer characters.
//!
//! Everything is exact: cyclotomic integers for characters, certified
//! stabilizer chains for groups, finite fields for modular data.

pub mod actions;
pub mod blocks;
pub mod brauer;
pub mod catalog;
pub mod chartable;
pub mod cyclo;
pub mod dade;
pub mod error;
pub mod ff;
pub mod ffmat;
pub mod ffpoly;
pub mod gallagher;
pub mod group;
pub mod io;
pub mod oracles;
pub mod perm;
pub mod triples;
pub mod util;

pub use error::{Error, Result};
pub use group::{set_global_seed, PermGroup};
pub use perm::Perm;
