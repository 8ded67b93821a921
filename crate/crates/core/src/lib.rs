//! Exact intersection multiplicities via Tor, characteristic-class pairings
//! on products of projective spaces, and the checks that tie them together.

pub mod charclass;
pub mod error;
pub mod hochschild;
pub mod lefschetz;
pub mod polycore;
pub mod residue;
pub mod resolutions;
pub mod scene;
pub mod serre;

pub use error::{Error, Result};
