//! Equivariant small I-functions, genus-zero J-functions by torus
//! localization, and exact verification of quasimap wall-crossing identities
//! for toric GIT quotients.

pub mod cli;
pub mod error;
pub mod exact;
pub mod gw;
pub mod ifun;
pub mod toric;
pub mod wallcross;

pub use error::{Error, Result};
