//! Reasoning over simple contextualized knowledge repositories with
//! justifiable exceptions.
//!
//! A repository ([`kb::Sckr`]) is parsed from the `.ckr` syntax
//! ([`frontend`]), translated to a normal program with weak constraints
//! ([`translate`]) and solved by the built-in engine ([`asp`]). The
//! [`oracle`] module decides the same questions directly on the model
//! theory and serves as a cross-check.

pub mod asp;
pub mod error;
pub mod frontend;
pub mod kb;
pub mod oracle;
pub mod reductions;
pub mod report;
pub mod translate;

pub use error::{Error, Result};
