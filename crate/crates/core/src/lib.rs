//! Exact counting of common bases of Pfaffian matrix pairs and parity bases of
//! Pfaffian matroid parities, with graph constructions and brute-force oracles.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod instance;
pub mod matroid;
pub mod oracle;
pub mod weighted;

pub use error::{Error, Result};
