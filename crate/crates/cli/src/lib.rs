//! Front end for `salem-core`: classification records, the E8 census with
//! checkpoints, family corpora, and the verification suite.

pub mod checkpoint;
pub mod commands;
pub mod config;
pub mod error;
pub mod oracles;
pub mod record;
pub mod verify;

pub use error::{CliError, Result};
