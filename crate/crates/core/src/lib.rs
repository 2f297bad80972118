//! Exact spectral classification of graphs, generalized line graphs, and the
//! enumeration of 1-Salem graphs.

pub mod canon;
pub mod classify;
pub mod e8;
pub mod error;
pub mod families;
pub mod graph;
pub mod glg;
pub mod graph6;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::Graph;
