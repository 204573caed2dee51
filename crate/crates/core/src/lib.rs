//! Exact weight distributions of perfect colorings (equitable partitions)
//! and completely regular codes on graphs.

pub mod cli;
pub mod distributions;
pub mod drg;
pub mod equitable;
pub mod error;
pub mod graphs;
pub mod localdist;
pub mod oracle;
pub mod ratmat;

pub use error::{Error, Result};
