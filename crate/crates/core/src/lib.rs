pub mod error;
pub mod fields;

pub use error::{Error, Result};
pub mod cli;
pub mod directory;
pub mod fundamental;
pub mod hahn;
pub mod inflators;
pub mod lattice;
pub mod linalg;
pub mod mutation;
pub mod report;
pub mod repro;
pub mod sample;
pub mod suites;
