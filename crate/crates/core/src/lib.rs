pub mod algebra;
pub mod arith;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod degeneration;
pub mod error;
pub mod linalg;
pub mod sample;
pub mod suite;

pub use error::{Error, Result};
