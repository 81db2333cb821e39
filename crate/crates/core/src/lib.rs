pub mod coloring;
pub mod error;
pub mod extract;
pub mod graphmodel;
pub mod oracle;
pub mod sequences;

pub use error::{Error, Result};
