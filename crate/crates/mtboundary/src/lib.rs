pub mod boundary;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod hodge;
pub mod liealg;
pub mod linalg;
pub mod scalars;
pub mod sl2kit;

pub use error::{Error, Result};
