pub mod cli;
pub mod coefficients;
pub mod error;
pub mod ic;
pub mod instance;
pub mod int;
pub mod linalg;
pub mod oracles;
pub mod polyhedral;
pub mod stratification;
pub mod suites;
pub mod triangulate;

pub use error::{Error, Result};
pub use int::Int;
