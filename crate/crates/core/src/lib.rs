pub mod barriers;
pub mod branching;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod evolver;
pub mod field3d;
pub mod radial;

pub use error::{Error, Result};
