pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod io;
pub mod schur;
pub mod wd;

pub use error::{Error, Result};
