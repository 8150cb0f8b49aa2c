pub mod error;
pub mod bounds;
pub mod census;
pub mod cli;
pub mod exactnum;
pub mod hessian;
pub mod pencil;
pub mod pentagon;

pub use error::{Error, Result};
