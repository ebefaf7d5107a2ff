pub mod check;
pub mod colliding;
pub mod dynlab;
pub mod error;
pub mod gfq;
pub mod newton;
pub mod par;
pub mod places;
pub mod ratfunc;

pub use error::{Error, Result};
