pub mod algebra;
pub mod bounds;
pub mod census;
pub mod critical;
pub mod dynamics;
pub mod error;
pub mod frobenius;
pub mod limits;
pub mod map;
pub mod par;
pub mod wreath;

pub use error::{Error, Result};
pub use limits::Limits;
