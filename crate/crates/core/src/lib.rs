pub mod binet;
pub mod cli;
pub mod cubic;
pub mod dyadic;
pub mod error;
pub mod expansion;
pub mod field;
pub mod gcd;
pub mod interval;
pub(crate) mod poly;
pub mod real;
pub mod reconstruct;
pub mod records;
pub mod search;
pub mod square;
pub mod trib;
pub mod unity;

pub use error::{Error, Result};
