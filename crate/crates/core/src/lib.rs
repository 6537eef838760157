pub mod coeff;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod homotopy;
pub mod lin;
pub mod models;
pub mod poset;
pub mod qmat;
pub mod sheafmod;
pub mod space;
pub mod verdict;
pub mod zmat;

pub use error::{Error, Result};
pub use verdict::{Check, Value, Verdict, Window, Witness};
