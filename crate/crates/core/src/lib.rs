pub mod abelian;
pub mod criteria;
pub mod cyclotomic;
pub mod dicyclic;
pub mod error;
pub mod poly;
pub mod reps;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
