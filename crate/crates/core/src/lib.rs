pub mod coxeter;
pub mod batch;
pub mod braid;
pub mod demo;
pub mod error;
pub mod simplicial;
pub mod poset;
pub mod sampling;
pub mod subword;

pub use error::{Error, Result};
