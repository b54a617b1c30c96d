pub mod asymptotics;
pub mod cli;
pub mod domain;
pub mod error;
pub mod exact_count;
pub mod intpoly;
pub mod maxent_continuous;
pub mod maxent_discrete;
pub mod sampler;
pub mod validation;
mod quad;
mod special;
mod sturm;

pub use error::{Error, Result};
