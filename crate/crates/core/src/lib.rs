pub mod classify;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod lp;
pub mod model;
pub mod nogo;
pub mod properties;
pub mod rational;

pub use error::{Error, Result};
pub use rational::{frac, Rational};
