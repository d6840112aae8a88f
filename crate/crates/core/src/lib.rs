pub mod analysis;
pub mod cli;
pub mod error;
pub mod germs;
pub mod hermite_pade;
pub mod linsys;
pub mod pade;
pub mod roots;
pub mod twopoint;
pub mod numerics;

pub use error::{Error, Result};
