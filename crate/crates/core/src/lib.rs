//! Virtual resolutions over Cox rings of smooth projective toric varieties.

pub mod coxring;
pub mod error;
pub mod field;
pub mod fitting;
pub mod freemod;
pub mod gb;
pub mod ideal;
pub mod io;
pub mod limits;
pub mod monomial;
pub mod poly;
pub mod virtuality;

pub use coxring::{CoxRing, IrrelevantIdeal, Multidegree};
pub use error::{Error, Result};
pub use ideal::{Depth, Ideal};
