pub mod check;
pub mod error;
pub mod grass;
pub mod laurent;
pub mod moment;
pub mod mvcomb;
pub mod paving;
pub mod rootdata;
pub mod springer;

pub use error::{Error, Result};
pub use laurent::{LaurentSeries, PrimeField, Val};
pub use mvcomb::{CrystalWord, LusztigDatum, MVPolytope, ReducedWord};
pub use rootdata::{ChamberWeight, Coweight, GTFamily, Root, WeylElt};
