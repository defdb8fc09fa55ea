//! Exact construction and certification of the continued-fraction Cantor set
//! F₄*: numbers in `[4; 3, ...]` whose partial quotients lie in {1, 2, 3, 4}
//! and avoid the blocks `4,4` and `4,1,4,1,4`.
//!
//! Everything is computed in exact arithmetic over Q(√26565). See the
//! crate README for the command-line front end.

pub mod cantor;
pub mod cf;
pub mod cli;
pub mod constants;
pub mod error;
pub mod exact;
pub mod hall;
pub mod report;
pub mod subshift;
pub mod thickness;

pub use error::{Error, Result};
pub use exact::{BigRat, QuadSurd, DEFAULT_DISC};
