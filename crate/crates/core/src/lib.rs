//! Local invariants of elliptic curves over ℚ and its unramified quadratic
//! completions, root numbers, isogeny parity terms and regulator constants.

pub mod arith;
pub mod error;
pub mod hilbert;
pub mod curve;
pub mod localdata;
pub mod rootnum;
pub mod parity;
pub mod brauer;
pub mod numfield;

pub use error::{Error, Result};
