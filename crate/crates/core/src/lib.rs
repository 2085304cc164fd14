//! Division modules, J-hulls, pointed extensions and effective Kummer
//! bounds, computed exactly over the integers and imaginary quadratic orders.

pub mod arith;
pub mod autseq;
pub mod duality;
pub mod error;
pub mod exactalg;
pub mod hulls;
pub mod kummer;
pub mod modfilter;
pub mod pointed;

pub use error::{Error, Result};
