//! Exact solution of the planar coincidence problem for N-fold symmetric
//! lattices and modules.

pub mod arith;
pub mod class23;
pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod splitting;
pub mod windows;
pub mod words;

pub use error::{Error, Result};
