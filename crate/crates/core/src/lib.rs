//! Exact monodromy representations of mixed braid groups acting on
//! eigenspaces of cyclic and abelian covers of the projective line.

pub mod analysis;
pub mod braid;
pub mod burau;
pub mod cover;
pub mod cyclotomic;
pub mod interval;
pub mod laurent;
pub mod matrix;
pub mod rep;
mod modular;

pub use cyclotomic::{CycError, CycNum, Sign};
pub use matrix::{Field, Matrix, Ring};
