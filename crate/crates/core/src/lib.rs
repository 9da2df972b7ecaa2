//! Hex, Sperner labelings and approximate Brouwer fixed points.

pub mod hex;
pub mod solver;
pub mod funcspec;
pub mod sperner;
pub mod brouwer;
