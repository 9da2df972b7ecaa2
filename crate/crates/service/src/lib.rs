//! Command-line front end and HTTP service for `hexpoint-core`.

pub mod api;
pub mod cli;
pub mod error;
pub mod ops;
pub mod session;

pub use error::{AppError, ErrorCode};
