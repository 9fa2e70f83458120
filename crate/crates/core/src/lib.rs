//! Arithmetic in the product ring `prod_{p in S} Z_p` at finite precision,
//! with its filters, prime spectrum, quotients, localizations, structure
//! sheaf, adeles and asymptotic order.

pub mod adeles;
pub mod asymptotic;
pub mod cli;
pub mod error;
pub mod filters;
pub mod json;
pub mod padic;
pub mod product;
pub mod quotient;
pub mod sampling;
pub mod sheaf;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
