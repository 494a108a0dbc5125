//! Secret-key rates and capacity bounds for a bosonic wiretap channel in
//! which the eavesdropper collects only part of the lost light.

pub mod bb84;
pub mod bounds;
pub mod channel;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod rates;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
