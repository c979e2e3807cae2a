//! Exact Fourier-sampling laboratory for hidden involutions in the symmetric
//! group `S_n` and the wreath product `S_n ≀ Z₂`.

pub mod bounds;
pub mod error;
pub mod format;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod rep;
pub mod rng;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
