//! Finite-group certificates for isospectrality, with the supporting exact
//! algebra, cover spectra and arithmetic-form checks.

pub mod algebra;
pub mod caps;
pub mod certify;
pub mod constructions;
pub mod covers;
pub mod error;
pub mod forms;
pub mod group;
pub mod job;
pub mod suites;

pub use caps::Caps;
pub use error::{Error, Result};
