//! File formats, synthetic graph generators and benchmark drivers around
//! [`labelprop_core`].

pub mod bench;
pub mod error;
pub mod io;
pub mod membership;
pub mod record;
pub mod synth;

pub use error::LoadError;
