pub mod channel;
pub mod csi;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod metrics;
pub mod mobility;
pub mod precoding;

pub use error::{Error, Result};
