pub mod delaunay;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod normalize;
pub mod polytope;
pub mod serde_util;
pub mod two_level;

pub use error::{Error, Result};
