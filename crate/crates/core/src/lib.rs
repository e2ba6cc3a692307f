pub mod circulant;
pub mod commands;
pub mod error;
pub mod gnn;
pub mod graph;
pub mod linalg;
pub mod perfmodel;
pub mod profiler;
pub mod schema;

pub use error::{Error, Result};
