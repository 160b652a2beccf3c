pub mod cli;
pub mod coloring;
pub mod count;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod kcol;
pub mod pattern;
pub mod regular;
pub mod report;
pub mod search;
pub mod stability;

pub use coloring::{Color, TwoColoring};
pub use error::{Error, Result};
pub use graph::{SimpleGraph, VertexSet};
pub use pattern::PatternGraph;
