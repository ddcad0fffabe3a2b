//! Ground sets: graphs, matrices and their matroids.

pub mod graph;
pub mod instance;
pub mod linalg;
pub mod matroid;

pub use graph::OrientedGraph;
pub use instance::{
    parse_instance, parse_instance_with, Instance, ParseOptions, Representation, Side,
};
pub use linalg::{Matrix, Scalars};
pub use matroid::{Mask, Matroid};
