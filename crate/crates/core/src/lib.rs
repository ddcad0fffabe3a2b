//! Exact flow, parcel and rank-polynomial computations over graphs and
//! linear matroids.

pub mod cyclotomic;
pub mod error;
pub mod ground;
pub mod group_flow;
pub mod parcels;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
