//! Exact search for popular matchings in roommates instances.
//!
//! The crate decides whether a roommates instance admits a popular
//! matching that leaves a prescribed vertex set uncovered, verifies
//! popularity of arbitrary matchings, finds stable matchings with
//! Irving's algorithm, and runs the random-instance experiments.

pub mod blossom;
pub mod election;
pub mod error;
pub mod experiment;
pub mod generator;
pub mod instance;
pub mod matching;
pub mod search;
pub mod stable;
pub mod verifier;

pub use error::{Error, Result};
pub use instance::{Edge, Instance, Vertex, VertexSet};
pub use matching::Matching;
