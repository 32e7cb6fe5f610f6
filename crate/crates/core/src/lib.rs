//! Zigzags of closed-surface triangulations, z-orientations and the edge,
//! vertex and face types they induce, directed Eulerian embeddings, and the
//! gluing that builds z-knotted triangulations with homogeneous zigzags.
//!
//! Start with [`triangulation::Triangulation`] and
//! [`zigzag::enumerate_zigzags`]; the `examples/` directory walks through
//! each part.

pub mod cli;
pub mod cyclic;
pub mod error;
pub mod eulerian;
pub mod generators;
pub mod surgery;
pub mod tree;
pub mod triangulation;
pub mod zigzag;

pub use error::{Error, Result};
