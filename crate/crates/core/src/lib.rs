//! Construction and mechanical verification of a polyhedral 3-sphere with
//! `5n + 4` vertices and `n²` bipyramid facets, built from the boundary of
//! the cyclic 4-polytope, plus enumeration of the simplicial 3-spheres
//! obtained by splitting its bipyramids.

pub mod ball;
pub mod canon;
pub mod cli;
pub mod complex;
pub mod cyclic;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod io;
pub mod simplex;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use simplex::{Simplex, VertexId};
