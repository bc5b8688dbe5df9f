//! Weighted expansion of Laplacian eigenvector sign supports.
//!
//! For an eigenvector `y` of `lambda_k`, take node weights `w_i = y_i^2` and
//! threshold `c = (lambda_{k+1} - lambda_k) / 2`. If the positive support
//! splits into `a` classes and the negative support into `b` classes, each
//! with weighted expansion below `c`, then `a + b <= k`. This crate computes
//! all the quantities involved and checks every step of the argument
//! numerically on concrete graphs.

pub mod certificate;
pub mod error;
pub mod expansion;
pub mod fmt;
pub mod generators;
pub mod graph;
pub mod io;
pub mod registry;
pub mod spectral;

pub use error::{Error, Result};
pub use expansion::{Mode, SearchConfig};
pub use graph::{Graph, NodeWeights, SignSupport};
