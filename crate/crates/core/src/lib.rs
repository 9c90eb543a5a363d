//! Combinatorial and algebraic machinery for weighted disc counts: forested
//! forms on complete graphs, self-linking weights of polyline links over an
//! exact commutative coefficient ring, and a desk-scale simulator checking
//! that the weighted count survives wall crossings.
//!
//! The crate is organized around a pipeline:
//!
//! * [`ring`] — exact arithmetic in a chosen commutative ring (integers,
//!   integers mod q, multivariate integer polynomials);
//! * [`graph`] — complete graphs, edge vectors over a ring, and edge
//!   contractions with their pushforward;
//! * [`trees`] — spanning-tree enumeration and the contraction
//!   correspondence between trees;
//! * [`forested`] — the forested form with two independent exact evaluators
//!   and its contraction identity;
//! * [`link`] — polyline links in 3-space with exact rational coordinates,
//!   pairwise linking numbers, linking matrices, and self-linking weights;
//! * [`wall`] — populations of weighted configurations evolving through
//!   wall-crossing events with an invariant total weight.
//!
//! All values are exact; no floating point is involved anywhere.
//!
//! ```
//! use selflink::forested::{forested_form, Evaluator};
//! use selflink::graph::{CompleteGraph, EdgeVector};
//! use selflink::ring::Ring;
//!
//! let ring = Ring::integers();
//! let graph = CompleteGraph::new(4)?;
//! let ones = EdgeVector::from_fn(graph, ring.clone(), |_| ring.one())?;
//! // With unit weights the form counts the spanning trees: 4^2 = 16.
//! assert_eq!(forested_form(&ones, Evaluator::Determinant)?, ring.from_int(16));
//! assert_eq!(forested_form(&ones, Evaluator::TreeSum)?, ring.from_int(16));
//! # Ok::<(), selflink::Error>(())
//! ```

pub mod error;
pub mod forested;
pub mod graph;
pub mod json;
pub mod link;
pub mod ring;
pub mod rng;
pub mod trees;
pub mod wall;

pub use error::{Error, Result};
